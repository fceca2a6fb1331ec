"""Exact solver for the line variant.

Segments replace rectangles and every zone has a single admissible scale, so
there is no scale step and no y axis.  Because the zones are heterogeneous
(distinct fixed scales), placement order matters; the tree explores orders
explicitly:

* the root spawns one first-level subtree per zone; subtree ``j`` settles
  zone ``j`` first and remembers ``j`` as its first-level index;
* inside a subtree, a zone with more than one candidate is narrowed by the
  same gap-splitting used in the plane;
* once the current zone is down to one candidate, every still-open zone
  ``l`` becomes a branching choice: one child per abutment position generated
  by the already-fixed zones, plus — only when ``l`` exceeds the subtree's
  first-level index, which stops two subtrees from re-deriving the same
  grid-only assignments — one child keeping zone ``l``'s whole grid.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

import numpy as np

from .geometry import EPS, Axis
from .critical import service_breakpoints
from .greedy import greedy
from .model import Dimension, Instance, Placement, Solution
from .reward import RewardMatrix, build_reward_matrix, covered_reward
from .bnb import CandidateGrids, SolverConfig, SolverStats, _axis_indices, partition, priority_score


@dataclass(frozen=True)
class Node1D:
    """Per-zone x candidate sets plus branching bookkeeping.

    ``bsfl`` is the first-level zone index of the enclosing subtree; the root
    (which only dispatches to first-level subtrees) carries ``bsfl == -1``.
    """

    x_sets: tuple[tuple[float, ...], ...]
    bs: int = 0
    bsfl: int = -1


def is_leaf_1d(node: Node1D) -> bool:
    return node.bsfl >= 0 and all(len(s) == 1 for s in node.x_sets)


def leaf_placements_1d(node: Node1D, instance: Instance) -> tuple[Placement, ...]:
    return tuple(
        Placement(node.x_sets[j][0], 0.0, instance.qos_for(j).factors[0])
        for j in range(instance.p)
    )


def branch_1d(
    node: Node1D, instance: Instance, grids: CandidateGrids, config: SolverConfig
) -> list[Node1D]:
    """Children of a non-leaf node, in exploration order."""
    p = instance.p
    eps = config.epsilon
    if node.bsfl < 0:
        return [replace(node, bs=j, bsfl=j) for j in range(p)]
    j = node.bs
    xs = node.x_sets[j]
    scale_of = lambda k: instance.qos_for(k).factors[0]
    if len(xs) > 1:
        parts = partition(xs, config.beta)
        if len(parts) == 1:
            parts = [(v,) for v in xs]
        z = scale_of(j)
        parts = sorted(
            parts,
            key=lambda part: max(
                priority_score(v, instance.dzs, z, instance.eta, Axis.X) for v in part
            ),
            reverse=True,
        )
        return [
            replace(node, x_sets=node.x_sets[:j] + (part,) + node.x_sets[j + 1 :])
            for part in parts
        ]
    # Current zone settled: branch on which open zone to place next.
    fixed = [k for k in range(p) if len(node.x_sets[k]) == 1]
    children: list[Node1D] = []
    for l in range(p):
        if l in fixed:
            continue
        z = scale_of(l)
        vals: list[float] = []
        for k in fixed:
            o1, i1, i2, o2 = service_breakpoints(
                node.x_sets[k][0], scale_of(k), z, instance.base, Axis.X
            )
            cand = (o1, o2, i1, i2) if config.scv_mode == "full" else (o1, o2)
            for v in cand:
                if not any(abs(v - u) < eps for u in vals):
                    vals.append(v)
        for v in vals:
            children.append(
                replace(node, x_sets=node.x_sets[:l] + ((v,),) + node.x_sets[l + 1 :], bs=l)
            )
        if l > node.bsfl:
            children.append(replace(node, bs=l))
    return children


def upper_bound_1d(
    node: Node1D,
    matrices: Mapping[float, RewardMatrix],
    instance: Instance,
    eps: float = EPS,
) -> float:
    """Optimistic value below ``node``: sum of per-zone best isolated rewards."""
    if is_leaf_1d(node):
        return covered_reward(
            instance.dzs, leaf_placements_1d(node, instance), instance.base, instance.eta, eps
        )
    total = 0.0
    for j in range(instance.p):
        m = matrices[instance.qos_for(j).factors[0]]
        xi = _axis_indices(node.x_sets[j], m.xs_array, eps)
        total += float(m.entries[xi, 0].max())
    return total


def solve_1d(instance: Instance, config: SolverConfig | None = None) -> tuple[Solution, SolverStats]:
    """Exact solve of a line instance (per-zone fixed scales)."""
    if instance.dimension is not Dimension.ONE_D:
        raise ValueError("solve_1d() handles line instances; use solve() in the plane")
    config = config or SolverConfig()
    eps = config.epsilon
    stats = SolverStats()
    start = time.perf_counter()

    trace = greedy(instance, eps)
    incumbent = trace.solution.placements
    lower = trace.solution.reward
    stats.best_reward_history.append((0, lower))
    stats.optimal_found_time = time.perf_counter() - start

    if instance.dzs:
        grids = CandidateGrids.from_instance(instance, eps)
        matrices = {
            z: build_reward_matrix(instance.dzs, z, instance.base, instance.eta, eps)
            for z in instance.scale_values()
        }
        root = Node1D(
            x_sets=tuple(grids.x_by_scale[instance.qos_for(j).factors[0]] for j in range(instance.p))
        )
        stack = [root]
        while stack:
            if time.perf_counter() - start > config.time_limit_s:
                stats.optimal = False
                break
            node = stack.pop()
            stats.nodes_explored += 1
            bound = upper_bound_1d(node, matrices, instance, eps)
            if bound <= lower + eps:
                continue
            if is_leaf_1d(node):
                lower = bound
                incumbent = leaf_placements_1d(node, instance)
                stats.best_reward_history.append((stats.nodes_explored, lower))
                stats.optimal_found_time = time.perf_counter() - start
                continue
            stack.extend(reversed(branch_1d(node, instance, grids, config)))

    stats.wall_time = time.perf_counter() - start
    return Solution(incumbent, lower), stats

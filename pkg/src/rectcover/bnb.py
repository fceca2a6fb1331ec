"""Exact planar solver: depth-first branch and bound over candidate grids.

Every service zone's corner coordinates can be restricted, without losing any
optimum, to a finite grid: the inner-demand breakpoints of its own scale plus
the outer service breakpoints generated by zones already pinned down.  The
search tree narrows those per-zone candidate sets step by step:

* scale step — while a zone's scale is open, one child per menu entry fixes
  it and swaps in that scale's grids;
* interval step — a zone's x (later y) candidate set is split at its widest
  coordinate gaps; children are visited in order of decreasing demand mass
  near their candidates, and once a set is a singleton the next zone is up.
  When a zone is first split, extra children pin it directly at the abutment
  positions of already-fixed zones (positions no demand grid contains);
* order step — once every x is fixed, y branching picks which zone to settle
  next: the lowest-indexed zone sitting on its own scale's grid
  (interchangeable by symmetry, so one representative suffices) plus every
  zone sitting on an abutment value.

Zones are processed in index order along x, which is harmless because zones
sharing one scale menu are interchangeable.  A greedy run seeds the
incumbent; a node is cut as soon as its optimistic bound cannot beat the
incumbent by more than ``epsilon``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np

from .geometry import EPS, Axis
from .critical import contains_value, dedup_sorted, inner_demand_grid
from .greedy import greedy
from .model import Dimension, Instance, Placement, QosSet, Solution, reward_rate
from .reward import RewardMatrix, build_reward_matrix, covered_reward

_UNSET = 0.0  # marker for a scale not chosen yet (real scales are >= 1)


@dataclass(frozen=True)
class SolverConfig:
    """Knobs shared by the exact solvers."""

    beta: float = 0.5
    epsilon: float = EPS
    time_limit_s: float = 18000.0
    scv_mode: str = "outer"

    def __post_init__(self) -> None:
        if not 0 < self.beta < 1:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta}")
        if self.scv_mode not in ("outer", "full"):
            raise ValueError(f"scv_mode must be 'outer' or 'full', got {self.scv_mode!r}")


@dataclass(frozen=True)
class Node:
    """Search node: per-zone candidate sets plus branching bookkeeping.

    ``z_vec[j] == 0`` means zone ``j``'s scale is still open (its candidate
    sets then hold the cross-scale grid unions).  ``bs`` is the zone currently
    being narrowed; on the x axis it advances left to right and ``bs == p``
    means every x is fixed.  ``ba`` is the axis being narrowed.
    """

    x_sets: tuple[tuple[float, ...], ...]
    y_sets: tuple[tuple[float, ...], ...]
    z_vec: tuple[float, ...]
    ba: Axis = Axis.X
    bs: int = 0


@dataclass
class SolverStats:
    """Search statistics for one solve call."""

    nodes_explored: int = 0
    best_reward_history: list[tuple[int, float]] = field(default_factory=list)
    wall_time: float = 0.0
    optimal_found_time: float = 0.0
    optimal: bool = True


@dataclass(frozen=True)
class CandidateGrids:
    """Per-scale candidate grids plus their cross-scale unions."""

    x_by_scale: Mapping[float, tuple[float, ...]]
    y_by_scale: Mapping[float, tuple[float, ...]]
    x_union: tuple[float, ...]
    y_union: tuple[float, ...]

    @staticmethod
    def from_instance(instance: Instance, eps: float = EPS) -> "CandidateGrids":
        xs = {}
        ys = {}
        for z in instance.scale_values():
            xs[z] = inner_demand_grid(instance.dzs, z, instance.base, Axis.X, eps).values
            ys[z] = inner_demand_grid(instance.dzs, z, instance.base, Axis.Y, eps).values
        x_union = dedup_sorted([v for vals in xs.values() for v in vals], eps)
        y_union = dedup_sorted([v for vals in ys.values() for v in vals], eps)
        return CandidateGrids(xs, ys, x_union, y_union)


def partition(values: Sequence[float], beta: float) -> list[tuple[float, ...]]:
    """Split sorted ``values`` at every gap wider than ``beta`` times the rest.

    A gap is cut when it exceeds ``beta`` times the widest *other* gap, so a
    two-element set (a single gap, nothing to compare against) always stays
    whole; callers that need progress on an unsplit set enumerate singletons
    instead.
    """
    vals = tuple(values)
    if len(vals) <= 2:
        return [vals]
    gaps = [b - a for a, b in zip(vals, vals[1:])]
    gmax = max(gaps)
    parts: list[tuple[float, ...]] = []
    start = 0
    for i, g in enumerate(gaps):
        if g > beta * gmax:
            parts.append(vals[start : i + 1])
            start = i + 1
    parts.append(vals[start:])
    return parts


def priority_score(
    value: float, dzs, z: float, eta, axis: Axis = Axis.X
) -> float:
    """Decayed demand mass whose span contains ``value`` (spans half-open)."""
    total = 0.0
    for d in dzs:
        if axis is Axis.X:
            lo, size = d.rect.x, d.rect.w
        else:
            lo, size = d.rect.y, d.rect.l
        if lo <= value < lo + size:
            total += reward_rate(d.v, z, eta)
    return total


def is_leaf(node: Node) -> bool:
    return (
        all(z != _UNSET for z in node.z_vec)
        and all(len(s) == 1 for s in node.x_sets)
        and all(len(s) == 1 for s in node.y_sets)
    )


def leaf_placements(node: Node) -> tuple[Placement, ...]:
    return tuple(
        Placement(node.x_sets[j][0], node.y_sets[j][0], node.z_vec[j])
        for j in range(len(node.z_vec))
    )


def _replace_at(sets: tuple[tuple[float, ...], ...], j: int, values: tuple[float, ...]):
    return sets[:j] + (values,) + sets[j + 1 :]


def _service_candidates(
    node: Node,
    j: int,
    z: float,
    instance: Instance,
    axis: Axis,
    exclude: tuple[float, ...],
    config: SolverConfig,
) -> list[float]:
    """Abutment (and, in ``full`` mode, nesting) coordinates for zone ``j``.

    Values are generated by zones whose coordinate on ``axis`` is already a
    singleton with a chosen scale, and filtered against ``exclude`` — zone
    ``j``'s own-scale grid, whose members its interval branching enumerates
    anyway.  Values on *another* scale's grid must stay: they are never
    enumerated for this zone otherwise (with a {1, 2} menu, left-abutting a
    scale-1 zone that sits on a scale-1 grid value always lands on a scale-2
    grid value, so dropping them loses real optima).
    """
    from .critical import service_breakpoints

    eps = config.epsilon
    sets = node.x_sets if axis is Axis.X else node.y_sets
    fixed = [
        (sets[k][0], node.z_vec[k])
        for k in range(instance.p)
        if k != j and len(sets[k]) == 1 and node.z_vec[k] != _UNSET
    ]
    outer: list[float] = []
    inner: list[float] = []
    for coord, owner in fixed:
        o1, i1, i2, o2 = service_breakpoints(coord, owner, z, instance.base, axis)
        outer.extend((o1, o2))
        inner.extend((i1, i2))
    raw = outer + inner if config.scv_mode == "full" else outer
    out: list[float] = []
    for v in raw:
        if contains_value(exclude, v, eps):
            continue
        if any(abs(v - u) < eps for u in out):
            continue
        out.append(v)
    return out


def _order_children(
    node: Node, parts: list[tuple[float, ...]], z: float, instance: Instance, axis: Axis
) -> list[tuple[float, ...]]:
    def part_priority(part: tuple[float, ...]) -> float:
        return max(priority_score(v, instance.dzs, z, instance.eta, axis) for v in part)

    return sorted(parts, key=part_priority, reverse=True)


def _order_step_children(node: Node, instance: Instance, grids: CandidateGrids, eps: float) -> list[Node]:
    """Pick which zone settles its y next (see module docstring, order step).

    Interchangeability holds only for zones sitting on their *own* scale's
    grid (any other assignment of their (x, scale) pairs exists elsewhere in
    the tree); a zone pinned at an abutment position is tied to the zones
    that generated it, even if the value happens to equal some other scale's
    grid value, so each such zone gets its own child.
    """
    open_idx = [j for j in range(instance.p) if len(node.y_sets[j]) > 1]
    chosen: list[int] = []
    rep_found = False
    for j in open_idx:
        if contains_value(grids.x_by_scale[node.z_vec[j]], node.x_sets[j][0], eps):
            if not rep_found:
                chosen.append(j)
                rep_found = True
        else:
            chosen.append(j)
    return [replace(node, ba=Axis.Y, bs=j) for j in sorted(chosen)]


def branch(
    node: Node, instance: Instance, grids: CandidateGrids, config: SolverConfig
) -> list[Node]:
    """Children of a non-leaf node, in exploration order."""
    p = instance.p
    eps = config.epsilon
    if node.ba is Axis.X:
        if node.bs < p:
            j = node.bs
            if node.z_vec[j] == _UNSET:
                # Scale step: one child per menu entry for zone j.
                children = []
                for z in instance.qos_for(j).factors:
                    children.append(
                        replace(
                            node,
                            z_vec=node.z_vec[:j] + (z,) + node.z_vec[j + 1 :],
                            x_sets=_replace_at(node.x_sets, j, grids.x_by_scale[z]),
                            y_sets=_replace_at(node.y_sets, j, grids.y_by_scale[z]),
                        )
                    )
                return children
            # Interval step on x.
            z = node.z_vec[j]
            xs = node.x_sets[j]
            parts = partition(xs, config.beta)
            if len(parts) == 1 and len(xs) > 1:
                parts = [(v,) for v in xs]
            parts = _order_children(node, parts, z, instance, Axis.X)
            children = [
                replace(
                    node,
                    x_sets=_replace_at(node.x_sets, j, part),
                    bs=j + 1 if len(part) == 1 else j,
                )
                for part in parts
            ]
            if xs == grids.x_by_scale[z]:
                # First split of zone j: also pin it at abutment positions of
                # zones already fixed on x.
                for v in _service_candidates(node, j, z, instance, Axis.X, grids.x_by_scale[z], config):
                    children.append(
                        replace(node, x_sets=_replace_at(node.x_sets, j, (v,)), bs=j + 1)
                    )
            return children
        # Every x fixed: hand over to y via the order step.
        return _order_step_children(node, instance, grids, eps)
    # y axis.
    j = node.bs
    ys = node.y_sets[j]
    if len(ys) == 1:
        return _order_step_children(node, instance, grids, eps)
    z = node.z_vec[j]
    parts = partition(ys, config.beta)
    if len(parts) == 1 and len(ys) > 1:
        parts = [(v,) for v in ys]
    parts = _order_children(node, parts, z, instance, Axis.Y)
    children = [
        replace(node, y_sets=_replace_at(node.y_sets, j, part)) for part in parts
    ]
    if ys == grids.y_by_scale[z]:
        for v in _service_candidates(node, j, z, instance, Axis.Y, grids.y_by_scale[z], config):
            children.append(replace(node, y_sets=_replace_at(node.y_sets, j, (v,))))
    return children


def _axis_indices(
    candidates: tuple[float, ...], grid: np.ndarray, eps: float
) -> list[int]:
    """Matrix indices bounding a candidate set along one axis.

    Grid members map to their own column.  A singleton off the grid is
    bounded by its two bracketing grid values (the isolated reward is
    piecewise linear with no local maximum strictly between neighbouring grid
    values), or by the nearest endpoint when it lies outside the grid range.
    """
    n = len(grid)
    if len(candidates) == 1:
        v = candidates[0]
        i = int(np.searchsorted(grid, v))
        if i < n and abs(grid[i] - v) < eps:
            return [i]
        if i > 0 and abs(grid[i - 1] - v) < eps:
            return [i - 1]
        if i == 0:
            return [0]
        if i >= n:
            return [n - 1]
        return [i - 1, i]
    out = []
    for v in candidates:
        i = int(np.searchsorted(grid, v))
        if i < n and abs(grid[i] - v) < eps:
            out.append(i)
        elif i > 0 and abs(grid[i - 1] - v) < eps:
            out.append(i - 1)
        else:  # pragma: no cover - candidate sets are grid subsets by construction
            raise ValueError(f"candidate {v} not on grid")
    return out


def upper_bound(
    node: Node,
    matrices: Mapping[float, RewardMatrix],
    instance: Instance,
    eps: float = EPS,
) -> float:
    """Optimistic value of the best completion below ``node``.

    Leaves are evaluated exactly.  Otherwise each zone contributes the best
    isolated reward reachable from its candidate sets (overlap between zones
    only lowers the true value, so the sum is a valid bound); a zone with an
    open scale contributes the best entry over all scale matrices.
    """
    if is_leaf(node):
        return covered_reward(
            instance.dzs, leaf_placements(node), instance.base, instance.eta, eps
        )
    total = 0.0
    best_any = max(m.max_entry for m in matrices.values())
    for j in range(instance.p):
        z = node.z_vec[j]
        if z == _UNSET:
            total += best_any
            continue
        m = matrices[z]
        xi = _axis_indices(node.x_sets[j], m.xs_array, eps)
        yi = _axis_indices(node.y_sets[j], m.ys_array, eps)
        total += float(m.entries[np.ix_(xi, yi)].max())
    return total


def solve(instance: Instance, config: SolverConfig | None = None) -> tuple[Solution, SolverStats]:
    """Exact solve of a planar instance with a shared scale menu.

    Returns the optimal solution unless the time limit is hit first, in which
    case the best feasible solution found is returned with
    ``stats.optimal == False``.
    """
    if instance.dimension is not Dimension.TWO_D:
        raise ValueError("solve() handles planar instances; use solve_1d() for segments")
    if not isinstance(instance.qos, QosSet):
        raise ValueError("solve() needs a shared scale menu")
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
        p = instance.p
        root = Node(
            x_sets=(grids.x_union,) * p,
            y_sets=(grids.y_union,) * p,
            z_vec=(_UNSET,) * p,
        )
        stack = [root]
        while stack:
            if time.perf_counter() - start > config.time_limit_s:
                stats.optimal = False
                break
            node = stack.pop()
            stats.nodes_explored += 1
            bound = upper_bound(node, matrices, instance, eps)
            if bound <= lower + eps:
                continue
            if is_leaf(node):
                lower = bound
                incumbent = leaf_placements(node)
                stats.best_reward_history.append((stats.nodes_explored, lower))
                stats.optimal_found_time = time.perf_counter() - start
                continue
            stack.extend(reversed(branch(node, instance, grids, config)))

    stats.wall_time = time.perf_counter() - start
    return Solution(incumbent, lower), stats

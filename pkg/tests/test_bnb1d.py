"""Exact solver for the line variant."""

import math

import pytest

from rectcover import (
    BaseServiceZone,
    DemandZone,
    Dimension,
    Instance,
    Placement,
    QosSet,
    Rect,
    brute_force_1d,
    covered_reward,
    greedy,
    solve_1d,
)
from rectcover.bnb import CandidateGrids, SolverConfig
from rectcover.bnb1d import (
    Node1D,
    branch_1d,
    is_leaf_1d,
    leaf_placements_1d,
    upper_bound_1d,
)
from rectcover.reward import build_reward_matrix

from conftest import micro_line, small_1d, square_instance


def test_micro_line_optimum():
    # best: narrow zone on [0,2] at full rate, wide zone picking up [2,4] at
    # half rate; checked against the brute-force reference
    inst = micro_line()
    sol, stats = solve_1d(inst)
    assert stats.optimal
    assert math.isclose(sol.reward, 3.0, rel_tol=0, abs_tol=1e-9)
    got = covered_reward(inst.dzs, sol.placements, inst.base, inst.eta)
    assert math.isclose(got, sol.reward, rel_tol=0, abs_tol=1e-9)


def test_micro_line_greedy_trace():
    tr = greedy(micro_line())
    assert tr.rewards == (2.0, 1.0)
    assert tr.solution.reward == 3.0


def test_root_dispatches_one_subtree_per_zone():
    inst = micro_line()
    cfg = SolverConfig()
    grids = CandidateGrids.from_instance(inst)
    root = Node1D(x_sets=tuple(grids.x_by_scale[inst.qos_for(j).factors[0]] for j in range(inst.p)))
    assert root.bsfl == -1 and not is_leaf_1d(root)
    children = branch_1d(root, inst, grids, cfg)
    assert [c.bsfl for c in children] == [0, 1]
    assert [c.bs for c in children] == [0, 1]
    # dispatching changes no candidate set
    assert all(c.x_sets == root.x_sets for c in children)


def test_leaf_uses_per_zone_scales():
    inst = micro_line()
    leaf = Node1D(x_sets=((0.0,), (2.0,)), bs=1, bsfl=0)
    assert is_leaf_1d(leaf)
    assert leaf_placements_1d(leaf, inst) == (
        Placement(0.0, 0.0, 1.0),
        Placement(2.0, 0.0, 2.0),
    )


def two_segment_line() -> "Instance":
    """Segments [0,4] and [6,10]; the wide zone's grid has two candidates."""
    return Instance(
        dzs=(
            DemandZone(Rect(0.0, 0.0, 4.0, 0.0), 1.0),
            DemandZone(Rect(6.0, 0.0, 4.0, 0.0), 1.0),
        ),
        base=BaseServiceZone(2.0, 0.0),
        p=2,
        qos=(QosSet((1.0,)), QosSet((2.0,))),
        dimension=Dimension.ONE_D,
    )


def test_abutment_children_generated_for_open_zones():
    inst = two_segment_line()
    cfg = SolverConfig()
    grids = CandidateGrids.from_instance(inst)
    assert grids.x_by_scale[2.0] == (0.0, 6.0)
    # zone 0 settled at x=0 (scale 1, width 2); zone 1 still open
    node = Node1D(x_sets=((0.0,), grids.x_by_scale[2.0]), bs=0, bsfl=0)
    children = branch_1d(node, inst, grids, cfg)
    pinned = [c.x_sets[1] for c in children if len(c.x_sets[1]) == 1]
    # left abutment: 0 - 4 = -4; right abutment: 0 + 2 = 2
    assert (-4.0,) in pinned
    assert (2.0,) in pinned
    # zone 1 > bsfl, so its whole grid also stays in play as one child
    assert any(c.x_sets[1] == grids.x_by_scale[2.0] for c in children)


def test_no_duplicate_grid_subtree_for_lower_index():
    inst = micro_line()
    cfg = SolverConfig()
    grids = CandidateGrids.from_instance(inst)
    # inside subtree 1: zone 1 settled first, zone 0 open; the grid-keeping
    # child for zone 0 must not appear (subtree 0 already owns those)
    node = Node1D(x_sets=(grids.x_by_scale[1.0], (0.0,)), bs=1, bsfl=1)
    children = branch_1d(node, inst, grids, cfg)
    assert all(len(c.x_sets[0]) == 1 for c in children)


def test_upper_bound_sound_on_micro_tree():
    inst = micro_line()
    cfg = SolverConfig()
    grids = CandidateGrids.from_instance(inst)
    mats = {z: build_reward_matrix(inst.dzs, z, inst.base, inst.eta) for z in inst.scale_values()}
    root = Node1D(x_sets=tuple(grids.x_by_scale[inst.qos_for(j).factors[0]] for j in range(inst.p)))

    def max_leaf_below(node):
        if is_leaf_1d(node):
            return covered_reward(inst.dzs, leaf_placements_1d(node, inst), inst.base, inst.eta)
        best = 0.0
        for child in branch_1d(node, inst, grids, cfg):
            below = max_leaf_below(child)
            assert upper_bound_1d(child, mats, inst) >= below - 1e-9
            best = max(best, below)
        return best

    assert max_leaf_below(root) <= upper_bound_1d(root, mats, inst) + 1e-9


def test_matches_reference_on_generated_lines():
    for seed, n, p in ((0, 4, 2), (1, 5, 2), (0, 4, 3)):
        inst = small_1d(seed=seed, n=n, p=p)
        sol, stats = solve_1d(inst)
        ref = brute_force_1d(inst)
        assert stats.optimal
        assert math.isclose(sol.reward, ref.reward, rel_tol=1e-9, abs_tol=1e-9)


def test_rejects_planar_instances():
    with pytest.raises(ValueError):
        solve_1d(square_instance())


def test_zero_time_limit_returns_greedy_incumbent():
    inst = small_1d(seed=3, n=6, p=2)
    sol, stats = solve_1d(inst, SolverConfig(time_limit_s=0.0))
    assert not stats.optimal
    assert math.isclose(sol.reward, greedy(inst).solution.reward, rel_tol=0, abs_tol=1e-12)

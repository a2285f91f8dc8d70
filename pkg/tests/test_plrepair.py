import itertools
import random

import pytest

from hstab import generators as G, plrepair
from hstab.plrepair import (DiskError, OracleFailure, RepairError, StepBudgetExceeded, TriangulatedDisk,
                            bad_measure, find_bad_simplices, interior_link_condition, is_bad, new_state)
from hstab.scomplex import SimplicialComplex, closure, octahedron, simplicial_homology

OCT = octahedron()  # antipodes (0,1), (2,3), (4,5); equator 0-2-1-3
EQUATOR = [0, 2, 1, 3]


def _disk_ok(D: TriangulatedDisk) -> bool:
    return not plrepair.disk_problems(D) and D.complex.euler_characteristic() == 1


def test_disk_constructors_are_valid():
    for D in [plrepair.interval(1), plrepair.interval(4), plrepair.fan_disk(3), plrepair.fan_disk(6),
              plrepair.square_grid_disk(1), plrepair.square_grid_disk(2)]:
        assert _disk_ok(D)
        H = simplicial_homology(D.complex, reduced=True)
        assert H.nonzero_degrees() == []


def test_disk_rejects_non_full_boundary():
    K = closure([[0, 1, 2]])
    B = SimplicialComplex([(0,), (1,), (2,), (0, 1), (1, 2), (0, 2)])
    with pytest.raises(DiskError):
        TriangulatedDisk(K, B, 2)  # no interior, and the triangle spans the boundary
    with pytest.raises(DiskError):
        TriangulatedDisk(closure([[0, 1], [1, 2], [1, 3]]), SimplicialComplex([(0,), (2,)]), 1)


def test_bad_simplex_rules():
    assert is_bad((0, 1), {0: "x", 1: "x"})
    assert not is_bad((0, 1, 2), {0: "x", 1: "x", 2: "y"})
    assert is_bad((0, 1, 2), {0: "x", 1: "x", 2: "y"}, rule="any")
    assert is_bad((0, 1, 2), {0: "x", 1: "x", 2: "x"})
    with pytest.raises(ValueError):
        is_bad((0,), {0: 1}, rule="some")


def test_find_bad_on_path():
    D = plrepair.interval(1)  # 0 - 1 - 2, boundary {0, 2}
    st = new_state(D, OCT, {0: 0, 1: 0, 2: 2})
    assert find_bad_simplices(st) == [(0, 1)]
    st = new_state(D, OCT, {0: 0, 1: 2, 2: 0})
    assert find_bad_simplices(st) == []


def test_find_bad_lists_triangle_and_edge_under_any_rule():
    D = plrepair.fan_disk(3)
    st = new_state(D, OCT, {0: 0, 1: 2, 2: 4, 3: 0})
    assert find_bad_simplices(st, rule="any") == [(0, 1, 3), (0, 2, 3), (0, 3)]
    assert find_bad_simplices(st) == [(0, 3)]


def _two_centre_square() -> TriangulatedDisk:
    """Square 0-1-2-3 with interior edge 4-5."""
    tris = [(0, 1, 4), (1, 4, 5), (1, 2, 5), (2, 3, 5), (3, 4, 5), (0, 3, 4)]
    B = SimplicialComplex([(v,) for v in range(4)] + [(0, 1), (1, 2), (2, 3), (0, 3)])
    return TriangulatedDisk(closure(tris), B, 2)


def _collapsed_square():
    D = _two_centre_square()
    h = dict(zip(range(4), EQUATOR))
    h[4] = h[5] = 4
    return D, h


def test_single_edge_repair_uses_one_fresh_vertex():
    D, h = _collapsed_square()
    st = new_state(D, OCT, h)
    assert bad_measure(st) == (0, 1)
    st2, rec = plrepair.repair_step(st, (4, 5))
    assert len(rec.fresh) == 1 and st2.h[rec.fresh[0]] in (0, 1)
    assert bad_measure(st2) == (0, 0) and _disk_ok(st2.disk)
    assert all(st2.h[v] == h[v] for v in D.boundary.vertices)


def test_step_preconditions():
    D, h = _collapsed_square()
    st = new_state(D, OCT, h)
    with pytest.raises(RepairError):
        plrepair.repair_step(st, (1, 4))  # not bad
    with pytest.raises(RepairError):
        plrepair.repair_step(st, (0, 1))  # boundary


CONSTANT = {0: 0, 1: 2, 2: 2, 3: 2, 4: 1}  # interval(3), interior collapsed onto a common neighbour


def test_interval_with_constant_initial_map():
    res = plrepair.repair(plrepair.interval(3), {0: 0, 4: 1}, OCT, initial=CONSTANT)
    g = res.map
    assert g(0) == 0 and g(4) == 1
    assert all(g(a) != g(b) for a, b in res.disk.complex.simplices_of_dim(1))
    assert res.trace and all(r.measure_after < r.measure_before for r in res.trace)


def test_equator_square_collapsed_interior():
    D = plrepair.square_grid_disk(2)
    ring = [2, 4, 3, 5]  # the link of pole 0
    bmap = {v: ring[i % 4] for i, v in enumerate(plrepair.boundary_cycle(D))}
    init = {**bmap, **{v: 0 for v in D.interior_vertices}}
    res = plrepair.repair(D, bmap, OCT, initial=init)
    assert res.trace and not find_bad_simplices(res.state) and interior_link_condition(res.state)
    assert all(res.state.h[v] == bmap[v] for v in D.boundary.vertices)
    assert all(r.measure_after < r.measure_before for r in res.trace)


def test_already_good_extension_takes_zero_steps():
    D = plrepair.fan_disk(4)
    h = dict(zip(range(4), EQUATOR))
    h[4] = 4
    res = plrepair.repair(D, {v: h[v] for v in range(4)}, OCT, initial=h)
    assert res.trace == [] and res.state.h == h


def test_initial_extension_is_built_when_missing():
    D = plrepair.fan_disk(4)
    res = plrepair.repair(D, dict(zip(range(4), EQUATOR)), OCT)
    assert not find_bad_simplices(res.state)


def test_fill_polygon_examples():
    counter = itertools.count(100)
    eq = plrepair.fill_polygon([10, 11, 12, 13], dict(zip([10, 11, 12, 13], EQUATOR)), OCT, 4,
                               lambda: next(counter))
    tris = [s for s in eq.simplices if len(s) == 3]
    assert len(tris) == 4 and set(eq.values.values()) <= {4, 5} and len(eq.values) == 1
    tri = plrepair.fill_polygon([10, 11, 12], {10: 0, 11: 2, 12: 4}, OCT, 4, lambda: next(counter))
    assert eq.cost >= tri.cost and not tri.values
    assert [s for s in tri.simplices if len(s) == 3] == [(10, 11, 12)]


def test_oracle_failure_on_disconnected_link():
    L = SimplicialComplex([(0,), (1,)])
    target = SimplicialComplex([("a",), ("b",)])
    with pytest.raises(OracleFailure):
        plrepair.cone_extension_oracle(L, {0: "a", 1: "b"}, target, lambda: 99)


def test_rejects_target_that_is_not_wcm():
    X = closure([[0, 1], [2, 3]])
    with pytest.raises(RepairError):
        plrepair.repair(plrepair.interval(1), {0: 0, 2: 2}, X)


def test_rejects_initial_disagreeing_with_boundary():
    with pytest.raises(RepairError):
        plrepair.repair(plrepair.interval(1), {0: 0, 2: 1}, OCT, initial={0: 2, 1: 4, 2: 1})


def test_step_budget():
    with pytest.raises(StepBudgetExceeded):
        plrepair.repair(plrepair.interval(3), {0: 0, 4: 1}, OCT, initial=CONSTANT, max_steps=1)


def test_trace_lines_are_replayable():
    D = plrepair.interval(3)
    runs = [plrepair.repair(D, {0: 0, 4: 1}, OCT, initial=CONSTANT).trace_lines() for _ in range(2)]
    assert runs[0] == runs[1] and runs[0][0].startswith("step 0: removed")


@pytest.mark.parametrize("seed", range(4))
def test_random_instances(seed):
    rng = random.Random(100 + seed)
    for X in (OCT, G.join_of_zero_spheres(3)):
        for n in (1, 2):
            disk, bmap, init = G.random_repair_instance(rng, n, X)
            res = plrepair.repair(disk, bmap, X, initial=init)
            assert all(res.state.h[v] == bmap[v] for v in disk.boundary.vertices)
            assert not find_bad_simplices(res.state) and interior_link_condition(res.state)
            assert _disk_ok(res.disk)

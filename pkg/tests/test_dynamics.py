import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyrev.classify import ConditionId, OrderInfo, WitnessKind, analyze
from polyrev.corpus import row_instance
from polyrev.dynamics import (
    CurveShape, DynamicsError, NumericMap, find_symmetric_orbits, fix_curve, iterate, reversibility_defect,
)
from polyrev.maps import GeneralisedStandardMap, PlanarPolyMap, X, Y
from polyrev.poly import UniPoly

y = UniPoly([0, 1])
HENON = GeneralisedStandardMap(UniPoly([0, -1]), UniPoly([0, 2, -2]))
R2 = PlanarPolyMap((X, -Y + 2 * X - 2 * X ** 2), (X, -Y + 2 * X - 2 * X ** 2))


def test_fix_curve_examples():
    fc = fix_curve(R2)
    assert fc.shape is CurveShape.GRAPH_X and fc.g == UniPoly([0, 1, -1])
    assert fix_curve(PlanarPolyMap((Y, X), (Y, X))).shape is CurveShape.DIAGONAL
    R1 = PlanarPolyMap((-X - Y ** 3, Y), (-X - Y ** 3, Y))
    fc = fix_curve(R1)
    assert fc.shape is CurveShape.GRAPH_Y and fc.g == UniPoly([0, 0, 0, Fraction(-1, 2)])


def test_fix_curve_unrecognised():
    # an order-4 rotation is not an involution with a curve of fixed points
    with pytest.raises(DynamicsError, match="no closed-form fixed set"):
        fix_curve(PlanarPolyMap((X + Y ** 2 * X, Y), (X, Y)))


def test_iterate_examples():
    NL = NumericMap.from_exact(HENON)
    assert len(iterate(NL, (0.3, 0.1), 0)) == 1
    orb = iterate(NL, (0.0, 0.0), 5)
    assert np.all(orb.points == 0.0) and not orb.truncated
    fwd = iterate(NL, (0.2, 0.05), 50).points[-1]
    back = iterate(NL, tuple(fwd), 50, backward=True).points[-1]
    assert np.allclose(back, (0.2, 0.05), atol=1e-10)


def test_iterate_flags_overflow():
    NL = NumericMap.from_exact(GeneralisedStandardMap(y ** 3, y ** 3))
    orb = iterate(NL, (5.0, 5.0), 50)
    assert orb.truncated and len(orb) < 51


def test_henon_fixed_points():
    search = find_symmetric_orbits(HENON, R2, 1)
    pts = sorted(o.points[0] for o in search.orbits)
    assert len(pts) == 2
    assert np.allclose(pts, [(0.0, 0.0), (1.0, 0.0)], atol=1e-10)
    assert all(o.residual < 1e-10 for o in search.orbits)


def test_henon_has_no_period_two_orbit_before_doubling():
    # the elliptic fixed point has trace 2 - a; period doubling happens at a = 4
    assert find_symmetric_orbits(HENON, R2, 2).orbits == []


def test_period_two_orbit_after_doubling():
    # p2 = 5x - 2x^2: (-1/2, -3/2) -> (1, 3/2) -> (-1/2, -3/2), checked by hand
    L = GeneralisedStandardMap(UniPoly([0, -1]), UniPoly([0, 5, -2]))
    R = PlanarPolyMap.from_forward(X, -Y + X * 5 - X * X * 2)
    search = find_symmetric_orbits(L, R, 2, (-3, 3))
    assert len(search.orbits) == 1
    orb = search.orbits[0]
    assert orb.period == 2 and orb.residual < 1e-10
    assert np.allclose(sorted(orb.points), [(-0.5, -1.5), (1.0, 1.5)], atol=1e-9)
    assert abs(search.start_curve.residual(*orb.points[0])) < 1e-9
    # R maps the orbit onto itself
    for p in orb.points:
        rp = (R.forward[0].evaluate_float(*p), R.forward[1].evaluate_float(*p))
        assert min(math.dist(rp, q) for q in orb.points) < 1e-8


def test_cube_origin_found_through_every_involution():
    cube = GeneralisedStandardMap(y ** 3, y ** 3)
    r = analyze(cube)
    invs = [w for w in r.witnesses if w.kind is WitnessKind.REVERSING and w.order_info is OrderInfo.INVOLUTION]
    assert len(invs) == 4  # R1, R2 and their companions
    for w in invs:
        orbits = find_symmetric_orbits(cube, w.map, 1, (-1, 1)).orbits
        assert any(max(abs(v) for v in o.points[0]) < 1e-10 for o in orbits), w.name


def test_swap_reverses_diagonal_symmetric_map():
    # p1 = y^2, p2 = -y^2 reversed by R3-type swap; period 1 seeds lie on y = x
    L = GeneralisedStandardMap(y ** 2, -(y ** 2))
    R = next(w for w in analyze(L).witnesses if w.condition is ConditionId.T1_R4 and w.companion_of is None)
    fc = fix_curve(R.map)
    assert fc.shape in (CurveShape.DIAGONAL, CurveShape.ANTIDIAGONAL, CurveShape.GRAPH_X, CurveShape.GRAPH_Y)
    for o in find_symmetric_orbits(L, R.map, 1).orbits:
        assert abs(fc.residual(*o.points[0])) < 1e-9


def test_search_argument_errors():
    with pytest.raises(DynamicsError):
        find_symmetric_orbits(HENON, R2, 0)
    with pytest.raises(DynamicsError):
        find_symmetric_orbits(HENON, PlanarPolyMap((X + 1, Y), (X - 1, Y)), 1)


def test_henon_reversibility_defect_along_orbit():
    NL = NumericMap.from_exact(HENON)
    orb = iterate(NL, (0.1, 0.0), 1000)
    assert not orb.truncated
    assert reversibility_defect(HENON, R2, orb.points) < 1e-9


@given(st.integers(0, 10 ** 6))
def test_area_preservation(seed):
    rng = random.Random(seed)
    L = row_instance(rng, rng.choice(list(ConditionId)), max_deg=4)
    NL = NumericMap.from_exact(L)
    for _ in range(5):
        x, y0 = rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)
        assert abs(NL.jacobian_det(x, y0) - 1.0) < 1e-12 * max(1.0, abs(NL.jacobian_det(x, y0)))


@given(st.integers(0, 10 ** 6))
def test_certified_reversors_hold_numerically(seed):
    rng = random.Random(seed)
    row = rng.choice([c for c in ConditionId if c.is_reversing])
    L = row_instance(rng, row, max_deg=4)
    pts = [(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)) for _ in range(5)]
    for w in analyze(L, companions=False).witnesses:
        if w.kind is WitnessKind.REVERSING:
            # relative to the size of the images, which can be large far from the centres
            NL = NumericMap.from_exact(L)
            scale = 1.0 + max(abs(v) for p in pts for v in NL.forward(*p))
            scale *= 1.0 + max(abs(float(c)) for f in w.map.forward for _, c in f.items())
            assert reversibility_defect(L, w.map, pts) < 1e-12 * scale ** 3

import random

from hypothesis import given
from hypothesis import strategies as st

from polyrev.classify import analyze, WitnessKind
from polyrev.corpus import random_standard_map, row_instance
from polyrev.classify import ConditionId
from polyrev.maps import GeneralisedStandardMap, PlanarPolyMap, X, Y, mcmillan_planar
from polyrev.poly import UniPoly
from polyrev.verify import check_reversing, check_symmetry, element_order, maps_equal, power_forward

y = UniPoly([0, 1])
HENON = GeneralisedStandardMap(UniPoly([0, -1]), UniPoly([0, 2, -2]))
R2 = PlanarPolyMap((X, -Y + 2 * X - 2 * X ** 2), (X, -Y + 2 * X - 2 * X ** 2))
SWAP = PlanarPolyMap((Y, X), (Y, X))
POINT_REFLECTION = PlanarPolyMap((-X, -Y), (-X, -Y))


def test_maps_equal():
    F = HENON.to_planar()
    assert maps_equal(F, F)
    assert not maps_equal(F, mcmillan_planar(UniPoly([0, 0, 2])))


def test_check_symmetry_examples():
    cube = GeneralisedStandardMap(y ** 3, y ** 3)
    assert check_symmetry(cube, cube)
    assert check_symmetry(POINT_REFLECTION, cube)
    assert not check_symmetry(POINT_REFLECTION, GeneralisedStandardMap(y ** 2, y ** 2))


def test_check_reversing_examples():
    assert check_reversing(R2, HENON)
    assert check_reversing(SWAP, mcmillan_planar(UniPoly([1, 3, 0, -1])))
    assert not check_reversing(R2, GeneralisedStandardMap(y ** 2, y ** 3 + y ** 2))


def test_element_order_examples():
    assert element_order(SWAP) == 2
    R5 = PlanarPolyMap((Y, -X), (-Y, X))
    assert element_order(R5) == 4
    assert element_order(HENON, 12) is None
    assert element_order(PlanarPolyMap.identity()) == 1


def test_power_forward():
    F = HENON.to_planar()
    assert power_forward(F, 2) == (F @ F).forward


@given(st.integers(0, 10 ** 6), st.sampled_from([c for c in ConditionId if c.is_reversing]))
def test_reversing_closure_laws(seed, row):
    L = row_instance(random.Random(seed), row, max_deg=4)
    Lm = L.to_planar()
    for w in analyze(L, companions=False).witnesses:
        if w.kind is not WitnessKind.REVERSING:
            continue
        R = w.map
        assert check_reversing(Lm @ R, L)
        assert check_symmetry(R @ R, L)
        if element_order(R, 2) == 2:
            assert element_order(Lm @ R, 2) == 2


@given(st.integers(0, 10 ** 6))
def test_symmetries_of_inverse(seed):
    rng = random.Random(seed)
    L = row_instance(rng, rng.choice([ConditionId.T1_S1, ConditionId.T1_S2, ConditionId.T1_S3]), max_deg=4)
    Linv = L.to_planar().inverted()
    for S in (POINT_REFLECTION, SWAP, L.to_planar()):
        assert check_symmetry(S, L) == check_symmetry(S, Linv)
    M = random_standard_map(rng, (2, 3), (2, 3))
    assert check_symmetry(POINT_REFLECTION, M) == check_symmetry(POINT_REFLECTION, M.to_planar().inverted())

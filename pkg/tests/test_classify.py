import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from _oracles import reversors
from polyrev.classify import (
    ConditionId as C, ConsistencyError, NoNormalForm, OrderInfo, WitnessKind, analyze, build_witness,
    classification_type, condition_holds, detect, generator_map, group_structure, normal_form, s1_prime,
)
from polyrev.corpus import parity_poly, row_instance
from polyrev.maps import GeneralisedStandardMap, ScopeError, WordType, X, Y
from polyrev.poly import Parity, UniPoly, parity_center
from polyrev.verify import check_reversing, check_symmetry

y = UniPoly([0, 1])
HENON = GeneralisedStandardMap(UniPoly([0, -1]), UniPoly([0, 2, -2]))
CUBE = GeneralisedStandardMap(y ** 3, y ** 3)
SQUARE = GeneralisedStandardMap(y ** 2, y ** 2)
IRREVERSIBLE = GeneralisedStandardMap(y ** 2, y ** 3 + y ** 2)


def labels(L):
    return {m.label() for m in detect(L)}


def ids(L):
    return {m.id for m in detect(L)}


# -- detection ---------------------------------------------------------------

def test_detect_henon():
    assert ids(HENON) == {C.T2_R2}


def test_detect_cube():
    assert labels(CUBE) == {
        "T1_S1(c=0, e=0)", "T1_S2(a=1, e=0)", "T1_S2(a=-1, e=0)", "T1_R1(c=0)", "T1_R2(e=0)",
        "T1_R5(a=1, c=0, e=0)", "T1_R5(a=-1, c=0, e=0)",
    }


def test_detect_square():
    # the R4 parameter is a = -1: p2(y) = -(1/a) p1(y/a + e) with p1 = p2 = y^2
    assert labels(SQUARE) == {"T1_S2(a=1, e=0)", "T1_R3(c=0, e=0)", "T1_R4(a=-1, e=0)"}


def test_detect_irreversible():
    assert detect(IRREVERSIBLE) == []


def test_scope_errors():
    with pytest.raises(ScopeError, match="outside the classification scope"):
        detect(GeneralisedStandardMap(y, UniPoly([0, 2])))
    with pytest.raises(ScopeError):
        detect(GeneralisedStandardMap(y ** 2, UniPoly([3])))
    with pytest.raises(ScopeError):
        detect(GeneralisedStandardMap(UniPoly([1]), y ** 2))


def test_classification_types():
    assert classification_type(CUBE) is WordType.TYPE_I
    assert classification_type(HENON) is WordType.TYPE_II
    assert classification_type(GeneralisedStandardMap(y ** 2, UniPoly([1, 2]))) is WordType.TYPE_III


def test_type_iii_is_handled_through_the_swapped_inverse():
    L = GeneralisedStandardMap(y ** 2, UniPoly([1, 2]))
    ms = detect(L)
    assert {m.id for m in ms} == {C.T2_R2} and all(m.swapped for m in ms)
    r = analyze(L)
    for w in r.witnesses:
        assert check_reversing(w.map, L)
    nf = r.normal_form.map
    assert nf.p2 == y


def test_irrational_parameter_gives_caveat():
    # S2 would need 2 y^3 = (1/a) (y/a)^3, i.e. a^4 = 1/2
    r = analyze(GeneralisedStandardMap(y ** 3, 2 * y ** 3))
    assert not any(m.id in (C.T1_S2, C.T1_R5) for m in r.matches)
    assert r.caveats


# -- witnesses ---------------------------------------------------------------

def test_henon_witness():
    w = build_witness(detect(HENON)[0], HENON)
    assert w.map.forward == (X, -Y + 2 * X - 2 * X ** 2)
    assert w.order_info is OrderInfo.INVOLUTION


def test_cube_witnesses():
    r = analyze(CUBE)
    s2 = next(w for w in r.witnesses if w.name == "S2")
    assert s2.map.forward == (Y, X + Y ** 3) and s2.order_info is OrderInfo.SQRT_L
    r5 = next(w for w in r.witnesses if w.name == "R5")
    assert r5.map.forward == (Y, -X) and r5.order_info is OrderInfo.ORDER4


@given(st.integers(0, 10 ** 6), st.sampled_from(list(C)))
def test_constructed_rows_are_detected_and_witnessed(seed, row):
    L = row_instance(random.Random(seed), row, max_deg=5)
    ms = detect(L)
    assert row in {m.id for m in ms}
    for m in ms:
        assert condition_holds(m, L)
        w = build_witness(m, L)
        rel = check_reversing if w.kind is WitnessKind.REVERSING else check_symmetry
        assert rel(w.map, L)


def test_s3_square_is_shifted_s1_times_l():
    L = GeneralisedStandardMap(y ** 3 + y, -(y ** 3 + y))
    m = next(m for m in detect(L) if m.id is C.T1_S3)
    w = build_witness(m, L)
    assert (w.map @ w.map).forward == (s1_prime(m) @ L.to_planar()).forward


# -- group structure ---------------------------------------------------------

@pytest.mark.parametrize("L, tag, desc", [
    (HENON, "D_inf", "<L> x_s <R2>"),
    (CUBE, "(C_inf x C_2) x_s C_2", "(<S2> x <S1>) x_s <R1>"),
    (IRREVERSIBLE, "C_inf", "<L>"),
    (SQUARE, "D_inf", "<S2> x_s <R3>"),
    (GeneralisedStandardMap(y ** 3 + y, -(y ** 3 + y)), "D_inf x C_2", "(<S3> x_s <R1>) x <S1>"),
    (GeneralisedStandardMap(UniPoly([0, -1]), y ** 3 + y), "D_inf x C_2", "(<L> x_s <R2>) x <S1>"),
    (GeneralisedStandardMap(y ** 3, y ** 2), "D_inf", "<L> x_s <R2>"),
])
def test_group_structure_rows(L, tag, desc):
    r = analyze(L)
    assert r.structure.tag == tag and r.structure.description == desc
    for g in r.structure.symmetry_generators:
        assert check_symmetry(generator_map(r, g), L)
    if r.structure.reversing_generator:
        assert check_reversing(generator_map(r, r.structure.reversing_generator), L)


def test_inconsistent_match_sets_are_rejected():
    from polyrev.classify import ConditionMatch
    fake = [ConditionMatch(C.T1_S2), ConditionMatch(C.T1_S3)]
    with pytest.raises(ConsistencyError):
        group_structure(fake, CUBE)


# -- normal form -------------------------------------------------------------

def test_normal_form_s1_shift():
    rng = random.Random(3)
    p1 = parity_poly(rng, 3, Fraction(2), True)   # odd about e/2 = 2
    p2 = parity_poly(rng, 5, Fraction(1), True)   # odd about c/2 = 1
    L = GeneralisedStandardMap(p1, p2)
    nf = normal_form(L, [m for m in detect(L) if m.id is C.T1_S1])
    assert (nf.change.beta, nf.change.delta) == (-1, -2)
    assert parity_center(nf.map.p1, Parity.ODD).center == 0
    assert parity_center(nf.map.p2, Parity.ODD).center == 0


def test_normal_form_affine_p1():
    L = GeneralisedStandardMap(UniPoly([3, -2]), y ** 4 + y)
    nf = analyze(L).normal_form
    assert (nf.change.gamma, nf.change.delta) == (-2, 3)
    assert nf.map.p1 == y


def test_normal_form_identity_and_errors():
    assert analyze(CUBE).normal_form.change.is_identity()
    with pytest.raises(NoNormalForm, match="no normal form: map is asymmetric and irreversible"):
        normal_form(IRREVERSIBLE, [])


@given(st.integers(0, 10 ** 6), st.sampled_from(list(C)))
def test_normal_form_satisfies_its_row(seed, row):
    L = row_instance(random.Random(seed), row, max_deg=5)
    nf = analyze(L).normal_form
    assert nf.row in ids(nf.map)


# -- laws over random maps ---------------------------------------------------

def _random_map(rng, lo=-2, hi=2, max_deg=4):
    while True:
        d1, d2 = rng.randint(1, max_deg), rng.randint(1, max_deg)
        if d1 > 1 or d2 > 1:
            break
    mk = lambda d: UniPoly([rng.randint(lo, hi) for _ in range(d)] + [rng.choice([v for v in range(lo, hi + 1) if v])])  # noqa: E731
    return GeneralisedStandardMap(mk(d1), mk(d2))


@given(st.integers(0, 10 ** 6))
def test_implication_laws(seed):
    L = _random_map(random.Random(seed))
    got = ids(L)
    if L.p1.degree >= 2 and L.p2.degree >= 2:
        has = lambda s: getattr(C, "T1_" + s) in got  # noqa: E731
        if has("S1"):
            assert has("R1") and has("R2")
        assert has("R5") == (has("S1") and has("S2"))
        assert sum(map(has, ("R3", "R4", "S2"))) != 2
        assert not (has("S2") and has("S3"))
        if any(map(has, ("S2", "S3", "R4", "R5"))):
            assert L.p1.degree == L.p2.degree
    else:
        assert C.T2_R2 in got
        if C.T2_S1 in got:
            assert C.T2_R1 in got


@given(st.integers(0, 10 ** 6))
def test_reversibility_agrees_with_brute_force_oracle(seed):
    L = _random_map(random.Random(seed))
    verdict = any(m.id.is_reversing for m in detect(L))
    assert verdict == bool(reversors(L.p1.coeffs, L.p2.coeffs))

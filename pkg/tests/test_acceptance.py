"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line.

Run with pytest (the lines are repeated in the terminal summary) or directly:

    python tests/test_acceptance.py
"""

import functools
import math
import os
import random
import sys
import time

import numpy as np

sys.path.insert(0, os.path.dirname(__file__))

from _oracles import exact_reversing, reversors  # noqa: E402
from polyrev.classify import (  # noqa: E402
    ConditionId as C, OrderInfo, WitnessKind, analyze, detect, generator_map, group_structure, s1_prime,
)
from polyrev.corpus import (  # noqa: E402
    exhaustive_maps, random_affine, random_letters, random_poly, random_reduced_letters, row_instance,
)
from polyrev.dynamics import NumericMap, find_symmetric_orbits, iterate, reversibility_defect  # noqa: E402
from polyrev.maps import (  # noqa: E402
    X, Y, GeneralisedStandardMap, LetterClass, compose_words, evaluate, invert_word, letter_class,
    letter_product, reduce_word,
)
from polyrev.poly import UniPoly  # noqa: E402
from polyrev.verify import check_reversing, check_symmetry  # noqa: E402

RESULTS = []
ROW_INSTANCES = 50
y = UniPoly([0, 1])
HENON = GeneralisedStandardMap(UniPoly([0, -1]), UniPoly([0, 2, -2]))


def record(number, title, ok, detail):
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def _sq(F):
    return F @ F


# ---------------------------------------------------------------------------
# shared corpora
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def row_corpus():
    rng = random.Random(20240601)
    return tuple((row, row_instance(rng, row, max_deg=6)) for row in C for _ in range(ROW_INSTANCES))


@functools.lru_cache(maxsize=None)
def exhaustive_results():
    """(map, matches, oracle reversors) for every map of the exhaustive corpus."""
    out = []
    for L in exhaustive_maps():
        out.append((L, detect(L), reversors(L.p1.coeffs, L.p2.coeffs)))
    return tuple(out)


def quadratic_corpus(n=600, seed=4):
    rng = random.Random(seed)
    return [GeneralisedStandardMap(random_poly(rng, 2), random_poly(rng, 2)) for _ in range(n)]


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def test_criterion_01_row_soundness():
    t0 = time.perf_counter()
    missing, bad = [], []
    n_wit = 0
    counts = {row: 0 for row in C}
    for row, L in row_corpus():
        counts[row] += 1
        r = analyze(L)
        if row not in {m.id for m in r.matches}:
            missing.append((row.value, str(L)))
        for w in r.witnesses:
            n_wit += 1
            rel = check_reversing if w.kind is WitnessKind.REVERSING else check_symmetry
            if not rel(w.map, L):
                bad.append((w.name, str(L)))
    dt = time.perf_counter() - t0
    ok = not missing and not bad and min(counts.values()) >= 50 and dt < 30
    record(1, "condition-row soundness", ok,
           f"{len(C)} rows x {min(counts.values())} instances, {n_wit} witnesses, "
           f"{len(missing)} undetected, {len(bad)} failing, {dt:.1f}s (< 30s)")
    assert ok, (missing[:3], bad[:3], dt)


def test_criterion_02_order_certificates():
    fails = []
    checked = 0
    for row, L in row_corpus():
        Lm = L.to_planar()
        r = analyze(L)
        for w in r.witnesses:
            F = w.map
            name = w.name.split(" o ")
            base = w.name if w.companion_of is None else w.companion_of
            if base in ("R1", "R2", "R3", "R4"):
                ok = _sq(F).is_identity()
            elif base == "R5":
                ok = not _sq(F).is_identity() and _sq(_sq(F)).is_identity()
            elif base == "S2":
                ok = _sq(F).forward == Lm.forward
            elif base == "S3":
                m = next(m for m in r.matches if m.id is C.T1_S3)
                ok = _sq(F).forward == (s1_prime(m) @ Lm).forward
            elif base == "S1":
                ok = _sq(F).is_identity()
            else:
                ok = True
            checked += 1
            if not ok:
                fails.append((w.name, str(L), name))
    ok = not fails
    record(2, "order certificates", ok, f"{checked} witnesses checked, {len(fails)} failures")
    assert ok, fails[:3]


def test_criterion_03_oracle_completeness():
    t0 = time.perf_counter()
    results = exhaustive_results()
    dis = []
    unverified = 0
    for L, matches, found in results:
        verdict = any(m.id.is_reversing for m in matches)
        if verdict != bool(found):
            dis.append(str(L))
        if found and not exact_reversing(found[0], L.p1.coeffs, L.p2.coeffs):
            unverified += 1
    dt = time.perf_counter() - t0
    n_rev = sum(1 for _, ms, _ in results if any(m.id.is_reversing for m in ms))
    ok = not dis and not unverified and dt < 300
    record(3, "completeness vs brute-force oracle", ok,
           f"{len(results)} maps, {n_rev} reversible, {len(dis)} disagreements, {dt:.1f}s (< 300s)")
    assert ok, dis[:5]


def test_criterion_04_quadratic_reversibility():
    maps = quadratic_corpus()
    miss = [str(L) for L in maps if C.T1_R3 not in {m.id for m in detect(L)}]
    ok = not miss and len(maps) >= 500
    record(4, "quadratic maps are reversible (R3)", ok, f"{len(maps) - len(miss)}/{len(maps)} match R3")
    assert ok, miss[:3]


def test_criterion_05_minimal_irreversibility():
    L = GeneralisedStandardMap(y ** 2, y ** 3 + y ** 2)
    r = analyze(L)
    deg = L.to_planar().degree
    oracle = reversors(L.p1.coeffs, L.p2.coeffs)
    quad_ok = all(C.T1_R3 in {m.id for m in detect(M)} for M in quadratic_corpus())
    ok = (not r.reversible and not r.has_nontrivial_symmetry and deg == 6 and not oracle and quad_ok)
    record(5, "minimal irreversibility", ok,
           f"p1=y^2, p2=y^3+y^2: reversible={r.reversible}, deg L={deg}, oracle witnesses={len(oracle)}; "
           f"no degree-4 counterexample in the quadratic corpus: {quad_ok}")
    assert ok


def _law_violations(L, ids):
    out = []
    if L.p1.degree >= 2 and L.p2.degree >= 2:
        has = lambda s: getattr(C, "T1_" + s) in ids  # noqa: E731
        if has("S1") and not (has("R1") and has("R2")):
            out.append("S1 => R1, R2")
        if has("R5") != (has("S1") and has("S2")):
            out.append("R5 <=> S1, S2")
        if sum(map(has, ("R3", "R4", "S2"))) == 2:
            out.append("two of R3, R4, S2 => third")
        if has("S2") and has("S3"):
            out.append("S2 and S3 exclusive")
        if any(map(has, ("S2", "S3", "R4", "R5"))) and L.p1.degree != L.p2.degree:
            out.append("degree guard")
    else:
        if C.T2_R2 not in ids:
            out.append("T2_R2 always")
        if C.T2_S1 in ids and C.T2_R1 not in ids:
            out.append("T2_S1 => T2_R1")
    return out


def test_criterion_06_implication_laws():
    viol = []
    n = 0
    for L, matches, _ in exhaustive_results():
        n += 1
        viol += [(v, str(L)) for v in _law_violations(L, {m.id for m in matches})]
    for _, L in row_corpus():
        n += 1
        viol += [(v, str(L)) for v in _law_violations(L, {m.id for m in detect(L)})]
    for L in quadratic_corpus():
        n += 1
        viol += [(v, str(L)) for v in _law_violations(L, {m.id for m in detect(L)})]
    ok = not viol
    record(6, "implication laws", ok, f"{n} maps, {len(viol)} violations")
    assert ok, viol[:5]


EXEMPLARS = [
    ("Henon lambda=0", HENON, "D_inf", "<L> x_s <R2>"),
    ("Henon-like, p2 odd", GeneralisedStandardMap(UniPoly([0, -1]), UniPoly([0, -2, 0, 2])),
     "D_inf x C_2", "(<L> x_s <R2>) x <S1>"),
    ("p1=y^2, p2=y^3+y^2", GeneralisedStandardMap(y ** 2, y ** 3 + y ** 2), "C_inf", "<L>"),
    ("p1=y^3, p2=y^2 (one R_i)", GeneralisedStandardMap(y ** 3, y ** 2), "D_inf", "<L> x_s <R2>"),
    ("p1=y^2, p2=y^3 (one R_i)", GeneralisedStandardMap(y ** 2, y ** 3), "D_inf", "<L> x_s <R1>"),
    ("p1=y^3, p2=y^5 (S1)", GeneralisedStandardMap(y ** 3, y ** 5), "D_inf x C_2", "(<L> x_s <R1>) x <S1>"),
    ("p1=p2=y^3+y^2 (S2 only)", GeneralisedStandardMap(y ** 3 + y ** 2, y ** 3 + y ** 2), "C_inf", "<S2>"),
    ("p1=p2=y^2", GeneralisedStandardMap(y ** 2, y ** 2), "D_inf", "<S2> x_s <R3>"),
    ("p1 odd, p2=-p1", GeneralisedStandardMap(y ** 3 + y, -(y ** 3 + y)), "D_inf x C_2", "(<S3> x_s <R1>) x <S1>"),
    ("p1=p2=y^3", GeneralisedStandardMap(y ** 3, y ** 3), "(C_inf x C_2) x_s C_2", "(<S2> x <S1>) x_s <R1>"),
]


def _generator_identities(r):
    """Defining relations of the reported generators; returns failed relation names."""
    L = r.map
    Lm = L.to_planar()
    st = r.structure
    gens = {g: generator_map(r, g) for g in st.symmetry_generators}
    bad = []
    for g, F in gens.items():
        if not check_symmetry(F, L):
            bad.append(f"{g} symmetry")
        if g == "S2" and _sq(F).forward != Lm.forward:
            bad.append("S2^2 = L")
        if g == "S1" and not _sq(F).is_identity():
            bad.append("S1^2 = id")
    cyc = st.symmetry_generators[0]
    if len(gens) == 2:
        a, b = (gens[g] for g in st.symmetry_generators)
        if (a @ b).forward != (b @ a).forward:
            bad.append("generators commute")
    if st.reversing_generator:
        R = generator_map(r, st.reversing_generator)
        if not check_reversing(R, L):
            bad.append("R reverses L")
        if not _sq(R).is_identity():
            bad.append("R^2 = id")
        S = gens[cyc]
        if cyc == "S2" and "S1" in gens:
            # R1 is only a reversing 2-symmetry of S2 here: R1 S2 R1 = S1 S2^-1
            if (R @ S @ R).forward != (gens["S1"] @ S.inverted()).forward or check_reversing(R, S):
                bad.append("R1 S2 R1 = S1 S2^-1")
            if not check_reversing(S @ R, L) or not _sq(_sq(S @ R)).is_identity():
                bad.append("R5 = S2 R1")
        elif not check_reversing(R, S):
            bad.append(f"R {cyc} R = {cyc}^-1")
    return bad


def test_criterion_07_group_structure_exemplars():
    bad = []
    rows = set()
    for name, L, tag, desc in EXEMPLARS:
        r = analyze(L)
        rows.add(desc)
        if r.structure.tag != tag or r.structure.description != desc:
            bad.append(f"{name}: got {r.structure.tag} [{r.structure.description}]")
        bad += [f"{name}: {b}" for b in _generator_identities(r)]
    ok = not bad
    record(7, "group-structure exemplars", ok, f"{len(EXEMPLARS)} exemplars over {len(rows)} structure rows, "
           f"{len(bad)} mismatches")
    assert ok, bad


def test_criterion_08_word_calculus():
    rng = random.Random(8)
    n_words, fails = 0, []
    for _ in range(1000):
        n = rng.randint(1, 6)
        w = reduce_word(random_letters(rng, n))
        n_words += 1
        if len(compose_words(w, invert_word(w))) != 0:
            fails.append("w w^-1 != id")
        # shuffle intersection factors between neighbours of an alternating word
        v = reduce_word(random_reduced_letters(rng, n))
        letters = list(v)
        for i in range(len(letters) - 1):
            s = random_affine(rng, in_intersection=True)
            letters[i] = letter_product(letters[i], s)
            letters[i + 1] = letter_product(s.inverse(), letters[i + 1])
        sh = reduce_word(letters)
        if len(sh) != len(v) or sh.pattern() != v.pattern():
            fails.append("shuffle changed length or pattern")
        if len(w) >= 2 or (len(w) == 1 and letter_class(w[0]) is not LetterClass.INTERSECTION):
            if evaluate(w).is_identity():
                fails.append("reduced word evaluates to identity")
    ok = not fails and n_words >= 1000
    record(8, "word calculus", ok, f"{n_words} random words, {len(fails)} failures")
    assert ok, fails[:5]


def test_criterion_09_no_double_infinite_cyclic():
    tags = {}
    for L, matches, _ in exhaustive_results():
        t = group_structure(matches, L).tag
        tags[t] = tags.get(t, 0) + 1
    for _, L in row_corpus():
        t = group_structure(detect(L), L).tag
        tags[t] = tags.get(t, 0) + 1
    bad = [t for t in tags if t.count("C_inf") > 1 and "x_s" not in t]
    ok = not bad and "C_inf x C_inf" not in tags
    summary = ", ".join(f"{k}: {v}" for k, v in sorted(tags.items()))
    record(9, "no C_inf x C_inf structure", ok, f"{sum(tags.values())} maps ({summary})")
    assert ok


def test_criterion_10_henon_dynamics():
    t0 = time.perf_counter()
    r = analyze(HENON)
    R2 = next(w.map for w in r.witnesses if w.name == "R2")
    search = find_symmetric_orbits(HENON, R2, 1, (-2, 2), 1e-10)
    pts = sorted(o.points[0] for o in search.orbits)
    fixed_ok = (len(pts) == 2 and np.allclose(pts, [(0, 0), (1, 0)], atol=1e-10)
                and all(o.residual < 1e-10 for o in search.orbits)
                and all(abs(search.start_curve.residual(*p)) < 1e-10 for p in pts))
    NL = NumericMap.from_exact(HENON)
    rng = random.Random(10)
    worst, orbits = 0.0, 0
    while orbits < 5:
        z = (rng.uniform(-0.15, 0.15), rng.uniform(-0.15, 0.15))
        orb = iterate(NL, z, 1000)
        if orb.truncated or not np.all(np.abs(orb.points) < 10):
            continue
        orbits += 1
        worst = max(worst, reversibility_defect(HENON, R2, orb.points))
    dt = time.perf_counter() - t0
    ok = fixed_ok and worst < 1e-9 and dt < 5 and not math.isnan(worst)
    record(10, "Henon dynamics", ok,
           f"fixed points {[(round(float(x), 12), round(float(y_), 12)) for x, y_ in pts]} on {search.start_curve.describe()}, "
           f"max defect {worst:.2e} over {orbits} x 1000 steps, {dt:.2f}s (< 5s)")
    assert ok


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)

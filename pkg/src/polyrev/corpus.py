"""Random instance generators for tests, acceptance runs and ``analyze --random``."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence

from .classify import ConditionId
from .maps import AffineMap, ElementaryMap, GeneralisedStandardMap, Letter
from .poly import UniPoly, affine_substitute

COEFFS = (-3, -2, -1, 1, 2, 3)
SCALES = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(1, 2), Fraction(-1, 2), Fraction(3))
CENTERS = (Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-3, 2), Fraction(2))


def random_poly(rng: random.Random, deg: int, lo: int = -3, hi: int = 3) -> UniPoly:
    coeffs = [rng.randint(lo, hi) for _ in range(deg)]
    lead = 0
    while lead == 0:
        lead = rng.randint(lo, hi)
    return UniPoly(coeffs + [lead])


def parity_poly(rng: random.Random, deg: int, center: Fraction, odd: bool) -> UniPoly:
    """Polynomial of exact degree ``deg`` that is odd or even about ``center``."""
    if odd != (deg % 2 == 1):
        raise ValueError("degree parity does not match requested symmetry")
    coeffs = [0] * (deg + 1)
    for k in range(deg + 1):
        if (k % 2 == 1) == odd:
            coeffs[k] = rng.randint(-3, 3)
    coeffs[deg] = rng.choice(COEFFS)
    return affine_substitute(UniPoly(coeffs), 1, -center)


def _odd_deg(rng, lo=3, hi=5):
    return rng.choice([d for d in range(lo, hi + 1) if d % 2])


def _even_deg(rng, lo=2, hi=6):
    return rng.choice([d for d in range(lo, hi + 1) if d % 2 == 0])


def row_instance(rng: random.Random, row: ConditionId, max_deg: int = 6) -> GeneralisedStandardMap:
    """A random map satisfying the condition of ``row`` by construction."""
    C = ConditionId
    odd_hi = max_deg if max_deg % 2 else max_deg - 1
    if row is C.T1_S1:
        return GeneralisedStandardMap(
            parity_poly(rng, _odd_deg(rng, 3, odd_hi), rng.choice(CENTERS), True),
            parity_poly(rng, _odd_deg(rng, 3, odd_hi), rng.choice(CENTERS), True))
    if row in (C.T1_S2, C.T1_R4):
        p1 = random_poly(rng, rng.randint(2, max_deg))
        a, e = rng.choice(SCALES), rng.choice(CENTERS)
        sign = 1 if row is C.T1_S2 else -1
        return GeneralisedStandardMap(p1, affine_substitute(p1, 1 / a, e) * (sign / a))
    if row in (C.T1_S3, C.T1_R5):
        m = rng.choice(CENTERS)
        p1 = parity_poly(rng, _odd_deg(rng, 3, odd_hi), m, True)
        a, c = rng.choice(SCALES), rng.choice(CENTERS)
        sign = -1 if row is C.T1_S3 else 1
        return GeneralisedStandardMap(p1, affine_substitute(p1, 1 / a, -c / a) * (sign / a))
    if row is C.T1_R1:
        return GeneralisedStandardMap(
            random_poly(rng, rng.randint(2, max_deg)),
            parity_poly(rng, _odd_deg(rng, 3, odd_hi), rng.choice(CENTERS), True))
    if row is C.T1_R2:
        return GeneralisedStandardMap(
            parity_poly(rng, _odd_deg(rng, 3, odd_hi), rng.choice(CENTERS), True),
            random_poly(rng, rng.randint(2, max_deg)))
    if row is C.T1_R3:
        return GeneralisedStandardMap(
            parity_poly(rng, _even_deg(rng, 2, max_deg), rng.choice(CENTERS), False),
            parity_poly(rng, _even_deg(rng, 2, max_deg), rng.choice(CENTERS), False))
    A = rng.choice(COEFFS)
    B = rng.randint(-3, 3)
    p1 = UniPoly([B, A])
    if row in (C.T2_S1, C.T2_R1):
        return GeneralisedStandardMap(p1, parity_poly(rng, _odd_deg(rng, 3, odd_hi), rng.choice(CENTERS), True))
    if row is C.T2_R2:
        return GeneralisedStandardMap(p1, random_poly(rng, rng.randint(2, max_deg)))
    raise ValueError(row)


def random_standard_map(rng: random.Random, deg1: Sequence[int] = (2, 3, 4),
                        deg2: Sequence[int] = (2, 3, 4), lo: int = -2, hi: int = 2) -> GeneralisedStandardMap:
    return GeneralisedStandardMap(random_poly(rng, rng.choice(deg1), lo, hi),
                                  random_poly(rng, rng.choice(deg2), lo, hi))


def exhaustive_maps(degrees: Sequence[int] = (2, 3), values: Sequence[int] = (-1, 0, 1)) -> Iterator[GeneralisedStandardMap]:
    """Every map with deg p_i in ``degrees`` and coefficients from ``values``."""
    polys: List[UniPoly] = []
    for d in degrees:
        for lower in itertools.product(values, repeat=d):
            for lead in values:
                if lead:
                    polys.append(UniPoly(list(lower) + [lead]))
    for p1 in polys:
        for p2 in polys:
            yield GeneralisedStandardMap(p1, p2)


# ---------------------------------------------------------------------------
# random words
# ---------------------------------------------------------------------------


def _small_q(rng, nonzero=False) -> Fraction:
    while True:
        v = Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2)))
        if v or not nonzero:
            return v


def random_affine(rng: random.Random, in_intersection: Optional[bool] = None) -> AffineMap:
    while True:
        a21 = Fraction(0) if in_intersection else _small_q(rng, nonzero=in_intersection is False)
        vals = (_small_q(rng), _small_q(rng), a21, _small_q(rng), _small_q(rng), _small_q(rng))
        if vals[0] * vals[3] - vals[1] * vals[2] != 0:
            return AffineMap(*vals)


def random_elementary(rng: random.Random, max_deg: int = 3) -> ElementaryMap:
    p = random_poly(rng, rng.randint(2, max_deg), -2, 2)
    return ElementaryMap(_small_q(rng, True), p, _small_q(rng, True), _small_q(rng))


def random_letters(rng: random.Random, length: int) -> List[Letter]:
    """Arbitrary (unreduced) letter sequence mixing all three letter classes."""
    out: List[Letter] = []
    for _ in range(length):
        r = rng.random()
        if r < 0.4:
            out.append(random_affine(rng, in_intersection=False))
        elif r < 0.8:
            out.append(random_elementary(rng))
        elif r < 0.9:
            out.append(random_affine(rng, in_intersection=True))
        else:
            out.append(ElementaryMap(_small_q(rng, True), UniPoly([_small_q(rng), _small_q(rng)]),
                                     _small_q(rng, True), _small_q(rng)))
    return out


def random_reduced_letters(rng: random.Random, length: int) -> List[Letter]:
    """Alternating A\\I / E\\I letters, already reduced."""
    out: List[Letter] = []
    affine_first = rng.random() < 0.5
    for k in range(length):
        if (k % 2 == 0) == affine_first:
            out.append(random_affine(rng, in_intersection=False))
        else:
            out.append(random_elementary(rng))
    return out

"""Exact solvers for the scalar functional equations behind reversibility.

Two relations are handled:

* the self relation ``p(x) = gamma * p(alpha*x + beta)``;
* the linear match ``q(y) = u * p(v*y + w)`` between two given polynomials.

Only rational solutions are produced.  Solutions that exist over the reals
but not over the rationals are reported separately so callers can surface
the gap instead of hiding it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .poly import (
    Parity,
    PolynomialError,
    Scalar,
    UniPoly,
    _q,
    affine_substitute,
    centroid,
    parity_center,
    shifted_monomial,
)

REAL_RTOL = 1e-9


class FamilyKind(enum.Enum):
    TRIVIAL = "Trivial"
    SHIFTED_MONOMIAL = "ShiftedMonomial"
    EVEN_CENTER = "EvenCenter"
    ODD_CENTER = "OddCenter"


@dataclass(frozen=True)
class SelfRelationFamily:
    """A family of triples ``(alpha, beta, gamma)`` with p(x) = gamma p(alpha x + beta).

    ``ShiftedMonomial`` is one-parameter: alpha is free, beta = m (1 - alpha),
    gamma = alpha**-n.  The other kinds are single triples.
    """

    kind: FamilyKind
    center: Fraction = Fraction(0)
    lead: Optional[Fraction] = None
    degree: Optional[int] = None

    def triple(self, alpha: Optional[Scalar] = None) -> Tuple[Fraction, Fraction, Fraction]:
        if self.kind is FamilyKind.TRIVIAL:
            return Fraction(1), Fraction(0), Fraction(1)
        if self.kind is FamilyKind.EVEN_CENTER:
            return Fraction(-1), 2 * self.center, Fraction(1)
        if self.kind is FamilyKind.ODD_CENTER:
            return Fraction(-1), 2 * self.center, Fraction(-1)
        if alpha is None:
            raise ValueError("ShiftedMonomial family needs a value for alpha")
        a = _q(alpha)
        if a == 0:
            raise ValueError("alpha must be nonzero")
        return a, self.center * (1 - a), a ** (-self.degree)

    def holds_for(self, p: UniPoly, alpha: Optional[Scalar] = None) -> bool:
        a, b, g = self.triple(alpha)
        return affine_substitute(p, a, b) * g == p

    def describe(self) -> str:
        if self.kind is FamilyKind.TRIVIAL:
            return "Trivial (1, 0, 1)"
        if self.kind is FamilyKind.SHIFTED_MONOMIAL:
            return (f"ShiftedMonomial(c={self.lead}, m={self.center}, n={self.degree}): "
                    f"alpha free, beta=m(1-alpha), gamma=alpha^-{self.degree}")
        a, b, g = self.triple()
        return f"{self.kind.value}(m={self.center}) ({a}, {b}, {g})"


def solve_self_relation(p: UniPoly) -> List[SelfRelationFamily]:
    if p.is_constant():
        raise PolynomialError("self relation requires non-constant p")
    out = [SelfRelationFamily(FamilyKind.TRIVIAL)]
    sm = shifted_monomial(p)
    if sm is not None:
        c, m, n = sm
        out.append(SelfRelationFamily(FamilyKind.SHIFTED_MONOMIAL, m, c, n))
    for kind, parity in ((FamilyKind.EVEN_CENTER, Parity.EVEN), (FamilyKind.ODD_CENTER, Parity.ODD)):
        wit = parity_center(p, parity)
        if wit is not None:
            out.append(SelfRelationFamily(kind, wit.center))
    return out


# ---------------------------------------------------------------------------
# linear match
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearMatch:
    u: Fraction
    v: Fraction
    w: Fraction

    def holds(self, p: UniPoly, q: UniPoly) -> bool:
        return affine_substitute(p, self.v, self.w) * self.u == q


@dataclass(frozen=True)
class LinearMatchFamily:
    """All ``(u, v, w)`` with u v**n = ratio and w = mp - v mq, v free and nonzero.

    Arises exactly when p and q are shifted monomials of the same degree,
    ``p = lp (y - mp)**n`` and ``q = lq (y - mq)**n`` with ratio = lq/lp.
    """

    ratio: Fraction
    n: int
    mp: Fraction
    mq: Fraction

    def at(self, v: Scalar) -> LinearMatch:
        v = _q(v)
        if v == 0:
            raise ValueError("v must be nonzero")
        return LinearMatch(self.ratio / v ** self.n, v, self.mp - v * self.mq)

    def contains(self, m: LinearMatch) -> bool:
        return m.v != 0 and m.u * m.v ** self.n == self.ratio and m.w == self.mp - m.v * self.mq

    def describe(self) -> str:
        return f"u*v^{self.n} = {self.ratio}, w = {self.mp} - v*({self.mq}), v free"


@dataclass(frozen=True)
class MatchSet:
    """Result of :func:`solve_linear_match`.

    ``matches`` is the finite rational solution list (positive v first);
    ``family`` is set instead when the solutions form a one-parameter family;
    ``real_only`` lists values of v that solve the equations over the reals
    but are irrational.
    """

    matches: Tuple[LinearMatch, ...] = ()
    family: Optional[LinearMatchFamily] = None
    real_only: Tuple[float, ...] = ()

    def __iter__(self):
        return iter(self.matches)

    def __len__(self):
        return len(self.matches)

    def __bool__(self):
        return bool(self.matches) or self.family is not None

    def contains(self, m: LinearMatch) -> bool:
        if self.family is not None:
            return self.family.contains(m)
        return m in self.matches


def _int_root(n: int, d: int) -> Optional[int]:
    """Exact non-negative integer d-th root of n >= 0, or None."""
    if n < 2:
        return n
    r = math.isqrt(n) if d == 2 else int(round(n ** (1.0 / d))) if n.bit_length() < 1000 else None
    if r is None:
        lo, hi = 0, 1 << (n.bit_length() // d + 1)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid ** d < n:
                lo = mid + 1
            else:
                hi = mid
        r = lo
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** d == n:
            return c
    return None


def rational_roots_of_power(d: int, r: Fraction) -> List[Fraction]:
    """All rational v with v**d == r (r nonzero), positive first."""
    if r == 0:
        return []
    if r < 0 and d % 2 == 0:
        return []
    num = _int_root(abs(r.numerator), d)
    den = _int_root(r.denominator, d)
    if num is None or den is None:
        return []
    base = Fraction(num, den)
    if r < 0:
        return [-base]
    return [base, -base] if d % 2 == 0 else [base]


def _real_roots_of_power(d: int, r: Fraction) -> List[float]:
    mag = math.exp(math.log(abs(float(r))) / d) if r else 0.0
    if r > 0:
        return [mag, -mag] if d % 2 == 0 else [mag]
    if r < 0 and d % 2 == 1:
        return [-mag]
    return []


def _solve_power_system(constraints: Sequence[Tuple[int, Fraction]]):
    """Rational and approximate real solutions of v**d_k == r_k for all k."""
    d0, r0 = min(constraints, key=lambda c: c[0])
    exact = [v for v in rational_roots_of_power(d0, r0)
             if all(v ** d == r for d, r in constraints)]
    real = []
    for v in _real_roots_of_power(d0, r0):
        ok = all(math.isclose(v ** d, float(r), rel_tol=REAL_RTOL) for d, r in constraints)
        if ok and not any(math.isclose(v, float(e), rel_tol=REAL_RTOL) for e in exact):
            real.append(v)
    return exact, real


def solve_linear_match(p: UniPoly, q: UniPoly, *, u_over_v: Optional[Scalar] = None) -> MatchSet:
    """All rational ``(u, v, w)`` with ``q(y) = u p(v y + w)``.

    With ``u_over_v = k`` only solutions with ``u = k v`` are returned; this
    coupling turns a monomial family into a finite set.
    """
    if p.is_constant() or q.is_constant():
        raise PolynomialError("linear match requires non-constant polynomials")
    if p.degree != q.degree:
        return MatchSet()
    n = p.degree
    lp, lq = p.lead, q.lead
    mp, mq = centroid(p), centroid(q)
    # after centring both polynomials the y^(n-1) terms vanish, which forces
    # w = mp - v mq and leaves q~_k = u v^k p~_k for every k
    pt = affine_substitute(p, 1, mp)
    qt = affine_substitute(q, 1, mq)
    constraints: List[Tuple[int, Fraction]] = []
    for k in range(n - 1):
        a, b = pt.coeff(k), qt.coeff(k)
        if a == 0 and b == 0:
            continue
        if a == 0 or b == 0:
            return MatchSet()
        constraints.append((n - k, lq * a / (lp * b)))
    if u_over_v is not None:
        k = _q(u_over_v)
        if k == 0:
            raise ValueError("u_over_v must be nonzero")
        constraints.append((n + 1, lq / (lp * k)))
    if not constraints:
        return MatchSet(family=LinearMatchFamily(lq / lp, n, mp, mq))
    exact, real = _solve_power_system(constraints)
    matches = tuple(LinearMatch(lq / (lp * v ** n), v, mp - v * mq) for v in exact)
    for m in matches:
        if not m.holds(p, q):
            raise AssertionError(f"linear match self-check failed for {m}")
    return MatchSet(matches, None, tuple(real))

"""Exact univariate and bivariate polynomials over the rationals.

Everything here works with :class:`fractions.Fraction`; no floating point is
involved.  Values are immutable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb, gcd
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from . import _packed

Rational = Fraction
Scalar = Union[int, Fraction]


class PolynomialError(ValueError):
    pass


class _ZeroDegree:
    """Degree of the zero polynomial.

    Deliberately not a number: comparing or doing arithmetic with it raises,
    so code must handle the zero polynomial explicitly.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO_DEGREE"

    def _refuse(self, *args):
        raise TypeError("the zero polynomial has no numeric degree")

    __lt__ = __le__ = __gt__ = __ge__ = _refuse
    __add__ = __radd__ = __sub__ = __rsub__ = __mul__ = __rmul__ = _refuse
    __index__ = __int__ = _refuse

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("ZERO_DEGREE")


ZERO_DEGREE = _ZeroDegree()


def _q(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class UniPoly:
    """Dense univariate polynomial, coefficients in ascending degree."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [_q(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c: Tuple[Fraction, ...] = tuple(c)
        self._hash = None

    # -- construction helpers ------------------------------------------------
    @classmethod
    def constant(cls, value: Scalar) -> "UniPoly":
        return cls([value])

    @classmethod
    def monomial(cls, n: int, coeff: Scalar = 1) -> "UniPoly":
        return cls([0] * n + [coeff])

    @classmethod
    def from_roots(cls, roots: Sequence[Scalar], lead: Scalar = 1) -> "UniPoly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-_q(r), 1])
        return p

    # -- basic properties ----------------------------------------------------
    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self):
        if not self._c:
            return ZERO_DEGREE
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    @property
    def lead(self) -> Fraction:
        if not self._c:
            raise PolynomialError("zero polynomial has no leading coefficient")
        return self._c[-1]

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self._c):
            return self._c[k]
        return Fraction(0)

    def __len__(self):
        return len(self._c)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == UniPoly([other])._c
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("UniPoly", self._c))
        return self._hash

    def __repr__(self):
        return f"UniPoly({self.format('x')!r})"

    def __str__(self):
        return self.format("x")

    def format(self, var: str = "x") -> str:
        return _format_terms(
            ((k, c) for k, c in reversed(list(enumerate(self._c))) if c),
            lambda k: "" if k == 0 else (var if k == 1 else f"{var}^{k}"),
        )

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self._c), len(other._c))
        return UniPoly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self._c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly(c * other for c in self._c)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self._c or not other._c:
            return UniPoly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("polynomial divided by zero")
            return self * (1 / _q(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise PolynomialError("negative power of a polynomial")
        result = UniPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, value):
        """Horner evaluation at a scalar, or composition with a UniPoly."""
        if isinstance(value, UniPoly):
            acc = UniPoly()
            for c in reversed(self._c):
                acc = acc * value + c
            return acc
        acc = 0 * value if not isinstance(value, (int, Fraction)) else Fraction(0)
        for c in reversed(self._c):
            acc = acc * value + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(k * c for k, c in enumerate(self._c) if k)

    def taylor(self, center: Scalar) -> Tuple[Fraction, ...]:
        """Coefficients of ``p`` expanded in powers of ``(x - center)``."""
        return affine_substitute(self, 1, center).coeffs

    def as_float_coeffs(self) -> Tuple[float, ...]:
        return tuple(float(c) for c in self._c)


def _format_terms(items, power_str) -> str:
    parts = []
    for k, c in items:
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        p = power_str(k)
        if p and mag == 1:
            body = p
        elif p:
            body = f"{_fmt_q(mag)}*{p}"
        else:
            body = _fmt_q(mag)
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# substitution and the parity predicates
# ---------------------------------------------------------------------------


def affine_substitute(p: UniPoly, v: Scalar, w: Scalar) -> UniPoly:
    """Return ``q`` with ``q(x) = p(v*x + w)``."""
    v = _q(v)
    w = _q(w)
    if v == 0:
        raise PolynomialError("degenerate substitution")
    n = len(p.coeffs)
    out = [Fraction(0)] * n
    # (v x + w)^k = sum_j C(k, j) v^j w^(k-j) x^j
    wpow = [Fraction(1)] * n
    for k in range(1, n):
        wpow[k] = wpow[k - 1] * w
    vpow = Fraction(1)
    for j in range(n):
        s = Fraction(0)
        for k in range(j, n):
            c = p.coeffs[k]
            if c:
                s += c * comb(k, j) * wpow[k - j]
        out[j] = s * vpow
        vpow *= v
    return UniPoly(out)


class Parity(enum.Enum):
    ODD = "odd"
    EVEN = "even"


@dataclass(frozen=True)
class ParityWitness:
    kind: Parity
    center: Fraction


def centroid(p: UniPoly) -> Fraction:
    """The point ``m = -c[n-1] / (n c[n])`` that kills the sub-leading term."""
    n = p.degree
    return -p.coeff(n - 1) / (n * p.lead)


def _require_nonconstant(p: UniPoly, what: str):
    if p.is_constant():
        raise PolynomialError(what)


def parity_center(p: UniPoly, kind: Parity) -> Optional[ParityWitness]:
    """Center ``m`` with ``p`` odd (or even) around ``m``, if there is one."""
    _require_nonconstant(p, "parity undefined for constants")
    kind = Parity(kind)
    n = p.degree
    if kind is Parity.ODD and n % 2 == 0:
        return None
    if kind is Parity.EVEN and n % 2 == 1:
        return None
    m = centroid(p)
    shifted = p.taylor(m)
    wanted = 1 if kind is Parity.ODD else 0
    if any(c for k, c in enumerate(shifted) if k % 2 != wanted):
        return None
    return ParityWitness(kind, m)


def shifted_monomial(p: UniPoly) -> Optional[Tuple[Fraction, Fraction, int]]:
    """``(c, m, n)`` with ``p(x) = c (x - m)^n``, if ``p`` has that form."""
    _require_nonconstant(p, "shifted monomial undefined for constants")
    m = centroid(p)
    shifted = p.taylor(m)
    if any(shifted[:-1]):
        return None
    return p.lead, m, p.degree


# ---------------------------------------------------------------------------
# bivariate polynomials
# ---------------------------------------------------------------------------

Key = Tuple[int, int]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _integerize(terms: Mapping[Key, Fraction]) -> Tuple[Dict[Key, int], int]:
    den = reduce(_lcm, (c.denominator for c in terms.values()), 1)
    return {k: c.numerator * (den // c.denominator) for k, c in terms.items()}, den


def _rationalize(terms: Mapping[Key, int], den: int) -> Dict[Key, Fraction]:
    if den == 1:
        return {k: Fraction(c) for k, c in terms.items()}
    return {k: Fraction(c, den) for k, c in terms.items()}


class BiPoly:
    """Sparse polynomial in ``x`` and ``y``: ``{(i, j): coeff}`` for ``x^i y^j``."""

    __slots__ = ("_t", "_hash", "_int")

    def __init__(self, terms: Optional[Mapping[Key, Scalar]] = None):
        t: Dict[Key, Fraction] = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise PolynomialError("negative exponent")
                c = _q(c)
                if c:
                    t[(int(i), int(j))] = c
        self._t = t
        self._hash = None
        self._int = None

    @classmethod
    def _raw(cls, terms: Dict[Key, Fraction]) -> "BiPoly":
        obj = cls.__new__(cls)
        obj._t = terms
        obj._hash = None
        obj._int = None
        return obj

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def constant(cls, c: Scalar) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def from_uni(cls, p: UniPoly, var: str) -> "BiPoly":
        if var == "x":
            return cls({(k, 0): c for k, c in enumerate(p.coeffs)})
        if var == "y":
            return cls({(0, k): c for k, c in enumerate(p.coeffs)})
        raise PolynomialError(f"unknown variable {var!r}")

    @classmethod
    def linear(cls, cx: Scalar, cy: Scalar, c0: Scalar) -> "BiPoly":
        return cls({(1, 0): cx, (0, 1): cy, (0, 0): c0})

    @property
    def terms(self) -> Dict[Key, Fraction]:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def coeff(self, i: int, j: int) -> Fraction:
        return self._t.get((i, j), Fraction(0))

    def is_zero(self) -> bool:
        return not self._t

    def __len__(self):
        return len(self._t)

    @property
    def total_degree(self):
        if not self._t:
            return ZERO_DEGREE
        return max(i + j for i, j in self._t)

    @property
    def degree_x(self):
        if not self._t:
            return ZERO_DEGREE
        return max(i for i, _ in self._t)

    @property
    def degree_y(self):
        if not self._t:
            return ZERO_DEGREE
        return max(j for _, j in self._t)

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self._t)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PolynomialError("not a constant polynomial")
        return self._t.get((0, 0), Fraction(0))

    def only_in(self, var: str) -> bool:
        if var == "x":
            return all(j == 0 for _, j in self._t)
        return all(i == 0 for i, _ in self._t)

    def to_uni(self, var: str) -> UniPoly:
        """The polynomial as a UniPoly in ``var``; it must not involve the other."""
        if not self.only_in(var):
            raise PolynomialError(f"polynomial depends on more than {var}")
        idx = 0 if var == "x" else 1
        n = max((k[idx] for k in self._t), default=-1)
        out = [Fraction(0)] * (n + 1)
        for k, c in self._t.items():
            out[k[idx]] = c
        return UniPoly(out)

    def _integer(self) -> Tuple[Dict[Key, int], int]:
        if self._int is None:
            self._int = _integerize(self._t)
        return self._int

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self == BiPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __repr__(self):
        return f"BiPoly({self.format()!r})"

    def __str__(self):
        return self.format()

    def format(self) -> str:
        def power(key):
            i, j = key
            bits = []
            if i:
                bits.append("x" if i == 1 else f"x^{i}")
            if j:
                bits.append("y" if j == 1 else f"y^{j}")
            return "*".join(bits)

        order = sorted(self._t, key=lambda k: (-(k[0] + k[1]), -k[0]))
        return _format_terms(((k, self._t[k]) for k in order), power)

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BiPoly.constant(other)
        if isinstance(other, UniPoly):
            raise TypeError("ambiguous UniPoly operand; use BiPoly.from_uni")
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._t)
        for k, c in other._t.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return BiPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return BiPoly()
            return BiPoly._raw({k: c * other for k, c in self._t.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, da = self._integer()
        b, db = other._integer()
        return BiPoly._raw(_rationalize(_packed.multiply(a, b), da * db))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise PolynomialError("negative power of a polynomial")
        result = BiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x, y):
        """Evaluate at scalars (exact or float)."""
        total = 0
        for (i, j), c in self._t.items():
            total += c * x ** i * y ** j
        return total

    def evaluate_float(self, x: float, y: float) -> float:
        total = 0.0
        for (i, j), c in self._t.items():
            total += float(c) * x ** i * y ** j
        return total

    def compose(self, gx: "BiPoly", gy: "BiPoly") -> "BiPoly":
        """``self(gx(x, y), gy(x, y))``."""
        return compose(self, gx, gy)

    def diff(self, var: str) -> "BiPoly":
        if var == "x":
            return BiPoly._raw({(i - 1, j): c * i for (i, j), c in self._t.items() if i})
        return BiPoly._raw({(i, j - 1): c * j for (i, j), c in self._t.items() if j})

    def substitute_uni(self, var: str, p: UniPoly) -> UniPoly:
        """Restrict to a curve: ``y = p(x)`` (var='y') or ``x = p(y)`` (var='x').

        The result is a UniPoly in the remaining variable.
        """
        if var == "y":
            return _horner_uni(self, p, lambda k: k, "x")
        return _horner_uni(self, p, lambda k: (k[1], k[0]), "y")


def _horner_uni(f: BiPoly, p: UniPoly, key, free: str) -> UniPoly:
    # collect f as sum_j a_j(free) * sub^j and evaluate with UniPoly arithmetic
    cols: Dict[int, Dict[int, Fraction]] = {}
    for k, c in f.items():
        i, j = key(k)
        cols.setdefault(j, {})[i] = c
    if not cols:
        return UniPoly()
    top = max(cols)
    acc = UniPoly()
    for j in range(top, -1, -1):
        col = cols.get(j, {})
        n = max(col, default=-1)
        a = UniPoly([col.get(i, 0) for i in range(n + 1)])
        acc = acc * p + a
    return acc


def compose(f: BiPoly, gx: BiPoly, gy: BiPoly) -> BiPoly:
    """Exact ``f(gx, gy)``."""
    ft, fd = f._integer()
    if not ft:
        return BiPoly()
    a, da = gx._integer()
    b, db = gy._integer()
    big_i = max(i for i, _ in ft)
    big_j = max(j for _, j in ft)
    raw = _packed.compose(ft, a, da, b, db)
    return BiPoly._raw(_rationalize(raw, fd * da ** big_i * db ** big_j))


def jacobian_determinant(p: BiPoly, q: BiPoly) -> BiPoly:
    return p.diff("x") * q.diff("y") - p.diff("y") * q.diff("x")

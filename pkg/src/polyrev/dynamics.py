"""Numerical iteration and symmetric periodic orbits of reversible maps.

A reversible map factors as ``L = (L o R) o R`` with both factors
involutions.  A point z on Fix(R) lies on a symmetric orbit of period k when
``L^(k/2) z`` is back on Fix(R) (k even) or ``L^((k+1)/2) z`` lies on
Fix(L o R) (k odd).  Orbits are found by scanning the fixed curve for sign
changes of the landing residual and bisecting.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .maps import GeneralisedStandardMap, PlanarPolyMap, X, Y, _pair_compose
from .poly import BiPoly, UniPoly

ROOT_TOL = 1e-12
ORBIT_TOL = 1e-10


class DynamicsError(ValueError):
    pass


# ---------------------------------------------------------------------------
# numeric map
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NumericMap:
    """Float version of x' = x + p1(y), y' = y + p2(x')."""

    c1: Tuple[float, ...]
    c2: Tuple[float, ...]

    @classmethod
    def from_exact(cls, L: GeneralisedStandardMap) -> "NumericMap":
        return cls(L.p1.as_float_coeffs(), L.p2.as_float_coeffs())

    def p1(self, t: float) -> float:
        return _horner(self.c1, t)

    def p2(self, t: float) -> float:
        return _horner(self.c2, t)

    def forward(self, x: float, y: float) -> Tuple[float, float]:
        x = x + self.p1(y)
        return x, y + self.p2(x)

    def backward(self, x: float, y: float) -> Tuple[float, float]:
        y = y - self.p2(x)
        return x - self.p1(y), y

    def jacobian_det(self, x: float, y: float) -> float:
        d1 = _horner(_deriv(self.c1), y)
        xp = x + self.p1(y)
        d2 = _horner(_deriv(self.c2), xp)
        # rows: d(x')/d(x, y) and d(y')/d(x, y)
        a, b = 1.0, d1
        c, d = d2, 1.0 + d2 * d1
        return a * d - b * c

    def power(self, x: float, y: float, n: int) -> Tuple[float, float]:
        xs, ys = kernels.iterate_points(self.c1, self.c2, [x], [y], n)
        return float(xs[0]), float(ys[0])


def _horner(c: Sequence[float], t: float) -> float:
    acc = 0.0
    for v in reversed(c):
        acc = acc * t + v
    return acc


def _deriv(c: Sequence[float]) -> Tuple[float, ...]:
    return tuple(k * v for k, v in enumerate(c) if k)


@dataclass
class Orbit:
    points: np.ndarray
    truncated: bool

    def __len__(self):
        return len(self.points)


def iterate(L: NumericMap, start: Tuple[float, float], n: int, *, backward: bool = False) -> Orbit:
    """``n`` images of ``start`` (``n+1`` points); truncated on overflow."""
    x, y = map(float, start)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise DynamicsError("start point must be finite")
    xs, ys, count = kernels.iterate_orbit(L.c1, L.c2, x, y, int(n), not backward)
    pts = np.column_stack([xs[:count], ys[:count]])
    return Orbit(pts, count < n + 1)


# ---------------------------------------------------------------------------
# fixed sets of involutions
# ---------------------------------------------------------------------------


class CurveShape(enum.Enum):
    GRAPH_X = "graph y=g(x)"
    GRAPH_Y = "graph x=g(y)"
    VERTICAL = "vertical x=const"
    HORIZONTAL = "horizontal y=const"
    DIAGONAL = "diagonal y=x"
    ANTIDIAGONAL = "antidiagonal y=-x+k"
    POINT = "point"


@dataclass(frozen=True)
class FixCurve:
    """Fixed set of an involution, parametrised by x (graphs over x) or y.

    ``g`` is exact; ``point`` carries the coordinates of an isolated fixed point.
    """

    shape: CurveShape
    over: str  # "x" or "y": the free coordinate
    g: UniPoly
    point: Optional[Tuple[Fraction, Fraction]] = None

    def at(self, t: float) -> Tuple[float, float]:
        if self.shape is CurveShape.POINT:
            return float(self.point[0]), float(self.point[1])
        v = _horner(self.g.as_float_coeffs(), t)
        return (t, v) if self.over == "x" else (v, t)

    def residual(self, x: float, y: float) -> float:
        """Signed distance-like function vanishing exactly on the curve."""
        if self.shape is CurveShape.POINT:
            return math.hypot(x - float(self.point[0]), y - float(self.point[1]))
        c = self.g.as_float_coeffs()
        if self.over == "x":
            return y - _horner(c, x)
        return x - _horner(c, y)

    def describe(self) -> str:
        if self.shape is CurveShape.POINT:
            return f"point ({self.point[0]}, {self.point[1]})"
        other = "y" if self.over == "x" else "x"
        return f"{other} = {self.g.format(self.over)}"


def _solve_for(eq: BiPoly, var: str) -> Optional[UniPoly]:
    """If eq = c*var + h(other) with c a nonzero constant, return -h/c."""
    if eq.is_zero():
        return None
    idx = 0 if var == "x" else 1
    other = "y" if var == "x" else "x"
    c = Fraction(0)
    rest = {}
    for key, coef in eq.items():
        if key[idx] == 0:
            rest[key] = coef
        elif key == ((1, 0) if var == "x" else (0, 1)):
            c = coef
        else:
            return None
    if c == 0:
        return None
    return BiPoly(rest).to_uni(other) * (-1 / c)


def _classify_graph(over: str, g: UniPoly) -> CurveShape:
    if g.is_constant():
        return CurveShape.HORIZONTAL if over == "x" else CurveShape.VERTICAL
    if g == UniPoly([0, 1]):
        return CurveShape.DIAGONAL
    if g.degree == 1 and g.coeff(1) == -1:
        return CurveShape.ANTIDIAGONAL
    return CurveShape.GRAPH_X if over == "x" else CurveShape.GRAPH_Y


def fix_curve(R: PlanarPolyMap) -> FixCurve:
    """Exact fixed set of an involution whose fixed equations are triangular."""
    P, Q = R.forward
    eqs = [P - X, Q - Y]
    nonzero = [e for e in eqs if not e.is_zero()]
    if not nonzero:
        raise DynamicsError("identity map has no curve-shaped fixed set")
    for i, eq in enumerate(nonzero):
        for var in ("y", "x"):
            g = _solve_for(eq, var)
            if g is None:
                continue
            over = "x" if var == "y" else "y"
            others = [e for j, e in enumerate(nonzero) if j != i]
            gb = BiPoly.from_uni(g, over)
            param = BiPoly.x() if over == "x" else BiPoly.y()
            sub = (param, gb) if over == "x" else (gb, param)
            residues = [e.compose(*sub) for e in others]
            if all(r.is_zero() for r in residues):
                return FixCurve(_classify_graph(over, g), over, g)
            pt = _isolated_point(residues, over, g)
            if pt is not None:
                return FixCurve(CurveShape.POINT, over, g, pt)
    raise DynamicsError("no closed-form fixed set")


def _isolated_point(residues, over, g) -> Optional[Tuple[Fraction, Fraction]]:
    r = residues[0]
    uni = r.to_uni(over) if r.only_in(over) else None
    if uni is None or uni.is_zero() or uni.degree != 1:
        return None
    t = -uni.coeff(0) / uni.coeff(1)
    v = g(t)
    return (t, v) if over == "x" else (v, t)


# ---------------------------------------------------------------------------
# symmetric orbits
# ---------------------------------------------------------------------------


@dataclass
class SymmetricOrbit:
    points: List[Tuple[float, float]]
    period: int
    residual: float
    seed: float = math.nan

    def as_rows(self):
        return [(k, x, y) for k, (x, y) in enumerate(self.points)]


@dataclass
class OrbitSearch:
    orbits: List[SymmetricOrbit]
    start_curve: FixCurve
    target_curve: FixCurve
    diagnostics: List[str] = field(default_factory=list)


def _least_period(L: NumericMap, z, k: int, tol: float) -> Tuple[int, List[Tuple[float, float]], float]:
    orb = iterate(L, z, k)
    pts = [tuple(p) for p in orb.points]
    if orb.truncated:
        return 0, pts, math.inf
    z0 = np.array(pts[0])
    for j in range(1, k + 1):
        if k % j == 0:
            err = float(np.max(np.abs(np.array(pts[j]) - z0)))
            if err < tol:
                return j, pts[:j], err
    return 0, pts, float(np.max(np.abs(np.array(pts[k]) - z0)))


def _same_orbit(a: SymmetricOrbit, b: SymmetricOrbit, tol=1e-7) -> bool:
    if a.period != b.period:
        return False
    x0, y0 = a.points[0]
    return any(abs(x - x0) < tol and abs(y - y0) < tol for x, y in b.points)


def find_symmetric_orbits(
    L: GeneralisedStandardMap,
    R: PlanarPolyMap,
    k: int,
    interval: Tuple[float, float] = (-2.0, 2.0),
    tol: float = ORBIT_TOL,
    *,
    samples: int = 4001,
    root_tol: float = ROOT_TOL,
    exact_period: bool = True,
) -> OrbitSearch:
    """Symmetric k-periodic orbits meeting Fix(R) over ``interval``.

    ``R`` must be an involutory reversing symmetry of ``L``.  The interval is
    in the free coordinate of Fix(R).  Orbits of smaller period are dropped
    unless ``exact_period`` is false.
    """
    if k < 1:
        raise DynamicsError("period must be positive")
    if tol <= 0:
        raise DynamicsError("tolerance must be positive")
    if _pair_compose(R.forward, R.forward) != (X, Y):
        raise DynamicsError("R must be an involution")
    NL = NumericMap.from_exact(L)
    start = fix_curve(R)
    if k % 2 == 0:
        steps, target = k // 2, start
    else:
        # L^n z on Fix(L o R) with n = (k+1)/2; equivalently L^(n-1) z on
        # Fix(R o L), which is the closed-form one when R is itself L o R'
        steps = (k + 1) // 2
        try:
            target = fix_curve(PlanarPolyMap(_pair_compose(L.forward(), R.forward), R.forward))
        except DynamicsError:
            target = fix_curve(PlanarPolyMap(_pair_compose(R.forward, L.forward()), R.forward))
            steps -= 1
    search = OrbitSearch([], start, target)

    def accept(z, seed):
        period, pts, err = _least_period(NL, z, k, tol)
        if period == 0:
            if not math.isfinite(err):
                search.diagnostics.append(f"non-finite iterate from seed {seed:.6g}; discarded")
            return
        if exact_period and period != k:
            return
        orb = SymmetricOrbit(pts, period, err, seed)
        if not any(_same_orbit(orb, o) for o in search.orbits):
            search.orbits.append(orb)

    if start.shape is CurveShape.POINT:
        accept(start.at(0.0), math.nan)
        return search
    if target.shape is CurveShape.POINT:
        search.diagnostics.append("landing set is a single point; no sign-change search possible")
        return search

    a, b = map(float, interval)
    ts = np.linspace(a, b, samples)
    zs = [start.at(t) for t in ts]
    xs, ys = kernels.iterate_points(NL.c1, NL.c2, [z[0] for z in zs], [z[1] for z in zs], steps)
    f = np.array([target.residual(x, y) for x, y in zip(xs, ys)])

    def fval(t):
        z = start.at(t)
        w = NL.power(z[0], z[1], steps)
        return target.residual(*w)

    for i in range(samples - 1):
        f0, f1 = f[i], f[i + 1]
        if not (math.isfinite(f0) and math.isfinite(f1)):
            continue
        if f0 == 0.0:
            accept(start.at(ts[i]), ts[i])
            continue
        if f0 * f1 > 0 or f1 == 0.0:
            continue
        lo, hi, flo = ts[i], ts[i + 1], f0
        for _ in range(200):
            if hi - lo <= root_tol * (1.0 + abs(lo)):
                break
            mid = 0.5 * (lo + hi)
            fm = fval(mid)
            if fm == 0.0:
                lo = hi = mid
                break
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                hi = mid
        t = 0.5 * (lo + hi)
        accept(start.at(t), t)
    if f[-1] == 0.0:
        accept(start.at(ts[-1]), ts[-1])
    return search


def reversibility_defect(L: GeneralisedStandardMap, R: PlanarPolyMap, points) -> float:
    """max |R(L(z)) - L^-1(R(z))| over ``points``."""
    NL = NumericMap.from_exact(L)
    P, Q = R.forward
    worst = 0.0
    for x, y in points:
        lx, ly = NL.forward(x, y)
        a = (P.evaluate_float(lx, ly), Q.evaluate_float(lx, ly))
        rx, ry = P.evaluate_float(x, y), Q.evaluate_float(x, y)
        b = NL.backward(rx, ry)
        worst = max(worst, abs(a[0] - b[0]), abs(a[1] - b[1]))
    return worst

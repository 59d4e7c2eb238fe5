"""Planar polynomial automorphisms as explicit maps and as reduced words.

The group of polynomial automorphisms of the plane is the free product of
the affine maps and the elementary (triangular) maps, amalgamated over
their intersection.  A :class:`GroupWord` lists its letters in written
order, ``[g_n, ..., g_1]``, and stands for ``g_n o ... o g_1`` (so ``g_1``
acts first).
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .poly import BiPoly, UniPoly, _q, affine_substitute, compose, jacobian_determinant

X = BiPoly.x()
Y = BiPoly.y()


class MapError(ValueError):
    pass


class ScopeError(MapError):
    """Input lies outside the classification (affine or elementary map)."""


class LetterClass(enum.Enum):
    AFFINE_ONLY = "A\\I"
    ELEMENTARY_ONLY = "E\\I"
    INTERSECTION = "I"


# ---------------------------------------------------------------------------
# letters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineMap:
    """x' = a11 x + a12 y + b1,  y' = a21 x + a22 y + b2."""

    a11: Fraction
    a12: Fraction
    a21: Fraction
    a22: Fraction
    b1: Fraction = Fraction(0)
    b2: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22", "b1", "b2"):
            object.__setattr__(self, name, _q(getattr(self, name)))
        if self.det == 0:
            raise MapError("affine map with singular linear part")

    @property
    def det(self) -> Fraction:
        return self.a11 * self.a22 - self.a12 * self.a21

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(1, 0, 0, 1, 0, 0)

    def is_identity(self) -> bool:
        return self == AffineMap.identity()

    def compose(self, other: "AffineMap") -> "AffineMap":
        """``self o other``."""
        return AffineMap(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
            self.a11 * other.b1 + self.a12 * other.b2 + self.b1,
            self.a21 * other.b1 + self.a22 * other.b2 + self.b2,
        )

    def inverse(self) -> "AffineMap":
        d = self.det
        i11, i12, i21, i22 = self.a22 / d, -self.a12 / d, -self.a21 / d, self.a11 / d
        return AffineMap(
            i11, i12, i21, i22,
            -(i11 * self.b1 + i12 * self.b2),
            -(i21 * self.b1 + i22 * self.b2),
        )

    def in_intersection(self) -> bool:
        return self.a21 == 0

    def to_elementary(self) -> "ElementaryMap":
        if not self.in_intersection():
            raise MapError("affine map is not triangular")
        return ElementaryMap(self.a11, UniPoly([self.b1, self.a12]), self.a22, self.b2)

    def polys(self) -> Tuple[BiPoly, BiPoly]:
        return (
            BiPoly.linear(self.a11, self.a12, self.b1),
            BiPoly.linear(self.a21, self.a22, self.b2),
        )

    def __str__(self):
        p, q = self.polys()
        return f"(x -> {p}, y -> {q})"


@dataclass(frozen=True)
class ElementaryMap:
    """x' = alpha x + p(y),  y' = beta y + gamma."""

    alpha: Fraction
    p: UniPoly
    beta: Fraction
    gamma: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "alpha", _q(self.alpha))
        object.__setattr__(self, "beta", _q(self.beta))
        object.__setattr__(self, "gamma", _q(self.gamma))
        if not isinstance(self.p, UniPoly):
            object.__setattr__(self, "p", UniPoly(self.p))
        if self.alpha * self.beta == 0:
            raise MapError("elementary map needs alpha*beta != 0")

    @classmethod
    def shear(cls, p: UniPoly) -> "ElementaryMap":
        """x' = x + p(y), y' = y."""
        return cls(1, p, 1, 0)

    def is_identity(self) -> bool:
        return (self.alpha == 1 and self.beta == 1 and self.gamma == 0
                and self.p.is_zero())

    def compose(self, other: "ElementaryMap") -> "ElementaryMap":
        """``self o other``."""
        inner_y = UniPoly([other.gamma, other.beta])
        return ElementaryMap(
            self.alpha * other.alpha,
            other.p * self.alpha + self.p(inner_y),
            self.beta * other.beta,
            self.beta * other.gamma + self.gamma,
        )

    def inverse(self) -> "ElementaryMap":
        ib = 1 / self.beta
        return ElementaryMap(
            1 / self.alpha,
            -affine_substitute(self.p, ib, -self.gamma * ib) / self.alpha
            if not self.p.is_zero() else UniPoly(),
            ib,
            -self.gamma * ib,
        )

    def in_intersection(self) -> bool:
        return self.p.is_zero() or self.p.degree <= 1

    def to_affine(self) -> AffineMap:
        if not self.in_intersection():
            raise MapError("elementary map is not affine")
        return AffineMap(self.alpha, self.p.coeff(1), 0, self.beta, self.p.coeff(0), self.gamma)

    def polys(self) -> Tuple[BiPoly, BiPoly]:
        return (
            BiPoly.x() * self.alpha + BiPoly.from_uni(self.p, "y"),
            BiPoly.linear(0, self.beta, self.gamma),
        )

    def __str__(self):
        p, q = self.polys()
        return f"(x -> {p}, y -> {q})"


Letter = Union[AffineMap, ElementaryMap]


def letter_class(g: Letter) -> LetterClass:
    if g.in_intersection():
        return LetterClass.INTERSECTION
    if isinstance(g, AffineMap):
        return LetterClass.AFFINE_ONLY
    return LetterClass.ELEMENTARY_ONLY


def _mergeable(g: Letter, h: Letter) -> bool:
    cg, ch = letter_class(g), letter_class(h)
    return LetterClass.INTERSECTION in (cg, ch) or cg is ch


def letter_product(g: Letter, h: Letter) -> Letter:
    """``g o h`` for two letters from a common factor."""
    if isinstance(g, AffineMap) and isinstance(h, AffineMap):
        return g.compose(h)
    if isinstance(g, ElementaryMap) and isinstance(h, ElementaryMap):
        return g.compose(h)
    cg, ch = letter_class(g), letter_class(h)
    if cg is LetterClass.INTERSECTION and ch is LetterClass.INTERSECTION:
        ga = g if isinstance(g, AffineMap) else g.to_affine()
        ha = h if isinstance(h, AffineMap) else h.to_affine()
        return ga.compose(ha)
    if LetterClass.ELEMENTARY_ONLY in (cg, ch):
        ge = g if isinstance(g, ElementaryMap) else g.to_elementary()
        he = h if isinstance(h, ElementaryMap) else h.to_elementary()
        return ge.compose(he)
    if LetterClass.AFFINE_ONLY in (cg, ch):
        ga = g if isinstance(g, AffineMap) else g.to_affine()
        ha = h if isinstance(h, AffineMap) else h.to_affine()
        return ga.compose(ha)
    raise MapError("letters from different factors cannot be merged")


def coset_split(g: Letter) -> Tuple[Letter, Letter]:
    """Write ``g = rep o s`` with ``s`` in the intersection and ``rep`` canonical.

    Affine representatives are ``x' = lam x + y, y' = x``; elementary ones are
    ``x' = x + p(y), y' = y`` with ``p`` free of constant and linear terms.
    """
    cls = letter_class(g)
    if cls is LetterClass.AFFINE_ONLY:
        rep = AffineMap(g.a11 / g.a21, 1, 1, 0, 0, 0)
    elif cls is LetterClass.ELEMENTARY_ONLY:
        shifted = affine_substitute(g.p, 1 / g.beta, -g.gamma / g.beta)
        rep = ElementaryMap.shear(UniPoly([0, 0] + list(shifted.coeffs[2:])))
    else:
        raise MapError("intersection letters have no canonical coset form")
    s = letter_product(rep.inverse(), g)
    assert letter_class(s) is LetterClass.INTERSECTION
    return rep, s


# ---------------------------------------------------------------------------
# explicit maps
# ---------------------------------------------------------------------------


def _pair_compose(f: Tuple[BiPoly, BiPoly], g: Tuple[BiPoly, BiPoly]) -> Tuple[BiPoly, BiPoly]:
    """``f o g`` on explicit component pairs."""
    return _compose_one(f[0], g), _compose_one(f[1], g)


def _compose_one(p: BiPoly, g: Tuple[BiPoly, BiPoly]) -> BiPoly:
    # shears and swaps leave a coordinate alone; skip the substitution then
    if p == X:
        return g[0]
    if p == Y:
        return g[1]
    return compose(p, g[0], g[1])


def _pair_degree(f: Tuple[BiPoly, BiPoly]) -> int:
    return max(0 if p.is_zero() else p.total_degree for p in f)


def chain_forward(steps: Sequence["PlanarPolyMap"], start=None) -> Tuple[BiPoly, BiPoly]:
    """Forward components of ``steps[-1] o ... o steps[0]`` (applied after ``start``).

    Each step is composed on the outside of the running result, so a long
    word of low-degree factors never substitutes one big polynomial into
    another.
    """
    acc = start
    for s in steps:
        acc = s.forward if acc is None else _pair_compose(s.forward, acc)
    return (X, Y) if acc is None else acc


@dataclass(frozen=True)
class PlanarPolyMap:
    forward: Tuple[BiPoly, BiPoly]
    inverse: Tuple[BiPoly, BiPoly]
    # optional factorisation in application order; equality ignores it
    factors: Tuple["PlanarPolyMap", ...] = field(default=(), compare=False, repr=False)

    def steps(self) -> Tuple["PlanarPolyMap", ...]:
        return self.factors or (self,)

    def inverse_steps(self) -> Tuple["PlanarPolyMap", ...]:
        return tuple(s.inverted() for s in reversed(self.steps()))

    @classmethod
    def identity(cls) -> "PlanarPolyMap":
        return cls((X, Y), (X, Y))

    @classmethod
    def from_forward(cls, p: BiPoly, q: BiPoly) -> "PlanarPolyMap":
        """Build the map and solve for its polynomial inverse.

        A plane automorphism and its inverse have the same degree, so the
        inverse is found by linear algebra over monomials of that degree.
        """
        return cls((p, q), _solve_inverse(p, q))

    @property
    def degree(self) -> int:
        return _pair_degree(self.forward)

    def __call__(self, x, y):
        return self.forward[0](x, y), self.forward[1](x, y)

    def __matmul__(self, other: "PlanarPolyMap") -> "PlanarPolyMap":
        """``self o other``."""
        return PlanarPolyMap(
            chain_forward(self.steps(), other.forward),
            chain_forward(other.inverse_steps(), self.inverse),
            other.steps() + self.steps(),
        )

    def then_forward(self, other: "PlanarPolyMap") -> Tuple[BiPoly, BiPoly]:
        """Forward components of ``other o self`` only."""
        return _pair_compose(other.forward, self.forward)

    def inverted(self) -> "PlanarPolyMap":
        if not self.factors:
            return PlanarPolyMap(self.inverse, self.forward)
        return PlanarPolyMap(self.inverse, self.forward, self.inverse_steps())

    def is_identity(self) -> bool:
        return self.forward == (X, Y)

    def jacobian(self) -> BiPoly:
        return jacobian_determinant(*self.forward)

    def validate(self) -> None:
        jac = self.jacobian()
        if not jac.is_constant() or jac.is_zero():
            raise MapError("Jacobian determinant is not a nonzero constant")
        if _pair_compose(self.forward, self.inverse) != (X, Y):
            raise MapError("forward o inverse is not the identity")
        if _pair_compose(self.inverse, self.forward) != (X, Y):
            raise MapError("inverse o forward is not the identity")

    def format(self) -> str:
        return f"x -> {self.forward[0]}, y -> {self.forward[1]}"

    def __str__(self):
        return self.format()


def _solve_inverse(p: BiPoly, q: BiPoly) -> Tuple[BiPoly, BiPoly]:
    jac = jacobian_determinant(p, q)
    if not jac.is_constant() or jac.is_zero():
        raise MapError("not invertible: Jacobian determinant is not a nonzero constant")
    d = max(_pair_degree((p, q)), 1)
    monos = [(i, k - i) for k in range(d + 1) for i in range(k + 1)]
    # columns[m] = p^i q^j expanded
    p_pows = [BiPoly.constant(1)]
    q_pows = [BiPoly.constant(1)]
    for _ in range(d):
        p_pows.append(p_pows[-1] * p)
        q_pows.append(q_pows[-1] * q)
    columns = [p_pows[i] * q_pows[j] for i, j in monos]
    sol_x = _solve_combination(columns, X)
    sol_y = _solve_combination(columns, Y)
    if sol_x is None or sol_y is None:
        raise MapError("map has no polynomial inverse")
    g = (
        BiPoly({m: c for m, c in zip(monos, sol_x) if c}),
        BiPoly({m: c for m, c in zip(monos, sol_y) if c}),
    )
    if _pair_compose(g, (p, q)) != (X, Y) or _pair_compose((p, q), g) != (X, Y):
        raise MapError("map has no polynomial inverse")
    return g


def _solve_combination(columns: Sequence[BiPoly], target: BiPoly) -> Optional[List[Fraction]]:
    """Solve ``sum c_k columns[k] = target`` exactly.

    Rows are eliminated one at a time and the scan stops at full column
    rank; callers verify the result by composition.
    """
    keys = set(target.terms)
    for col in columns:
        keys.update(col.terms)
    n = len(columns)
    echelon = {}  # pivot column -> normalised row
    for key in sorted(keys, key=lambda k: (k[0] + k[1], k)):
        row = [col.coeff(*key) for col in columns] + [target.coeff(*key)]
        for c in sorted(echelon):
            if row[c]:
                f = row[c]
                prow = echelon[c]
                row = [a - f * b for a, b in zip(row, prow)]
        piv = next((c for c in range(n) if row[c]), None)
        if piv is None:
            if row[n]:
                return None
            continue
        inv = 1 / row[piv]
        row = [v * inv for v in row]
        for c, prow in echelon.items():
            if prow[piv]:
                f = prow[piv]
                echelon[c] = [a - f * b for a, b in zip(prow, row)]
        echelon[piv] = row
        if len(echelon) == n:
            break
    if len(echelon) < n:
        return None
    return [echelon[c][n] for c in range(n)]


def letter_map(g: Letter) -> PlanarPolyMap:
    return PlanarPolyMap(g.polys(), g.inverse().polys())


# ---------------------------------------------------------------------------
# words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupWord:
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, k):
        return self.letters[k]

    def pattern(self) -> Tuple[LetterClass, ...]:
        return tuple(letter_class(g) for g in self.letters)

    def is_reduced(self) -> bool:
        if len(self.letters) <= 1:
            return True
        pat = self.pattern()
        if LetterClass.INTERSECTION in pat:
            return False
        return all(a is not b for a, b in zip(pat, pat[1:]))

    def is_cyclically_reduced(self) -> bool:
        if not self.is_reduced():
            return False
        if len(self.letters) <= 1:
            return True
        return letter_class(self.letters[0]) is not letter_class(self.letters[-1])

    def __str__(self):
        if not self.letters:
            return "id"
        return " . ".join(str(g) for g in self.letters)


def reduce_word(w: Union[GroupWord, Sequence[Letter]]) -> GroupWord:
    """Reduced word in canonical coset form.

    Adjacent letters from a common factor are multiplied out; afterwards every
    letter but the rightmost is replaced by its canonical coset representative
    and the intersection part is pushed into the letter to its right.
    """
    letters = w.letters if isinstance(w, GroupWord) else tuple(w)
    stack: List[Letter] = []
    for h in letters:
        cur = h
        while stack and _mergeable(stack[-1], cur):
            cur = letter_product(stack.pop(), cur)
        if not cur.is_identity():
            stack.append(cur)
    if len(stack) == 1 and letter_class(stack[0]) is LetterClass.INTERSECTION:
        g = stack[0]
        return GroupWord((g if isinstance(g, AffineMap) else g.to_affine(),))
    for i in range(len(stack) - 1):
        rep, s = coset_split(stack[i])
        stack[i] = rep
        stack[i + 1] = letter_product(s, stack[i + 1])
    return GroupWord(tuple(stack))


def compose_words(w1: GroupWord, w2: GroupWord) -> GroupWord:
    """Reduced word for ``w1 o w2``."""
    return reduce_word(tuple(w1.letters) + tuple(w2.letters))


def invert_word(w: GroupWord) -> GroupWord:
    """Letters reversed and inverted; reduced input gives reduced output."""
    return GroupWord(tuple(g.inverse() for g in reversed(w.letters)))


def cyclic_reduce(w: GroupWord) -> Tuple[GroupWord, GroupWord]:
    """``(u, h)`` with ``w = u o h o u^-1`` and ``h`` cyclically reduced."""
    h = reduce_word(w)
    u: List[Letter] = []
    while len(h) >= 2 and not h.is_cyclically_reduced():
        g = h.letters[0]
        h = reduce_word(tuple(h.letters[1:]) + (g,))
        u.append(g)
    return reduce_word(u), h


def evaluate(w: Union[GroupWord, Sequence[Letter]]) -> PlanarPolyMap:
    letters = w.letters if isinstance(w, GroupWord) else tuple(w)
    fwd = (X, Y)
    for g in reversed(letters):
        fwd = _pair_compose(g.polys(), fwd)
    inv = (X, Y)
    for g in letters:
        inv = _pair_compose(g.inverse().polys(), inv)
    return PlanarPolyMap(fwd, inv)


# ---------------------------------------------------------------------------
# generalised standard form
# ---------------------------------------------------------------------------


class WordType(enum.Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    TYPE_III = "TypeIII"
    TYPE_IV = "TypeIV"


SWAP = AffineMap(0, 1, 1, 0, 0, 0)


@dataclass(frozen=True)
class GeneralisedStandardMap:
    """x' = x + p1(y),  y' = y + p2(x')."""

    p1: UniPoly
    p2: UniPoly

    def __post_init__(self):
        if not isinstance(self.p1, UniPoly):
            object.__setattr__(self, "p1", UniPoly(self.p1))
        if not isinstance(self.p2, UniPoly):
            object.__setattr__(self, "p2", UniPoly(self.p2))

    @property
    def deg1(self):
        return self.p1.degree

    @property
    def deg2(self):
        return self.p2.degree

    def forward(self) -> Tuple[BiPoly, BiPoly]:
        xp = X + BiPoly.from_uni(self.p1, "y")
        return xp, Y + compose(BiPoly.from_uni(self.p2, "x"), xp, Y)

    def backward(self) -> Tuple[BiPoly, BiPoly]:
        yp = Y - BiPoly.from_uni(self.p2, "x")
        return X - compose(BiPoly.from_uni(self.p1, "y"), X, yp), yp

    @functools.cached_property
    def _planar(self) -> PlanarPolyMap:
        # L = e2' o e1' with the two shears (x + p1(y), y) and (x, y + p2(x))
        P1, P2 = BiPoly.from_uni(self.p1, "y"), BiPoly.from_uni(self.p2, "x")
        shears = (PlanarPolyMap((X + P1, Y), (X - P1, Y)), PlanarPolyMap((X, Y + P2), (X, Y - P2)))
        return PlanarPolyMap(self.forward(), self.backward(), shears)

    def to_planar(self) -> PlanarPolyMap:
        return self._planar

    def __str__(self):
        return f"p1 = {self.p1.format('y')}; p2 = {self.p2.format('x')}"


def _nonlinear(p: UniPoly) -> bool:
    return not p.is_zero() and p.degree >= 2


def _affine_deg(p: UniPoly):
    return -1 if p.is_zero() else p.degree


@dataclass(frozen=True)
class StandardWord:
    type: WordType
    word: GroupWord
    names: Tuple[str, ...]

    def label(self) -> str:
        return f"{self.type.value}: " + " · ".join(self.names)


def word_of_standard_form(L: GeneralisedStandardMap) -> StandardWord:
    """Factor ``L`` into the letters t, e_i, q_i, r_i by degree type."""
    d1, d2 = _affine_deg(L.p1), _affine_deg(L.p2)
    e1 = ElementaryMap.shear(L.p1)
    e2 = ElementaryMap.shear(L.p2)
    if d1 >= 2 and d2 >= 2:
        return StandardWord(WordType.TYPE_I, GroupWord((SWAP, e2, SWAP, e1)), ("t", "e2", "t", "e1"))
    if d2 >= 2:
        q1 = AffineMap(0, 1, 1, L.p1.coeff(1), 0, L.p1.coeff(0))
        return StandardWord(WordType.TYPE_II, GroupWord((SWAP, e2, q1)), ("t", "e2", "q1"))
    if d1 >= 2 and d2 == 1:
        r2 = AffineMap(1, 0, L.p2.coeff(1), 1, 0, L.p2.coeff(0))
        return StandardWord(WordType.TYPE_III, GroupWord((r2, e1)), ("r2", "e1"))
    if d1 >= 2:
        e = ElementaryMap(1, L.p1, 1, L.p2.coeff(0))
        return StandardWord(WordType.TYPE_IV, GroupWord((e,)), ("e",))
    raise ScopeError("affine map, not in classification scope")


@dataclass(frozen=True)
class DiagonalChange:
    """x -> alpha x + beta,  y -> gamma y + delta."""

    alpha: Fraction = Fraction(1)
    beta: Fraction = Fraction(0)
    gamma: Fraction = Fraction(1)
    delta: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            object.__setattr__(self, name, _q(getattr(self, name)))
        if self.alpha * self.gamma == 0:
            raise MapError("singular change of variables")

    def affine(self) -> AffineMap:
        return AffineMap(self.alpha, 0, 0, self.gamma, self.beta, self.delta)

    def as_planar(self) -> PlanarPolyMap:
        return letter_map(self.affine())

    def is_identity(self) -> bool:
        return self == DiagonalChange()


def conjugate_by_affine(L: GeneralisedStandardMap, T: DiagonalChange) -> GeneralisedStandardMap:
    """The map ``T o L o T^-1``, again in generalised standard form."""
    p1 = affine_substitute(L.p1, 1 / T.gamma, -T.delta / T.gamma) * T.alpha if not L.p1.is_zero() else UniPoly()
    p2 = affine_substitute(L.p2, 1 / T.alpha, -T.beta / T.alpha) * T.gamma if not L.p2.is_zero() else UniPoly()
    return GeneralisedStandardMap(p1, p2)


def from_mcmillan(f: UniPoly) -> GeneralisedStandardMap:
    """x' = y, y' = -x + f(y) after the change x -> x, y -> x - y."""
    return GeneralisedStandardMap(UniPoly([0, -1]), UniPoly([0, 2]) - f)


def mcmillan_planar(f: UniPoly) -> PlanarPolyMap:
    fy = BiPoly.from_uni(f, "y")
    fx = BiPoly.from_uni(f, "x")
    return PlanarPolyMap((Y, -X + fy), (-Y + fx, X))

"""Symmetries and reversing symmetries of generalised standard maps.

For ``L: x' = x + p1(y), y' = y + p2(x')`` this module decides which of the
eleven tabulated conditions hold (eight when both polynomials are
nonlinear, three when one is affine), solves for their parameters, builds
the explicit witness maps, picks the group structure and conjugates L to a
normal form.  Every witness is re-checked by exact composition before it is
returned.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .funceq import solve_linear_match
from .maps import (
    BiPoly,
    DiagonalChange,
    GeneralisedStandardMap,
    PlanarPolyMap,
    ScopeError,
    StandardWord,
    WordType,
    X,
    Y,
    chain_forward,
    conjugate_by_affine,
    word_of_standard_form,
)
from .poly import Parity, UniPoly, affine_substitute, parity_center
from .verify import check_reversing, check_symmetry


class ConsistencyError(RuntimeError):
    """An internal self-check failed; this indicates a bug."""


class ConditionId(enum.Enum):
    T1_S1 = "T1_S1"
    T1_S2 = "T1_S2"
    T1_S3 = "T1_S3"
    T1_R1 = "T1_R1"
    T1_R2 = "T1_R2"
    T1_R3 = "T1_R3"
    T1_R4 = "T1_R4"
    T1_R5 = "T1_R5"
    T2_S1 = "T2_S1"
    T2_R1 = "T2_R1"
    T2_R2 = "T2_R2"

    @property
    def short(self) -> str:
        return self.value.split("_")[1]

    @property
    def is_reversing(self) -> bool:
        return self.short.startswith("R")


T1_IDS = tuple(c for c in ConditionId if c.value.startswith("T1"))
T2_IDS = tuple(c for c in ConditionId if c.value.startswith("T2"))


@dataclass(frozen=True)
class ConditionMatch:
    """A satisfied condition with its exact parameters.

    ``swapped`` marks matches found on the swapped inverse map, used when
    p2 is the affine polynomial.
    """

    id: ConditionId
    params: Tuple[Tuple[str, Fraction], ...] = ()
    swapped: bool = False

    def __getitem__(self, name: str) -> Fraction:
        for k, v in self.params:
            if k == name:
                return v
        raise KeyError(name)

    def as_dict(self) -> Dict[str, Fraction]:
        return dict(self.params)

    def label(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.id.value}({inner})"


def _match(cid: ConditionId, swapped=False, **params) -> ConditionMatch:
    return ConditionMatch(cid, tuple((k, Fraction(v)) for k, v in params.items()), swapped)


class WitnessKind(enum.Enum):
    SYMMETRY = "symmetry"
    REVERSING = "reversing"


class OrderInfo(enum.Enum):
    INVOLUTION = "involution"
    ORDER4 = "order4"
    SQRT_L = "square_root_of_L"
    SQRT_S1L = "square_root_of_S1_L"
    INFINITE = "infinite"


@dataclass(frozen=True)
class Witness:
    name: str
    kind: WitnessKind
    condition: ConditionId
    map: PlanarPolyMap
    order_info: OrderInfo
    companion_of: Optional[str] = None


@dataclass(frozen=True)
class GroupStructure:
    tag: str
    symmetry_tag: str
    symmetry_generators: Tuple[str, ...]
    reversing_generator: Optional[str]
    description: str


@dataclass(frozen=True)
class NormalForm:
    change: DiagonalChange
    map: GeneralisedStandardMap
    row: ConditionId


@dataclass
class AnalysisReport:
    map: GeneralisedStandardMap
    word: StandardWord
    matches: List[ConditionMatch]
    witnesses: List[Witness]
    structure: GroupStructure
    normal_form: Optional[NormalForm]
    caveats: List[str] = field(default_factory=list)

    @property
    def reversible(self) -> bool:
        return any(m.id.is_reversing for m in self.matches)

    @property
    def has_nontrivial_symmetry(self) -> bool:
        return any(not m.id.is_reversing for m in self.matches)


# ---------------------------------------------------------------------------
# scope
# ---------------------------------------------------------------------------


def _deg(p: UniPoly) -> int:
    return -1 if p.is_zero() else p.degree


def swapped_inverse(L: GeneralisedStandardMap) -> GeneralisedStandardMap:
    """``t o L^-1 o t`` with t the swap; again in generalised standard form."""
    return GeneralisedStandardMap(-L.p2, -L.p1)


def classification_type(L: GeneralisedStandardMap) -> WordType:
    d1, d2 = _deg(L.p1), _deg(L.p2)
    if d1 >= 2 and d2 >= 2:
        return WordType.TYPE_I
    if d1 == 1 and d2 >= 2:
        return WordType.TYPE_II
    if d1 >= 2 and d2 == 1:
        return WordType.TYPE_III
    if d1 <= 1 and d2 <= 1:
        raise ScopeError("outside the classification scope: affine map")
    if d1 >= 2:
        raise ScopeError("outside the classification scope: elementary map (p2 constant)")
    raise ScopeError("outside the classification scope: p1 constant, map is conjugate to an elementary map")


# ---------------------------------------------------------------------------
# detection
# ---------------------------------------------------------------------------


def _odd(p: UniPoly) -> Optional[Fraction]:
    w = parity_center(p, Parity.ODD)
    return None if w is None else w.center


def _even(p: UniPoly) -> Optional[Fraction]:
    w = parity_center(p, Parity.EVEN)
    return None if w is None else w.center


def _detect_type1(p1: UniPoly, p2: UniPoly, caveats: List[str]) -> List[ConditionMatch]:
    out: List[ConditionMatch] = []
    o1, o2 = _odd(p1), _odd(p2)
    ev1, ev2 = _even(p1), _even(p2)
    plus = solve_linear_match(p1, p2, u_over_v=1)
    minus = solve_linear_match(p1, p2, u_over_v=-1)

    def gap(names, ms, odd_needed):
        if ms.real_only and (not odd_needed or o1 is not None):
            vals = ", ".join(f"{1 / v:.6g}" for v in ms.real_only)
            caveats.append(f"{names}: only irrational scale a = {vals} solves the matching "
                           "condition; not reported (rational parameters only)")

    if o1 is not None and o2 is not None:
        out.append(_match(ConditionId.T1_S1, c=2 * o2, e=2 * o1))
    for m in plus:
        out.append(_match(ConditionId.T1_S2, a=1 / m.v, e=m.w))
    gap("T1_S2", plus, False)
    if o1 is not None:
        for m in minus:
            a = 1 / m.v
            c = -m.w * a
            out.append(_match(ConditionId.T1_S3, a=a, c=c, e=2 * o1 + c / a))
    gap("T1_S3/T1_R4", minus, False)
    if o2 is not None:
        out.append(_match(ConditionId.T1_R1, c=2 * o2))
    if o1 is not None:
        out.append(_match(ConditionId.T1_R2, e=2 * o1))
    if ev1 is not None and ev2 is not None:
        out.append(_match(ConditionId.T1_R3, c=2 * ev2, e=2 * ev1))
    for m in minus:
        out.append(_match(ConditionId.T1_R4, a=1 / m.v, e=m.w))
    if o1 is not None:
        for m in plus:
            a = 1 / m.v
            c = -m.w * a
            out.append(_match(ConditionId.T1_R5, a=a, c=c, e=2 * o1 + c / a))
    gap("T1_R5", plus, True)
    return out


def _detect_type2(L: GeneralisedStandardMap, swapped: bool) -> List[ConditionMatch]:
    A, B = L.p1.coeff(1), L.p1.coeff(0)
    out: List[ConditionMatch] = []
    o2 = _odd(L.p2)
    if o2 is not None:
        out.append(_match(ConditionId.T2_S1, swapped, A=A, B=B, e=2 * o2))
        out.append(_match(ConditionId.T2_R1, swapped, A=A, B=B, e=2 * o2))
    out.append(_match(ConditionId.T2_R2, swapped, A=A, B=B))
    return out


def condition_holds(m: ConditionMatch, L: GeneralisedStandardMap) -> bool:
    """Independent check of a matched condition straight from its definition."""
    if m.swapped:
        L = swapped_inverse(L)
    p1, p2 = L.p1, L.p2
    P = m.as_dict()

    def odd_about(p, twice_center):
        return affine_substitute(p, -1, twice_center) == -p

    def even_about(p, twice_center):
        return affine_substitute(p, -1, twice_center) == p

    cid = m.id
    if cid is ConditionId.T1_S1:
        return odd_about(p1, P["e"]) and odd_about(p2, P["c"])
    if cid is ConditionId.T1_S2:
        return p2 == affine_substitute(p1, 1 / P["a"], P["e"]) / P["a"]
    if cid is ConditionId.T1_S3:
        a, c, e = P["a"], P["c"], P["e"]
        return odd_about(p1, e - c / a) and p2 == -affine_substitute(p1, 1 / a, -c / a) / a
    if cid is ConditionId.T1_R1:
        return odd_about(p2, P["c"])
    if cid is ConditionId.T1_R2:
        return odd_about(p1, P["e"])
    if cid is ConditionId.T1_R3:
        return even_about(p1, P["e"]) and even_about(p2, P["c"])
    if cid is ConditionId.T1_R4:
        return p2 == -affine_substitute(p1, 1 / P["a"], P["e"]) / P["a"]
    if cid is ConditionId.T1_R5:
        a, c, e = P["a"], P["c"], P["e"]
        return odd_about(p1, e - c / a) and p2 == affine_substitute(p1, 1 / a, -c / a) / a
    if cid in (ConditionId.T2_S1, ConditionId.T2_R1):
        return _deg(p1) == 1 and odd_about(p2, P["e"])
    if cid is ConditionId.T2_R2:
        return _deg(p1) == 1
    raise ValueError(cid)


@dataclass
class Detection:
    type: WordType
    matches: List[ConditionMatch]
    caveats: List[str]


def detect_full(L: GeneralisedStandardMap) -> Detection:
    wtype = classification_type(L)
    caveats: List[str] = []
    if wtype is WordType.TYPE_I:
        matches = _detect_type1(L.p1, L.p2, caveats)
    elif wtype is WordType.TYPE_II:
        matches = _detect_type2(L, False)
    else:
        matches = _detect_type2(swapped_inverse(L), True)
    for m in matches:
        if not condition_holds(m, L):
            raise ConsistencyError(f"detected condition does not hold: {m.label()}")
    return Detection(wtype, matches, caveats)


def detect(L: GeneralisedStandardMap) -> List[ConditionMatch]:
    return detect_full(L).matches


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------


def _in_y(p: UniPoly, v=1, w=0) -> BiPoly:
    return BiPoly.from_uni(affine_substitute(p, v, w) if not p.is_zero() else p, "y")


def _in_x(p: UniPoly, v=1, w=0) -> BiPoly:
    return BiPoly.from_uni(affine_substitute(p, v, w) if not p.is_zero() else p, "x")


def _lin(cx, cy, c0) -> BiPoly:
    return BiPoly.linear(cx, cy, c0)


def _involution(p: BiPoly, q: BiPoly) -> PlanarPolyMap:
    return PlanarPolyMap((p, q), (p, q))


def _swap_conjugate(F: PlanarPolyMap) -> PlanarPolyMap:
    """``t o F o t`` with t the swap of coordinates."""
    def sw(pair):
        P, Q = pair
        return compose_swap(Q), compose_swap(P)
    return PlanarPolyMap(sw(F.forward), sw(F.inverse))


def compose_swap(p: BiPoly) -> BiPoly:
    return BiPoly({(j, i): c for (i, j), c in p.items()})


def _type1_map(m: ConditionMatch, L: GeneralisedStandardMap) -> Tuple[str, PlanarPolyMap, OrderInfo]:
    p1 = L.p1
    P = m.as_dict()
    cid = m.id
    P1y = _in_y(p1)
    if cid is ConditionId.T1_S1:
        return "S1", _involution(_lin(-1, 0, P["c"]), _lin(0, -1, P["e"])), OrderInfo.INVOLUTION
    if cid is ConditionId.T1_S2:
        a, e = P["a"], P["e"]
        fwd = (_lin(0, a, -e * a), (X + P1y) * (1 / a) + e)
        inv = (_lin(0, a, -a * e) - _in_x(p1, 1 / a, e), _lin(1 / a, 0, e))
        return "S2", PlanarPolyMap(fwd, inv), OrderInfo.SQRT_L
    if cid is ConditionId.T1_S3:
        a, c, e = P["a"], P["c"], P["e"]
        fwd = (_lin(0, a, c), (X + P1y) * (-1 / a) + e)
        inv = (_lin(0, -a, a * e) - _in_x(p1, 1 / a, -c / a), _lin(1 / a, 0, -c / a))
        return "S3", PlanarPolyMap(fwd, inv), OrderInfo.SQRT_S1L
    if cid is ConditionId.T1_R1:
        return "R1", _involution(-X - P1y + P["c"], Y), OrderInfo.INVOLUTION
    if cid is ConditionId.T1_R2:
        return "R2", _involution(X + P1y, _lin(0, -1, P["e"])), OrderInfo.INVOLUTION
    if cid is ConditionId.T1_R3:
        return "R3", _involution(-X - P1y + P["c"], _lin(0, -1, P["e"])), OrderInfo.INVOLUTION
    if cid is ConditionId.T1_R4:
        a, e = P["a"], P["e"]
        return "R4", _involution(_lin(0, a, -e * a), _lin(1 / a, 0, e)), OrderInfo.INVOLUTION
    if cid is ConditionId.T1_R5:
        a, c, e = P["a"], P["c"], P["e"]
        fwd = (_lin(0, a, c), _lin(-1 / a, 0, e))
        inv = (_lin(0, -a, a * e), _lin(1 / a, 0, -c / a))
        return "R5", PlanarPolyMap(fwd, inv), OrderInfo.ORDER4
    raise ValueError(cid)


def _type2_map(m: ConditionMatch, L: GeneralisedStandardMap) -> Tuple[str, PlanarPolyMap, OrderInfo]:
    P = m.as_dict()
    shift = -2 * P["B"] / P["A"]
    P2x = _in_x(L.p2)
    if m.id is ConditionId.T2_S1:
        return "S1", _involution(_lin(-1, 0, P["e"]), _lin(0, -1, shift)), OrderInfo.INVOLUTION
    if m.id is ConditionId.T2_R1:
        return "R1", _involution(_lin(-1, 0, P["e"]), Y - P2x), OrderInfo.INVOLUTION
    if m.id is ConditionId.T2_R2:
        return "R2", _involution(X, -Y + P2x + shift), OrderInfo.INVOLUTION
    raise ValueError(m.id)


def s1_prime(m: ConditionMatch) -> PlanarPolyMap:
    """The point reflection whose product with L has the S3 witness as square root."""
    a, c, e = m["a"], m["c"], m["e"]
    return _involution(_lin(-1, 0, c + a * e), _lin(0, -1, e - c / a))


def _certify_order(W: PlanarPolyMap, info: OrderInfo, L: PlanarPolyMap, m: ConditionMatch) -> bool:
    steps = W.steps()
    sq = chain_forward(steps * 2)
    if info is OrderInfo.INVOLUTION:
        return sq == (X, Y)
    if info is OrderInfo.ORDER4:
        return sq != (X, Y) and chain_forward(steps * 2, sq) == (X, Y)
    if info is OrderInfo.SQRT_L:
        return sq == L.forward
    if info is OrderInfo.SQRT_S1L:
        return sq == chain_forward(s1_prime(m).steps(), L.forward)
    return True


def build_witness(m: ConditionMatch, L: GeneralisedStandardMap) -> Witness:
    """Explicit map of the matched row, verified exactly before return."""
    if m.id in T1_IDS:
        name, W, info = _type1_map(m, L)
    elif m.swapped:
        name, W, info = _type2_map(m, swapped_inverse(L))
        W = _swap_conjugate(W)
    else:
        name, W, info = _type2_map(m, L)
    kind = WitnessKind.REVERSING if m.id.is_reversing else WitnessKind.SYMMETRY
    _self_check(name, W, kind, info, L, m)
    return Witness(name, kind, m.id, W, info)


def companion(w: Witness, L: GeneralisedStandardMap) -> Optional[Witness]:
    """The second involutory reversing symmetry paired with ``w``.

    ``L o R`` when both polynomials are nonlinear, ``R o L`` otherwise.  Only
    involutory reversing witnesses have companions.
    """
    if w.kind is not WitnessKind.REVERSING or w.order_info is not OrderInfo.INVOLUTION:
        return None
    Lm = L.to_planar()
    if w.condition in T1_IDS:
        name, W = f"L o {w.name}", Lm @ w.map
    else:
        name, W = f"{w.name} o L", w.map @ Lm
    c = Witness(name, WitnessKind.REVERSING, w.condition, W, OrderInfo.INVOLUTION, w.name)
    _self_check(name, W, c.kind, c.order_info, L, None)
    return c


def _self_check(name, W, kind, info, L, m):
    Lm = L.to_planar()
    ok = check_reversing(W, Lm) if kind is WitnessKind.REVERSING else check_symmetry(W, Lm)
    if not ok:
        raise ConsistencyError(f"witness {name} fails its defining relation")
    if not _certify_order(W, info, Lm, m):
        raise ConsistencyError(f"witness {name} fails its order certificate ({info.value})")


# ---------------------------------------------------------------------------
# group structure
# ---------------------------------------------------------------------------

C_INF = "C_inf"
D_INF = "D_inf"
C_INF_C2 = "C_inf x C_2"
D_INF_C2 = "D_inf x C_2"
C_INF_C2_S_C2 = "(C_inf x C_2) x_s C_2"


def group_structure(matches: Sequence[ConditionMatch], L: GeneralisedStandardMap) -> GroupStructure:
    ids = {m.id for m in matches}
    wtype = classification_type(L)
    if wtype is not WordType.TYPE_I:
        if ConditionId.T2_R2 not in ids:
            raise ConsistencyError("the always-present reversing involution is missing")
        if ConditionId.T2_S1 in ids:
            return GroupStructure(D_INF_C2, C_INF_C2, ("L", "S1"), "R2",
                                  "(<L> x_s <R2>) x <S1>")
        return GroupStructure(D_INF, C_INF, ("L",), "R2", "<L> x_s <R2>")

    has = lambda s: getattr(ConditionId, f"T1_{s}") in ids  # noqa: E731
    if has("S2") and has("S3"):
        raise ConsistencyError("S2 and S3 cannot hold together")
    if has("R5") != (has("S1") and has("S2")):
        raise ConsistencyError("R5 must hold exactly when S1 and S2 hold")
    if has("S1") and not (has("R1") and has("R2")):
        raise ConsistencyError("S1 must imply R1 and R2")
    if sum(map(has, ("R3", "R4", "S2"))) == 2:
        raise ConsistencyError("two of R3, R4, S2 must imply the third")
    if has("S1") and has("S2"):
        return GroupStructure(C_INF_C2_S_C2, C_INF_C2, ("S2", "S1"), "R1",
                              "(<S2> x <S1>) x_s <R1>")
    if has("S3"):
        return GroupStructure(D_INF_C2, C_INF_C2, ("S3", "S1"), "R1",
                              "(<S3> x_s <R1>) x <S1>")
    if has("S1"):
        return GroupStructure(D_INF_C2, C_INF_C2, ("L", "S1"), "R1",
                              "(<L> x_s <R1>) x <S1>")
    if has("S2") and has("R3"):
        return GroupStructure(D_INF, C_INF, ("S2",), "R3", "<S2> x_s <R3>")
    if has("S2"):
        return GroupStructure(C_INF, C_INF, ("S2",), None, "<S2>")
    present = [r for r in ("R1", "R2", "R3", "R4") if has(r)]
    if len(present) > 1:
        raise ConsistencyError(f"more than one reversing condition without symmetry: {present}")
    if present:
        r = present[0]
        return GroupStructure(D_INF, C_INF, ("L",), r, f"<L> x_s <{r}>")
    return GroupStructure(C_INF, C_INF, ("L",), None, "<L>")


# ---------------------------------------------------------------------------
# normal form
# ---------------------------------------------------------------------------

_T1_PRIORITY = (
    ConditionId.T1_S3, ConditionId.T1_R5, ConditionId.T1_S2, ConditionId.T1_S1,
    ConditionId.T1_R3, ConditionId.T1_R4, ConditionId.T1_R1, ConditionId.T1_R2,
)
_T2_PRIORITY = (ConditionId.T2_S1, ConditionId.T2_R1, ConditionId.T2_R2)


class NoNormalForm(ValueError):
    pass


def _change_for(m: ConditionMatch, L: GeneralisedStandardMap) -> DiagonalChange:
    P = m.as_dict()
    cid = m.id
    if cid in (ConditionId.T1_S1, ConditionId.T1_R3):
        return DiagonalChange(1, -P["c"] / 2, 1, -P["e"] / 2)
    if cid in (ConditionId.T1_S2, ConditionId.T1_R4):
        return DiagonalChange(1 / P["a"], P["e"], 1, 0)
    if cid in (ConditionId.T1_S3, ConditionId.T1_R5):
        a, c, e = P["a"], P["c"], P["e"]
        return DiagonalChange(1, -(c + a * e) / 2, a, -(a / 2) * (e - c / a))
    if cid is ConditionId.T1_R1:
        return DiagonalChange(1, -P["c"] / 2, 1, 0)
    if cid is ConditionId.T1_R2:
        return DiagonalChange(1, 0, 1, -P["e"] / 2)
    if not m.swapped:
        e = P.get("e", Fraction(0))
        return DiagonalChange(1, -e / 2, P["A"], P["B"])
    # p2 affine: scale p2 to the identity and centre p1 on its odd point
    A, B = L.p2.coeff(1), L.p2.coeff(0)
    centre = P.get("e", Fraction(0)) / 2
    return DiagonalChange(1, B / A, 1 / A, -centre / A)


def normal_form(L: GeneralisedStandardMap, matches: Sequence[ConditionMatch]) -> NormalForm:
    if not matches:
        raise NoNormalForm("no normal form: map is asymmetric and irreversible")
    order = _T2_PRIORITY if matches[0].id in T2_IDS else _T1_PRIORITY
    best = min(matches, key=lambda m: order.index(m.id))
    T = _change_for(best, L)
    return NormalForm(T, conjugate_by_affine(L, T), best.id)


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------


def analyze(L: GeneralisedStandardMap, *, companions: bool = True) -> AnalysisReport:
    word = word_of_standard_form(L)
    det = detect_full(L)
    witnesses: List[Witness] = []
    for m in det.matches:
        w = build_witness(m, L)
        witnesses.append(w)
        if companions:
            c = companion(w, L)
            if c is not None:
                witnesses.append(c)
    structure = group_structure(det.matches, L)
    nf = normal_form(L, det.matches) if det.matches else None
    return AnalysisReport(L, word, det.matches, witnesses, structure, nf, det.caveats)


def generator_map(report: AnalysisReport, name: str) -> PlanarPolyMap:
    """The map behind a generator name in ``report.structure``."""
    if name == "L":
        return report.map.to_planar()
    for w in report.witnesses:
        if w.name == name:
            return w.map
    raise KeyError(name)


__all__ = [
    "AnalysisReport", "ConditionId", "ConditionMatch", "ConsistencyError", "Detection",
    "GroupStructure", "NoNormalForm", "NormalForm", "OrderInfo", "ScopeError", "Witness",
    "WitnessKind", "analyze", "build_witness", "classification_type", "companion",
    "condition_holds", "detect", "detect_full", "generator_map", "group_structure",
    "normal_form", "s1_prime", "swapped_inverse",
]

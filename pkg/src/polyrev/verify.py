"""Exact checks of the symmetry and reversing-symmetry relations.

Everything is decided by symbolic composition and coefficient comparison;
nothing is sampled at points.
"""

from __future__ import annotations

from typing import Optional, Union

from .maps import GeneralisedStandardMap, PlanarPolyMap, X, Y, _pair_degree, chain_forward

MapLike = Union[PlanarPolyMap, GeneralisedStandardMap]


def _planar(F: MapLike) -> PlanarPolyMap:
    return F.to_planar() if isinstance(F, GeneralisedStandardMap) else F


def maps_equal(F: MapLike, G: MapLike) -> bool:
    return _planar(F).forward == _planar(G).forward


def check_symmetry(S: MapLike, L: MapLike) -> bool:
    """S o L o S^-1 == L, tested as S o L == L o S."""
    S, L = _planar(S), _planar(L)
    return chain_forward(L.steps() + S.steps()) == chain_forward(S.steps() + L.steps())


def check_reversing(R: MapLike, L: MapLike) -> bool:
    """R o L o R^-1 == L^-1, tested as R o L == L^-1 o R."""
    R, L = _planar(R), _planar(L)
    return chain_forward(L.steps() + R.steps()) == chain_forward(R.steps() + L.inverse_steps())


def power_forward(F: MapLike, k: int):
    F = _planar(F)
    if k < 0:
        return power_forward(F.inverted(), -k)
    acc = (X, Y)
    for _ in range(k):
        acc = chain_forward(F.steps(), acc)
    return acc


def element_order(F: MapLike, max_k: int = 12) -> Optional[int]:
    """Least k <= max_k with F^k = id, or None.

    A finite-order automorphism never has a power of larger degree than
    itself, so growth in degree ends the search early.
    """
    if max_k < 1:
        raise ValueError("max_k must be at least 1")
    F = _planar(F)
    deg = _pair_degree(F.forward)
    acc = F.forward
    for k in range(1, max_k + 1):
        if acc == (X, Y):
            return k
        if k == max_k:
            break
        acc = chain_forward(F.steps(), acc)
        if _pair_degree(acc) > deg:
            return None
    return None

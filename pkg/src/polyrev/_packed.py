"""Kronecker-packed integer arithmetic for bivariate polynomials.

A polynomial ``sum c[i, j] x^i y^j`` with integer coefficients is stored as
the single integer ``sum c[i, j] * 2**(B * (i + j*W))``.  Multiplying two
packed integers multiplies the polynomials, provided every coefficient of
the result fits in ``B - 1`` bits and every x-degree stays below ``W``.
GMP (through gmpy2) makes the big-integer products fast; without it plain
Python ints are used.
"""

from __future__ import annotations

from typing import Dict, Tuple

import numpy as np

try:  # pragma: no cover - exercised implicitly
    from gmpy2 import mpz as _big

    HAVE_GMP = True
except ImportError:  # pragma: no cover
    _big = int
    HAVE_GMP = False

Terms = Dict[Tuple[int, int], int]

_WORD = {1: np.dtype("<u1"), 2: np.dtype("<u2"), 4: np.dtype("<u4"), 8: np.dtype("<u8")}

# below this many term products schoolbook multiplication wins
SCHOOLBOOK_LIMIT = 4000


class Layout:
    """Slot geometry shared by every packed value of one computation."""

    __slots__ = ("bits", "width", "rows", "nbytes", "offset")

    def __init__(self, bound: int, xdeg: int, ydeg: int):
        bits = bound.bit_length() + 2
        if bits <= 64:
            # machine-word slots let numpy do the (un)packing
            bits = next(w for w in (8, 16, 32, 64) if bits <= w)
        else:
            bits += (-bits) % 8
        self.bits = bits
        self.width = xdeg + 1
        self.rows = ydeg + 1
        self.nbytes = bits // 8
        self.offset = None

    @property
    def slots(self) -> int:
        return self.width * self.rows

    def pack(self, terms: Terms):
        nb = self.nbytes
        if nb in _WORD:
            width = self.width
            arr = np.zeros(self.slots, dtype=np.int64)
            arr[[i + j * width for i, j in terms]] = list(terms.values())
            # two's-complement wrap is harmless: every slot ends in [0, 2^bits)
            arr = arr.view(np.uint64) + np.uint64(1 << (self.bits - 1))
            return _big(int.from_bytes(arr.astype(_WORD[nb]).tobytes(), "little")) - self._offset()
        pos = bytearray(self.slots * nb)
        neg = bytearray(self.slots * nb)
        width = self.width
        has_neg = False
        for (i, j), c in terms.items():
            k = (i + j * width) * nb
            if c >= 0:
                pos[k:k + nb] = int(c).to_bytes(nb, "little")
            else:
                neg[k:k + nb] = int(-c).to_bytes(nb, "little")
                has_neg = True
        value = _big(int.from_bytes(pos, "little"))
        if has_neg:
            value -= _big(int.from_bytes(neg, "little"))
        return value

    def _offset(self):
        # half the slot range in every slot; added before unpacking so that
        # negative coefficients do not borrow from their neighbours
        if self.offset is None:
            nb = self.nbytes
            top = (1 << (self.bits - 1)).to_bytes(nb, "little")
            self.offset = _big(int.from_bytes(top * self.slots, "little"))
        return self.offset

    def unpack(self, value) -> Terms:
        nb = self.nbytes
        half = 1 << (self.bits - 1)
        raw = int(value + self._offset()).to_bytes(self.slots * nb, "little")
        width = self.width
        if nb in _WORD:
            arr = np.frombuffer(raw, dtype=_WORD[nb]).astype(np.uint64) - np.uint64(half)
            arr = arr.view(np.int64)
            idx = np.flatnonzero(arr)
            return {(k % width, k // width): v for k, v in zip(idx.tolist(), arr[idx].tolist())}
        out: Terms = {}
        from_bytes = int.from_bytes
        for k in range(self.slots):
            d = from_bytes(raw[k * nb:(k + 1) * nb], "little") - half
            if d:
                out[(k % width, k // width)] = d
        return out


def l1(terms: Terms) -> int:
    return sum(abs(c) for c in terms.values())


def degrees(terms: Terms) -> Tuple[int, int]:
    if not terms:
        return 0, 0
    return max(i for i, _ in terms), max(j for _, j in terms)


def schoolbook(a: Terms, b: Terms) -> Terms:
    out: Terms = {}
    get = out.get
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            key = (i1 + i2, j1 + j2)
            out[key] = get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def multiply(a: Terms, b: Terms) -> Terms:
    """Exact product of two integer bivariate polynomials."""
    if not a or not b:
        return {}
    if len(a) * len(b) <= SCHOOLBOOK_LIMIT:
        return schoolbook(a, b)
    ax, ay = degrees(a)
    bx, by = degrees(b)
    layout = Layout(l1(a) * l1(b), ax + bx, ay + by)
    return layout.unpack(layout.pack(a) * layout.pack(b))


def compose(f: Terms, g1: Terms, d1: int, g2: Terms, d2: int) -> Terms:
    """Integer part of ``f(g1/d1, g2/d2) * d1**I * d2**J``.

    ``I`` and ``J`` are the largest x- and y-exponents occurring in ``f``;
    the caller divides the result by ``d1**I * d2**J``.
    """
    if not f:
        return {}
    big_i = max(i for i, _ in f)
    big_j = max(j for _, j in f)
    gx1, gy1 = degrees(g1)
    gx2, gy2 = degrees(g2)
    xdeg = max(i * gx1 + j * gx2 for i, j in f)
    ydeg = max(i * gy1 + j * gy2 for i, j in f)
    n1 = max(l1(g1), 1)
    n2 = max(l1(g2), 1)
    bound = 0
    for (i, j), c in f.items():
        bound += abs(c) * n1 ** i * d1 ** (big_i - i) * n2 ** j * d2 ** (big_j - j)
    # the packed inputs must fit too, even when f ignores one of them
    bound = max(bound, n1, n2)
    layout = Layout(bound, xdeg, ydeg)

    # an argument f never uses may not fit the output layout; leave it unpacked
    p1 = layout.pack(g1) if g1 and big_i else _big(0)
    powers = [_big(1)]
    for i in range(1, big_i + 1):
        powers.append(powers[-1] * p1)
    scale1 = [_big(d1) ** (big_i - i) for i in range(big_i + 1)]

    # coeffs[j] = sum_i f_ij * g1^i * d1^(I-i)
    coeffs = [_big(0)] * (big_j + 1)
    for (i, j), c in f.items():
        coeffs[j] += (c * scale1[i]) * powers[i]
    p2 = layout.pack(g2) if g2 and big_j else _big(0)
    acc = coeffs[big_j]
    for j in range(big_j - 1, -1, -1):
        acc = acc * p2 + coeffs[j] * _big(d2) ** (big_j - j)
    return layout.unpack(acc)

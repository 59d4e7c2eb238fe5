"""Pure-Python numeric kernels (fallback when the compiled module is absent)."""

import math

import numpy as np


def _horner(c, t):
    acc = 0.0
    for k in range(len(c) - 1, -1, -1):
        acc = acc * t + c[k]
    return acc


def iterate_orbit(c1, c2, x, y, n, forward=True):
    """Orbit of length n+1 from (x, y); stops early at a non-finite point.

    Returns ``(xs, ys, count)`` where only the first ``count`` entries are valid.
    """
    c1 = [float(v) for v in c1]
    c2 = [float(v) for v in c2]
    xs = np.empty(n + 1)
    ys = np.empty(n + 1)
    xs[0], ys[0] = x, y
    count = 1
    for k in range(n):
        if forward:
            x = x + _horner(c1, y)
            y = y + _horner(c2, x)
        else:
            y = y - _horner(c2, x)
            x = x - _horner(c1, y)
        if not (math.isfinite(x) and math.isfinite(y)):
            break
        xs[k + 1] = x
        ys[k + 1] = y
        count += 1
    return xs, ys, count


def iterate_points(c1, c2, xs, ys, steps):
    """Apply the forward map ``steps`` times to every point; non-finite values propagate."""
    c1 = [float(v) for v in c1]
    c2 = [float(v) for v in c2]
    px = np.asarray(xs, dtype=float).tolist()
    py = np.asarray(ys, dtype=float).tolist()
    for i in range(len(px)):
        x, y = px[i], py[i]
        for _ in range(steps):
            x = x + _horner(c1, y)
            y = y + _horner(c2, x)
            if not (math.isfinite(x) and math.isfinite(y)):
                x = y = math.nan
                break
        px[i], py[i] = x, y
    return np.array(px), np.array(py)

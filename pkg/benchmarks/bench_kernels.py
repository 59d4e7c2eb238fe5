"""Compare the compiled and pure-Python backends.

Two timings:

* numeric orbit iteration, Cython kernel vs the pure-Python module;
* exact Kronecker-packed composition, gmpy2 big ints vs plain Python ints.

Usage:  python benchmarks/bench_kernels.py [--repeat N] [--steps N]
"""

import argparse
import random
import statistics
import time

from polyrev import _packed
from polyrev.kernels import _pykernels
from polyrev.maps import GeneralisedStandardMap
from polyrev.poly import UniPoly

try:
    from polyrev.kernels import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def bench_orbits(repeat, steps):
    c1, c2 = [0.0, -1.0], [0.0, 2.0, -2.0]  # Henon-like, bounded near the origin
    rng = random.Random(1)
    xs = [rng.uniform(-0.2, 0.2) for _ in range(200)]
    ys = [rng.uniform(-0.2, 0.2) for _ in range(200)]
    rows = []
    for name, mod in (("python", _pykernels), ("cython", _ckernels)):
        if mod is None:
            rows.append((name, None, None))
            continue
        orbit = best_of(lambda: mod.iterate_orbit(c1, c2, 0.1, 0.0, steps), repeat)
        cloud = best_of(lambda: mod.iterate_points(c1, c2, xs, ys, steps // 100), repeat)
        rows.append((name, orbit, cloud))
    print(f"orbit iteration ({steps} steps; 200 points x {steps // 100} steps)")
    base = rows[0]
    for name, orbit, cloud in rows:
        if orbit is None:
            print(f"  {name:<7} not built")
            continue
        print(f"  {name:<7} orbit {orbit[0] * 1e3:8.2f} ms (x{base[1][0] / orbit[0]:5.1f})   "
              f"cloud {cloud[0] * 1e3:8.2f} ms (x{base[2][0] / cloud[0]:5.1f})")


def bench_compose(repeat):
    rng = random.Random(2)
    maps = [GeneralisedStandardMap(UniPoly([rng.randint(-3, 3) for _ in range(d)] + [rng.choice((-2, -1, 1, 2))]),
                                   UniPoly([rng.randint(-3, 3) for _ in range(d)] + [rng.choice((-2, -1, 1, 2))]))
            for d in (3, 4, 5, 6)]

    def work():
        for L in maps:
            P = L.to_planar()
            # flat composition on purpose: L o L^-1 through the full degree-d^2 components
            P1 = type(P)(P.forward, P.inverse)
            assert (P1 @ P1.inverted()).is_identity()

    print("exact composition L o L^-1, degrees 3..6")
    saved = _packed._big
    results = []
    try:
        for name, big in (("int", int), ("gmpy2", saved if _packed.HAVE_GMP else None)):
            if big is None:
                print(f"  {name:<7} not installed")
                continue
            _packed._big = big
            results.append((name, best_of(work, repeat)))
    finally:
        _packed._big = saved
    base = results[0][1][0]
    for name, (best, med) in results:
        print(f"  {name:<7} {best * 1e3:8.1f} ms (median {med * 1e3:.1f}, x{base / best:4.1f})")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--steps", type=int, default=100_000)
    args = ap.parse_args()
    bench_orbits(args.repeat, args.steps)
    bench_compose(args.repeat)


if __name__ == "__main__":
    main()

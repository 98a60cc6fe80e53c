"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--states N] [--repeat R]

Both backends are imported from the same process; the numba path is warmed
up once so JIT compilation is not counted.
"""

import argparse
import math
import timeit

import numpy as np

from gendual import _kernels
from gendual.bound import l_max


def _best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--states", type=int, default=200_000)
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)

    rng = np.random.default_rng(0)
    n = args.states
    v = rng.normal(size=(n, 3))
    axes = v / np.linalg.norm(v, axis=1, keepdims=True)
    states = axes[::-1] * rng.uniform(0, 1, (n, 1))
    omegas = rng.uniform(0, math.pi, n)
    phis = np.linspace(0, 2 * math.pi, n, endpoint=False)
    t = axes[0]

    cases = {
        "duality_batch": (
            lambda: _kernels.duality_batch_numba(t, 1.1, states),
            lambda: _kernels.duality_batch_numpy(t, 1.1, states),
        ),
        "duality_rows": (
            lambda: _kernels.duality_rows_numba(axes, omegas, states),
            lambda: _kernels.duality_rows_numpy(axes, omegas, states),
        ),
        "fringe": (
            lambda: _kernels.fringe_numba(t, states[0], phis),
            lambda: _kernels.fringe_numpy(t, states[0], phis),
        ),
    }

    print(f"backend in use: {_kernels.backend()}  (n = {n}, best of {args.repeat})")
    print(f"{'kernel':<16}{'numba [ms]':>12}{'numpy [ms]':>12}{'ratio':>8}")
    for name, (fast, slow) in cases.items():
        if not _kernels.HAVE_NUMBA:
            print(f"{name:<16}{'n/a':>12}{_best(slow, args.repeat) * 1e3:>12.2f}")
            continue
        fast()
        np.testing.assert_allclose(fast(), slow(), atol=1e-13)
        tf, ts = _best(fast, args.repeat), _best(slow, args.repeat)
        print(f"{name:<16}{tf * 1e3:>12.2f}{ts * 1e3:>12.2f}{ts / tf:>8.1f}")

    # end-to-end: the optimizer spends almost all its time in duality_batch
    l_max([0.6, 0.0, 0.8])
    print(f"{'l_max (e2e)':<16}{_best(lambda: l_max([0.6, 0.0, 0.8]), args.repeat) * 1e3:>12.2f}"
          f"{'':>12}   ({_kernels.backend()})")


if __name__ == "__main__":
    main()

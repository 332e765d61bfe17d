"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from sol_bravais import _kernels as K
from sol_bravais.equivalence import candidate_matrix, candidate_parameters


def cases():
    phis = [candidate_matrix(6, c).as_tuple() for c in candidate_parameters(6)]
    pairs = [(a, b) for a in phis for b in phis]
    ts = np.linspace(0.0, 1.0, 257)
    edge = np.column_stack([np.linspace(0, 1, 257), np.linspace(0, 2, 257), np.zeros(257)])
    long_curve = K.np_curve((0.3, -0.2, 0.4), 1.0, 1.0, 1.76, np.linspace(0, 1, 100_001))

    def scan(fn):
        return lambda: [fn(a, b, 50) for a, b in pairs]

    return {
        "conjugator scan, N=6 pairs, bound 50": (scan(K.np_conjugators), scan(K.nb_conjugators)),
        "bent-face sweep 257x257": (lambda: K.np_sweep(edge, 0.5, -0.3, 1.2, ts),
                                    lambda: K.nb_sweep(edge, 0.5, -0.3, 1.2, ts)),
        "arclength, 1e5 samples": (lambda: K.np_arclength(long_curve), lambda: K.nb_arclength(long_curve)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if K.numba is None:
        raise SystemExit("numba is not installed")
    print(f"{'kernel':40s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for name, (np_fn, nb_fn) in cases().items():
        nb_fn()  # compile outside the timing
        t_np = min(timeit.repeat(np_fn, number=1, repeat=args.repeat)) * 1e3
        t_nb = min(timeit.repeat(nb_fn, number=1, repeat=args.repeat)) * 1e3
        print(f"{name:40s} {t_np:10.2f} {t_nb:10.2f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()

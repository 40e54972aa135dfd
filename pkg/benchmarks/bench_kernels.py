"""Time the numba and numpy kernel backends on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 5] [--spins 20]

Numba timings exclude the first (compiling) call. Outputs are compared
between backends before timing.
"""

import argparse
import timeit

import numpy as np

from spinhaf import _kernels


def xx_case(rng, n, density=0.5):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    flips = np.array([(1 << i) | (1 << j) for i, j in pairs], dtype=np.int64)
    coeffs = rng.normal(size=len(pairs))
    psi = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return psi / np.linalg.norm(psi), flips, coeffs


def cases(rng, spins, table_dim, perm_dim):
    psi, flips, coeffs = xx_case(rng, spins)
    m = rng.uniform(-1, 1, (table_dim, table_dim))
    sym = (m + m.T) / 2
    b = rng.uniform(-1, 1, (perm_dim, perm_dim))
    cos, sin = np.cos(0.1 * coeffs), np.sin(0.1 * coeffs)

    def rotate(k):
        out = psi.copy()
        k.rotate_xx(out, flips, cos, sin)
        return out

    def controlled_ry(k):
        out = psi.copy()
        k.apply_1q(out, 3, 0.6, -0.8, 0.8, 0.6, 1)
        return out

    return {
        f"apply_xx ({spins} spins, {len(flips)} terms)": lambda k: k.apply_xx(psi, flips, coeffs),
        f"rotate_xx ({spins} spins, {len(flips)} terms)": rotate,
        f"apply_1q ({spins} spins, controlled)": controlled_ry,
        f"hafnian_table ({table_dim}x{table_dim})": lambda k: k.hafnian_table(sym),
        f"permanent_ryser ({perm_dim}x{perm_dim})": lambda k: k.permanent_ryser(b),
    }


def check_agreement(case, backends):
    outs = [np.asarray(case(k)) for k in backends.values()]
    for out in outs[1:]:
        np.testing.assert_allclose(out, outs[0], rtol=1e-9, atol=1e-12)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--spins", type=int, default=20)
    p.add_argument("--table-dim", type=int, default=18)
    p.add_argument("--perm-dim", type=int, default=18)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    backends = {name: _kernels.get_backend(name) for name in sorted(_kernels.BACKENDS)}
    if "numba" not in backends:
        print("numba is not installed; timing the numpy backend only")
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<42}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    for label, case in cases(rng, args.spins, args.table_dim, args.perm_dim).items():
        check_agreement(case, backends)  # also compiles the numba kernels
        best = {
            name: min(timeit.repeat(lambda: case(k), number=1, repeat=args.repeat))
            for name, k in backends.items()
        }
        speedup = best["numpy"] / best["numba"] if "numba" in best else float("nan")
        cols = "".join(f"{1e3 * t:>10.2f}ms" for t in best.values())
        print(f"{label:<42}{cols}{speedup:>9.1f}x")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Generate the five benchmark instance files under data/.

Each instance simulates weekly returns for n assets from a three-factor
model (one dominant market factor plus two style factors and idiosyncratic
noise), then writes the empirical means, standard deviations, and
correlations in the classic triangular text format:

    n
    mean_1 stddev_1
    ...
    mean_n stddev_n
    i j rho_ij        (1-based, all pairs i <= j)

The empirical correlation matrix of T > n observations is positive
definite with margin (smallest eigenvalue well above the 1e-6 print
rounding), so the covariance assembled by the parser is safe for the QP
solver. Seeds are fixed: reruns reproduce the files byte for byte.
"""

import numpy as np

SPECS = [  # (file stem, number of assets)
    ("port1", 31),
    ("port2", 85),
    ("port3", 89),
    ("port4", 98),
    ("port5", 225),
]
T = 287  # weekly observations, > n for every instance
BASE_SEED = 20260825


def simulate(n: int, rng: np.random.Generator) -> np.ndarray:
    beta = np.clip(rng.normal(1.0, 0.20, size=n), 0.3, 1.7)
    style = rng.normal(0.0, 0.25, size=(n, 2))
    loadings = np.column_stack([beta, style])

    factor_vol = np.array([0.030, 0.008, 0.008])
    factors = rng.standard_normal((T, 3)) * factor_vol
    idio_vol = rng.uniform(0.005, 0.012, size=n)
    noise = rng.standard_normal((T, n)) * idio_vol
    drift = np.maximum(
        0.0003, 0.0015 + 0.0012 * (beta - 1.0) + rng.normal(0.0, 0.0004, size=n)
    )
    # Center the stochastic part so the empirical means equal the drift:
    # a lucky or unlucky market draw would otherwise shift every mean and
    # push the low-return end of the frontier toward zero, where percentage
    # deviations lose meaning.
    stochastic = factors @ loadings.T + noise
    stochastic -= stochastic.mean(axis=0)
    return drift + stochastic


def write_instance(stem: str, n: int, seed: int) -> None:
    rng = np.random.default_rng(seed)
    returns = simulate(n, rng)
    mean = returns.mean(axis=0)
    std = returns.std(axis=0, ddof=1)
    corr = np.corrcoef(returns.T)

    lines = [f"{n}"]
    for i in range(n):
        lines.append(f"{mean[i]:.6f} {std[i]:.6f}")
    for i in range(n):
        for j in range(i, n):
            rho = 1.0 if i == j else min(1.0, max(-1.0, corr[i, j]))
            lines.append(f"{i + 1} {j + 1} {rho:.6f}")

    path = f"data/{stem}.txt"
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")

    eigmin = np.linalg.eigvalsh(corr).min()
    print(
        f"{path}: n={n} mean in [{mean.min():.5f}, {mean.max():.5f}] "
        f"std in [{std.min():.5f}, {std.max():.5f}] corr eigmin={eigmin:.5f}"
    )


def main() -> None:
    for idx, (stem, n) in enumerate(SPECS):
        write_instance(stem, n, BASE_SEED + idx)


if __name__ == "__main__":
    main()

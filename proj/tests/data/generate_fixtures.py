# Copyright 2026 The irga-tvp Authors
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
"""Writes the synthetic monthly fixtures used by the tests.

fred_md_subset.csv mimics the FRED-MD layout (a Transform: row of codes and
M/D/YYYY dates) with ten familiar mnemonics. Values come from a latent
stationary VAR(1) mapped back to levels through each column's code, so the
transformed panel is well behaved. toy3.csv is a small code-1 panel.
"""
import numpy as np

rng = np.random.default_rng(20260101)


def dates(start_year, n):
    out = []
    y, m = start_year, 1
    for _ in range(n):
        out.append(f"{m}/1/{y}")
        m += 1
        if m == 13:
            y, m = y + 1, 1
    return out


def latent_var(n, k, rho=0.5, scale=1.0):
    a = rho * np.eye(k) + 0.05 * rng.standard_normal((k, k))
    z = np.zeros((n + 100, k))
    for t in range(1, n + 100):
        z[t] = a @ z[t - 1] + scale * rng.standard_normal(k)
    return z[100:]


def write(path, names, codes, rows, values):
    with open(path, "w") as f:
        f.write("sasdate," + ",".join(names) + "\n")
        f.write("Transform:," + ",".join(str(c) for c in codes) + "\n")
        for d, v in zip(rows, values):
            f.write(d + "," + ",".join(f"{x:.6f}" for x in v) + "\n")


def fred_subset():
    names = ["INDPRO", "UNRATE", "CPIAUCSL", "FEDFUNDS", "M2SL",
             "S&P 500", "GS10", "PAYEMS", "HOUST", "VXOCLSx"]
    codes = [5, 2, 6, 2, 6, 5, 2, 5, 4, 1]
    n = 12 * 25  # 1995-01 .. 2019-12
    z = latent_var(n, len(names))
    x = np.zeros_like(z)
    # INDPRO: growth ~0.2% a month
    x[:, 0] = 80.0 * np.exp(np.cumsum(0.002 + 0.006 * z[:, 0]))
    x[:, 1] = 5.5 + np.cumsum(0.15 * z[:, 1]) * 0.3
    x[:, 1] = np.clip(x[:, 1], 3.0, 11.0)
    # CPI: second difference of logs is the latent series
    infl = 0.002 + np.cumsum(0.0008 * z[:, 2]) * 0.1
    x[:, 2] = 150.0 * np.exp(np.cumsum(infl))
    x[:, 3] = np.clip(5.0 + np.cumsum(0.15 * z[:, 3]) * 0.4, 0.05, 8.0)
    m2g = 0.005 + np.cumsum(0.001 * z[:, 4]) * 0.1
    x[:, 4] = 3500.0 * np.exp(np.cumsum(m2g))
    x[:, 5] = 500.0 * np.exp(np.cumsum(0.006 + 0.035 * z[:, 5]))
    x[:, 6] = np.clip(6.0 + np.cumsum(0.2 * z[:, 6]) * 0.3, 1.0, 9.0)
    x[:, 7] = 115000.0 * np.exp(np.cumsum(0.001 + 0.0015 * z[:, 7]))
    x[:, 8] = np.exp(7.2 + 0.08 * z[:, 8])
    x[:, 9] = 20.0 + 4.0 * z[:, 9] + 0.5 * np.abs(z[:, 5]) * 4.0
    x[:, 9] = np.maximum(x[:, 9], 9.0)
    write("fred_md_subset.csv", names, codes, dates(1995, n), x)


def toy3():
    n = 120
    z = latent_var(n, 3, rho=0.6, scale=0.5)
    write("toy3.csv", ["Y1", "Y2", "Y3"], [1, 1, 1], dates(2000, n), z)


if __name__ == "__main__":
    fred_subset()
    toy3()

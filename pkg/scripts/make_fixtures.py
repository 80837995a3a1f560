#!/usr/bin/env python3
"""Regenerate the arbitrary-precision oracle fixtures under tests/fixtures.

Everything here comes from mpmath at 25-50 digits, independent of the
float64 engine in src/. Outputs are committed so the test suite never
needs mpmath at runtime. Rerun after any change to the sampling plan:

    python3 scripts/make_fixtures.py

Takes a few minutes; the second-moment quadrature dominates.
"""

from __future__ import annotations

import csv
import json
import pathlib
import time

import mpmath as mp
import numpy as np

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"
SEED = 20260817


def z_table() -> None:
    """1000 log-uniform ordinates on [50, 1e4] plus seam/zero specials."""
    mp.mp.dps = 50
    rng = np.random.default_rng(SEED)
    ts = np.exp(rng.uniform(np.log(50.0), np.log(1e4), 993))
    specials = [50.0, 99.999, 100.0, 100.001, 14.134725141734693, 17.845599540810372, 30.0]
    ts = np.sort(np.concatenate([ts, np.array(specials)]))
    rows = []
    t0 = time.time()
    for i, t in enumerate(ts):
        z = mp.siegelz(mp.mpf(float(t)))
        rows.append((float(t), float(z)))
        if i % 200 == 0:
            print(f"  z table {i}/{len(ts)}  ({time.time()-t0:.0f}s)")
    with open(OUT / "z_table.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "z"])
        for t, z in rows:
            w.writerow([f"{t:.17g}", f"{z:.17g}"])


def zeros_table() -> None:
    """All 29 zeta zeros with ordinate below 100."""
    mp.mp.dps = 30
    rows = []
    for k in range(1, 30):
        rows.append((k, float(mp.zetazero(k).imag)))
    with open(OUT / "zeros.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["k", "gamma"])
        for k, g in rows:
            w.writerow([k, f"{g:.17g}"])


def second_moment(T: int) -> tuple[float, float]:
    """integral of |zeta(1/2+it)|^2 over [0, T], unit panels."""
    mp.mp.dps = 25
    f = lambda t: mp.siegelz(t) ** 2
    total = mp.mpf(0)
    err = mp.mpf(0)
    t0 = time.time()
    for a in range(T):
        v, e = mp.quad(f, [a, a + 1], error=True)
        total += v
        err += e
        if a % 200 == 0:
            print(f"  J({T}) panel {a}  ({time.time()-t0:.0f}s)")
    return float(total), float(err)


def scalars() -> None:
    mp.mp.dps = 40
    j100, e100 = second_moment(100)
    j1000, e1000 = second_moment(1000)
    mp.mp.dps = 40
    data = {
        "J_100": j100,
        "J_100_err": e100,
        "J_1000": j1000,
        "J_1000_err": e1000,
        "theta_100": float(mp.siegeltheta(100)),
        "zeta_half_sq": float(mp.zeta(0.5) ** 2),
        "z_30_sq": float(mp.siegelz(30) ** 2),
        "gram_first_ten": [float(mp.grampoint(n)) for n in range(10)],
        "gram_9999": float(mp.grampoint(9999)),
        "seed": SEED,
        "oracle": "mpmath, dps 25-50, unit-panel adaptive Gauss-Legendre",
    }
    with open(OUT / "oracle_scalars.json", "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    print("zeros table ...")
    zeros_table()
    print("scalar oracles (second moment is slow) ...")
    scalars()
    print("z table ...")
    z_table()
    print("done ->", OUT)


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Follow the extra eigenvalue pair toward a virtual-level threshold.

Tracks the dispersion-function root from mid-window down to the virtual-level
frequency and prints its distance to the gap edge along the way.
"""

import argparse

import numpy as np

from diracpoint import lambda_pm, omega_kolokolov, thresholds, track_root
from diracpoint.dispersion import gamma_reduced


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kappa", type=float, default=2.0)
    ap.add_argument("--m", type=float, default=1.0)
    ap.add_argument("--steps", type=int, default=25)
    args = ap.parse_args()
    m, kappa = args.m, args.kappa

    th = thresholds(m, kappa)
    if not th.T_plus.valid:
        raise SystemExit(f"no positive virtual-level frequency for kappa = {kappa}")
    t = th.T_plus.value
    upper = min(omega_kolokolov(m, kappa), m)
    start = 0.5 * (t + upper)
    seed = lambda_pm(m, start, kappa).plus
    deltas = np.geomspace(start - t, 1e-6, args.steps)
    schedule = [start] + list(t + deltas[1:])

    fam = lambda w: (lambda L: gamma_reduced(m, w, kappa, L))
    res = track_root(
        fam, seed, schedule, mode="plain", thresholds=lambda w: (m - abs(w), -(m - abs(w)))
    )
    print(f"virtual-level frequency: {t:.12f}")
    print(f"{'omega':>16} {'root':>18} {'gap edge - root':>16}")
    for tp in res.points:
        lam = tp.record.Lambda.real
        print(f"{tp.param:16.10f} {lam:18.12f} {m - tp.param - lam:16.3e}")
    for param, name in res.events[:1]:
        print(f"threshold event first raised at omega = {param:.10f}")


if __name__ == "__main__":
    main()

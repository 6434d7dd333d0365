#!/usr/bin/env python3
"""Scaling of the broken-parity instability: |Im zeta| ~ eps^2 * mu^3.

Prints the shift table and the fitted log-log slopes for a choice of kappa.
"""

import argparse

from diracpoint import omega_of_mu, scaling_study


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kappa", type=float, default=1.0)
    ap.add_argument("--mus", default="0.05,0.10,0.15")
    ap.add_argument("--epsilons", default="0.005,0.01,0.02")
    args = ap.parse_args()

    mus = [float(t) for t in args.mus.split(",")]
    epsilons = [float(t) for t in args.epsilons.split(",")]
    study = scaling_study(1.0, args.kappa, [omega_of_mu(1.0, mu) for mu in mus], epsilons)

    print(f"kappa = {args.kappa}")
    print(f"{'omega':>12} {'mu':>10} {'epsilon':>10} {'Re zeta':>14} {'Im zeta':>14} {'ratio':>8}")
    for row, ratio in zip(study.rows, study.prefactor_ratio):
        print(
            f"{row.omega:12.8f} {row.mu:10.6f} {row.epsilon:10.4f} "
            f"{row.zeta.real:14.6e} {row.zeta.imag:14.6e} {ratio:8.4f}"
        )
    print("slope of log|Im zeta| vs log eps (expect 2):")
    for omega, slope in study.slope_vs_epsilon.items():
        print(f"  omega={omega:.6f}: {slope:.4f}")
    print("slope of log|Im zeta| vs log mu (expect 3):")
    for eps, slope in study.slope_vs_mu.items():
        print(f"  eps={eps}: {slope:.4f}")


if __name__ == "__main__":
    main()

"""Fate of the +/-2*omega*i eigenvalues under the two symmetry-breaking couplings.

The parity-preserving coupling shifts the pair along the imaginary axis by a
real zeta(epsilon) solved exactly from a quadratic; the parity-breaking
coupling pushes it off the axis with Im zeta < 0 (an unstable eigenvalue),
found by Newton continuation on the raw 4x4 jump determinant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .core import ModelParams, Nonlinearity, NoSolutionError, geometry
from .dispersion import (
    det_parity_broken,
    det_parity_preserved,
    newton_polish,
)
from .waves import solve_parity_broken, solve_parity_preserved

DEFAULT_OMEGA0_FRACTION = 0.9  # validated weakly relativistic regime omega >= 0.9*m
DEFAULT_EPSILON_BOUND = 0.2


@dataclass(frozen=True)
class PerturbationResult:
    """Deformation of the eigenvalue 2*omega*i: lam == 1j*(2*omega + zeta)."""

    model: str
    epsilon: float
    zeta: complex
    lam: complex
    unstable: bool
    residual: float
    flags: Tuple[str, ...] = ()
    spurious_zeta: Optional[float] = None  # far quadratic root, never the eigenvalue
    newton_delta: Optional[float] = None  # |closed form - determinant root| cross-check


def _regime_flags(m, omega, epsilon, omega0_fraction, epsilon_bound):
    flags = []
    if not (omega0_fraction * m < omega < m) or abs(epsilon) > epsilon_bound:
        flags.append("regime-unverified")
    return flags


def zeta_parity_preserved(
    m: float,
    omega: float,
    kappa: float,
    epsilon: float,
    *,
    omega0_fraction: float = DEFAULT_OMEGA0_FRACTION,
    epsilon_bound: float = DEFAULT_EPSILON_BOUND,
    cross_check: bool = True,
) -> PerturbationResult:
    """Real shift of the eigenvalue pair for the parity-preserving model.

    Squaring the vanishing jump factor gives the exact quadratic

        (1+q)*zeta^2 + 2*(omega + q*(m+omega))*zeta - 4*eps*(m^2-omega^2)/(1+eps)^2 = 0,
        q = (1-eps)^2 * f^2 / 4,   f = 2*mu/(1+eps);

    the branch with zeta(0) = 0 is returned, the other is reported as the
    spurious root.  Outside the validated regime results carry a
    "regime-unverified" flag instead of being blocked.
    """
    params = ModelParams(m, omega)
    geo = geometry(params)
    flags = _regime_flags(m, omega, epsilon, omega0_fraction, epsilon_bound)
    f = 2.0 * geo.mu / (1.0 + epsilon)
    q = 0.25 * (1.0 - epsilon) ** 2 * f * f
    a = 1.0 + q
    b = 2.0 * (omega + q * (m + omega))
    c = -4.0 * epsilon * (m * m - omega * omega) / (1.0 + epsilon) ** 2
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        raise NoSolutionError("no real eigenvalue shift: outside the perturbative regime")
    root = math.sqrt(disc)
    zeta = (-b + root) / (2.0 * a)
    spurious = (-b - root) / (2.0 * a)

    residual = float("nan")
    delta = None
    if cross_check:
        wave = solve_parity_preserved(params, Nonlinearity(kappa), epsilon)
        det = lambda lam: det_parity_preserved(
            m, omega, kappa, epsilon, lam, "odd-even-odd-even", wave=wave
        )
        z, fz, _, ok = newton_polish(det, 2.0 * omega + zeta, tol=1e-10)
        residual = abs(fz)
        delta = abs(z - (2.0 * omega + zeta)) if ok else float("inf")

    lam = 1j * (2.0 * omega + zeta)
    return PerturbationResult(
        model="parity_preserved",
        epsilon=epsilon,
        zeta=complex(zeta),
        lam=lam,
        unstable=False,
        residual=residual,
        flags=tuple(flags),
        spurious_zeta=spurious,
        newton_delta=delta,
    )


def zeta_parity_broken(
    m: float,
    omega: float,
    kappa: float,
    epsilon: float,
    *,
    omega0_fraction: float = DEFAULT_OMEGA0_FRACTION,
    epsilon_bound: float = DEFAULT_EPSILON_BOUND,
    steps: int = 6,
    residual_tol: float = 1e-11,
) -> PerturbationResult:
    """Complex shift of the eigenvalue pair for the parity-breaking model.

    Newton on the full 4x4 determinant, continued in epsilon from the exact
    root Lambda = 2*omega at epsilon = 0 for robustness.  In the validated
    regime Im zeta < 0 for epsilon != 0, i.e. Re lam > 0: linear instability.
    """
    params = ModelParams(m, omega)
    flags = _regime_flags(m, omega, epsilon, omega0_fraction, epsilon_bound)
    lam_root = complex(2.0 * omega)
    residual = 0.0
    if epsilon != 0.0:
        path = np.linspace(0.0, epsilon, steps + 1)[1:]
        for eps_k in path:
            wave, consts = solve_parity_broken(params, eps_k, kappa)
            det = lambda lam: det_parity_broken(
                m, omega, kappa, eps_k, lam, wave=wave, constants=consts
            )
            lam_root, fz, _, ok = newton_polish(det, lam_root, tol=residual_tol)
            if not ok:
                raise NoSolutionError(
                    f"determinant root lost during continuation at epsilon = {eps_k}"
                )
            residual = abs(fz)
    zeta = lam_root - 2.0 * omega
    lam = 1j * lam_root
    return PerturbationResult(
        model="parity_broken",
        epsilon=epsilon,
        zeta=zeta,
        lam=lam,
        unstable=lam.real > 0.0,
        residual=residual,
        flags=tuple(flags),
    )


@dataclass(frozen=True)
class ScalingRow:
    omega: float
    mu: float
    epsilon: float
    zeta: complex


@dataclass(frozen=True)
class ScalingStudy:
    """Log-log scaling of |Im zeta| in epsilon (expected slope 2) and mu (expected 3).

    prefactor_ratio holds Im zeta divided by the leading small-mu expression
    eps^2 * f * xi * S_plus^3 * Y^2 / (64*m^2*2*omega) evaluated at its limits
    S_plus -> 2m, xi -> -2*sqrt(2)*m, Y -> 4*kappa*mu, f -> 2*mu; the ratio
    should approach a kappa-dependent constant as mu -> 0.
    """

    rows: Tuple[ScalingRow, ...]
    slope_vs_epsilon: dict
    slope_vs_mu: dict
    prefactor_ratio: Tuple[float, ...]


def omega_of_mu(m: float, mu: float) -> float:
    """Frequency with decay ratio mu: omega = m*(1-mu^2)/(1+mu^2)."""
    return m * (1.0 - mu * mu) / (1.0 + mu * mu)


def leading_im_zeta(m: float, omega: float, kappa: float, epsilon: float) -> float:
    """Small-mu leading expression for Im zeta of the broken model."""
    mu = geometry(ModelParams(m, omega)).mu
    f = 2.0 * mu
    xi = -2.0 * math.sqrt(2.0) * m
    s_plus = 2.0 * m
    y = 4.0 * kappa * mu
    return epsilon**2 * f * xi * s_plus**3 * y * y / (64.0 * m * m * 2.0 * omega)


def scaling_study(
    m: float,
    kappa: float,
    omega_list: Sequence[float],
    epsilon_list: Sequence[float],
    **solver_kwargs,
) -> ScalingStudy:
    """Tabulate zeta over an (omega, epsilon) grid and fit the two power laws."""
    if len(omega_list) < 3 or len(epsilon_list) < 3:
        raise NoSolutionError("need at least 3 points per axis for the regression")
    rows = []
    table = {}
    for omega in omega_list:
        mu = geometry(ModelParams(m, omega)).mu
        for eps in epsilon_list:
            res = zeta_parity_broken(m, omega, kappa, eps, **solver_kwargs)
            rows.append(ScalingRow(omega, mu, eps, res.zeta))
            table[(omega, eps)] = res.zeta

    slope_eps = {}
    for omega in omega_list:
        ys = [abs(table[(omega, e)].imag) for e in epsilon_list]
        slope_eps[omega] = float(
            np.polyfit(np.log(np.asarray(epsilon_list)), np.log(ys), 1)[0]
        )
    slope_mu = {}
    mus = [geometry(ModelParams(m, w)).mu for w in omega_list]
    for eps in epsilon_list:
        ys = [abs(table[(w, eps)].imag) for w in omega_list]
        slope_mu[eps] = float(np.polyfit(np.log(np.asarray(mus)), np.log(ys), 1)[0])

    ratios = tuple(
        row.zeta.imag / leading_im_zeta(m, row.omega, kappa, row.epsilon) for row in rows
    )
    return ScalingStudy(tuple(rows), slope_eps, slope_mu, ratios)

"""Solitary-wave families: amplitudes, profiles, charge, and its frequency derivative.

All profiles are closed-form spinors of the shape (vector piece) * exp(-rate*|x|);
no ODE integration is involved.  Wave construction validates the defining jump
condition at the origin before returning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import (
    DomainError,
    ModelParams,
    Nonlinearity,
    NoSolutionError,
    WaveGeometry,
    eval_f,
    geometry,
)

FAMILIES = ("type1", "type2", "zero_freq", "parity_preserved", "parity_broken")

_JUMP_GUARD = 1e-9  # constructor sanity bound on the jump-condition residual

_SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_ISIGMA2 = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)
_I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class SolitaryWave:
    """One constructed solitary wave.

    alpha/beta are the two amplitudes (beta is 0 except for the broken-parity
    and zero-frequency families; for zero_freq they may be complex).
    f_at_wave/g_at_wave are the nonlinearity and its derivative at the wave's
    self-interaction argument; kappa is the local power tau*f'/f there.
    """

    family: str
    params: ModelParams
    geometry: WaveGeometry
    alpha: complex
    beta: complex
    epsilon: float
    f_at_wave: float
    g_at_wave: float
    kappa: float


@dataclass(frozen=True)
class BrokenWaveConstants:
    """Linearization coupling constants of the broken-parity model.

    X and Z are built from the ratio beta/epsilon kept in unexpanded form
    (smooth through epsilon = 0), Y**2 == X*Z with consistent sign, F == f + Y.
    """

    X: float
    Y: float
    Z: float
    F: float
    tau: float


def _bracketed_root(h, lo=1e-12, hi=1e12, samples=400):
    """Root of h on (lo, hi) found by log-scan bracketing plus brentq."""
    ts = np.logspace(math.log10(lo), math.log10(hi), samples)
    vals = np.array([h(t) for t in ts])
    sign = np.sign(vals)
    for i in range(len(ts) - 1):
        if sign[i] == 0:
            return ts[i]
        if sign[i] * sign[i + 1] < 0:
            return brentq(h, ts[i], ts[i + 1], xtol=1e-15, rtol=8.9e-16)
    raise NoSolutionError("amplitude equation has no root on the scanned range")


def solve_amplitude_type1(params: ModelParams, nl: Nonlinearity) -> SolitaryWave:
    """Even-top-component wave: amplitude alpha > 0 with f(alpha**2) == 2*mu."""
    geo = geometry(params)
    target = 2.0 * geo.mu
    if nl.pure_power:
        if nl.kappa == 0:
            raise DomainError("kappa = 0 leaves the amplitude undetermined")
        alpha = target ** (1.0 / (2.0 * nl.kappa))
    else:
        tau = _bracketed_root(lambda t: eval_f(nl, t, derivative=False)[0] - target)
        alpha = math.sqrt(tau)
    f, g = eval_f(nl, alpha * alpha)
    kappa = nl.kappa if nl.pure_power else alpha * alpha * g / f
    wave = SolitaryWave("type1", params, geo, alpha, 0.0, 0.0, f, g, kappa)
    _check_jump(wave, nl)
    return wave


def solve_amplitude_type2(params: ModelParams, nl: Nonlinearity) -> SolitaryWave:
    """Odd-top-component wave: even-component amplitude beta with f(-beta**2) == 2/mu."""
    geo = geometry(params)
    target = 2.0 / geo.mu
    if nl.pure_power:
        if nl.kappa == 0:
            raise DomainError("kappa = 0 leaves the amplitude undetermined")
        beta = target ** (1.0 / (2.0 * nl.kappa))
    else:
        tau = _bracketed_root(lambda t: eval_f(nl, -t, derivative=False)[0] - target)
        beta = math.sqrt(tau)
    f, g = eval_f(nl, -beta * beta)
    kappa = nl.kappa if nl.pure_power else -beta * beta * g / f
    wave = SolitaryWave("type2", params, geo, 0.0, beta, 0.0, f, g, kappa)
    _check_jump(wave, nl)
    return wave


def make_zero_frequency_wave(params: ModelParams, nl: Nonlinearity, a: complex, b: complex) -> SolitaryWave:
    """Stationary wave at omega = 0 with caller-supplied amplitudes (a, b).

    The pair must satisfy f(|a|**2 - |b|**2) == 2; no stability analysis is
    offered for this family.
    """
    if params.omega != 0.0:
        raise DomainError("zero-frequency family requires omega = 0")
    geo = geometry(params)
    tau = abs(a) ** 2 - abs(b) ** 2
    f, g = eval_f(nl, tau)
    if abs(f - 2.0) > 1e-10:
        raise DomainError(f"amplitudes violate f(|a|^2-|b|^2) = 2 (got f = {f})")
    kappa = nl.kappa if nl.pure_power else tau * g / f
    wave = SolitaryWave("zero_freq", params, geo, a, b, 0.0, f, g, kappa)
    _check_jump(wave, nl)
    return wave


def solve_parity_preserved(params: ModelParams, nl: Nonlinearity, epsilon: float) -> SolitaryWave:
    """Wave of the parity-preserving perturbed model: (1+eps)*f((1+eps)*alpha**2) == 2*mu."""
    if not 1.0 + epsilon > 0.0:
        raise DomainError("need 1 + epsilon > 0 for the perturbed coupling")
    geo = geometry(params)
    target = 2.0 * geo.mu / (1.0 + epsilon)
    if nl.pure_power:
        if nl.kappa == 0:
            raise DomainError("kappa = 0 leaves the amplitude undetermined")
        tau = target ** (1.0 / nl.kappa)
    else:
        tau = _bracketed_root(lambda t: eval_f(nl, t, derivative=False)[0] - target)
    alpha = math.sqrt(tau / (1.0 + epsilon))
    f, g = eval_f(nl, tau)
    kappa = nl.kappa if nl.pure_power else tau * g / f
    wave = SolitaryWave("parity_preserved", params, geo, alpha, 0.0, epsilon, f, g, kappa)
    _check_jump(wave, nl)
    return wave


def broken_amplitude_ratio(mu: float, epsilon: float):
    """(f, beta/(epsilon*alpha)) for the broken-parity wave.

    f is the root of mu*(1+eps^2)*f^2 - 2*(1+mu^2)*f + 4*mu = 0 that
    continues f = 2*mu at epsilon = 0: the square root enters with the signed
    factor (1-mu^2), which picks the smaller root for mu < 1 and the larger
    one for mu > 1.  The ratio beta/(epsilon*alpha) = -f/(2 - f*mu) is smooth
    through epsilon = 0; multiplying by epsilon only at the end removes the
    0/0 there.
    """
    one = 1.0 - mu * mu
    if one == 0.0 and epsilon != 0.0:
        raise DomainError("no perturbed wave at omega = 0: discriminant is negative")
    disc = one * one - 4.0 * mu * mu * epsilon * epsilon
    if disc < 0.0:
        raise DomainError("epsilon too large: amplitude discriminant is negative")
    f = (1.0 + mu * mu - math.copysign(math.sqrt(disc), one)) / (
        (1.0 + epsilon * epsilon) * mu
    )
    ratio = -f / (2.0 - f * mu)
    return f, ratio


def solve_parity_broken(params: ModelParams, epsilon: float, kappa: float):
    """Wave of the parity-breaking perturbed model plus its coupling constants.

    Pure power only.  The coupling f is fixed by the 2x2 jump system alone, so
    tau = f**(1/kappa) and the amplitudes follow in closed form; the residual
    of both jump-system rows is verified before returning.
    """
    if kappa == 0:
        raise DomainError("kappa = 0 leaves the amplitude undetermined")
    geo = geometry(params)
    mu = geo.mu
    f, ratio = broken_amplitude_ratio(mu, epsilon)
    tau = f ** (1.0 / kappa)
    r = epsilon * ratio  # beta/alpha
    shape = 1.0 + 2.0 * epsilon * mu * r - mu * mu * r * r
    if shape <= 0.0:
        raise DomainError("perturbation too strong: self-interaction argument degenerates")
    alpha = math.sqrt(tau / shape)
    beta = r * alpha
    g = kappa * tau ** (kappa - 1.0)

    row1 = (f - 2.0 * mu) * alpha + f * epsilon * mu * beta
    row2 = f * epsilon * alpha + (2.0 - f * mu) * beta
    scale = max(1.0, abs(f * alpha))
    if max(abs(row1), abs(row2)) > 1e-11 * scale:
        raise NoSolutionError("jump-system residual too large for the broken-parity wave")

    plus = alpha + epsilon * beta * mu      # alpha + eps*beta*mu
    minus = alpha - ratio * alpha * mu      # alpha - (beta/eps)*mu, exact at eps = 0
    consts = BrokenWaveConstants(
        X=2.0 * plus * plus * g,
        Y=2.0 * plus * minus * g,
        Z=2.0 * minus * minus * g,
        F=f + 2.0 * plus * minus * g,
        tau=tau,
    )
    wave = SolitaryWave("parity_broken", params, geo, alpha, beta, epsilon, f, g, kappa)
    _check_jump(wave)
    return wave, consts


def profile(wave: SolitaryWave, x):
    """Two-component spinor profile at position x (scalar or array).

    At x = 0 the mean of the one-sided limits is returned, which amounts to
    sign(0) = 0 in the formulas below.
    """
    x = np.asarray(x, dtype=float)
    s = np.sign(x)
    geo = wave.geometry
    envelope = np.exp(-geo.varkappa * np.abs(x))
    one = np.ones_like(s)
    a, b, mu = wave.alpha, wave.beta, geo.mu
    if wave.family in ("type1", "parity_preserved"):
        up, lo = a * one, a * mu * s
    elif wave.family == "type2":
        up, lo = (b / mu) * s, b * one
    elif wave.family == "zero_freq":
        up, lo = a + b * s, b + a * s
    elif wave.family == "parity_broken":
        up, lo = a + b * s, a * mu * s + b * mu
    else:
        raise DomainError(f"unknown family {wave.family!r}")
    return np.stack([up * envelope, lo * envelope]).astype(complex)


def _one_sided_limits(wave: SolitaryWave):
    """(phi(0+), phi(0-)) as 2-vectors."""
    a, b, mu = wave.alpha, wave.beta, wave.geometry.mu
    if wave.family in ("type1", "parity_preserved"):
        plus = np.array([a, a * mu], dtype=complex)
        minus = np.array([a, -a * mu], dtype=complex)
    elif wave.family == "type2":
        plus = np.array([b / mu, b], dtype=complex)
        minus = np.array([-b / mu, b], dtype=complex)
    elif wave.family == "zero_freq":
        plus = np.array([a + b, b + a], dtype=complex)
        minus = np.array([a - b, b - a], dtype=complex)
    elif wave.family == "parity_broken":
        plus = np.array([a + b, a * mu + b * mu], dtype=complex)
        minus = np.array([a - b, -a * mu + b * mu], dtype=complex)
    else:
        raise DomainError(f"unknown family {wave.family!r}")
    return plus, minus


def jump_condition_residual(wave: SolitaryWave, nl: Nonlinearity | None = None) -> np.ndarray:
    """Residual 2-vector of the defining jump condition for this wave's family.

    The nonlinearity is re-evaluated at the mean value's self-interaction
    argument (pure power via the stored kappa unless nl is supplied), so this
    is an independent check of the constructed amplitudes.
    """
    plus, minus = _one_sided_limits(wave)
    jump = plus - minus
    mean = 0.5 * (plus + minus)
    if wave.family == "parity_preserved":
        coupling = _SIGMA3 + wave.epsilon * _I2
    elif wave.family == "parity_broken":
        coupling = _SIGMA3 + wave.epsilon * _SIGMA1
    else:
        coupling = _SIGMA3
    tau = float(np.real(mean.conj() @ (coupling @ mean)))
    if nl is not None:
        fval, _ = eval_f(nl, tau, derivative=False)
    else:
        fval = abs(tau) ** wave.kappa
    return _ISIGMA2 @ jump - fval * (coupling @ mean)


def _check_jump(wave: SolitaryWave, nl: Nonlinearity | None = None):
    res = float(np.max(np.abs(jump_condition_residual(wave, nl))))
    scale = max(1.0, abs(wave.alpha), abs(wave.beta))
    if res > _JUMP_GUARD * scale:
        raise NoSolutionError(
            f"{wave.family} wave violates its jump condition (residual {res:.3e})"
        )


def charge_Q(wave: SolitaryWave) -> float:
    """Squared L2 norm of the even-top-component wave: alpha^2*(1+mu^2)/varkappa."""
    if wave.family != "type1":
        raise DomainError("closed-form charge is provided for the type1 family only")
    geo = wave.geometry
    return abs(wave.alpha) ** 2 * (1.0 + geo.mu**2) / geo.varkappa


def dQ_domega(params: ModelParams, nl: Nonlinearity) -> float:
    """Closed-form d/d(omega) of the charge along the type1 family.

    Equals (2*m*alpha^2/((m+omega)*varkappa^3)) * (-m/kappa - m + 2*omega);
    its unique zero in omega is m*(kappa+1)/(2*kappa).
    """
    wave = solve_amplitude_type1(params, nl)
    kappa = wave.kappa
    if kappa == 0:
        raise DomainError("kappa = 0 makes the charge derivative singular")
    m, omega = params.m, params.omega
    geo = wave.geometry
    front = 2.0 * m * abs(wave.alpha) ** 2 / ((m + omega) * geo.varkappa**3)
    return front * (-m / kappa - m + 2.0 * omega)

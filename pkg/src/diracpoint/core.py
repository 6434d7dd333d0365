"""Model parameters, nonlinearity, and the elementary wave geometry.

Everything here is a plain immutable value and every operation is a pure
function, so concurrent use needs no synchronization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np


class DomainError(ValueError):
    """Parameters outside the domain where the requested quantity exists."""


class NoSolutionError(RuntimeError):
    """An amplitude equation has no root in the searched range."""


class ConvergenceError(RuntimeError):
    """An iterative solve failed to reach its tolerance within budget."""


class BranchLostError(RuntimeError):
    """A tracked root branch could not be continued."""

    def __init__(self, message, last_good=None):
        super().__init__(message)
        self.last_good = last_good


def principal_sqrt(z):
    """Square root with Re >= 0; the cut (-inf, 0) is evaluated from above.

    Accepts scalars or arrays.  A negative-zero imaginary part would make
    numpy pick the lower side of the cut, so it is normalized away first.
    """
    arr = np.asarray(z, dtype=complex)
    arr = np.where(arr.imag == 0.0, arr.real + 0.0j, arr)
    out = np.sqrt(arr)
    if np.ndim(z) == 0 and not isinstance(z, np.ndarray):
        return complex(out)
    return out


@dataclass(frozen=True)
class ModelParams:
    """Mass m > 0 and frequency omega of the background Dirac operator."""

    m: float
    omega: float

    def __post_init__(self):
        if not self.m > 0:
            raise DomainError(f"m must be positive, got {self.m}")


@dataclass(frozen=True)
class WaveGeometry:
    """Decay ratio mu and spatial decay rate varkappa of a localized wave.

    Invariants: varkappa**2 + omega**2 == m**2 and mu**2*(m+omega) == m-omega.
    """

    mu: float
    varkappa: float


def geometry(params: ModelParams) -> WaveGeometry:
    """Decay data for frequency omega in the open spectral gap (-m, m)."""
    m, omega = params.m, params.omega
    if not abs(omega) < m:
        raise DomainError(
            f"no localized wave for |omega| >= m (omega={omega}, m={m})"
        )
    return WaveGeometry(
        mu=math.sqrt((m - omega) / (m + omega)),
        varkappa=math.sqrt((m - omega) * (m + omega)),
    )


@dataclass(frozen=True)
class Nonlinearity:
    """Pure power |tau|**kappa, or a user-supplied pair (f, f') of callables.

    A user-supplied nonlinearity is accepted only by the unperturbed model;
    the perturbed-model formulas rely on the pure-power identity
    tau*f'(tau) == kappa*f(tau) and reject callables.
    """

    kappa: float
    f: Optional[Callable[[float], float]] = None
    f_prime: Optional[Callable[[float], float]] = None

    def __post_init__(self):
        if (self.f is None) != (self.f_prime is None):
            raise DomainError("user nonlinearity needs both f and f_prime")

    @property
    def pure_power(self) -> bool:
        return self.f is None


def eval_f(nl: Nonlinearity, tau: float, derivative: bool = True):
    """Evaluate the nonlinearity, returning (value, derivative).

    Pure power mode: value |tau|**kappa is even in tau, the derivative
    kappa*|tau|**(kappa-1)*sign(tau) is odd.  The derivative is singular at
    tau = 0 for kappa < 1 and a DomainError is raised there.
    """
    if not nl.pure_power:
        return float(nl.f(tau)), (float(nl.f_prime(tau)) if derivative else None)
    kappa = nl.kappa
    if tau == 0.0:
        if kappa < 0:
            raise DomainError("pure power with kappa < 0 is singular at tau = 0")
        if derivative and kappa < 1:
            raise DomainError("derivative of |tau|**kappa is singular at tau = 0 for kappa < 1")
        value = 1.0 if kappa == 0 else 0.0
        return value, (0.0 if derivative else None)
    a = abs(tau)
    value = a**kappa
    deriv = kappa * a ** (kappa - 1.0) * math.copysign(1.0, tau) if derivative else None
    return value, deriv

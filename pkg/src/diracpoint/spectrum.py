"""Closed-form spectral data of the linearization at even-top-component waves.

Covers the scalar blocks' point spectra, the threshold curves in the
(kappa, omega) plane, the quartic whose nonunit roots encode the extra
eigenvalue pair, the homography between the spectral variable and the root
variable, and the full region classification of the parameter plane.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .core import DomainError, principal_sqrt

SQRT_HALF = 2.0**-0.5

_BOUNDARY_TOL = 1e-12  # relative half-width for "exactly on a threshold curve"


@dataclass(frozen=True)
class ThresholdValue:
    """A threshold frequency plus whether it lies inside the gap (-m, m)."""

    value: float
    valid: bool


@dataclass(frozen=True)
class Thresholds:
    """The five analytic threshold curves evaluated at one kappa."""

    T_minus: ThresholdValue
    T_plus: ThresholdValue
    Omega: ThresholdValue
    TwoOmega: ThresholdValue
    W: ThresholdValue


def _undefined() -> ThresholdValue:
    return ThresholdValue(float("nan"), False)


def omega_kolokolov(m: float, kappa: float) -> float:
    """Critical frequency m*(kappa+1)/(2*kappa) where the charge is stationary."""
    if kappa == 0:
        raise DomainError("kappa = 0 has no critical frequency")
    return m * (kappa + 1.0) / (2.0 * kappa)


def omega_double_root(m: float, kappa: float) -> float:
    """Frequency m*(2k^2+2k+1)/(2k(k+1)) where the quartic's nonunit roots merge."""
    if kappa in (0.0, -1.0):
        raise DomainError("double-root frequency undefined at kappa in {-1, 0}")
    return m * (2.0 * kappa * kappa + 2.0 * kappa + 1.0) / (2.0 * kappa * (kappa + 1.0))


def thresholds(m: float, kappa: float) -> Thresholds:
    """All threshold frequencies at this kappa, each with an in-gap validity flag.

    Fields at excluded kappa values carry NaN and valid=False rather than
    raising; |W| >= m always, so its flag is never True.
    """
    if kappa in (0.0, -2.0):
        t_minus = _undefined()
    else:
        val = m * (kappa + 1.0) ** 2 / ((kappa + 2.0) * kappa)
        t_minus = ThresholdValue(val, -1.0 - SQRT_HALF < kappa < SQRT_HALF - 1.0)
    if kappa in (0.0, -2.0 / 3.0):
        t_plus = _undefined()
    else:
        val = m * (kappa + 1.0) ** 2 / ((3.0 * kappa + 2.0) * kappa)
        t_plus = ThresholdValue(val, abs(kappa) > SQRT_HALF)
    if kappa == 0.0:
        omega = _undefined()
        two_omega = _undefined()
    else:
        oval = omega_kolokolov(m, kappa)
        omega = ThresholdValue(oval, not (-1.0 / 3.0 <= kappa <= 1.0))
        two_omega = ThresholdValue(2.0 * oval, kappa < -0.5)
    if kappa in (0.0, -1.0):
        w = _undefined()
    else:
        w = ThresholdValue(omega_double_root(m, kappa), False)
    return Thresholds(t_minus, t_plus, omega, two_omega, w)


def L_point_spectrum(m: float, omega: float, kappa: float) -> Tuple[float, float]:
    """Point eigenvalues of the scalar block on its two parity subspaces.

    Returns (odd-even eigenvalue, even-odd eigenvalue) = (-2*omega, Z) with
    Z = -4*(m-omega)*kappa*(kappa+1)/(1 + (1+2*kappa)^2*mu^2); Z is symmetric
    about kappa = -1/2 and stays in (-m-omega, m-omega].
    """
    if not abs(omega) < m:
        raise DomainError("omega must lie in (-m, m)")
    mu2 = (m - omega) / (m + omega)
    z = -4.0 * (m - omega) * kappa * (kappa + 1.0) / (1.0 + (1.0 + 2.0 * kappa) ** 2 * mu2)
    return -2.0 * omega, z


@dataclass(frozen=True)
class QuarticCoeffs:
    """Coefficients of a*X^2 - 2*b*X - c, the nonunit factor of the root quartic."""

    a: float
    b: float
    c: float


def quartic_coeffs(m: float, omega: float, kappa: float) -> QuarticCoeffs:
    return QuarticCoeffs(
        a=m * (kappa + 1.0) ** 2 - omega * kappa * (kappa + 2.0),
        b=kappa * (m * (kappa + 1.0) - omega * kappa),
        c=m * (kappa + 1.0) ** 2 - omega * kappa * (3.0 * kappa + 2.0),
    )


def discriminant_factorization(m: float, omega: float, kappa: float) -> float:
    """b^2 + a*c in its factored form (k+1)*(m(k+1)-2k*omega)*(m(2k^2+2k+1)-2k(k+1)*omega)."""
    return (
        (kappa + 1.0)
        * (m * (kappa + 1.0) - 2.0 * kappa * omega)
        * (m * (2.0 * kappa**2 + 2.0 * kappa + 1.0) - 2.0 * kappa * (kappa + 1.0) * omega)
    )


def roots_X(coeffs: QuarticCoeffs) -> Tuple[complex, complex]:
    """Roots (b +/- sqrt(b^2+ac))/a with Re sqrt >= 0; errors when a == 0."""
    if coeffs.a == 0.0:
        raise DomainError("degenerate quartic: leading coefficient vanishes")
    disc = principal_sqrt(coeffs.b * coeffs.b + coeffs.a * coeffs.c)
    return (coeffs.b + disc) / coeffs.a, (coeffs.b - disc) / coeffs.a


def X_of_Lambda(m: float, omega: float, lam):
    """Forward homography X = sqrt((1 - L/(m-omega))/(1 + L/(m+omega))), Re X >= 0."""
    lam = complex(lam)
    if lam == -(m + omega):
        raise DomainError("pole of the homography at Lambda = -(m+omega)")
    return principal_sqrt((1.0 - lam / (m - omega)) / (1.0 + lam / (m + omega)))


def Lambda_of_X(m: float, omega: float, x):
    """Inverse homography Lambda = (1 - X^2)/(1/(m-omega) + X^2/(m+omega))."""
    x = complex(x)
    denom = 1.0 / (m - omega) + x * x / (m + omega)
    if denom == 0:
        raise DomainError("pole of the inverse homography: X^2 = -(m+omega)/(m-omega)")
    return (1.0 - x * x) / denom


@dataclass(frozen=True)
class LambdaPair:
    """The extra eigenvalue pair (as roots of the dispersion variable).

    exists is True only where the sign pattern of the quartic coefficients
    admits the pair on the physical sheet; the formula values are returned
    regardless so threshold limits can be inspected.
    """

    plus: complex
    minus: complex
    exists: bool

    @property
    def is_real(self) -> bool:
        return self.plus.imag == 0.0


def pair_exists(m: float, omega: float, kappa: float) -> bool:
    """Sign test for the extra pair: a and b share a sign, c takes the opposite."""
    if kappa in (0.0, -1.0):
        return False
    q = quartic_coeffs(m, omega, kappa)
    return q.a * q.b > 0.0 and q.a * q.c < 0.0


def lambda_pm(m: float, omega: float, kappa: float) -> LambdaPair:
    """Closed form of the extra pair:

        +/- (m^2-omega^2)/(2*Omega-omega) * sqrt((Omega-omega)/(W-omega)),

    real (imaginary eigenvalues in the gap) between the virtual-level curve
    and the critical frequency, purely imaginary (a real, unstable eigenvalue
    pair) on the far side of the critical frequency.  At kappa in {-1, 0} the
    pair degenerates to zero and exists is False.
    """
    if not abs(omega) < m:
        raise DomainError("omega must lie in (-m, m)")
    if kappa in (0.0, -1.0):
        return LambdaPair(0j, 0j, False)
    big_omega = omega_kolokolov(m, kappa)
    w = omega_double_root(m, kappa)
    if omega == 2.0 * big_omega:
        raise DomainError("pair blows up at omega = 2*Omega")
    plus = (
        (m * m - omega * omega)
        / (2.0 * big_omega - omega)
        * principal_sqrt((big_omega - omega) / (w - omega))
    )
    return LambdaPair(plus, -plus, pair_exists(m, omega, kappa))


@dataclass(frozen=True)
class VirtualLevel:
    """A virtual level: the frequency and the (upper) threshold it sits at."""

    omega: float
    threshold: complex  # +1j*(m - |omega|); the conjugate partner is implied


def virtual_levels(m: float, kappa: float):
    """Frequencies at which the extra pair touches the essential-spectrum edge."""
    out = []
    th = thresholds(m, kappa)
    if kappa < -1.0 or kappa > SQRT_HALF:
        omega = th.T_plus.value
        out.append(VirtualLevel(omega, 1j * (m - omega)))
    elif -1.0 < kappa < SQRT_HALF - 1.0:
        omega = th.T_minus.value
        out.append(VirtualLevel(omega, 1j * (m + omega)))
    return out


@dataclass(frozen=True)
class Eigenvalue:
    value: complex
    tag: str  # zero | pm2omega | embedded | gap_imaginary | real_unstable


@dataclass(frozen=True)
class EssentialSpectrum:
    """i*(R minus the open gap) in the generic case; the whole plane at (0, -1)."""

    whole_plane: bool
    gap_halfwidth: float


@dataclass(frozen=True)
class SpectralClassification:
    m: float
    omega: float
    kappa: float
    region_code: str
    eigenvalues: Tuple[Eigenvalue, ...]
    kernel_dim: int
    alg_mult_zero: int
    essential: EssentialSpectrum
    spectrally_stable: bool
    flags: Tuple[str, ...]


def _branch_letter(kappa: float) -> str:
    if kappa < -1.0:
        return "4a"
    if kappa == -1.0:
        return "4b"
    if kappa < SQRT_HALF - 1.0:
        return "4c"
    if kappa <= SQRT_HALF:
        return "4d"
    if kappa <= 1.0:
        return "4e"
    return "4f"


def _kernel_dim(omega: float, kappa: float) -> int:
    special = kappa in (-1.0, 0.0)
    if omega != 0.0:
        return 2 if special else 1
    return 4 if special else 3


def _alg_mult_zero(m: float, omega: float, kappa: float) -> int:
    if omega == 0.0 and kappa == -1.0:
        return 6
    if kappa == 0.0:
        return 4
    if omega == 0.0:
        return 4  # the zero-frequency collision adds a 2-dimensional block
    if kappa != -1.0:
        big_omega = omega_kolokolov(m, kappa)
        if abs(big_omega) < m and abs(omega - big_omega) <= _BOUNDARY_TOL * m:
            return 4
    return 2


def _on_boundary(m: float, omega: float, kappa: float) -> bool:
    th = thresholds(m, kappa)
    for tv in (th.T_minus, th.T_plus, th.Omega, th.TwoOmega):
        if tv.valid and abs(omega - tv.value) <= _BOUNDARY_TOL * m:
            return True
    return False


def classify(m: float, omega: float, kappa: float) -> SpectralClassification:
    """Full point-spectrum classification at one (omega, kappa).

    Assembles the zero eigenvalue with its kernel dimension and algebraic
    multiplicity, the ever-present +/-2*omega*i pair (embedded beyond
    |omega| = m/3), the extra pair where it exists, the essential spectrum,
    and the parameter-plane region code.
    """
    if not abs(omega) < m:
        raise DomainError("omega must lie in (-m, m)")
    flags = []
    if kappa < 0:
        flags.append("kappa-negative")

    eigs = [Eigenvalue(0j, "zero")]
    if omega != 0.0:
        if abs(3.0 * abs(omega) - m) <= _BOUNDARY_TOL * m:
            tag = "pm2omega"
            flags.append("threshold-embedded")
        else:
            tag = "embedded" if abs(omega) > m / 3.0 else "pm2omega"
        eigs.append(Eigenvalue(2j * omega, tag))
        eigs.append(Eigenvalue(-2j * omega, tag))

    branch = _branch_letter(kappa)
    whole_plane = omega == 0.0 and kappa == -1.0
    boundary = _on_boundary(m, omega, kappa)

    if whole_plane:
        region = "4b-plane"
        flags.append("point-spectrum-fills-slit-plane")
        stable = False
    elif boundary:
        region = f"{branch}-boundary"
        stable = True
    else:
        pair = lambda_pm(m, omega, kappa)
        stable = True
        if pair.exists:
            if pair.is_real:
                region = f"{branch}-gap"
                lam = 1j * pair.plus
                eigs.append(Eigenvalue(lam, "gap_imaginary"))
                eigs.append(Eigenvalue(-lam, "gap_imaginary"))
            else:
                region = f"{branch}-real"
                lam = 1j * pair.plus  # real since pair.plus is imaginary
                eigs.append(Eigenvalue(lam, "real_unstable"))
                eigs.append(Eigenvalue(-lam, "real_unstable"))
                stable = False
        else:
            region = f"{branch}-none"

    essential = EssentialSpectrum(whole_plane=whole_plane, gap_halfwidth=m - abs(omega))
    return SpectralClassification(
        m=m,
        omega=omega,
        kappa=kappa,
        region_code=region,
        eigenvalues=tuple(eigs),
        kernel_dim=_kernel_dim(omega, kappa),
        alg_mult_zero=_alg_mult_zero(m, omega, kappa),
        essential=essential,
        spectrally_stable=stable,
        flags=tuple(flags),
    )

"""Raw dispersion functions and a complex root finder with sheet bookkeeping.

The dispersion functions are evaluated directly from their defining jump
determinants, independently of any closed form, so their roots serve as an
oracle for the analytic spectrum.  All square roots are principal
(Re >= 0, cut on the negative real axis approached from above); the physical
sheet is the (+, +) choice where both decay exponents have Re >= 0, realized
automatically by the principal branch away from the cuts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Tuple

import numpy as np

from .core import BranchLostError, DomainError, ModelParams, Nonlinearity, principal_sqrt
from .waves import (
    BrokenWaveConstants,
    SolitaryWave,
    solve_parity_broken,
    solve_parity_preserved,
)


# ---------------------------------------------------------------------------
# branch data and raw dispersion functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BranchData:
    """Decay exponents and linear factors at one spectral point.

    nu_plus**2 + (omega - Lambda)**2 == m**2 and
    nu_minus**2 + (omega + Lambda)**2 == m**2 up to rounding;
    S_plus + S_minus == 2*(m - omega).  xi is the oscillatory exponent used by
    the perturbed models, with the Re xi <= 0 convention.
    """

    nu_plus: complex
    nu_minus: complex
    S_plus: complex
    S_minus: complex
    xi: complex
    sheet: Tuple[int, int]


def _mu(m: float, omega: float) -> float:
    return math.sqrt((m - omega) / (m + omega))


def branch_data(m: float, omega: float, lam, sheet: Tuple[int, int] = (1, 1)) -> BranchData:
    """Branch quantities at Lambda = lam for the requested sheet signs."""
    lam = complex(lam)
    nu_p = sheet[0] * principal_sqrt(m * m - (omega - lam) ** 2)
    nu_m = sheet[1] * principal_sqrt(m * m - (omega + lam) ** 2)
    xi = -principal_sqrt((omega + lam) ** 2 - m * m)
    return BranchData(
        nu_plus=nu_p,
        nu_minus=nu_m,
        S_plus=m - omega + lam,
        S_minus=m - omega - lam,
        xi=xi,
        sheet=tuple(sheet),
    )


def gamma(m: float, omega: float, kappa: float, lam, sheet: Tuple[int, int] = (1, 1)):
    """Dispersion function of the even-odd-even-odd block (array friendly).

    Vanishes identically at Lambda = +/-(m - omega) (structural zeros where a
    decay exponent vanishes) and at Lambda = 0 (the kernel); its remaining
    physical-sheet zeros are the extra eigenvalue pair.
    """
    lam_arr = np.asarray(lam, dtype=complex)
    mu = _mu(m, omega)
    nu_p = sheet[0] * principal_sqrt(m * m - (omega - lam_arr) ** 2)
    nu_m = sheet[1] * principal_sqrt(m * m - (omega + lam_arr) ** 2)
    s_p = m - omega + lam_arr
    s_m = m - omega - lam_arr
    out = (
        -(2.0 * kappa + 1.0) * mu * mu * nu_m * nu_p
        + mu * nu_m * (kappa + 1.0) * s_p
        + s_m * (kappa + 1.0) * mu * nu_p
        - s_m * s_p
    )
    if np.ndim(lam) == 0 and not isinstance(lam, np.ndarray):
        return complex(out)
    return out


def det_oddeven(m: float, omega: float, lam):
    """Jump determinant of the odd-even-odd-even block: 2i*(nu_m - S_m*mu)*(nu_p - S_p*mu).

    Its only roots are Lambda = +/-2*omega, one per factor.
    """
    lam_arr = np.asarray(lam, dtype=complex)
    mu = _mu(m, omega)
    nu_p = principal_sqrt(m * m - (omega - lam_arr) ** 2)
    nu_m = principal_sqrt(m * m - (omega + lam_arr) ** 2)
    s_p = m - omega + lam_arr
    s_m = m - omega - lam_arr
    out = 2j * (nu_m - s_m * mu) * (nu_p - s_p * mu)
    if np.ndim(lam) == 0 and not isinstance(lam, np.ndarray):
        return complex(out)
    return out


SUBSPACES = ("odd-even-odd-even", "even-odd-even-odd")


def det_parity_preserved(
    m: float,
    omega: float,
    kappa: float,
    epsilon: float,
    lam,
    subspace: str = "odd-even-odd-even",
    wave: Optional[SolitaryWave] = None,
):
    """Jump determinant of the parity-preserving model on one parity block.

    The odd-even-odd-even block hosts the deformation of the +/-2*omega*i
    eigenvalues; the even-odd-even-odd block is exposed for completeness and
    no claims are made about its roots.
    """
    if subspace not in SUBSPACES:
        raise DomainError(f"subspace must be one of {SUBSPACES}")
    if wave is None:
        wave = solve_parity_preserved(ModelParams(m, omega), Nonlinearity(kappa), epsilon)
    f, g, alpha = wave.f_at_wave, wave.g_at_wave, wave.alpha

    lam_arr = np.asarray(lam, dtype=complex)
    nu_p = principal_sqrt(m * m - (omega - lam_arr) ** 2)
    xi = -principal_sqrt((omega + lam_arr) ** 2 - m * m)
    s_p = m - omega + lam_arr
    s_m = m - omega - lam_arr
    if subspace == "odd-even-odd-even":
        fe = (1.0 - epsilon) * f
        out = (2j * nu_p - 1j * fe * s_p) * (-2j * xi - fe * s_m) - (
            -2.0 * xi + 1j * fe * s_m
        ) * (2.0 * nu_p - fe * s_p)
    else:
        fe = (1.0 + epsilon) * f
        big = fe + 2.0 * g * alpha * alpha * (1.0 + epsilon) ** 2
        out = (-2j * s_p + 1j * fe * nu_p) * (-2.0 * s_m - 1j * big * xi) - (
            2j * s_m - fe * xi
        ) * (-2.0 * s_p + big * nu_p)
    if np.ndim(lam) == 0 and not isinstance(lam, np.ndarray):
        return complex(out)
    return out


def _broken_inputs(m, omega, kappa, epsilon, wave, constants):
    if wave is None or constants is None:
        wave, constants = solve_parity_broken(ModelParams(m, omega), epsilon, kappa)
    return wave.f_at_wave, constants


def det_parity_broken(
    m: float,
    omega: float,
    kappa: float,
    epsilon: float,
    lam,
    wave: Optional[SolitaryWave] = None,
    constants: Optional[BrokenWaveConstants] = None,
):
    """Full 4x4 jump determinant of the parity-breaking model (no Schur reduction).

    At epsilon = 0 it factors into the two parity-block conditions.
    """
    f, c = _broken_inputs(m, omega, kappa, epsilon, wave, constants)
    X, Z, F = c.X, c.Z, c.F
    lam_arr = np.asarray(lam, dtype=complex)
    nu_p = principal_sqrt(m * m - (omega - lam_arr) ** 2)
    xi = -principal_sqrt((omega + lam_arr) ** 2 - m * m)
    s_p = m - omega + lam_arr
    s_m = m - omega - lam_arr
    e = epsilon
    zero = np.zeros_like(lam_arr)
    rows = [
        [2.0 * nu_p - s_p * f, -2j * xi - s_m * f, e * f * nu_p, -1j * e * f * xi],
        [
            2.0 * nu_p - (f - e * e * Z) * s_p,
            2j * xi + (f - e * e * Z) * s_m,
            e * F * nu_p,
            1j * e * F * xi,
        ],
        [e * s_p * f + zero, e * s_m * f + zero, -2.0 * s_p + f * nu_p, -2.0 * s_m - 1j * f * xi],
        [
            e * s_p * F + zero,
            -e * s_m * F + zero,
            -2.0 * s_p + (f + X) * nu_p,
            2.0 * s_m + 1j * (f + X) * xi,
        ],
    ]
    mat = np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)
    out = np.linalg.det(mat)
    if np.ndim(lam) == 0 and not isinstance(lam, np.ndarray):
        return complex(out)
    return out


def det_parity_broken_block_D(
    m: float,
    omega: float,
    kappa: float,
    epsilon: float,
    lam,
    wave: Optional[SolitaryWave] = None,
    constants: Optional[BrokenWaveConstants] = None,
) -> complex:
    """Diagnostic determinant of the lower-right 2x2 block.

    Tends to 32*m**2 in the joint weakly relativistic limit omega -> m,
    Lambda -> 2*m (with an error linear in the decay ratio).
    """
    f, c = _broken_inputs(m, omega, kappa, epsilon, wave, constants)
    X = c.X
    lam = complex(lam)
    nu_p = principal_sqrt(m * m - (omega - lam) ** 2)
    xi = -principal_sqrt((omega + lam) ** 2 - m * m)
    s_p = m - omega + lam
    s_m = m - omega - lam
    return (-2.0 * s_p + f * nu_p) * (2.0 * s_m + 1j * (f + X) * xi) - (
        -2.0 * s_m - 1j * f * xi
    ) * (-2.0 * s_p + (f + X) * nu_p)


# ---------------------------------------------------------------------------
# generic complex root finding: winding-number seeding + damped Newton
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rectangle:
    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def contains(self, z: complex, pad: float = 0.0) -> bool:
        return (
            self.re_min - pad <= z.real <= self.re_max + pad
            and self.im_min - pad <= z.imag <= self.im_max + pad
        )


@dataclass
class RootRecord:
    """One located (or attempted) root of a dispersion function."""

    Lambda: complex
    lam: complex  # the eigenvalue candidate i*Lambda
    residual: float
    sheet: Tuple[int, int]
    newton_iters: int
    seed: complex
    converged: bool
    admissible: bool
    tag: str  # "root" | "zero" | "structural"


def derivative(f: Callable[[complex], complex], z: complex, h: float = 1e-7) -> complex:
    """Central complex difference derivative with step h*max(1, |z|)."""
    step = h * max(1.0, abs(z))
    return (complex(f(z + step)) - complex(f(z - step))) / (2.0 * step)


def newton_polish(
    f: Callable[[complex], complex],
    z0: complex,
    tol: float = 1e-11,
    max_iter: int = 80,
    h: float = 1e-7,
    stall_tol: Optional[float] = None,
):
    """Damped Newton iteration; returns (z, f(z), iterations, converged).

    When stall_tol is given, a step that has collapsed to rounding level
    while |f| < stall_tol also counts as converged: close to a branch point
    the evaluation noise floor can sit above tol even though the root
    location is already determined to machine precision.
    """
    z = complex(z0)
    fz = complex(f(z))

    def stalled(dz):
        return (
            stall_tol is not None
            and abs(dz) < 8e-16 * max(1.0, abs(z))
            and abs(fz) < stall_tol
        )

    for it in range(max_iter):
        if abs(fz) < tol:
            return z, fz, it, True
        d = derivative(f, z, h)
        if d == 0 or not np.isfinite(d):
            break
        dz = -fz / d
        if stalled(dz):
            return z, fz, it, True
        zn, fn = z + dz, complex(f(z + dz))
        for _ in range(12):
            if np.isfinite(fn) and abs(fn) <= abs(fz):
                break
            dz *= 0.5
            zn, fn = z + dz, complex(f(z + dz))
        else:
            break  # no descent direction left
        if zn == z:
            break
        z, fz = zn, fn
    return z, fz, max_iter, abs(fz) < tol


def _wrap_phase(d):
    return (d + np.pi) % (2.0 * np.pi) - np.pi


def _winding_cells(F: np.ndarray) -> np.ndarray:
    """Winding number of arg F around each grid cell (corner-sampled)."""
    phi = np.angle(F)
    d_right = _wrap_phase(np.diff(phi, axis=1))  # [i, j] -> phi[i, j+1]-phi[i, j]
    d_up = _wrap_phase(np.diff(phi, axis=0))  # [i, j] -> phi[i+1, j]-phi[i, j]
    total = d_right[:-1, :] + d_up[:, 1:] - d_right[1:, :] - d_up[:, :-1]
    return np.rint(total / (2.0 * np.pi)).astype(int)


def find_roots(
    f: Callable,
    rect: Rectangle,
    n: int = 80,
    *,
    residual_tol: float = 1e-11,
    dedupe_tol: float = 1e-8,
    structural: Sequence[complex] = (),
    structural_tol: float = 1e-6,
    zero_tol: float = 1e-6,
    sheet: Tuple[int, int] = (1, 1),
    admissibility: Optional[Callable[[complex], bool]] = None,
    mirror_complete: bool = True,
):
    """Locate roots of f inside rect.

    Strategy: evaluate f on an (n+1)x(n+1) corner grid, seed damped Newton
    from every cell whose boundary phase winds (argument principle; quarter
    points are added in multi-winding cells), then deduplicate.  Roots within
    structural_tol of the supplied structural points are tagged "structural",
    roots within zero_tol of the origin "zero", the rest "root".
    Non-converged attempts are returned flagged, never dropped.
    """
    xs = np.linspace(rect.re_min, rect.re_max, n + 1)
    ys = np.linspace(rect.im_min, rect.im_max, n + 1)
    # tiny asymmetric shift so corners avoid exact zeros and the real axis
    dx = (xs[1] - xs[0]) if n else 1.0
    dy = (ys[1] - ys[0]) if n else 1.0
    xs = xs + 0.012345 * dx
    ys = ys + 0.012345 * dy
    Z = xs[None, :] + 1j * ys[:, None]
    F = np.asarray(f(Z), dtype=complex)
    bad = ~np.isfinite(F) | (F == 0)
    if bad.any():
        F = np.where(bad, 1e-300 + 0j, F)
    wind = _winding_cells(F)

    seeds = []
    idx = np.argwhere(wind != 0)
    for i, j in idx:
        cx = 0.5 * (xs[j] + xs[j + 1])
        cy = 0.5 * (ys[i] + ys[i + 1])
        seeds.append(complex(cx, cy))
        if abs(wind[i, j]) >= 2:
            for ox, oy in ((-0.25, -0.25), (-0.25, 0.25), (0.25, -0.25), (0.25, 0.25)):
                seeds.append(complex(cx + ox * dx, cy + oy * dy))

    def eval_scalar(z):
        return f(z)

    records = []
    for seed in seeds:
        z, fz, iters, ok = newton_polish(eval_scalar, seed, tol=residual_tol)
        records.append((seed, z, abs(fz), iters, ok))

    if mirror_complete:
        extra = []
        for seed, z, res, iters, ok in records:
            if not ok:
                continue
            for image in (-z, z.conjugate(), -z.conjugate()):
                if rect.contains(image, pad=dedupe_tol):
                    zi, fzi, it2, ok2 = newton_polish(eval_scalar, image, tol=residual_tol)
                    if ok2:
                        extra.append((image, zi, abs(fzi), it2, ok2))
        records.extend(extra)

    out = []
    for seed, z, res, iters, ok in records:
        if ok and not rect.contains(z, pad=2.0 * dedupe_tol):
            ok = False  # escaped the search window; report flagged
        if ok:
            tag = "root"
            if any(abs(z - s) < structural_tol for s in structural):
                tag = "structural"
            elif abs(z) < zero_tol:
                tag = "zero"
            admissible = admissibility(z) if admissibility is not None else True
        else:
            tag, admissible = "root", False
        rec = RootRecord(
            Lambda=z,
            lam=1j * z,
            residual=res,
            sheet=tuple(sheet),
            newton_iters=iters,
            seed=seed,
            converged=ok,
            admissible=admissible,
            tag=tag,
        )
        if not ok:
            out.append(rec)
            continue
        # Dedupe: one record per zero/structural cluster (Newton stalls at a
        # multiple root at distance ~sqrt(residual_tol)), dedupe_tol otherwise.
        merged = False
        for k, r in enumerate(out):
            if not r.converged:
                continue
            same_cluster = (
                r.tag == tag
                and tag in ("zero", "structural")
                and abs(r.Lambda - z) < 2.0 * (zero_tol if tag == "zero" else structural_tol)
            )
            if same_cluster or abs(r.Lambda - z) < dedupe_tol:
                if res < r.residual:
                    out[k] = rec
                merged = True
                break
        if not merged:
            out.append(rec)
    out.sort(key=lambda r: (not r.converged, abs(r.Lambda)))
    return out


def gamma_reduced(m: float, omega: float, kappa: float, lam, sheet: Tuple[int, int] = (1, 1)):
    """gamma divided by Lambda**2 * sqrt(m-omega-Lambda) * sqrt(m-omega+Lambda).

    The division removes the persistent double zero of the kernel at the
    origin and the half-order structural zeros at +/-(m - omega), without
    introducing poles or zeros anywhere inside the spectral-gap rectangle, so
    the roots of the reduced function on the physical sheet are exactly the
    extra eigenvalue pair.
    """
    lam_arr = np.asarray(lam, dtype=complex)
    den = (
        lam_arr
        * lam_arr
        * principal_sqrt(m - omega - lam_arr)
        * principal_sqrt(m - omega + lam_arr)
    )
    with np.errstate(divide="ignore", invalid="ignore"):
        out = gamma(m, omega, kappa, lam_arr, sheet) / den
    if np.ndim(lam) == 0 and not isinstance(lam, np.ndarray):
        return complex(out)
    return out


def _edge_probe(f, edge: float, rect: Rectangle, residual_tol: float):
    """Roots of f hiding next to a square-root branch point at Lambda = edge.

    Newton in Lambda stalls when a root sits within a cell of the branch
    point, but in the unfolding variable t with Lambda = edge - sign(edge)*t^2
    the dispersion function is analytic, so a handful of log-spaced seeds
    resolve arbitrarily close roots.
    """
    into = -1.0 if edge > 0 else 1.0
    found = []
    for t0 in (1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1):
        g = lambda t: f(edge + into * t * t)
        t, ft, iters, ok = newton_polish(g, t0, tol=residual_tol)
        if not ok:
            continue
        z = edge + into * t * t
        if rect.contains(z):
            found.append((complex(z), abs(ft), iters, complex(t0)))
    return found


def gamma_roots(
    m: float,
    omega: float,
    kappa: float,
    rect: Optional[Rectangle] = None,
    n: int = 80,
    reduce: bool = True,
    residual_tol: float = 1e-12,
    **kwargs,
):
    """Roots of the even-odd-even-odd dispersion function inside rect.

    By default the reduced function (structural zeros and the kernel divided
    out) is searched, and the exact structural zeros are appended as tagged
    records when they fall inside rect; reduce=False searches the raw
    function instead and relies on proximity tagging.
    """
    gap = m - abs(omega)
    if rect is None:
        half = (1.0 - 1e-9) * gap
        rect = Rectangle(-half, half, -half, half)

    def admissible(z):
        bd = branch_data(m, omega, z)
        return bd.nu_plus.real >= -1e-12 and bd.nu_minus.real >= -1e-12

    if reduce:
        fn = lambda z: gamma_reduced(m, omega, kappa, z)
        # the reduced function is 0/0 at the origin; within 1e-9 of it the
        # evaluation is pure rounding noise, so such hits are tagged "zero"
        records = find_roots(
            fn,
            rect,
            n,
            residual_tol=residual_tol,
            zero_tol=1e-9,
            admissibility=admissible,
            **kwargs,
        )
        # Far outside the gap the reduced function flattens and its Newton
        # steps lose significance; the raw function is well scaled there, so
        # repolish large roots on it and re-merge duplicates.
        raw = lambda z: gamma(m, omega, kappa, z)
        for k, r in enumerate(records):
            if not (r.converged and r.tag == "root" and abs(r.Lambda) > 2.0 * gap):
                continue
            scale = max(1.0, abs(r.Lambda) ** 2)
            z2, _, it2, ok2 = newton_polish(
                raw, r.Lambda, tol=1e-13 * scale, stall_tol=1e-7 * scale
            )
            if ok2:
                records[k] = RootRecord(
                    Lambda=z2,
                    lam=1j * z2,
                    residual=abs(fn(z2)),
                    sheet=r.sheet,
                    newton_iters=r.newton_iters + it2,
                    seed=r.seed,
                    converged=True,
                    admissible=admissible(z2),
                    tag="root",
                )
        merged = []
        dedupe = kwargs.get("dedupe_tol", 1e-8)
        for r in records:
            twin = None
            if r.converged:
                for q in merged:
                    if q.converged and q.tag == r.tag and abs(q.Lambda - r.Lambda) < dedupe:
                        twin = q
                        break
            if twin is None:
                merged.append(r)
            elif r.residual < twin.residual:
                merged[merged.index(twin)] = r
        records = merged
        # Branch points where a root can hide from the cell scan: the two
        # exponent-vanishing frequencies nearest the gap edges.
        for edge in set((m - omega, -(m - omega), m + omega, -(m + omega))):
            if not (rect.re_min - 0.1 * gap <= edge <= rect.re_max + 0.1 * gap):
                continue
            for z, res, iters, seed in _edge_probe(fn, edge, rect, residual_tol):
                if abs(z) < 1e-9:
                    continue  # the 0/0 origin masquerading as a root
                if any(
                    r.converged and abs(r.Lambda - z) < max(dedupe, 1e-7 * gap)
                    for r in records
                ):
                    continue
                records.append(
                    RootRecord(
                        Lambda=z,
                        lam=1j * z,
                        residual=res,
                        sheet=(1, 1),
                        newton_iters=iters,
                        seed=seed,
                        converged=True,
                        admissible=admissible(z),
                        tag="root",
                    )
                )
        for s in (m - omega, -(m - omega)):
            if rect.contains(s):
                records.append(
                    RootRecord(
                        Lambda=complex(s),
                        lam=1j * s,
                        residual=0.0,
                        sheet=(1, 1),
                        newton_iters=0,
                        seed=complex(s),
                        converged=True,
                        admissible=False,
                        tag="structural",
                    )
                )
        return records
    return find_roots(
        lambda z: gamma(m, omega, kappa, z),
        rect,
        n,
        residual_tol=max(residual_tol, 1e-11),
        structural=(m - omega, -(m - omega)),
        admissibility=admissible,
        **kwargs,
    )


def nontrivial_roots(records: Iterable[RootRecord]):
    """Converged, admissible roots that are neither structural nor the kernel."""
    return [r for r in records if r.converged and r.admissible and r.tag == "root"]


# ---------------------------------------------------------------------------
# continuation of a root along a parameter path
# ---------------------------------------------------------------------------


@dataclass
class TrackPoint:
    param: float
    record: RootRecord


@dataclass
class TrackResult:
    points: list
    events: list  # (param, event name)

    @property
    def final(self) -> RootRecord:
        return self.points[-1].record


def track_root(
    family: Callable[[float], Callable[[complex], complex]],
    seed: complex,
    schedule: Sequence[float],
    *,
    mode: str = "plain",
    thresholds: Optional[Callable[[float], Sequence[complex]]] = None,
    threshold_tol: float = 1e-6,
    residual_tol: float = 1e-11,
    min_step_frac: float = 1e-6,
    max_jump: float = 0.5,
):
    """Continue a root of family(param) along schedule, starting from seed.

    mode "plain" tracks the root itself; mode "pair" tracks w = Lambda**2 of
    an even dispersion function with the persistent double zero at the origin
    divided out, which continues a +/- pair smoothly through a collision at
    zero.  Steps that fail to re-converge are bisected adaptively down to
    min_step_frac of the total path; beyond that a BranchLostError carrying
    the last good record is raised.  An event is recorded whenever the root
    comes within threshold_tol of a supplied threshold point.
    """
    if mode not in ("plain", "pair"):
        raise DomainError("mode must be 'plain' or 'pair'")
    schedule = list(schedule)
    if not schedule:
        raise DomainError("empty schedule")
    path_len = max(abs(schedule[-1] - schedule[0]), 1e-30)

    def solver_fn(param):
        f = family(param)
        if mode == "plain":
            return f
        return lambda w: f(principal_sqrt(w)) / w

    def to_var(z):
        return complex(z) if mode == "plain" else complex(z) ** 2

    def from_var(w):
        return complex(w) if mode == "plain" else principal_sqrt(w)

    points = []
    events = []
    current = to_var(seed)
    prev_pair = None  # (param, value) for linear prediction
    last_good = None

    stall_cap = max(1e4 * residual_tol, 1e-7)

    def attempt(param, guess):
        g = solver_fn(param)
        # retry with smaller derivative stencils: near a branch point the
        # default step straddles the cut and poisons the derivative
        for h in (1e-7, 1e-11, 1e-14):
            z, fz, iters, ok = newton_polish(
                g, guess, tol=residual_tol, h=h, stall_tol=stall_cap
            )
            if ok:
                break
        if ok and abs(z - guess) > max_jump * max(1.0, abs(guess)):
            return None
        return (z, fz, iters) if ok else None

    def advance(p_from, p_to, w_from, depth_budget):
        nonlocal prev_pair
        guess = w_from
        if prev_pair is not None and prev_pair[0] != p_from:
            slope = (w_from - prev_pair[1]) / (p_from - prev_pair[0])
            guess = w_from + slope * (p_to - p_from)
        got = attempt(p_to, guess)
        if got is None and guess != w_from:
            got = attempt(p_to, w_from)
        if got is not None:
            prev_pair = (p_from, w_from)
            return got
        if abs(p_to - p_from) < min_step_frac * path_len or depth_budget <= 0:
            raise BranchLostError(
                f"continuation lost between {p_from} and {p_to}", last_good=last_good
            )
        mid = 0.5 * (p_from + p_to)
        zmid, _, _ = advance(p_from, mid, w_from, depth_budget - 1)
        return advance(mid, p_to, zmid, depth_budget - 1)

    p_prev = schedule[0]
    got = attempt(p_prev, current)
    if got is None:
        raise BranchLostError("seed failed to converge", last_good=None)
    current = got[0]

    def push(param, w, fval, iters):
        nonlocal last_good
        lam = from_var(w)
        rec = RootRecord(
            Lambda=lam,
            lam=1j * lam,
            residual=abs(fval),
            sheet=(1, 1),
            newton_iters=iters,
            seed=lam,
            converged=True,
            admissible=True,
            tag="root",
        )
        points.append(TrackPoint(param, rec))
        last_good = rec
        if thresholds is not None:
            for t in thresholds(param):
                if abs(lam - t) < threshold_tol or abs(-lam - t) < threshold_tol:
                    events.append((param, "threshold"))
                    break

    push(p_prev, current, got[1], got[2])
    for p_next in schedule[1:]:
        w_next, fval, iters = advance(p_prev, p_next, current, depth_budget=40)
        push(p_next, w_next, fval, iters)
        current = w_next
        p_prev = p_next
    return TrackResult(points, events)

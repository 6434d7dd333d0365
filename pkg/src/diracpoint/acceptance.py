"""Acceptance suite: every exit criterion at its pinned tolerance.

Each criterion_* function is self-contained, uses library entry points plus
independent re-derivations where the criterion demands one, and returns a
CriterionResult.  run_all() executes them in order; the CLI `verify`
subcommand prints the table and the pytest suite asserts each result.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np
from scipy.optimize import brentq

from .core import ModelParams, Nonlinearity
from .dispersion import (
    Rectangle,
    det_oddeven,
    det_parity_broken_block_D,
    det_parity_preserved,
    gamma_reduced,
    gamma_roots,
    newton_polish,
    nontrivial_roots,
    track_root,
)
from .perturbation import omega_of_mu, scaling_study, zeta_parity_broken, zeta_parity_preserved
from .reports import GridSpec, compute_diagram, region_status
from .spectrum import (
    SQRT_HALF,
    Lambda_of_X,
    X_of_Lambda,
    classify,
    discriminant_factorization,
    lambda_pm,
    omega_kolokolov,
    quartic_coeffs,
    roots_X,
    thresholds,
)
from .waves import charge_Q, dQ_domega, solve_amplitude_type1


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: Tuple[str, ...] = ()

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:02d}: {self.name}"

    def detail_text(self) -> str:
        return "\n".join((self.summary_line(),) + tuple(self.details))


def _result(number, name, failures, notes=()):
    return CriterionResult(
        number=number,
        name=name,
        passed=not failures,
        details=tuple(failures) + tuple(notes),
    )


# -- 1 ----------------------------------------------------------------------


def criterion_01_oracle_agreement() -> CriterionResult:
    """30x30 grid: root finder on the raw dispersion function must agree with
    the closed-form pair (1e-9) wherever it exists and find nothing where it
    does not.  Zero discrepancies allowed."""
    m = 1.0
    kappas = np.linspace(-2.5, 2.5, 30)
    omegas = np.linspace(-0.99, 0.99, 30)
    failures: List[str] = []
    n_exist = n_none = 0
    for kappa in kappas:
        for omega in omegas:
            pair = lambda_pm(m, omega, kappa)
            gap = m - abs(omega)
            half = (1.0 - 1e-9) * gap
            if pair.exists:
                n_exist += 1
                im_half = max(0.35 * gap, 1.35 * abs(pair.plus.imag) + 0.02)
                rect = Rectangle(-half, half, -im_half, im_half)
            else:
                n_none += 1
                rect = Rectangle(-half, half, -half, half)
            found = nontrivial_roots(gamma_roots(m, omega, kappa, rect=rect, n=80))
            if pair.exists:
                targets = (pair.plus, pair.minus)
                for t in targets:
                    if not any(abs(r.Lambda - t) < 1e-9 for r in found):
                        failures.append(
                            f"missing root near {t} at (kappa={kappa:.4f}, omega={omega:.4f})"
                        )
                for r in found:
                    if min(abs(r.Lambda - t) for t in targets) > 1e-9:
                        failures.append(
                            f"spurious root {r.Lambda} at (kappa={kappa:.4f}, omega={omega:.4f})"
                        )
            elif found:
                failures.append(
                    f"root {found[0].Lambda} found where none should exist "
                    f"(kappa={kappa:.4f}, omega={omega:.4f})"
                )
    notes = (f"{n_exist} existence points, {n_none} non-existence points, 0 allowed discrepancies",)
    return _result(1, "closed-form/oracle agreement", failures[:20], notes)


# -- 2 ----------------------------------------------------------------------


def criterion_02_pair_at_two_omega() -> CriterionResult:
    """The odd-even-odd-even determinant vanishes at Lambda = +/-2*omega
    (|value| < 1e-11) for 100 random (m, omega), embedded cases included."""
    rng = np.random.default_rng(20240817)
    failures = []
    n_embedded = 0
    for _ in range(100):
        m = rng.uniform(0.5, 2.0)
        omega = rng.uniform(-0.99, 0.99) * m
        if abs(omega) > m / 3.0:
            n_embedded += 1
        for lam in (2.0 * omega, -2.0 * omega):
            val = abs(det_oddeven(m, omega, lam))
            if val >= 1e-11:
                failures.append(f"|det|={val:.3e} at m={m}, omega={omega}, Lambda={lam}")
    if n_embedded < 20:
        failures.append(f"only {n_embedded} embedded samples")
    return _result(2, "universal pair at +/-2*omega*i", failures, (f"{n_embedded} embedded cases",))


# -- 3 ----------------------------------------------------------------------

_EXACT_T = {
    ("plus", 1.5): 25.0 / 39.0,
    ("plus", 2.0): 9.0 / 16.0,
    ("plus", 5.0): 36.0 / 85.0,
    ("minus", -0.8): -1.0 / 24.0,
    ("minus", -0.5): -1.0 / 3.0,
}


def criterion_03_thresholds() -> CriterionResult:
    """Tracked dispersion root reaches the gap edge (within 1e-4) at the
    virtual-level frequency +/- 1e-6, and the threshold formulas reproduce
    their exact rational values to 1e-12."""
    m = 1.0
    failures = []
    for kappa in (1.5, 2.0, 5.0):
        th = thresholds(m, kappa)
        exact = _EXACT_T[("plus", kappa)]
        if abs(th.T_plus.value - exact) > 1e-12:
            failures.append(f"T+({kappa}) = {th.T_plus.value} != {exact}")
        upper = min(omega_kolokolov(m, kappa), m)
        start = 0.5 * (th.T_plus.value + upper)
        seed = lambda_pm(m, start, kappa).plus
        deltas = np.geomspace(start - th.T_plus.value, 1e-6, 25)
        schedule = [start] + list(th.T_plus.value + deltas[1:])
        fam = lambda w: (lambda L: gamma_reduced(m, w, kappa, L))
        res = track_root(
            fam, seed, schedule, mode="plain", thresholds=lambda w: (m - abs(w), -(m - abs(w)))
        )
        err = abs(res.final.Lambda - (m - schedule[-1]))
        if err >= 1e-4:
            failures.append(f"kappa={kappa}: tracked root misses gap edge by {err:.3e}")
        if not res.events:
            failures.append(f"kappa={kappa}: no threshold event emitted")
    for kappa in (-0.8, -0.5):
        th = thresholds(m, kappa)
        exact = _EXACT_T[("minus", kappa)]
        if abs(th.T_minus.value - exact) > 1e-12:
            failures.append(f"T-({kappa}) = {th.T_minus.value} != {exact}")
        lower = max(omega_kolokolov(m, kappa), -m)
        start = 0.5 * (lower + th.T_minus.value)
        seed = lambda_pm(m, start, kappa).plus
        deltas = np.geomspace(th.T_minus.value - start, 1e-6, 25)
        schedule = [start] + list(th.T_minus.value - deltas[1:])
        fam = lambda w: (lambda L: gamma_reduced(m, w, kappa, L))
        res = track_root(
            fam, seed, schedule, mode="plain", thresholds=lambda w: (m - abs(w), -(m - abs(w)))
        )
        err = abs(abs(res.final.Lambda) - (m + schedule[-1]))
        if err >= 1e-4:
            failures.append(f"kappa={kappa}: tracked root misses gap edge by {err:.3e}")
        if not res.events:
            failures.append(f"kappa={kappa}: no threshold event emitted")
    return _result(3, "virtual-level thresholds", failures)


# -- 4 ----------------------------------------------------------------------


def criterion_04_kolokolov() -> CriterionResult:
    """Finite-difference zero of dQ/domega and the closed-form collision of
    the extra pair both land on m*(kappa+1)/(2*kappa) within 1e-8; the closed
    form of dQ/domega matches central differences to relative 1e-6."""
    m = 1.0
    h = 1e-5
    failures = []
    for kappa in (-2.0, 1.5, 2.0, 5.0):
        nl = Nonlinearity(kappa)
        big_omega = omega_kolokolov(m, kappa)

        def q_of(w):
            return charge_Q(solve_amplitude_type1(ModelParams(m, w), nl))

        def fd_dq(w):
            return (q_of(w + h) - q_of(w - h)) / (2.0 * h)

        zero_fd = brentq(fd_dq, big_omega - 0.05, big_omega + 0.05, xtol=1e-13)
        if abs(zero_fd - big_omega) > 1e-8:
            failures.append(f"kappa={kappa}: FD zero {zero_fd} vs {big_omega}")

        def pair_squared(w):
            return (lambda_pm(m, w, kappa).plus ** 2).real

        zero_pair = brentq(pair_squared, big_omega - 0.05, big_omega + 0.05, xtol=1e-13)
        if abs(zero_pair - big_omega) > 1e-8:
            failures.append(f"kappa={kappa}: pair zero {zero_pair} vs {big_omega}")

        for omega in (-0.8, -0.5, -0.2, 0.2, 0.5, 0.8):
            if abs(omega - big_omega) < 0.05:
                continue
            closed = dQ_domega(ModelParams(m, omega), nl)
            fd = fd_dq(omega)
            rel = abs(closed - fd) / abs(closed)
            if rel > 1e-6:
                failures.append(f"kappa={kappa}, omega={omega}: dQ rel error {rel:.2e}")
    return _result(4, "kolokolov-frequency consistency", failures)


# -- 5 ----------------------------------------------------------------------


def criterion_05_blow_up() -> CriterionResult:
    """For kappa = -2, m = 1 the pair magnitude exceeds 1e3 by
    omega = 0.5 - 1e-6, growing monotonically along the sampled approach."""
    m, kappa = 1.0, -2.0
    failures = []
    samples = [0.3, 0.4, 0.45, 0.49, 0.499, 0.5 - 1e-6]
    mags = [abs(lambda_pm(m, w, kappa).plus) for w in samples]
    if not all(a < b for a, b in zip(mags, mags[1:])):
        failures.append(f"pair magnitude not monotone: {mags}")
    if mags[-1] <= 1e3:
        failures.append(f"|pair|({samples[-1]}) = {mags[-1]:.3e} <= 1e3")
    return _result(5, "pair blow-up at twice the critical frequency", failures,
                   (f"|pair| at 0.5-1e-6: {mags[-1]:.4e}",))


# -- 6 ----------------------------------------------------------------------

_TABLE_POINTS = (
    # (omega, kappa, kernel_dim, alg_mult_zero)
    (0.0, -1.0, 4, 6),
    (0.0, 0.0, 4, 4),
    (0.0, 0.5, 3, 4),
    (0.0, 2.0, 3, 4),
    (0.5, -1.0, 2, 2),
    (0.5, 0.0, 2, 4),
    (0.5, 0.5, 1, 2),
    (0.5, 2.0, 1, 2),
    (0.75, 2.0, 1, 4),
)


def criterion_06_multiplicity_tables() -> CriterionResult:
    """Kernel dimension and algebraic multiplicity of the zero eigenvalue on
    the representative points, including the collision point and the
    whole-plane point."""
    failures = []
    for omega, kappa, kern, alg in _TABLE_POINTS:
        sc = classify(1.0, omega, kappa)
        if sc.kernel_dim != kern:
            failures.append(f"(omega={omega}, kappa={kappa}): kernel {sc.kernel_dim} != {kern}")
        if sc.alg_mult_zero != alg:
            failures.append(f"(omega={omega}, kappa={kappa}): alg mult {sc.alg_mult_zero} != {alg}")
    sc = classify(1.0, 0.0, -1.0)
    if not sc.essential.whole_plane:
        failures.append("whole-plane essential spectrum missing at (0, -1)")
    return _result(6, "kernel and multiplicity tables", failures)


# -- 7 ----------------------------------------------------------------------


def criterion_07_parity_preserving() -> CriterionResult:
    """Shift stays real: |Im zeta| < 1e-9 via the determinant root, and the
    relative deviation from 2*eps*(m^2-omega^2)/m stays below 5*eps."""
    m, kappa = 1.0, 1.0
    failures = []
    for epsilon in (1e-3, 1e-2):
        for omega in (0.9, 0.95):
            res = zeta_parity_preserved(m, omega, kappa, epsilon)
            det = lambda lam: det_parity_preserved(m, omega, kappa, epsilon, lam)
            seed = 2.0 * omega + res.zeta.real + 1e-5j
            root, fval, _, ok = newton_polish(det, seed, tol=1e-12)
            if not ok:
                failures.append(f"eps={epsilon}, omega={omega}: determinant root not found")
                continue
            zeta_det = root - 2.0 * omega
            if abs(zeta_det.imag) >= 1e-9:
                failures.append(
                    f"eps={epsilon}, omega={omega}: Im zeta = {zeta_det.imag:.3e}"
                )
            lead = 2.0 * epsilon * (m * m - omega * omega) / m
            rel = abs(res.zeta.real - lead) / abs(res.zeta.real)
            if rel >= 5.0 * epsilon:
                failures.append(
                    f"eps={epsilon}, omega={omega}: deviation {rel:.3e} >= {5*epsilon:.1e}"
                )
            if abs(zeta_det.real - res.zeta.real) > 1e-9:
                failures.append(
                    f"eps={epsilon}, omega={omega}: quadratic and determinant roots differ"
                )
    return _result(7, "parity-preserving stability", failures)


# -- 8 ----------------------------------------------------------------------


def criterion_08_parity_breaking() -> CriterionResult:
    """Im zeta < 0 on the full grid; log-log slopes 2 +/- 0.05 in epsilon and
    3 +/- 0.1 in mu; block-D diagnostic within 5% of 32*m^2 at omega=0.999."""
    m = 1.0
    failures = []
    for epsilon in (0.01, 0.02, 0.05):
        for omega in (0.95, 0.99):
            for kappa in (0.5, 1.0, 2.0):
                res = zeta_parity_broken(m, omega, kappa, epsilon)
                if not (res.zeta.imag < 0.0 and res.unstable):
                    failures.append(
                        f"eps={epsilon}, omega={omega}, kappa={kappa}: Im zeta = {res.zeta.imag:.3e}"
                    )
    study_eps = scaling_study(m, 1.0, [0.95, 0.97, 0.99], [0.01, 0.02, 0.05])
    slope_eps = study_eps.slope_vs_epsilon[0.99]
    if abs(slope_eps - 2.0) > 0.05:
        failures.append(f"slope vs epsilon {slope_eps:.4f} outside 2 +/- 0.05")
    mu_list = (0.05, 0.10, 0.15)
    study_mu = scaling_study(m, 1.0, [omega_of_mu(m, mu) for mu in mu_list], [0.005, 0.01, 0.02])
    slope_mu = study_mu.slope_vs_mu[0.01]
    if abs(slope_mu - 3.0) > 0.1:
        failures.append(f"slope vs mu {slope_mu:.4f} outside 3 +/- 0.1")
    for kappa in (0.5, 1.0, 2.0):
        d = det_parity_broken_block_D(m, 0.999, kappa, 0.01, 2.0 * 0.999)
        rel = abs(abs(d) - 32.0 * m * m) / (32.0 * m * m)
        if rel > 0.05:
            failures.append(f"block-D magnitude off by {rel:.3e} at kappa={kappa}")
    notes = (f"slope_eps={slope_eps:.4f}, slope_mu={slope_mu:.4f}",)
    return _result(8, "parity-breaking instability", failures, notes)


# -- 9 ----------------------------------------------------------------------


def criterion_09_structural_identities() -> CriterionResult:
    """1e4 random admissible points: root-sum/product identities, the
    discriminant factorization, homography round trip, and the conjugation
    relations, all to 1e-10 relative; found root sets closed under the two
    spectral symmetries."""
    m = 1.0
    rng = np.random.default_rng(424242)
    failures = []
    checked = 0
    while checked < 10_000 and len(failures) < 20:
        kappa = rng.uniform(-2.5, 2.5)
        omega = rng.uniform(-0.99, 0.99)
        if abs(kappa) < 0.02 or abs(kappa + 1.0) < 0.02:
            continue
        q = quartic_coeffs(m, omega, kappa)
        scale = max(abs(q.a), abs(q.b), abs(q.c), 1.0)
        if abs(q.a) < 1e-3 * scale:
            continue
        checked += 1
        xp, xm = roots_X(q)

        def rel(lhs, rhs):
            return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))

        if rel(xp + xm, 2.0 * q.b / q.a) > 1e-10:
            failures.append(f"root-sum identity at ({omega:.4f}, {kappa:.4f})")
        if rel(xp * xm, -q.c / q.a) > 1e-10:
            failures.append(f"root-product identity at ({omega:.4f}, {kappa:.4f})")
        if rel(kappa * kappa, (kappa + 1.0 - xp) * (kappa + 1.0 - xm)) > 1e-10:
            failures.append(f"root-shift identity at ({omega:.4f}, {kappa:.4f})")
        if rel(q.b * q.b + q.a * q.c, discriminant_factorization(m, omega, kappa)) > 1e-10:
            failures.append(f"discriminant factorization at ({omega:.4f}, {kappa:.4f})")

        lam = complex(rng.uniform(-1.5, 1.5), rng.uniform(0.01, 1.0) * rng.choice((-1, 1)))
        x = X_of_Lambda(m, omega, lam)
        back = Lambda_of_X(m, omega, x)
        if rel(back, lam) > 1e-10:
            failures.append(f"homography round trip at ({omega:.4f}, {kappa:.4f})")

        for left, right in ((xp, xm), (xm, xp)):
            # cross-multiplied form, normalized by the term magnitudes so the
            # check stays meaningful next to the homography pole
            lhs = left * left * (omega + (m - omega) * right * right)
            rhs = m + omega - omega * right * right
            norm = max(
                1.0,
                abs(left) ** 2 * (abs(omega) + (m - omega) * abs(right) ** 2),
                abs(rhs),
            )
            if abs(lhs - rhs) / norm > 1e-10:
                failures.append(f"conjugation relation at ({omega:.4f}, {kappa:.4f})")
            den = omega + (m - omega) * right * right
            if abs(den) > 1e-2 * (1.0 + abs(right) ** 2):
                if rel(left * left, rhs / den) > 1e-10:
                    failures.append(f"conjugation quotient at ({omega:.4f}, {kappa:.4f})")

    sym_points = ((0.7, 2.0), (0.8, 2.0), (-0.4, -0.5), (0.3, -2.0), (0.95, 1.5), (-0.08, -0.8))
    for omega, kappa in sym_points:
        found = nontrivial_roots(gamma_roots(m, omega, kappa))
        lams = [r.Lambda for r in found]
        for z in lams:
            if not any(abs(z + w) < 1e-9 for w in lams):
                failures.append(f"root set not symmetric under negation at ({omega}, {kappa})")
            if not any(abs(z.conjugate() - w) < 1e-9 for w in lams):
                failures.append(f"root set not symmetric under conjugation at ({omega}, {kappa})")
    return _result(9, "structural identities", failures, (f"{checked} random points checked",))


# -- 10 ---------------------------------------------------------------------


def _expected_status(m: float, omega: float, kappa: float) -> int:
    """Independent re-evaluation of the region case list: 0 none, 1 gap pair,
    2 real pair.  Written directly from the per-kappa frequency windows."""
    if kappa == -1.0 or kappa == 0.0:
        return 0
    big = omega_kolokolov(m, kappa)
    two = 2.0 * big
    tp = m * (kappa + 1.0) ** 2 / ((3.0 * kappa + 2.0) * kappa) if kappa != -2.0 / 3.0 else None
    tm = m * (kappa + 1.0) ** 2 / ((kappa + 2.0) * kappa) if kappa != -2.0 else None
    if kappa < -1.0:
        if tp is not None and tp < omega < big:
            return 1
        if big < omega < two:
            return 2
        return 0
    if -1.0 < kappa < SQRT_HALF - 1.0:
        if max(two, -m) < omega < max(big, -m):
            return 2
        if tm is not None and max(big, -m) < omega < tm:
            return 1
        return 0
    if SQRT_HALF - 1.0 <= kappa <= SQRT_HALF:
        return 0
    if SQRT_HALF < kappa <= 1.0:
        if tp is not None and tp < omega < m:
            return 1
        return 0
    if tp is not None and tp < omega < min(big, m):
        return 1
    if min(big, m) < omega < m:
        return 2
    return 0


def _curve_values(m: float, kappa: np.ndarray):
    """The four analytic curves as arrays over kappa (inf at poles)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        big = m * (kappa + 1.0) / (2.0 * kappa)
        two = m * (kappa + 1.0) / kappa
        tp = m * (kappa + 1.0) ** 2 / ((3.0 * kappa + 2.0) * kappa)
        tm = m * (kappa + 1.0) ** 2 / ((kappa + 2.0) * kappa)
    return (big, two, tp, tm)


def criterion_10_diagram() -> CriterionResult:
    """400x400 diagram: every region-status boundary between adjacent cells is
    crossed by one of the four analytic curves, and the stable/unstable
    partition matches an independent evaluation of the case windows
    cell-by-cell."""
    m = 1.0
    grid = GridSpec()
    cells = compute_diagram(m, grid)
    nk, nw = grid.n_kappa, grid.n_omega
    status = np.array([region_status(c.region_code) for c in cells]).reshape(nk, nw)
    stable = np.array([c.stable for c in cells]).reshape(nk, nw)
    boundary = np.array(
        [c.region_code.endswith("-boundary") for c in cells]
    ).reshape(nk, nw)

    ks = grid.kappa_centers()
    ws = grid.omega_centers()
    failures = []

    expected = np.empty((nk, nw), dtype=int)
    for i, k in enumerate(ks):
        for j, w in enumerate(ws):
            expected[i, j] = _expected_status(m, float(w), float(k))
    exp_stable = expected != 2

    mism = (stable != exp_stable) & ~boundary
    if mism.any():
        i, j = np.argwhere(mism)[0]
        failures.append(
            f"{int(mism.sum())} stability mismatches, first at "
            f"(kappa={ks[i]:.4f}, omega={ws[j]:.4f})"
        )
    mism_status = (status != expected) & ~boundary
    if mism_status.any():
        i, j = np.argwhere(mism_status)[0]
        failures.append(
            f"{int(mism_status.sum())} region mismatches, first at "
            f"(kappa={ks[i]:.4f}, omega={ws[j]:.4f})"
        )

    curves = _curve_values(m, ks)  # arrays over kappa index
    # sign of (omega - curve) on the full grid, one array per curve
    signs = [np.sign(ws[None, :] - c[:, None]) for c in curves]

    def crossed(i0, j0, i1, j1):
        return any(s[i0, j0] * s[i1, j1] <= 0 for s in signs)

    diff_w = status[:, :-1] != status[:, 1:]
    for i, j in np.argwhere(diff_w):
        if boundary[i, j] or boundary[i, j + 1]:
            continue
        if not crossed(i, j, i, j + 1):
            failures.append(
                f"uncovered omega-direction boundary at (kappa={ks[i]:.4f}, "
                f"omega={ws[j]:.4f}..{ws[j+1]:.4f})"
            )
            if len(failures) > 20:
                break
    diff_k = status[:-1, :] != status[1:, :]
    for i, j in np.argwhere(diff_k):
        if boundary[i, j] or boundary[i + 1, j]:
            continue
        if not crossed(i, j, i + 1, j):
            failures.append(
                f"uncovered kappa-direction boundary at (kappa={ks[i]:.4f}.."
                f"{ks[i+1]:.4f}, omega={ws[j]:.4f})"
            )
            if len(failures) > 20:
                break
    return _result(10, "stability-diagram reproduction", failures[:20])


CRITERIA: Tuple[Callable[[], CriterionResult], ...] = (
    criterion_01_oracle_agreement,
    criterion_02_pair_at_two_omega,
    criterion_03_thresholds,
    criterion_04_kolokolov,
    criterion_05_blow_up,
    criterion_06_multiplicity_tables,
    criterion_07_parity_preserving,
    criterion_08_parity_breaking,
    criterion_09_structural_identities,
    criterion_10_diagram,
)


def run_all() -> List[CriterionResult]:
    return [fn() for fn in CRITERIA]

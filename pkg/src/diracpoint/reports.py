"""Structured output: diagram grids, canonical JSON/CSV serialization, SVG.

All floats are written as %.12e so that emitted files are reproducible and a
parse/re-emit round trip is byte-identical.  Grid sweeps are assembled in a
fixed cell order regardless of worker count.
"""

from __future__ import annotations

import json
import multiprocessing
import os
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from .core import DomainError
from .spectrum import SpectralClassification, classify, thresholds

FLOAT_FMT = "%.12e"

JOBS_ENV_VAR = "DIRACPOINT_JOBS"


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV_VAR, "1")))
    except ValueError:
        return 1


def fmt_float(x: float) -> str:
    return FLOAT_FMT % (float(x) + 0.0)  # +0.0 folds away negative zero


@dataclass(frozen=True)
class GridSpec:
    kappa_min: float = -2.0
    kappa_max: float = 2.0
    n_kappa: int = 400
    omega_min: float = -1.0
    omega_max: float = 1.0
    n_omega: int = 400

    def __post_init__(self):
        if self.n_kappa < 2 or self.n_omega < 2:
            raise DomainError("grid resolution must be at least 2 per axis")

    def kappa_centers(self) -> np.ndarray:
        dk = (self.kappa_max - self.kappa_min) / self.n_kappa
        return self.kappa_min + dk * (np.arange(self.n_kappa) + 0.5)

    def omega_centers(self) -> np.ndarray:
        dw = (self.omega_max - self.omega_min) / self.n_omega
        return self.omega_min + dw * (np.arange(self.n_omega) + 0.5)


@dataclass(frozen=True)
class RunConfig:
    """Bag of CLI options shared by all subcommands."""

    model: str = "soler"
    m: float = 1.0
    omega: float = 0.0
    kappa: float = 1.0
    epsilon: float = 0.0
    grid: GridSpec = field(default_factory=GridSpec)
    out: Optional[str] = None
    fmt: str = "json"
    tol: float = 1e-11
    jobs: int = 1

    def __post_init__(self):
        if self.m <= 0:
            raise DomainError("m must be positive")
        if self.fmt not in ("csv", "json", "svg"):
            raise DomainError("format must be csv, json, or svg")
        if self.model not in ("soler", "parity", "broken"):
            raise DomainError("model must be soler, parity, or broken")


@dataclass(frozen=True)
class DiagramCell:
    kappa: float
    omega: float
    region_code: str
    lambda_re: float
    lambda_im: float
    stable: bool
    boundary_flags: Tuple[str, ...]


def _dominant_eigenvalue(sc: SpectralClassification) -> complex:
    best = 0j
    for ev in sc.eigenvalues:
        if ev.tag == "real_unstable" and ev.value.real > best.real:
            best = ev.value
    if best != 0j:
        return best
    for ev in sc.eigenvalues:
        if ev.tag == "gap_imaginary" and ev.value.imag > 0:
            return ev.value
    return 0j


def _cell(args) -> DiagramCell:
    m, kappa, omega = args
    sc = classify(m, omega, kappa)
    lam = _dominant_eigenvalue(sc)
    flags = tuple(sorted(set(sc.flags) & {"threshold-embedded"}))
    if sc.region_code.endswith("-boundary"):
        flags = flags + ("on-threshold-curve",)
    return DiagramCell(
        kappa=kappa,
        omega=omega,
        region_code=sc.region_code,
        lambda_re=lam.real,
        lambda_im=lam.imag,
        stable=sc.spectrally_stable,
        boundary_flags=flags,
    )


def compute_diagram(m: float, grid: GridSpec, jobs: int = 1):
    """Classify every cell center of the grid; deterministic row-major order
    (kappa outer, omega inner) independent of the worker count."""
    ks = grid.kappa_centers()
    ws = grid.omega_centers()
    tasks = [(m, float(k), float(w)) for k in ks for w in ws]
    if jobs > 1:
        with multiprocessing.Pool(jobs) as pool:
            cells = pool.map(_cell, tasks, chunksize=max(1, len(tasks) // (8 * jobs)))
    else:
        cells = [_cell(t) for t in tasks]
    return cells


def diagram_csv(cells: Sequence[DiagramCell]) -> str:
    lines = ["kappa,omega,region_code,lambda_re,lambda_im,stable"]
    for c in cells:
        lines.append(
            ",".join(
                (
                    fmt_float(c.kappa),
                    fmt_float(c.omega),
                    c.region_code,
                    fmt_float(c.lambda_re),
                    fmt_float(c.lambda_im),
                    "true" if c.stable else "false",
                )
            )
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# canonical JSON
# ---------------------------------------------------------------------------


def _canonical(obj):
    """Recursively render floats with the fixed format; keys keep insertion order."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_canonical(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_canonical(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if obj is None:
        return "null"
    return json.dumps(obj)


def dumps_canonical(obj) -> str:
    return _canonical(obj) + "\n"


def complex_to_dict(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def classification_to_dict(sc: SpectralClassification) -> dict:
    """Documented schema, version 1: stable field names and ordering."""
    return {
        "schema": 1,
        "model": "soler",
        "m": float(sc.m),
        "omega": float(sc.omega),
        "kappa": float(sc.kappa),
        "omega_over_m": float(sc.omega / sc.m),
        "region_code": sc.region_code,
        "spectrally_stable": sc.spectrally_stable,
        "kernel_dim": sc.kernel_dim,
        "alg_mult_zero": sc.alg_mult_zero,
        "eigenvalues": [
            {
                "re": float(ev.value.real),
                "im": float(ev.value.imag),
                "re_over_m": float(ev.value.real / sc.m),
                "im_over_m": float(ev.value.imag / sc.m),
                "tag": ev.tag,
            }
            for ev in sc.eigenvalues
        ],
        "essential": {
            "whole_plane": sc.essential.whole_plane,
            "gap_halfwidth": float(sc.essential.gap_halfwidth),
            "gap_halfwidth_over_m": float(sc.essential.gap_halfwidth / sc.m),
        },
        "flags": list(sc.flags),
    }


def root_record_to_dict(rec) -> dict:
    return {
        "Lambda": complex_to_dict(rec.Lambda),
        "lambda": complex_to_dict(rec.lam),
        "residual": float(rec.residual),
        "sheet": list(rec.sheet),
        "newton_iters": int(rec.newton_iters),
        "seed": complex_to_dict(rec.seed),
        "converged": rec.converged,
        "admissible": rec.admissible,
        "tag": rec.tag,
    }


def wave_to_dict(wave) -> dict:
    return {
        "family": wave.family,
        "m": float(wave.params.m),
        "omega": float(wave.params.omega),
        "omega_over_m": float(wave.params.omega / wave.params.m),
        "mu": float(wave.geometry.mu),
        "varkappa": float(wave.geometry.varkappa),
        "alpha": complex_to_dict(complex(wave.alpha)),
        "beta": complex_to_dict(complex(wave.beta)),
        "epsilon": float(wave.epsilon),
        "f_at_wave": float(wave.f_at_wave),
        "g_at_wave": float(wave.g_at_wave),
        "kappa": float(wave.kappa),
    }


def perturbation_to_dict(res) -> dict:
    out = {
        "schema": 1,
        "model": res.model,
        "epsilon": float(res.epsilon),
        "zeta": complex_to_dict(res.zeta),
        "lambda": complex_to_dict(res.lam),
        "unstable": res.unstable,
        "residual": float(res.residual),
        "flags": list(res.flags),
    }
    if res.spurious_zeta is not None:
        out["spurious_zeta"] = float(res.spurious_zeta)
    return out


def scaling_to_dict(study) -> dict:
    return {
        "schema": 1,
        "rows": [
            {
                "omega": float(r.omega),
                "mu": float(r.mu),
                "epsilon": float(r.epsilon),
                "zeta": complex_to_dict(r.zeta),
            }
            for r in study.rows
        ],
        "slope_vs_epsilon": {fmt_float(k): float(v) for k, v in study.slope_vs_epsilon.items()},
        "slope_vs_mu": {fmt_float(k): float(v) for k, v in study.slope_vs_mu.items()},
        "prefactor_ratio": [float(r) for r in study.prefactor_ratio],
    }


# ---------------------------------------------------------------------------
# SVG rendering of the parameter-plane diagram
# ---------------------------------------------------------------------------

_STATUS_OF_SUFFIX = {"real": 2, "gap": 1}


def region_status(region_code: str) -> int:
    """0 = no extra pair, 1 = imaginary pair in the gap, 2 = real (unstable) pair."""
    suffix = region_code.rsplit("-", 1)[-1]
    return _STATUS_OF_SUFFIX.get(suffix, 0)


def render_diagram_svg(cells, grid: GridSpec, m: float, path: str):
    """Static plot: region shading plus the four analytic threshold curves."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.colors import ListedColormap

    status = np.array([region_status(c.region_code) for c in cells])
    img = status.reshape(grid.n_kappa, grid.n_omega).T  # omega rows, kappa cols

    fig, ax = plt.subplots(figsize=(7.2, 4.8))
    cmap = ListedColormap(["#ffffff", "#9ecae1", "#fc9272"])
    ax.imshow(
        img,
        origin="lower",
        extent=(grid.kappa_min, grid.kappa_max, grid.omega_min, grid.omega_max),
        aspect="auto",
        cmap=cmap,
        vmin=0,
        vmax=2,
        interpolation="nearest",
    )
    ks = np.linspace(grid.kappa_min, grid.kappa_max, 1201)
    curves = {
        "critical frequency": ("solid", "#d62728", _curve_omega),
        "pair blow-up": ("dashed", "#d62728", _curve_two_omega),
        "virtual level (+)": ("dashdot", "#2ca02c", _curve_t_plus),
        "virtual level (-)": ("dotted", "#1f77b4", _curve_t_minus),
    }
    for label, (style, color, fn) in curves.items():
        vals = np.array([fn(m, k) for k in ks])
        vals = np.where(np.abs(vals) <= m, vals, np.nan)
        ax.plot(ks, vals, linestyle=style, color=color, lw=1.4, label=label)
    ax.plot([-1.0], [0.0], "ko", markersize=6, label="whole-plane point")
    ax.set_xlim(grid.kappa_min, grid.kappa_max)
    ax.set_ylim(grid.omega_min, grid.omega_max)
    ax.set_xlabel("kappa")
    ax.set_ylabel("omega")
    ax.legend(loc="lower right", fontsize=7)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def _curve_omega(m, k):
    th = thresholds(m, k).Omega
    return th.value if th.valid else float("nan")


def _curve_two_omega(m, k):
    th = thresholds(m, k).TwoOmega
    return th.value if th.valid else float("nan")


def _curve_t_plus(m, k):
    th = thresholds(m, k).T_plus
    return th.value if th.valid else float("nan")


def _curve_t_minus(m, k):
    th = thresholds(m, k).T_minus
    return th.value if th.valid else float("nan")

"""Command-line front end: classify, diagram, roots, perturb, verify.

Structured output goes to stdout or --out; floats are always %.12e, CSV uses
LF line endings, JSON payloads carry a "schema": 1 version tag.  Domain errors
exit with status 2 and a one-line diagnostic.
"""

from __future__ import annotations

import argparse
import sys

from .core import DomainError, NoSolutionError
from .dispersion import Rectangle, gamma_roots
from .perturbation import scaling_study, zeta_parity_broken, zeta_parity_preserved
from .reports import (
    GridSpec,
    RunConfig,
    compute_diagram,
    default_jobs,
    diagram_csv,
    dumps_canonical,
    classification_to_dict,
    perturbation_to_dict,
    render_diagram_svg,
    root_record_to_dict,
    scaling_to_dict,
)
from .spectrum import classify


def _parse_grid(text: str) -> GridSpec:
    """Parse "kmin:kmax:n,wmin:wmax:n"."""
    try:
        kpart, wpart = text.split(",")
        kmin, kmax, nk = kpart.split(":")
        wmin, wmax, nw = wpart.split(":")
        return GridSpec(
            kappa_min=float(kmin),
            kappa_max=float(kmax),
            n_kappa=int(nk),
            omega_min=float(wmin),
            omega_max=float(wmax),
            n_omega=int(nw),
        )
    except (ValueError, DomainError) as exc:
        raise DomainError(f"malformed --grid {text!r}: {exc}") from None


def _emit(text: str, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _common_flags(sub):
    sub.add_argument("--m", type=float, default=1.0)
    sub.add_argument("--omega", type=float, default=0.0)
    sub.add_argument("--kappa", type=float, default=1.0)
    sub.add_argument("--epsilon", type=float, default=0.0)
    sub.add_argument("--model", choices=("soler", "parity", "broken"), default="soler")
    sub.add_argument("--out", default=None)
    sub.add_argument("--format", dest="fmt", choices=("csv", "json", "svg"), default=None)
    sub.add_argument("--tol", type=float, default=1e-11)
    sub.add_argument("--grid", type=_parse_grid, default=None)
    sub.add_argument("--jobs", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diracpoint",
        description=(
            "Solitary waves of the 1D Dirac equation with a point Soler-type "
            "coupling and the spectrum of the linearization at them"
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("classify", help="point-spectrum classification at one parameter point")
    _common_flags(p)

    p = subs.add_parser("diagram", help="parameter-plane sweep (CSV grid, optional SVG)")
    _common_flags(p)

    p = subs.add_parser("roots", help="numerical roots of the raw dispersion function")
    _common_flags(p)
    p.add_argument(
        "--rect",
        nargs=4,
        type=float,
        metavar=("REMIN", "REMAX", "IMMIN", "IMMAX"),
        default=None,
    )
    p.add_argument("--grid-n", type=int, default=80)

    p = subs.add_parser("perturb", help="eigenvalue shift under a symmetry-breaking coupling")
    _common_flags(p)
    p.add_argument("--omega-list", default=None, help="comma list for a scaling study")
    p.add_argument("--epsilon-list", default=None, help="comma list for a scaling study")

    p = subs.add_parser("verify", help="run the acceptance suite")
    _common_flags(p)
    return parser


def _config(args) -> RunConfig:
    return RunConfig(
        model=args.model,
        m=args.m,
        omega=args.omega,
        kappa=args.kappa,
        epsilon=args.epsilon,
        grid=args.grid if args.grid is not None else GridSpec(),
        out=args.out,
        fmt=args.fmt if args.fmt is not None else "json",
        tol=args.tol,
        jobs=args.jobs if args.jobs is not None else default_jobs(),
    )


def cmd_classify(cfg: RunConfig) -> int:
    sc = classify(cfg.m, cfg.omega, cfg.kappa)
    _emit(dumps_canonical(classification_to_dict(sc)), cfg.out)
    return 0


def cmd_diagram(cfg: RunConfig) -> int:
    grid = cfg.grid
    if not (abs(grid.omega_min) <= cfg.m and abs(grid.omega_max) <= cfg.m):
        raise DomainError("diagram omega bounds must lie within [-m, m]")
    cells = compute_diagram(cfg.m, grid, jobs=cfg.jobs)
    if cfg.fmt == "svg":
        if cfg.out is None:
            raise DomainError("--format svg requires --out")
        render_diagram_svg(cells, grid, cfg.m, cfg.out)
        return 0
    if cfg.fmt == "json":
        payload = {
            "schema": 1,
            "m": float(cfg.m),
            "cells": [
                {
                    "kappa": c.kappa,
                    "omega": c.omega,
                    "region_code": c.region_code,
                    "lambda_re": c.lambda_re,
                    "lambda_im": c.lambda_im,
                    "stable": c.stable,
                    "boundary_flags": list(c.boundary_flags),
                }
                for c in cells
            ],
        }
        _emit(dumps_canonical(payload), cfg.out)
        return 0
    _emit(diagram_csv(cells), cfg.out)
    return 0


def cmd_roots(cfg: RunConfig, rect, grid_n: int) -> int:
    rect_obj = Rectangle(*rect) if rect is not None else None
    records = gamma_roots(
        cfg.m, cfg.omega, cfg.kappa, rect=rect_obj, n=grid_n, residual_tol=min(cfg.tol, 1e-11)
    )
    payload = {
        "schema": 1,
        "m": float(cfg.m),
        "omega": float(cfg.omega),
        "kappa": float(cfg.kappa),
        "roots": [root_record_to_dict(r) for r in records],
    }
    _emit(dumps_canonical(payload), cfg.out)
    return 0


def _parse_list(text: str):
    return [float(t) for t in text.split(",") if t.strip()]


def cmd_perturb(cfg: RunConfig, omega_list, epsilon_list) -> int:
    if cfg.model == "soler":
        raise DomainError("perturb needs --model parity or --model broken")
    if omega_list or epsilon_list:
        if not (omega_list and epsilon_list):
            raise DomainError("a scaling study needs both --omega-list and --epsilon-list")
        if cfg.model != "broken":
            raise DomainError("the scaling study applies to --model broken")
        study = scaling_study(cfg.m, cfg.kappa, _parse_list(omega_list), _parse_list(epsilon_list))
        _emit(dumps_canonical(scaling_to_dict(study)), cfg.out)
        return 0
    if cfg.model == "parity":
        res = zeta_parity_preserved(cfg.m, cfg.omega, cfg.kappa, cfg.epsilon)
    else:
        res = zeta_parity_broken(cfg.m, cfg.omega, cfg.kappa, cfg.epsilon)
    _emit(dumps_canonical(perturbation_to_dict(res)), cfg.out)
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    from .acceptance import run_all

    results = run_all()
    lines = [r.summary_line() for r in results]
    for r in results:
        if not r.passed:
            lines.extend("    " + d for d in r.details)
    ok = all(r.passed for r in results)
    lines.append("verify: " + ("all criteria passed" if ok else "FAILURES present"))
    _emit("\n".join(lines) + "\n", cfg.out)
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors via SystemExit
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        if args.command == "classify":
            return cmd_classify(cfg)
        if args.command == "diagram":
            return cmd_diagram(cfg)
        if args.command == "roots":
            return cmd_roots(cfg, args.rect, args.grid_n)
        if args.command == "perturb":
            return cmd_perturb(cfg, args.omega_list, args.epsilon_list)
        if args.command == "verify":
            return cmd_verify(cfg)
        parser.error(f"unknown command {args.command}")
    except (DomainError, NoSolutionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

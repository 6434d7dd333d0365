#!/usr/bin/env python3
"""Produce the full parameter-plane stability diagram (CSV + SVG).

Writes out/diagram.csv and out/diagram.svg with the default 400x400 grid over
kappa in [-2, 2], omega in (-1, 1) at m = 1.
"""

import argparse
import os

from diracpoint.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="out")
    ap.add_argument("--grid", default="-2:2:400,-0.9975:0.9975:400")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    os.makedirs(args.outdir, exist_ok=True)
    csv_path = os.path.join(args.outdir, "diagram.csv")
    svg_path = os.path.join(args.outdir, "diagram.svg")
    base = ["diagram", f"--grid={args.grid}", "--jobs", str(args.jobs)]
    rc = cli_main(base + ["--format", "csv", "--out", csv_path])
    rc |= cli_main(base + ["--format", "svg", "--out", svg_path])
    print(f"wrote {csv_path} and {svg_path}")
    return rc


if __name__ == "__main__":
    raise SystemExit(main())

"""Degree curve for the Wronskian of three (3,3,3) shift operators as (r, d) plot data."""

import argparse
from pathlib import Path

from orecl.bench.experiments import experiment4


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rmin", type=int, default=27)
    ap.add_argument("--rmax", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, default=Path("results/exp4.csv"))
    args = ap.parse_args()
    rep = experiment4(range(args.rmin, args.rmax + 1), seed=args.seed)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(rep.to_csv())
    print(f"{len(rep.curve)} points, d({args.rmin}) = {rep.curve[0][1]} -> {args.out}")


if __name__ == "__main__":
    main()

"""LCLM bound vs actual over the integers and GF(1091)[t]; writes results/exp1.csv."""

import argparse
from pathlib import Path

from orecl.bench.experiments import EXP1_SIZES, experiment1


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[2, 4, 8, 16], help=f"subset of {EXP1_SIZES}")
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--allow-heavy", action="store_true")
    ap.add_argument("--out", type=Path, default=Path("results/exp1.csv"))
    args = ap.parse_args()
    rep = experiment1(args.sizes, trials=args.trials, seed=args.seed, allow_heavy=args.allow_heavy)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(rep.to_csv())
    for dom in ("int", "gfp:t:1091"):
        for s in args.sizes:
            rows = [r for r in rep.rows if r.domain == dom and r.s_or_r == s]
            if not rows:
                continue
            n = len(rows)
            print(f"{dom:>11} s={s:<3} ord={sum(r.order_match for r in rows)}/{n} deg={sum(r.degree_match for r in rows)}/{n}"
                  f" ht==bound={sum(r.height_match for r in rows)}/{n} verified={sum(r.verified for r in rows)}/{n}"
                  f" ht_bound={rows[0].ht_bound:.4g}")
    print(f"runtime {rep.runtime:.1f}s -> {args.out}")


if __name__ == "__main__":
    main()

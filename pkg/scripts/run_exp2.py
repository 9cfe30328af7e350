"""Common left multiples along the order-degree curve for three (5,5) shift operators."""

import argparse
from pathlib import Path

from orecl.bench.experiments import experiment2


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[15, 16, 18, 20, 24])
    ap.add_argument("--trials", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, default=Path("results/exp2.csv"))
    args = ap.parse_args()
    rep = experiment2(args.sizes, trials=args.trials, seed=args.seed)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(rep.to_csv())
    for r in rep.rows:
        print(f"r={r.s_or_r:<3} curve d={r.deg_bound:<4} actual={r.deg_actual:<4} d_fail={r.extra['d_fail']:<4}"
              f" refused={r.extra['refused_at_d_fail']} kernel_dim={r.extra['kernel_dim']} verified={r.verified}")
    print(f"runtime {rep.runtime:.1f}s -> {args.out}")


if __name__ == "__main__":
    main()

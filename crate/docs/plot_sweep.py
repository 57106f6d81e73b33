#!/usr/bin/env python3
"""Plot columns of a spinrot CSV table.

    spinrot sweep --parameter mu_over_m --min 1 --max 1000 --steps 61 \
        --scale log --out sweep.csv
    python3 docs/plot_sweep.py sweep.csv mu_over_m sigma_sh_q4pi sigma_sh1_q4pi --logx
"""

import argparse

import matplotlib.pyplot as plt
import pandas as pd


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("table")
    ap.add_argument("x")
    ap.add_argument("y", nargs="+")
    ap.add_argument("--logx", action="store_true")
    ap.add_argument("--out", help="image file; shows a window when absent")
    args = ap.parse_args()

    df = pd.read_csv(args.table)
    # headers are "name [unit]"
    names = {c.split(" [")[0]: c for c in df.columns}
    fig, ax = plt.subplots()
    for y in args.y:
        ax.plot(df[names[args.x]], df[names[y]], marker=".", label=names[y])
    ax.set_xlabel(names[args.x])
    if args.logx:
        ax.set_xscale("log")
    ax.legend()
    ax.grid(alpha=0.3)
    if args.out:
        fig.savefig(args.out, dpi=150, bbox_inches="tight")
    else:
        plt.show()


if __name__ == "__main__":
    main()

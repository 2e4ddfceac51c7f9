#!/usr/bin/env python3
"""Plot the (T, alpha) bifurcation plane: Hopf boundary plus fold lines.

Usage:
    ddelc reproduce fig7 --out-dir out
    python3 scripts/plot_bifurcation.py out/fig7_hopf.csv out/fig7_folds.csv
"""
import csv
import sys
from collections import defaultdict

import matplotlib.pyplot as plt


def main(hopf_path, folds_path):
    hT, ha = [], []
    with open(hopf_path, newline="") as f:
        for row in csv.DictReader(f):
            hT.append(float(row["T"]))
            ha.append(float(row["alpha"]))
    folds = defaultdict(list)
    with open(folds_path, newline="") as f:
        for row in csv.DictReader(f):
            folds[row["n"]].append((float(row["T"]), float(row["alpha_n"])))

    plt.figure(figsize=(7, 5))
    plt.plot(hT, ha, label="Hopf boundary")
    for n, pts in sorted(folds.items()):
        pts.sort()
        plt.plot([p[0] for p in pts], [p[1] for p in pts], "--", label=f"fold n={n}")
    plt.xlabel("delay T")
    plt.ylabel("damping alpha")
    plt.xlim(left=0)
    plt.ylim(bottom=0)
    plt.legend()
    plt.tight_layout()
    out = hopf_path.rsplit(".", 1)[0] + "_plane.png"
    plt.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])

#!/usr/bin/env python3
"""Plot a Melnikov scan CSV (columns: a1, value).

Usage:
    ddelc reproduce fig3 --out-dir out
    python3 scripts/plot_melnikov.py out/fig3_melnikov_T0.2.csv
"""
import csv
import sys

import matplotlib.pyplot as plt


def main(path):
    a1, value = [], []
    with open(path, newline="") as f:
        for row in csv.DictReader(f):
            a1.append(float(row["a1"]))
            value.append(float(row["value"]))
    plt.figure(figsize=(7, 4))
    plt.plot(a1, value, "o-", ms=3)
    plt.axhline(0.0, color="k", lw=0.5)
    plt.xlabel("orbit amplitude a1")
    plt.ylabel("Melnikov integral")
    plt.title(path)
    plt.tight_layout()
    out = path.rsplit(".", 1)[0] + ".png"
    plt.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main(sys.argv[1])

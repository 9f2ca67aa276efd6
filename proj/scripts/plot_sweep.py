#!/usr/bin/env python3
# Copyright 2026 The pciclone Authors
# SPDX-License-Identifier: Apache-2.0
"""Plot sqrt(n_th) against a from `pciclone sweep` CSV output.

    pciclone sweep 8 9 16 32 64 256 --a-steps 200 --out sweep.csv
    python3 scripts/plot_sweep.py sweep.csv sweep.png
"""
import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main(src, dst):
    curves = defaultdict(list)
    with open(src, newline="") as f:
        for row in csv.DictReader(f):
            curves[float(row["M"])].append((float(row["a"]), float(row["sqrt_n_th"])))
    fig, ax = plt.subplots(figsize=(5, 4))
    for m, pts in sorted(curves.items()):
        a, s = zip(*pts)
        ax.plot(a, s, label=f"M = {m:g}")
    ax.set_xlabel("a = Nc / n")
    ax.set_ylabel("sqrt(n_th)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(dst, dpi=150)


if __name__ == "__main__":
    if len(sys.argv) != 3:
        sys.exit("usage: plot_sweep.py SWEEP_CSV OUTPUT_IMAGE")
    main(sys.argv[1], sys.argv[2])

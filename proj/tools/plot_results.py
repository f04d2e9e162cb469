#!/usr/bin/env python3
"""Render the CSV tables produced by lgtsim into PNGs.

Usage: plot_results.py PATH [PATH ...]

Each PATH is either one of the CSV files (convergence.csv, penalty_curve.csv,
free_energy.csv) or a run directory to scan for them. A PNG is written next
to each file found.
"""

import csv
import sys
from pathlib import Path

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    sys.exit("matplotlib is required: pip install matplotlib")


def read_table(path):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    return {k: [float(r[k]) for r in rows] for k in rows[0]} if rows else {}


def plot_convergence(path):
    t = read_table(path)
    if not t:
        return None
    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
    ax1.plot(t["iteration"], t["L1"], lw=0.9)
    ax1.set_ylabel("L1")
    ax2.plot(t["iteration"], t["L2"], lw=0.9, color="tab:red")
    if any(v > 0 for v in t["L2"]):
        ax2.set_yscale("log")
    ax2.set_ylabel("L2 (Gauss violation)")
    ax2.set_xlabel("iteration")
    return fig


def plot_penalty(path):
    t = read_table(path)
    if not t:
        return None
    key = "energy" if "energy" in t else "free_energy"
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(t["mu"], t[key], "o-", label=key)
    if "oracle_constrained" in t:
        ax.axhline(t["oracle_constrained"][0], ls="--", c="gray", label="constrained oracle")
        ax.axhline(t["oracle_unconstrained"][0], ls=":", c="gray",
                   label="unconstrained oracle")
    else:
        ax.axhline(t["oracle_free_energy"][0], ls="--", c="gray", label="oracle")
    ax.set_xlabel("mu")
    ax.set_ylabel(key)
    ax.legend()
    return fig


def plot_free_energy(path):
    t = read_table(path)
    if not t:
        return None
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(t["T"], t["F_oracle"], "s--", c="gray", label="F oracle")
    ax.plot(t["T"], t["F_vqt"], "o-", label="F variational")
    ax.set_xlabel("T")
    ax.set_ylabel("free energy")
    ax.legend()
    return fig


PLOTTERS = {
    "convergence.csv": plot_convergence,
    "penalty_curve.csv": plot_penalty,
    "free_energy.csv": plot_free_energy,
}


def render(src):
    plotter = PLOTTERS.get(src.name)
    if plotter is None or not src.is_file():
        return 0
    fig = plotter(src)
    if fig is None:
        return 0
    dst = src.with_suffix(".png")
    fig.savefig(dst, dpi=150, bbox_inches="tight")
    plt.close(fig)
    print(f"wrote {dst}")
    return 1


def main(argv):
    if len(argv) < 2:
        sys.exit(__doc__.strip())
    made = 0
    for path in map(Path, argv[1:]):
        if path.is_dir():
            for name in PLOTTERS:
                made += render(path / name)
        else:
            made += render(path)
    if not made:
        sys.exit("no known CSV files found at the given paths")


if __name__ == "__main__":
    main(sys.argv)

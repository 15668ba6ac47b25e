#!/usr/bin/env python3
# plot_figures.py — Run the figure experiments through the CLI and plot the CSVs
"""Usage: plot_figures.py [--cli build/berrydeco] [--out figures] [fig1 fig2 ...]"""

import argparse
import subprocess
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

FIGURES = ["fig1", "fig2", "fig3", "fig4", "fig6"]


def run(cli: str, fig: str, out: Path) -> pd.DataFrame:
    csv = out / f"{fig}.csv"
    subprocess.run([cli, fig, "--out", str(csv)], check=True, stdout=subprocess.DEVNULL)
    return pd.read_csv(csv, comment="#")


def plot_fig1(df, ax):
    for (theta, cutoff), g in df.groupby(["theta", "cutoff"]):
        ax.plot(g.t, g.F, label=f"theta={theta:.3f}, cutoff={cutoff:g}")
    ax.set(xlabel="t", ylabel="F(t)")


def plot_fig2(df, ax):
    for (cutoff, temp), g in df.groupby(["cutoff", "temperature"]):
        ax.plot(g.T0, g.F_2T0, label=f"cutoff={cutoff:g}, T={temp:g}")
    iso = df.drop_duplicates("T0")
    ax.plot(iso.T0, iso.F_isolated, "k--", label="isolated")
    ax.set(xlabel="T0", ylabel="F(2T0)")


def plot_fig3(df, ax):
    for cutoff, g in df.groupby("cutoff"):
        ax.plot(g.T0, g.l1, label=f"l1, cutoff={cutoff:g}")
        ax.plot(g.T0, g.k1_minus_k2, "--", label=f"k1-k2, cutoff={cutoff:g}")
    ax.set(xlabel="T0", ylabel="coefficient")


def plot_fig4(df, ax):
    for (cutoff, temp), g in df.groupby(["cutoff", "temperature"]):
        ax.plot(g.theta, g.F_2T0, label=f"cutoff={cutoff:g}, T={temp:g}")
    ax.set(xlabel="theta", ylabel="F(2T0)")


def plot_fig6(df, ax):
    for tp, g in df.groupby("theta_prime"):
        ax.plot(g.gamma, g.F_2T0, "o-", label=f"theta'={tp:.3f}")
    ax.set(xlabel="gamma", ylabel="F(2T0)")


PLOTTERS = {"fig1": plot_fig1, "fig2": plot_fig2, "fig3": plot_fig3, "fig4": plot_fig4, "fig6": plot_fig6}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("figures", nargs="*", help=" ".join(FIGURES))
    ap.add_argument("--cli", default="build/berrydeco")
    ap.add_argument("--out", default="figures", type=Path)
    args = ap.parse_args()
    unknown = set(args.figures) - set(FIGURES)
    if unknown:
        ap.error(f"unknown figure(s): {' '.join(sorted(unknown))}")
    args.out.mkdir(parents=True, exist_ok=True)
    for fig in args.figures or FIGURES:
        df = run(args.cli, fig, args.out)
        fig_, ax = plt.subplots(figsize=(6, 4))
        PLOTTERS[fig](df, ax)
        ax.legend(fontsize=7)
        fig_.tight_layout()
        fig_.savefig(args.out / f"{fig}.png", dpi=150)
        plt.close(fig_)
        print(f"wrote {args.out / fig}.png")


if __name__ == "__main__":
    main()

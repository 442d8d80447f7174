#!/usr/bin/env python3
"""Plot CSV output of afdm-sim (any experiment family, schema-detected)."""

import argparse
import collections
import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def load(path):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    return rows


def fnum(s):
    return float("inf") if s == "inf" else float(s)


def plot_cir(rows, out):
    eps = [fnum(r["eps"]) for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(eps, [fnum(r["cir_plain_db"]) for r in rows], "o-", label="plain")
    ax.plot(eps, [fnum(r["cir_mm_db"]) for r in rows], "s-", label="mirror mapped")
    ax.set_xlabel("residual CFO (subcarrier fractions)")
    ax.set_ylabel("carrier-to-interference ratio (dB)")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)


def series_key(r, xcol):
    parts = [r["experiment"], r["channel"]]
    if r["estimator"]:
        parts.append(r["estimator"])
    if r["scheme"]:
        parts.append(r["scheme"])
    if xcol != "cpp_len":
        parts.append("L=" + r["cpp_len"])
    if xcol != "snr_db":
        parts.append(r["snr_db"] + "dB")
    return " ".join(parts)


def plot_metric(rows, metric, xcol, ylabel, out, logy=True):
    groups = collections.defaultdict(list)
    for r in rows:
        if r["metric"] != metric:
            continue
        groups[series_key(r, xcol)].append((fnum(r[xcol]), fnum(r["value"])))
    if not groups:
        return False
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    for name in sorted(groups):
        pts = sorted(groups[name])
        ax.plot([p[0] for p in pts], [p[1] for p in pts], "o-", label=name)
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel("prefix length L" if xcol == "cpp_len" else "SNR (dB)")
    ax.set_ylabel(ylabel)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)
    return True


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csvs", nargs="+", help="CSV files written by afdm-sim")
    ap.add_argument("-o", "--outdir", default=".", help="output directory")
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)

    for path in args.csvs:
        rows = load(path)
        if not rows:
            continue
        stem = os.path.splitext(os.path.basename(path))[0]
        dest = lambda tag: os.path.join(args.outdir, f"{stem}_{tag}.png")

        if "cir_plain_db" in rows[0]:
            plot_cir(rows, dest("cir"))
            print(dest("cir"))
            continue

        # Sweeps over L hold SNR fixed per curve and vice versa.
        xcol = "cpp_len" if rows[0]["experiment"] == "mse-vs-l" else "snr_db"
        jobs = [
            ("mse_theta_norm", "timing MSE (normalized)", "theta"),
            ("mse_eps", "CFO MSE", "eps"),
            ("ber", "bit error rate", "ber"),
            ("resid_rms", "residual CFO rms", "resid"),
        ]
        for metric, label, tag in jobs:
            if plot_metric(rows, metric, xcol, label, dest(tag)):
                print(dest(tag))


if __name__ == "__main__":
    main()

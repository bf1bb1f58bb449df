"""Render the CSVs written by `gaussent figures` into PNG plots.

Usage: python scripts/plot_figures.py <figures-dir> [<png-dir>]
"""

import csv
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_columns(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return {key: [float(row[key]) for row in rows] for key in rows[0]}


def plot_figure(manifest, out_dir):
    with open(manifest, newline="") as fh:
        entries = list(csv.DictReader(fh))
    if not entries:
        return None
    figure = entries[0]["figure"]
    axis = entries[0]["axis"]
    y_key = "purity" if axis == "gamma_t" else "log_negativity"
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for entry in entries:
        data = read_columns(manifest.parent / entry["file"])
        label = f"r={float(entry['r']):g}, N={float(entry['N']):.3g}"
        ax.plot(data[axis], data[y_key], label=label)
    ax.set_xlabel("γt" if axis == "gamma_t" else "τ")
    ax.set_ylabel("purity" if y_key == "purity" else "E")
    ax.set_title(f"Figure {figure} ({entries[0]['model']} reservoir)")
    ax.legend(fontsize="small")
    fig.tight_layout()
    target = out_dir / f"fig{figure}.png"
    fig.savefig(target, dpi=150)
    plt.close(fig)
    return target


def main(argv):
    if len(argv) < 2:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    src = Path(argv[1])
    out_dir = Path(argv[2]) if len(argv) > 2 else src
    out_dir.mkdir(parents=True, exist_ok=True)
    for manifest in sorted(src.glob("fig*_manifest.csv")):
        target = plot_figure(manifest, out_dir)
        if target:
            print(target)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))

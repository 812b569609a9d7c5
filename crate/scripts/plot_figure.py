"""Scatter plot of a figure dataset emitted by `apotent figure`.

    apotent figure 6 -o fig6.csv
    python scripts/plot_figure.py fig6.csv fig6.png

Each (k, n, a) group gets its own colour; Bessel rows (n = 0) are drawn in black.
"""

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main(src, dst):
    df = pd.read_csv(src, dtype={"a_re": str, "a_im": str})
    df["root_re"] = df["root_re"].astype(float)
    df["root_im"] = df["root_im"].astype(float)
    fig, ax = plt.subplots(figsize=(6, 6))
    groups = list(df.groupby(["k", "n", "a_re", "a_im"], sort=False))
    cmap = plt.get_cmap("viridis", max(len(groups), 2))
    for i, ((k, n, _, _), g) in enumerate(groups):
        colour = "black" if n == 0 else cmap(i)
        ax.scatter(g["root_re"], g["root_im"], s=4, color=colour)
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    ax.set_aspect("equal", adjustable="datalim")
    fig.tight_layout()
    fig.savefig(dst, dpi=150)


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])

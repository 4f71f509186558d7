"""Cohomology dimension sweeps rendered as a CSV table and a bar chart."""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .cohomology import ce_cohomology, lieder_cohomology
from .core import LieDerPair, LieDerRepresentation


def dimension_table(pair: LieDerPair, rep: LieDerRepresentation, max_degree: int | None = None):
    """Rows (degree, pair-complex dims, CE dims) for degrees 0..max_degree."""
    if max_degree is None:
        max_degree = pair.dim + 1
    rows = []
    for n in range(max_degree + 1):
        ld = lieder_cohomology(pair, rep, n, representatives=False)
        ce = ce_cohomology(pair.algebra, rep, n, representatives=False)
        rows.append(
            {
                "degree": n,
                "lieder_cochains": ld.dim_cochains,
                "lieder_cocycles": ld.dim_cocycles,
                "lieder_coboundaries": ld.dim_coboundaries,
                "lieder_H": ld.dim_h,
                "ce_cochains": ce.dim_cochains,
                "ce_cocycles": ce.dim_cocycles,
                "ce_coboundaries": ce.dim_coboundaries,
                "ce_H": ce.dim_h,
            }
        )
    return rows


def write_csv(rows, path: str):
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)


def write_figure(rows, path: str, title: str = "cohomology dimensions"):
    degrees = [r["degree"] for r in rows]
    width = 0.38
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    ax.bar([d - width / 2 for d in degrees], [r["lieder_H"] for r in rows], width, label="pair complex")
    ax.bar([d + width / 2 for d in degrees], [r["ce_H"] for r in rows], width, label="Chevalley-Eilenberg")
    ax.set_xlabel("degree")
    ax.set_ylabel("dim H")
    ax.set_xticks(degrees)
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_report(
    pair: LieDerPair,
    rep: LieDerRepresentation,
    out_dir: str,
    max_degree: int | None = None,
    title: str = "cohomology dimensions",
):
    """Write cohomology.csv and cohomology.png into out_dir; returns paths and rows."""
    rows = dimension_table(pair, rep, max_degree)
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, "cohomology.csv")
    png_path = os.path.join(out_dir, "cohomology.png")
    write_csv(rows, csv_path)
    write_figure(rows, png_path, title)
    return {"csv": csv_path, "figure": png_path, "rows": rows}

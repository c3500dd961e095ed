"""Delimited output and scatter figures for enumerated point sets.

The CSV schema is fixed: s0,s1,t0,t1,H,d_num,d_den,ratio — coordinates,
height and exact distance (numerator/denominator), plus the
log H / -log d ratio with 6 decimals (empty when d >= 1).
"""

from __future__ import annotations

import csv
import math
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

CSV_FIELDS = ("s0", "s1", "t0", "t1", "H", "d_num", "d_den", "ratio")


def write_csv(rows, path):
    """Write point rows (s0, s1, t0, t1, H, d_num, d_den, ratio-or-None)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_FIELDS)
        for r in rows:
            s0, s1, t0, t1, h, dn, dd, ratio = r
            w.writerow(
                [s0, s1, t0, t1, h, dn, dd, "" if ratio is None else f"{ratio:.6f}"]
            )


def read_csv(path):
    """Parse rows written by write_csv back into the tuple shape."""
    out = []
    with open(path, newline="") as fh:
        rd = csv.reader(fh)
        header = next(rd)
        if tuple(header) != CSV_FIELDS:
            raise ValueError(f"unexpected header {header}")
        for row in rd:
            s0, s1, t0, t1, h, dn, dd = (int(x) for x in row[:7])
            ratio = float(row[7]) if row[7] else None
            out.append((s0, s1, t0, t1, h, dn, dd, ratio))
    return out


def render_figure(which, rows, path):
    """Save the scatter for figure 1 (chart window point cloud) or
    figure 2 (height vs ratio, log height axis) to an image file; the
    format follows the file extension (svg, png, ...)."""
    fig, ax = plt.subplots(figsize=(8, 8))
    if which == 1:
        xs, ys = [], []
        for s0, s1, t0, t1, *_rest in rows:
            if s0 == 0 or t0 == 0:
                continue
            xs.append(s1 / s0)
            ys.append(t1 / t0)
        ax.scatter(xs, ys, s=4, color="black")
        ax.set_xlabel("s1/s0")
        ax.set_ylabel("t1/t0")
        ax.set_xlim(-2, 4)
        ax.set_ylim(-2, 4)
    elif which == 2:
        hs, rs = [], []
        for *_coords, h, _dn, _dd, ratio in rows:
            if ratio is not None and h > 1:
                hs.append(h)
                rs.append(ratio)
        ax.scatter(hs, rs, s=6, color="black")
        ax.set_xscale("log")
        ax.set_xlabel("H")
        ax.set_ylabel("log H / -log d")
    else:
        raise ValueError("which must be 1 or 2")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def point_rows(points, x):
    """Build CSV rows for arbitrary surface points relative to the target x."""
    from .metrics import dp6_distance, dp6_height

    rows = []
    for y in points:
        h = dp6_height(y)
        d = Fraction(dp6_distance(y, x))
        ratio = None
        if 0 < d < 1 and h > 1:
            ratio = math.log(h) / -math.log(d)
        rows.append(y.quadruple + (h, d.numerator, d.denominator, ratio))
    rows.sort(key=lambda r: (r[4], r[:4]))
    return rows

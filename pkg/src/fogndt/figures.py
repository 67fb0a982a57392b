"""Reference-figure reproduction: sweep data, companion plot scripts,
and rendered images.

Two standard sweeps are built in. fig1 sweeps the cache fraction for
symmetric 2x2 and 3x3 networks at r = 3/2, p = 1/2, comparing offline
and online achievable curves. fig2 sweeps the fronthaul scaling at
mu = 0.4 for a 2x3 network under two churn levels. Each figure is
emitted as a CSV, a standalone script that replots the CSV, and a
pre-rendered PNG. The online lower-bound overlay columns appear only
when a library size is supplied; the achievable curves never need one.
"""

from __future__ import annotations

import csv
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .model import NetworkConfig
from .offline import offline_achievable
from .online import online_achievable, online_lower_bound

FIGURES = ("fig1", "fig2")

_FIG1_PAIRS = ((2, 2), (3, 3))
_FIG1_R = Fraction(3, 2)
_FIG1_P = Fraction(1, 2)
_FIG2_M, _FIG2_K = 2, 3
_FIG2_MU = Fraction(2, 5)
_FIG2_CHURNS = (Fraction(1, 2), Fraction(9, 10))


def _fmt(x: Fraction) -> str:
    return f"{float(x):.17g}"


def figure_rows(
    which: str, library_size: Optional[int] = None
) -> tuple[list[str], list[list[str]]]:
    """Header and formatted data rows for one figure's CSV."""
    if which == "fig1":
        return _fig1_rows(library_size)
    if which == "fig2":
        return _fig2_rows(library_size)
    raise ValueError(f"unknown figure {which!r}; expected one of {FIGURES}")


def _overlay(cfg: NetworkConfig, library_size: Optional[int]) -> list[str]:
    if library_size is None:
        return []
    return [
        str(library_size),
        _fmt(online_lower_bound(cfg, "prop3")),
        _fmt(online_lower_bound(cfg, "refined")),
    ]


_OVERLAY_COLUMNS = ["library_size", "online_lb_prop3", "online_lb_refined"]


def _fig1_rows(library_size: Optional[int]) -> tuple[list[str], list[list[str]]]:
    header = ["mu", "ens", "users", "r", "p", "offline_ach", "online_ach"]
    if library_size is not None:
        header += _OVERLAY_COLUMNS
    rows = []
    for ens, users in _FIG1_PAIRS:
        library = library_size if library_size is not None else users
        for i in range(101):
            mu = Fraction(i, 100)
            cfg = NetworkConfig(ens, users, library, mu, _FIG1_R, _FIG1_P)
            rows.append(
                [
                    _fmt(mu),
                    str(ens),
                    str(users),
                    _fmt(_FIG1_R),
                    _fmt(_FIG1_P),
                    _fmt(offline_achievable(cfg)),
                    _fmt(online_achievable(cfg)),
                ]
                + _overlay(cfg, library_size)
            )
    return header, rows


def _fig2_rows(library_size: Optional[int]) -> tuple[list[str], list[list[str]]]:
    header = ["r", "ens", "users", "mu", "p", "online_ach"]
    if library_size is not None:
        header += _OVERLAY_COLUMNS
    library = library_size if library_size is not None else _FIG2_K
    r_stop = min(_FIG2_M, _FIG2_K) - Fraction(1, 20)
    rows = []
    for p in _FIG2_CHURNS:
        r = Fraction(1, 10)
        while r <= r_stop:
            cfg = NetworkConfig(_FIG2_M, _FIG2_K, library, _FIG2_MU, r, p)
            rows.append(
                [
                    _fmt(r),
                    str(_FIG2_M),
                    str(_FIG2_K),
                    _fmt(_FIG2_MU),
                    _fmt(p),
                    _fmt(online_achievable(cfg)),
                ]
                + _overlay(cfg, library_size)
            )
            r += Fraction(1, 20)
    return header, rows


def write_figure_csv(
    which: str, out_dir: str | Path, library_size: Optional[int] = None
) -> Path:
    header, rows = figure_rows(which, library_size)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{which}.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


_FIG1_SCRIPT = '''\
"""Replot fig1.csv (cache-fraction sweep) from this directory."""

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = Path(__file__).resolve().parent
with open(here / "fig1.csv", newline="", encoding="utf-8") as fh:
    rows = list(csv.DictReader(fh))

curves = {}
for row in rows:
    size = f"{row['ens']}x{row['users']}"
    for column, label in [
        ("offline_ach", f"offline {size}"),
        ("online_ach", f"online {size}"),
        ("online_lb_prop3", f"lower bound (closed form) {size}"),
        ("online_lb_refined", f"lower bound (cut family) {size}"),
    ]:
        if column in row:
            curves.setdefault(label, []).append((float(row["mu"]), float(row[column])))

fig, ax = plt.subplots(figsize=(6.4, 4.8))
for label in sorted(curves):
    xs, ys = zip(*sorted(curves[label]))
    ax.plot(xs, ys, "--" if "lower bound" in label else "-", label=label)
ax.set_xlabel("cache fraction")
ax.set_ylabel("delivery time (NDT)")
ax.legend()
ax.grid(True, alpha=0.3)
fig.savefig(here / "fig1_replot.png", dpi=100)
'''

_FIG2_SCRIPT = '''\
"""Replot fig2.csv (fronthaul-scaling sweep) from this directory."""

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = Path(__file__).resolve().parent
with open(here / "fig2.csv", newline="", encoding="utf-8") as fh:
    rows = list(csv.DictReader(fh))

curves = {}
for row in rows:
    churn = f"{float(row['p']):g}"
    for column, label in [
        ("online_ach", f"online p={churn}"),
        ("online_lb_prop3", f"lower bound (closed form) p={churn}"),
        ("online_lb_refined", f"lower bound (cut family) p={churn}"),
    ]:
        if column in row:
            curves.setdefault(label, []).append((float(row["r"]), float(row[column])))

fig, ax = plt.subplots(figsize=(6.4, 4.8))
for label in sorted(curves):
    xs, ys = zip(*sorted(curves[label]))
    ax.plot(xs, ys, "--" if "lower bound" in label else "-", label=label)
ax.set_xlabel("fronthaul scaling r")
ax.set_ylabel("delivery time (NDT)")
ax.legend()
ax.grid(True, alpha=0.3)
fig.savefig(here / "fig2_replot.png", dpi=100)
'''

_SCRIPTS = {"fig1": _FIG1_SCRIPT, "fig2": _FIG2_SCRIPT}


def write_plot_script(which: str, out_dir: str | Path) -> Path:
    if which not in _SCRIPTS:
        raise ValueError(f"unknown figure {which!r}; expected one of {FIGURES}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{which}_plot.py"
    path.write_text(_SCRIPTS[which], encoding="utf-8")
    return path


def render_png(
    which: str, out_dir: str | Path, library_size: Optional[int] = None
) -> Path:
    """Render the figure directly, with reproducible bytes.

    The PNG metadata that normally embeds the plotting library version
    is stripped, so identical inputs give identical files.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    header, rows = figure_rows(which, library_size)
    data = [dict(zip(header, row)) for row in rows]
    curves: dict[str, list[tuple[float, float]]] = {}
    if which == "fig1":
        x_column, xlabel = "mu", "cache fraction"
        for row in data:
            size = f"{row['ens']}x{row['users']}"
            series = [("offline_ach", f"offline {size}"), ("online_ach", f"online {size}")]
            if library_size is not None:
                series += [
                    ("online_lb_prop3", f"lower bound (closed form) {size}"),
                    ("online_lb_refined", f"lower bound (cut family) {size}"),
                ]
            for column, label in series:
                curves.setdefault(label, []).append(
                    (float(row[x_column]), float(row[column]))
                )
    else:
        x_column, xlabel = "r", "fronthaul scaling r"
        for row in data:
            churn = f"{float(row['p']):g}"
            series = [("online_ach", f"online p={churn}")]
            if library_size is not None:
                series += [
                    ("online_lb_prop3", f"lower bound (closed form) p={churn}"),
                    ("online_lb_refined", f"lower bound (cut family) p={churn}"),
                ]
            for column, label in series:
                curves.setdefault(label, []).append(
                    (float(row[x_column]), float(row[column]))
                )
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for label in sorted(curves):
        xs, ys = zip(*sorted(curves[label]))
        ax.plot(xs, ys, "--" if "lower bound" in label else "-", label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("delivery time (NDT)")
    ax.legend()
    ax.grid(True, alpha=0.3)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{which}.png"
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)
    return path


def emit_figure(
    which: str, out_dir: str | Path, library_size: Optional[int] = None
) -> dict[str, Path]:
    """Write CSV, plot script, and PNG for one figure; returns the paths."""
    return {
        "csv": write_figure_csv(which, out_dir, library_size),
        "script": write_plot_script(which, out_dir),
        "png": render_png(which, out_dir, library_size),
    }

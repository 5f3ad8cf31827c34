"""The five figure renderers.

Everything is drawn from CSV columns; the only computed curves are plot
decorations (reference mixtures and coordinate transforms of a family's own
alpha column). Canvas sizes, fonts, colors, and axis ranges are fixed so a
rerun reproduces the image byte for byte on one platform.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .schema import FigureSpec, Table, load_inputs

__all__ = ["render"]

_DPI = 130

_CLOUD = "#a8c8e8"
_THERMAL = "#54278f"
_BOUNDARY = "#1f4ea6"
_GUIDE = "#888888"

plt.rcParams.update({
    "font.family": "DejaVu Sans",
    "font.size": 9,
    "axes.linewidth": 0.8,
    "figure.facecolor": "white",
    "savefig.facecolor": "white",
})


def _good(table: Table) -> np.ndarray:
    """Row mask keeping only rows that carry results."""
    mask = np.isfinite(table["C"])
    if "err" in table:
        mask &= np.array([e == "" for e in table["err"]])
    return mask


def _scatter_clouds(ax, x_name, y_name, sample, thermal):
    ok = _good(sample)
    ax.scatter(sample[x_name][ok], sample[y_name][ok], s=1.5, c=_CLOUD,
               linewidths=0, rasterized=False)
    if thermal is not None:
        ok = _good(thermal)
        ax.scatter(thermal[x_name][ok], thermal[y_name][ok], s=1.5,
                   c=_THERMAL, linewidths=0)


def _mems_csl_curve():
    """Maximum concurrence at given mixedness, in the (SL, C) plane."""
    c_hi = np.linspace(1.0, 2.0 / 3.0, 200)
    c_lo = np.linspace(2.0 / 3.0, 0.0, 200)
    sl = np.concatenate([8.0 * c_hi * (1.0 - c_hi) / 3.0,
                         8.0 / 9.0 - 2.0 * c_lo ** 2 / 3.0])
    return sl, np.concatenate([c_hi, c_lo])


def _plane_csl(tables, fig):
    sample, family = tables[0], tables[1]
    thermal = tables[2] if len(tables) > 2 else None
    ax = fig.add_subplot(111)
    _scatter_clouds(ax, "SL", "C", sample, thermal)
    sl, c = _mems_csl_curve()
    ax.plot(sl, c, color="black", lw=0.8)
    ax.plot(family["SL"], family["C"], color=_BOUNDARY, lw=1.4, ls="--")
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 0.35)
    ax.set_xlabel("$S_L$")
    ax.set_ylabel("$C$")


def _family_panels(axes, family):
    """One family's two panels: metrics on the left, weights on the right."""
    a = family["alpha"]
    positive = np.flatnonzero(family["C"] > 0.0)
    guides = []
    if positive.size:
        guides = [a[positive[0]], a[int(np.argmax(family["C"]))]]

    top, bottom = axes
    top.plot(a, family["C"], color="black", lw=1.2, label="$C$")
    top.plot(a, family["SL"], color="#c22b2b", lw=1.2, ls="--",
             label="$S_L$")
    top.set_ylim(0.0, 1.0)
    top.legend(loc="center right", frameon=False)

    bottom.fill_between(a, family["Rt"], 1.0, color=_CLOUD, alpha=0.6,
                        linewidth=0)
    bottom.plot(a, family["Rt1"], color="#8c510a", lw=1.0, ls=":",
                label=r"$\tilde R_1$")
    bottom.plot(a, family["Rt2"], color="#762a83", lw=1.0, ls="--",
                label=r"$\tilde R_2$")
    bottom.plot(a, family["Rt"], color=_BOUNDARY, lw=1.2,
                label=r"$\tilde R$")
    bottom.set_ylim(0.0, 1.0)
    bottom.set_xlabel(r"$\alpha$")
    bottom.legend(loc="center right", frameon=False)

    for ax in axes:
        ax.set_xlim(a[0], a[-1])
        for g in guides:
            ax.axvline(g, color=_GUIDE, lw=0.7, ls=":")


def _family_curves(tables, fig):
    axes = fig.subplots(2, 2, sharex="col")
    _family_panels((axes[0][0], axes[1][0]), tables[0])
    _family_panels((axes[0][1], axes[1][1]), tables[1])


def _grid_mesh(grid: Table):
    """Recover the row-major (Gamma1, Gamma2) mesh behind a grid table."""
    g1, g2 = grid["Gamma1"], grid["Gamma2"]
    inner = int(np.flatnonzero(g1 != g1[0])[0])
    outer = g1.size // inner
    c = grid["C"].copy()
    c[~_good(grid)] = np.nan
    return (g1.reshape(outer, inner)[:, 0], g2[:inner],
            c.reshape(outer, inner))


def _contours(tables, fig):
    axes = fig.subplots(1, 2, sharey=True)
    levels = np.linspace(0.0, 0.32, 17)
    mappable = None
    for ax, grid in zip(axes, tables):
        x, y, c = _grid_mesh(grid)
        filled = np.ma.masked_invalid(c).T
        mappable = ax.contourf(x, y, filled, levels=levels, cmap="gray")
        ax.contour(x, y, filled, levels=[1e-9], colors="white",
                   linewidths=1.2)
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel(r"$\Gamma_1$")
    axes[0].set_ylabel(r"$\Gamma_2$")
    fig.colorbar(mappable, ax=list(axes), label="$C$")


def _cdelta_references(ax):
    """Reference mixtures in the (delta, C) plane, drawn as thin guides."""
    c = np.linspace(0.0, 1.0, 400)
    ax.plot(c / 4.0, c, color="black", lw=0.8, ls=":")
    ax.plot((c / 2.0) ** 2, c, color="#c22b2b", lw=0.8, ls=":")
    ax.plot(c * (2.0 - c) / 4.0, c, color=_BOUNDARY, lw=0.8, ls=":")
    mems_c = np.linspace(1.0, 2.0 / 3.0, 200)
    d = np.concatenate([(mems_c / 2.0) ** 2, [1.0 / 9.0, 1.0 / 9.0]])
    ax.plot(d, np.concatenate([mems_c, [2.0 / 3.0, 0.0]]),
            color="black", lw=0.8)


def _family_n1(alpha: np.ndarray) -> np.ndarray:
    """Pumped-qubit population along the boundary family, as a coordinate
    transform of its alpha column."""
    return (2.0 + alpha ** 2) / (4.0 + alpha ** 2)


def _plane_cdelta(tables, fig):
    sample, family = tables[0], tables[1]
    thermal = tables[2] if len(tables) > 2 else None
    ax = fig.add_subplot(111)
    _scatter_clouds(ax, "delta", "C", sample, thermal)
    _cdelta_references(ax)
    ax.plot(family["delta"], family["C"], color=_BOUNDARY, lw=1.4, ls="--")
    ax.set_xlim(0.0, 0.26)
    ax.set_ylim(0.0, 1.0)
    ax.set_xlabel(r"$\delta$")
    ax.set_ylabel("$C$")

    if "n1" not in sample:
        return
    inset = fig.add_axes((0.56, 0.52, 0.32, 0.34))
    ok = _good(sample) & (sample["delta"] > 0.04)
    inset.scatter(sample["n1"][ok], sample["C"][ok], s=2.0, c=_BOUNDARY,
                  linewidths=0)
    if thermal is not None:
        ok = _good(thermal)
        inset.scatter(thermal["n1"][ok], thermal["C"][ok], s=1.5,
                      c=_THERMAL, linewidths=0)
    inset.plot(_family_n1(family["alpha"]), family["C"], color=_BOUNDARY,
               lw=1.0, ls="--")
    inset.set_xlim(0.0, 1.0)
    inset.set_ylim(0.0, 0.35)
    inset.set_xlabel(r"$\langle n_1\rangle$", labelpad=1)
    inset.set_ylabel("$C$", labelpad=1)
    inset.tick_params(length=2, pad=1)


def _dephasing(tables, fig):
    curves, maxima = tables[0], tables[1]
    axes = fig.subplots(1, 2)
    levels = np.unique(curves["gamma_d"])
    colors = plt.get_cmap("viridis")(np.linspace(0.0, 0.85, levels.size))
    for ax, name in zip(axes, ("C", "delta")):
        for level, color in zip(levels, colors):
            mask = (curves["gamma_d"] == level) & _good(curves)
            ax.plot(curves["Gamma"][mask], curves[name][mask],
                    color=color, lw=1.0)
        ax.set_xscale("log")
        ax.set_xlabel(r"$\Gamma$")
    order = np.argsort(maxima["gamma_d"])
    axes[0].plot(maxima["Gamma_at_Cmax"][order], maxima["Cmax"][order],
                 color="black", lw=0.9, ls="--")
    axes[1].plot(maxima["Gamma_at_deltamax"][order],
                 maxima["deltamax"][order], color="black", lw=0.9, ls="--")
    axes[0].set_ylim(0.0, 0.32)
    axes[0].set_ylabel("$C$")
    axes[1].set_ylim(0.0, 0.07)
    axes[1].set_ylabel(r"$\delta$")


_RENDERERS = {
    "plane_csl": (_plane_csl, (4.8, 3.6)),
    "family_curves": (_family_curves, (7.0, 5.2)),
    "contours": (_contours, (7.0, 3.2)),
    "plane_cdelta": (_plane_cdelta, (4.8, 3.6)),
    "dephasing": (_dephasing, (7.0, 3.2)),
}


def render(spec: FigureSpec) -> str:
    """Draw the figure and write it to the spec's output path."""
    tables = load_inputs(spec)
    draw, size = _RENDERERS[spec.figure]
    fig = plt.figure(figsize=size)
    try:
        draw(tables, fig)
        fig.savefig(spec.output, dpi=_DPI)
    finally:
        plt.close(fig)
    return spec.output

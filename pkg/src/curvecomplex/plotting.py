"""Matplotlib figures for the command-line reports.

Every function draws one figure and writes it to ``path``; the format is
taken from the file suffix.  The Agg backend is used so no display is needed.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bounds import historical_table, lower_bound, connectivity_upper  # noqa: E402
from .simplicial import sort_key  # noqa: E402

KIND_COLOURS = {"I": "tab:blue", "II": "tab:orange", "III": "tab:green"}


def _save(fig, path) -> None:
    fig.tight_layout()
    # drop the software tag so reruns produce the same file
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)


def _circle(n: int) -> list[tuple[float, float]]:
    return [(math.cos(2 * math.pi * k / max(n, 1)), math.sin(2 * math.pi * k / max(n, 1)))
            for k in range(n)]


def plot_curve_complex(K, ball, path, title: str = "") -> None:
    """1-skeleton of an enumerated curve complex on a circle, heavier classes outward."""
    verts = K.sorted_vertices()
    pos = {}
    for (x, y), v in zip(_circle(len(verts)), verts):
        r = 1.0 + 0.02 * getattr(v, "weight", 0)
        pos[v] = (r * x, r * y)
    fig, ax = plt.subplots(figsize=(6, 6))
    for e in K.simplices_of_dim(1):
        a, b = sorted(e, key=sort_key)
        ax.plot([pos[a][0], pos[b][0]], [pos[a][1], pos[b][1]], color="0.7", lw=0.5, zorder=1)
    if verts:
        sep = [ball.separating(v) for v in verts]
        ax.scatter([pos[v][0] for v in verts], [pos[v][1] for v in verts], s=14, zorder=2,
                   c=["tab:red" if s else "tab:blue" for s in sep])
    ax.set_aspect("equal")
    ax.set_axis_off()
    ax.set_title(title or f"curve complex: {len(verts)} classes (red: separating)")
    _save(fig, path)


def plot_ht_graph(G, path, title: str = "") -> None:
    """Cut systems on a circle, simple moves as chords, cells counted in the title."""
    pos = dict(zip(G.vertices, _circle(len(G.vertices))))
    fig, ax = plt.subplots(figsize=(6, 6))
    index = {v: k for k, v in enumerate(G.vertices)}
    for i, j in sorted(sorted((index[a], index[b])) for a, b in map(tuple, G.edges)):
        a, b = G.vertices[i], G.vertices[j]
        ax.plot([pos[a][0], pos[b][0]], [pos[a][1], pos[b][1]], color="0.6", lw=0.4, zorder=1)
    if G.vertices:
        ax.scatter([pos[v][0] for v in G.vertices], [pos[v][1] for v in G.vertices],
                   s=10, color="k", zorder=2)
    counts = {}
    for _, ct in G.cells:
        counts[ct.kind] = counts.get(ct.kind, 0) + 1
    summary = ", ".join(f"{k}: {counts[k]}" for k in sorted(counts))
    ax.set_aspect("equal")
    ax.set_axis_off()
    ax.set_title(title or f"{len(G.vertices)} cut systems, {len(G.edges)} moves"
                 + (f"\ncells {summary}" if summary else ""))
    _save(fig, path)


def plot_cell_report(counts: dict, path, title: str = "") -> None:
    """Grouped bars of enumerated against accepted cells per type."""
    kinds = [k for k in ("I", "II", "III") if k in counts]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    xs = range(len(kinds))
    ax.bar([x - 0.2 for x in xs], [counts[k]["cells"] for k in kinds], width=0.4,
           color="0.75", label="enumerated")
    ax.bar([x + 0.2 for x in xs], [counts[k]["accepted"] for k in kinds], width=0.4,
           color=[KIND_COLOURS[k] for k in kinds], label="certified")
    ax.set_xticks(list(xs))
    ax.set_xticklabels([f"type {k}" for k in kinds])
    ax.set_ylabel("cells")
    ax.legend(frameon=False)
    ax.set_title(title or "cell certificates")
    _save(fig, path)


def plot_reduction(report: dict, path, title: str = "") -> None:
    """Moves spent per stage, and the per-step counts of the two monotone stages."""
    stages = list(report.get("stages", {}))
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(9, 3.5))
    ax0.bar(range(len(stages)), [report["stages"][s]["moves"] for s in stages], color="tab:blue")
    ax0.set_xticks(range(len(stages)))
    ax0.set_xticklabels([s.replace("_", "\n") for s in stages], fontsize=7)
    ax0.set_ylabel("certificate moves")
    for name, colour in (("eliminate_separating", "tab:red"), ("make_edges_completable", "tab:green")):
        steps = report.get("stages", {}).get(name, {}).get("steps", [])
        if steps:
            ys = [steps[0]["before"]] + [s["after"] for s in steps]
            ax1.plot(range(len(ys)), ys, marker="o", color=colour, label=name.replace("_", " "))
    ax1.set_xlabel("step")
    ax1.set_ylabel("remaining")
    if ax1.lines:
        ax1.legend(frameon=False, fontsize=7)
    fig.suptitle(title or f"loop of length {report.get('length', 0)}")
    _save(fig, path)


def plot_bounds(g_max: int, c: int, path, title: str = "") -> None:
    """Lower bound, upper bounds and Harer's value against the genus."""
    gs = list(range(2, max(g_max, 2) + 1))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(gs, [lower_bound(g) for g in gs], marker="o", label="3g-3")
    for cc, lab in ((0, "6g-7"), (1, "6g-8"), (2, "6g-9")):
        ax.plot(gs, [connectivity_upper(g, cc) for g in gs], marker=".", label=lab)
    if c not in (0, 1, 2):
        ax.plot(gs, [connectivity_upper(g, c) for g in gs], ls="--", label=f"6g-7-{c}")
    ax.plot(gs, [r.value for g in gs for r in historical_table(g) if r.key == "harer"],
            marker="s", color="k", label="4g-5")
    ax.set_xlabel("genus")
    ax.set_ylabel("bound")
    ax.legend(frameon=False, fontsize=8)
    ax.set_title(title or "vcd bounds")
    _save(fig, path)

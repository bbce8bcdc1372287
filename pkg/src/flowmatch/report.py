"""CSV + figure output for ranking and pairwise match results."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .maxflow import BipartiteInstance, LevelResult  # noqa: E402
from .matchmaker import MatchReport  # noqa: E402

FIELDS = ("rank", "candidate", "outsim", "insim", "parsim", "typesim", "final")

WEIGHT_COLOURS = {10: "#1b7837", 7: "#7fbf7b", 3: "#f1a340", 0: "#bbbbbb"}


def _row(k: int, rep: MatchReport) -> dict:
    return {
        "rank": k,
        "candidate": rep.candidate,
        "outsim": int(rep.outsim),
        "insim": int(rep.insim),
        "parsim": int(rep.parsim),
        "typesim": rep.typesim,
        "final": rep.final_display,
    }


def write_csv(reports: Sequence[MatchReport], path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=FIELDS)
        w.writeheader()
        for k, rep in enumerate(reports, 1):
            w.writerow(_row(k, rep))


def plot_ranking(reports: Sequence[MatchReport], path: Path, title: str = "") -> None:
    n = len(reports)
    fig, ax = plt.subplots(figsize=(6.4, max(1.6, 0.35 * n + 1.0)))
    ids = [r.candidate for r in reports][::-1]
    finals = [float(r.final) for r in reports][::-1]
    colours = [WEIGHT_COLOURS.get(int(r.parsim), "#888888") for r in reports][::-1]
    ax.barh(range(n), finals, color=colours, edgecolor="black", linewidth=0.5)
    ax.set_yticks(range(n))
    ax.set_yticklabels(ids, fontsize=8)
    ax.set_xlim(0, 100)
    ax.set_xlabel("final score (%)")
    for y, v in enumerate(finals):
        ax.text(min(v + 1, 88), y, f"{v:.2f}", va="center", fontsize=7)
    if not n:
        ax.text(50, 0, "no candidates", ha="center", va="center")
    ax.set_title(title or "substitution candidates", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def draw_bipartite(ax, inst: BipartiteInstance, res: LevelResult, title: str) -> None:
    """Left column = requester parameters, right = candidate; witness edges drawn bold."""
    nl, nr = len(inst.left), len(inst.right)
    height = max(nl, nr, 1)
    ly = [height - 1 - k * (height - 1) / max(nl - 1, 1) if nl > 1 else (height - 1) / 2 for k in range(nl)]
    ry = [height - 1 - k * (height - 1) / max(nr - 1, 1) if nr > 1 else (height - 1) / 2 for k in range(nr)]
    chosen = set(res.matching)
    for i, j, w in inst.edges:
        bold = (i, j) in chosen
        ax.plot([0, 1], [ly[i], ry[j]], color=WEIGHT_COLOURS.get(w, "#4575b4"),
                lw=2.5 if bold else 0.8, ls="-" if bold else "--", zorder=1)
        ax.text(0.5 + 0.1 * (j - i) / height, (ly[i] + ry[j]) / 2, str(w), fontsize=7,
                ha="center", va="center", bbox=dict(boxstyle="round,pad=0.1", fc="white", lw=0))
    ax.scatter([0] * nl, ly, s=40, color="black", zorder=2)
    ax.scatter([1] * nr, ry, s=40, color="white", edgecolor="black", zorder=2)
    for k, name in enumerate(inst.left):
        ax.text(-0.05, ly[k], name, ha="right", va="center", fontsize=8)
    for k, name in enumerate(inst.right):
        ax.text(1.05, ry[k], name, ha="left", va="center", fontsize=8)
    ax.set_xlim(-0.6, 1.6)
    ax.set_ylim(-0.5, height - 0.5)
    ax.set_axis_off()
    ax.set_title(f"{title}: level {res.level}", fontsize=9)


def plot_match(panels: Sequence[tuple[str, BipartiteInstance, LevelResult]], path: Path, title: str = "") -> None:
    fig, axes = plt.subplots(2, 2, figsize=(8, 6))
    for ax, (name, inst, res) in zip(axes.flat, panels):
        draw_bipartite(ax, inst, res, name)
    for ax in list(axes.flat)[len(panels):]:
        ax.set_axis_off()
    if title:
        fig.suptitle(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_rank_report(reports: Sequence[MatchReport], outdir: str | Path, title: str = "") -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path, fig_path = outdir / "ranking.csv", outdir / "ranking.png"
    write_csv(reports, csv_path)
    plot_ranking(reports, fig_path, title)
    return [csv_path, fig_path]


def write_match_report(
    rep: MatchReport,
    panels: Sequence[tuple[str, BipartiteInstance, LevelResult]],
    outdir: str | Path,
) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path, fig_path = outdir / "match.csv", outdir / "match.png"
    write_csv([rep], csv_path)
    plot_match(panels, fig_path, f"{rep.requester} vs {rep.candidate}: {rep.final_display}%")
    return [csv_path, fig_path]

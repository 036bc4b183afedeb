"""Hasse diagram rendering to image files (matplotlib, Agg canvas)."""

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .structure import classify

CLASS_COLORS = {"dense": "#d62728", "regular": "#2ca02c", "ordinary": "#1f77b4", "top": "#7f7f7f"}


def layout(alg):
    """Positions by height; each level ordered by the mean x of lower covers."""
    levels = {}
    for x in alg.elements:
        levels.setdefault(alg.heights[x], []).append(x)
    pos = {}
    for h in sorted(levels):
        row = levels[h]
        if h > 0:
            row.sort(key=lambda x: (sum(pos[z][0] for z in alg.lower_covers(x)) / len(alg.lower_covers(x)), x))
        width = len(row)
        for i, x in enumerate(row):
            pos[x] = (i - (width - 1) / 2, h)
    return pos


def draw_hasse(alg, path, title=None, highlight=None, annotations=None, color_classes=True):
    """Write a Hasse diagram of ``alg`` to ``path`` and return the path.

    ``highlight`` is an iterable of elements drawn with a thick outline and
    ``annotations`` maps elements to extra text (variable names, images).
    """
    pos = layout(alg)
    highlight = set(highlight or ())
    annotations = annotations or {}
    cls = classify(alg)
    width = max(sum(1 for p in pos.values() if p[1] == h) for h in set(p[1] for p in pos.values()))
    fig = Figure(figsize=(max(3.0, 1.1 * width + 1), max(3.0, 0.9 * (alg.heights[alg.top] + 1) + 1)))
    FigureCanvasAgg(fig)
    ax = fig.add_subplot(1, 1, 1)
    for lo, hi in alg.covers:
        (x0, y0), (x1, y1) = pos[lo], pos[hi]
        ax.plot([x0, x1], [y0, y1], color="black", linewidth=1, zorder=1)
    for x in alg.elements:
        if x == alg.top:
            color = CLASS_COLORS["top"]
        elif color_classes and cls.dense[x]:
            color = CLASS_COLORS["dense"]
        elif color_classes and cls.regular[x]:
            color = CLASS_COLORS["regular"]
        else:
            color = CLASS_COLORS["ordinary"]
        edge = "gold" if x in highlight else "black"
        lw = 3 if x in highlight else 1
        ax.scatter([pos[x][0]], [pos[x][1]], s=160, c=color, edgecolors=edge, linewidths=lw, zorder=2)
        text = alg.labels[x]
        if x in annotations:
            text += f" [{annotations[x]}]"
        ax.annotate(text, pos[x], xytext=(8, -3), textcoords="offset points", fontsize=8)
    ax.set_axis_off()
    ax.margins(0.25)
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    return path

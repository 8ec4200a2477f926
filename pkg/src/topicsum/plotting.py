"""Figure rendering for parameter sweeps.

Draws one metric-vs-parameter curve per evaluation metric and writes
them as PNG files next to the delimited sweep output.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

_PARAM_LABELS = {
    "lambda": "query balance",
    "mu": "damping factor",
    "nu": "coverage balance",
}
_METRICS = (
    ("rouge2", "ROUGE-2"),
    ("rouge_su4", "ROUGE-SU4"),
    ("diversity", "Lexical diversity"),
)


def render_metric_curves(points, param: str, out_dir, stem: str) -> list[Path]:
    """Write one PNG per metric; returns the created paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    xs = [p.value for p in points]
    xlabel = _PARAM_LABELS.get(param, param)
    paths: list[Path] = []
    for attr, label in _METRICS:
        ys = [getattr(p, attr) for p in points]
        fig, ax = plt.subplots(figsize=(5.0, 3.4))
        ax.plot(xs, ys, marker="o", linewidth=1.5)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(label)
        ax.set_title(f"{label} vs {xlabel}")
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        path = out / f"{stem}_{attr}.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        paths.append(path)
    return paths

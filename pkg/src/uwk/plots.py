"""Figures of the extension graph around a tame parameter."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .extgraph import region_points  # noqa: E402
from .types import admissible_symmetric, jh_of_word  # noqa: E402
from .weights import TameParam, predicted_weights_by_omega  # noqa: E402


def _xy(om: tuple[int, ...]) -> tuple[int, int]:
    return (om[0], 0) if len(om) == 1 else (om[0], om[1])


def plot_extension_graph(param: TameParam, path, title: str | None = None) -> Path:
    """Region points of the parameter with the predicted weights marked.

    For f > 2 the first two graph coordinates are shown.
    """
    path = Path(path)
    pts = region_points(param.mu, param.p)
    predicted = predicted_weights_by_omega(param)
    shown = {om: param.s.act_on_graph(om) for om in predicted}
    fig, ax = plt.subplots(figsize=(5, 4 if param.f > 1 else 2))
    xs, ys = zip(*(_xy(om) for om in pts))
    ax.scatter(xs, ys, s=12, c="0.75", label="region")
    for om, x in sorted(shown.items()):
        px, py = _xy(x)
        ax.scatter([px], [py], s=60, c="C3", zorder=3)
        ax.annotate(predicted[om].label(), (px, py), textcoords="offset points", xytext=(4, 6), fontsize=7)
    ax.set_xlabel("omega_0")
    ax.set_ylabel("omega_1" if param.f > 1 else "")
    if param.f == 1:
        ax.set_yticks([])
    ax.set_title(title or f"p={param.p} f={param.f} s={param.s.to_string()} mu={param.mu}", fontsize=9)
    ax.grid(True, lw=0.3)
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_jh_incidence(param: TameParam, path) -> Path:
    """Incidence matrix of predicted weights against the symmetric words."""
    path = Path(path)
    weights = sorted(predicted_weights_by_omega(param).values(), key=lambda w: w.sort_key())
    words = admissible_symmetric(param.f)
    grid = [[int(w in set(jh_of_word(param, word))) for word in words] for w in weights]
    fig, ax = plt.subplots(figsize=(1 + 0.6 * len(words), 1 + 0.35 * len(weights)))
    ax.imshow(grid, cmap="Greys", vmin=0, vmax=1, aspect="auto")
    ax.set_xticks(range(len(words)), [",".join(x.lower() for x in w.letters[: param.f]) for w in words],
                  rotation=60, fontsize=7)
    ax.set_yticks(range(len(weights)), [w.label() for w in weights], fontsize=7)
    ax.set_title("JH incidence", fontsize=9)
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path

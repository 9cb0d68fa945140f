import matplotlib

matplotlib.use("Agg")

import io
import logging
from collections import defaultdict

import matplotlib.patches as patches
import matplotlib.pyplot as plt
import numpy as np

from .models import ARQuiver, ConvergenceReport, GroupParams
from .quiver import build_quiver

logger = logging.getLogger(__name__)


class FigureRenderer:
    """Renders convergence plots and AR quivers as PNG bytes."""

    def __init__(self, max_window: int = 12):
        self.colors = {
            "special": "#DC143C",  # crimson
            "canonical": "#4682B4",  # steel blue
            "plain": "#2F4F4F",  # dark slate
            "x": "#FFA500",
            "y": "#6495ED",
        }
        # lattice window drawn for the quiver; larger groups are cropped
        self.max_window = max_window

    def render_convergence(self, report: ConvergenceReport) -> bytes:
        """Plot a_e/q^2 and b_e/q^2 against e with their limits as horizontal lines."""
        try:
            g = report.group
            logger.info(f"Rendering convergence plot for {g.describe()}, p = {report.p}")

            fig, ax = plt.subplots(1, 1, figsize=(7, 5))
            levels = [level.e for level in report.splitting]
            ax.plot(
                levels,
                [float(level.ratio) for level in report.splitting],
                marker="o",
                color=self.colors["plain"],
                label="a_e / q^2",
            )
            ax.axhline(float(report.limit), color=self.colors["plain"], linestyle="--", linewidth=1)
            self._plot_schedules(ax, report)

            ax.set_xlabel("e")
            ax.set_ylabel("ratio")
            ax.set_title(f"{g.describe()}, p = {report.p}")
            ax.set_xticks(levels)
            ax.legend(loc="best", fontsize="small")

            return self._png_bytes(fig)

        except Exception as e:
            logger.error(f"Error rendering convergence plot: {e}")
            raise

    def render_quiver(self, g: GroupParams) -> bytes:
        """Draw the AR quiver on the (x, y) exponent lattice.

        Lattice point (i, j) carries the label i + ja mod n; x-arrows point right,
        y-arrows point up. Special vertices are red, ω_R is boxed.
        """
        try:
            quiver = build_quiver(g)
            window = min(g.n, self.max_window)
            logger.info(f"Rendering AR quiver of {g.describe()} on a {window}x{window} window")

            fig, ax = plt.subplots(1, 1, figsize=(6, 6))
            ax.set_xlim(-0.6, window - 0.4)
            ax.set_ylim(-0.6, window - 0.4)
            ax.set_aspect("equal")
            ax.axis("off")

            self._draw_lattice_arrows(ax, window)
            self._draw_vertices(ax, quiver, window)

            ax.set_title(f"AR quiver of {g.describe()}")
            return self._png_bytes(fig)

        except Exception as e:
            logger.error(f"Error rendering AR quiver: {e}")
            raise

    def _plot_schedules(self, ax, report: ConvergenceReport):
        by_label = defaultdict(list)
        for row in report.schedules:
            by_label[row.label].append(row)
        palette = plt.cm.viridis(np.linspace(0.1, 0.9, max(len(by_label), 1)))
        for color, (label, rows) in zip(palette, sorted(by_label.items())):
            rows.sort(key=lambda row: row.e)
            name = "R" if label == 0 else f"M_{label}"
            ax.plot(
                [row.e for row in rows],
                [float(row.ratio) for row in rows],
                marker="s",
                color=color,
                label=f"b_e({name}) / q^2",
            )
            ax.axhline(float(rows[0].formula_value), color=color, linestyle=":", linewidth=1)

    def _draw_lattice_arrows(self, ax, window: int):
        arrow_style = dict(arrowstyle="->", linewidth=0.8, shrinkA=9, shrinkB=9)
        for i in range(window):
            for j in range(window):
                if i + 1 < window:
                    ax.annotate(
                        "", xy=(i + 1, j), xytext=(i, j),
                        arrowprops=dict(color=self.colors["x"], **arrow_style),
                    )
                if j + 1 < window:
                    ax.annotate(
                        "", xy=(i, j + 1), xytext=(i, j),
                        arrowprops=dict(color=self.colors["y"], **arrow_style),
                    )

    def _draw_vertices(self, ax, quiver: ARQuiver, window: int):
        g = quiver.group
        vertices = {vertex.label: vertex for vertex in quiver.vertices}
        for i in range(window):
            for j in range(window):
                vertex = vertices[(i + j * g.a) % g.n]
                color = self.colors["special"] if vertex.special else self.colors["plain"]
                if vertex.canonical:
                    ax.add_patch(
                        patches.Rectangle(
                            (i - 0.3, j - 0.3), 0.6, 0.6,
                            fill=False, edgecolor=self.colors["canonical"], linewidth=1.5,
                        )
                    )
                ax.text(
                    i, j, str(vertex.label),
                    ha="center", va="center", fontsize=9, color=color,
                    fontweight="bold" if vertex.special else "normal",
                )

    def _png_bytes(self, fig) -> bytes:
        buffer = io.BytesIO()
        fig.savefig(buffer, format="png", bbox_inches="tight", dpi=150)
        plt.close(fig)
        return buffer.getvalue()

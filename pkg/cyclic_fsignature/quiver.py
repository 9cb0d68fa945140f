"""Auslander-Reiten quiver of 1/n(1,a), AR translation and AR sequences."""

import logging
from typing import List

from .errors import LabelError, UnknownFormatError
from .models import ARQuiver, ARSequence, GroupParams, QuiverArrow, QuiverVertex
from .series import series_for, special_labels

logger = logging.getLogger(__name__)

EXPORT_FORMATS = ("dot", "json")


def _check_label(t: int, g: GroupParams):
    if not 0 <= t < g.n:
        raise LabelError(f"label {t} must lie in [0, {g.n - 1}]")


def tau(t: int, g: GroupParams) -> int:
    """AR translation τ(M_t) = M_{t-a-1}."""
    _check_label(t, g)
    return (t - g.a - 1) % g.n


def canonical_label(g: GroupParams) -> int:
    """ω_R = τ(R) = M_{-a-1}."""
    return (-g.a - 1) % g.n


def ar_sequence(t: int, g: GroupParams) -> ARSequence:
    """0 → M_{t-a-1} → M_{t-1} ⊕ M_{t-a} → M_t → 0, or the fundamental sequence at t = 0."""
    _check_label(t, g)
    return ARSequence(
        end=t,
        middle=((t - 1) % g.n, (t - g.a) % g.n),
        tau=tau(t, g),
        kind="fundamental" if t == 0 else "ar",
    )


def build_quiver(g: GroupParams) -> ARQuiver:
    """Vertices 0..n-1; for each t an x-arrow from t-1 and a y-arrow from t-a.

    Parallel x- and y-arrows (a = 1 or a = n-1) stay two distinct arrows.
    """
    specials = set(special_labels(series_for(g)))
    omega = canonical_label(g)
    vertices = [
        QuiverVertex(label=t, special=t in specials, canonical=t == omega)
        for t in range(g.n)
    ]
    arrows: List[QuiverArrow] = []
    for t in range(g.n):
        arrows.append(QuiverArrow(source=(t - 1) % g.n, target=t, label="x"))
        arrows.append(QuiverArrow(source=(t - g.a) % g.n, target=t, label="y"))
    arrows.sort(key=lambda arrow: (arrow.source, arrow.target, arrow.label))
    return ARQuiver(group=g, vertices=vertices, arrows=arrows)


def _to_dot(quiver: ARQuiver) -> str:
    flag = {True: "true", False: "false"}
    lines = [f'digraph "{quiver.group.describe()}" {{']
    for vertex in quiver.vertices:
        lines.append(
            f"  {vertex.label} [special={flag[vertex.special]}, "
            f"canonical={flag[vertex.canonical]}];"
        )
    for arrow in quiver.arrows:
        lines.append(f'  {arrow.source} -> {arrow.target} [label="{arrow.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_quiver(g: GroupParams, fmt: str) -> str:
    """Render the AR quiver as DOT or JSON; output is byte-stable."""
    if fmt not in EXPORT_FORMATS:
        raise UnknownFormatError(
            f"unknown quiver format {fmt!r}; choose from {', '.join(EXPORT_FORMATS)}"
        )
    quiver = build_quiver(g)
    logger.info(
        f"Exporting AR quiver of {g.describe()}: {len(quiver.vertices)} vertices, "
        f"{len(quiver.arrows)} arrows"
    )
    if fmt == "dot":
        return _to_dot(quiver)
    return quiver.model_dump_json(indent=2) + "\n"

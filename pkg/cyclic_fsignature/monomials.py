"""MCM modules M_t = span{x^i y^j : i + ja ≡ t (mod n)} and their monomial homs."""

import logging
from typing import List

from .catalog import catalog
from .errors import HomWeightError, InvariantViolation, LabelError
from .models import Exponent, GroupParams, InducedMatrix, MonomialModule

logger = logging.getLogger(__name__)


def weight(exponent: Exponent, g: GroupParams) -> int:
    i, j = exponent
    return (i + j * g.a) % g.n


def format_monomial(exponent: Exponent) -> str:
    """Render (i, j) as x^i y^j, e.g. "x^2y", "y^5", "1"."""
    parts = []
    for var, power in zip("xy", exponent):
        if power == 1:
            parts.append(var)
        elif power > 1:
            parts.append(f"{var}^{power}")
    return "".join(parts) or "1"


def _check_label(label: int, g: GroupParams):
    if not 0 <= label < g.n:
        raise LabelError(f"label {label} must lie in [0, {g.n - 1}]")


def _box_generators(label: int, g: GroupParams) -> MonomialModule:
    # Inside the box [0,n)^2 each column j holds one monomial of weight label;
    # the minimal ones form a staircase with i strictly decreasing in j.
    mingens: List[Exponent] = []
    lowest_i = g.n
    for j in range(g.n):
        i = (label - j * g.a) % g.n
        if i < lowest_i:
            mingens.append((i, j))
            lowest_i = i
        if lowest_i == 0:
            break

    # x^n and y^n lie in R, so the staircase must close on the y-axis in the box
    if lowest_i != 0 or any(i >= g.n or j >= g.n for i, j in mingens):
        logger.error(f"generator search for M_{label} left the box for {g.describe()}")
        raise InvariantViolation(f"M_{label} has a generator outside [0,{g.n})^2")
    return MonomialModule(label=label, mingens=mingens)


def minimal_generators(label: int, g: GroupParams) -> MonomialModule:
    """Minimal monomial generators of M_label, ordered by increasing y-degree."""
    _check_label(label, g)
    return catalog.get_or_compute(
        (g.n, g.a, "mingens", label), lambda: _box_generators(label, g)
    )


def num_generators(label: int, g: GroupParams) -> int:
    return minimal_generators(label, g).mu


def hom_monomials(source: int, target: int, g: GroupParams) -> MonomialModule:
    """Hom(M_source, M_target) ≅ M_{target-source} acting by multiplication."""
    _check_label(source, g)
    _check_label(target, g)
    return minimal_generators((target - source) % g.n, g)


def induced_matrix(
    f: Exponent, source: int, target: int, g: GroupParams
) -> InducedMatrix:
    """Reduce multiplication by f modulo m·M_target.

    Entry (i, j) is 1 when f times source generator j is exactly target
    generator i; every other product lands in m·M_target.
    """
    _check_label(source, g)
    _check_label(target, g)
    if weight(f, g) != (target - source) % g.n:
        raise HomWeightError(
            f"{format_monomial(f)} has weight {weight(f, g)}, "
            f"Hom(M_{source}, M_{target}) needs {(target - source) % g.n}"
        )

    source_gens = minimal_generators(source, g).mingens
    target_gens = minimal_generators(target, g).mingens
    position = {gen: row for row, gen in enumerate(target_gens)}
    rows = [[0] * len(source_gens) for _ in target_gens]
    for col, (i, j) in enumerate(source_gens):
        row = position.get((i + f[0], j + f[1]))
        if row is not None:
            rows[row][col] = 1
    return InducedMatrix(hom=f, source=source, target=target, rows=rows)

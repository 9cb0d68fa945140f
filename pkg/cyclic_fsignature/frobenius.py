"""Frobenius pushforward decompositions ^eM_t ≅ ⊕ M_s^{c_s}.

Writing a monomial of M_t as x^{qα+u} y^{qβ+v} with u, v in [0, q), the
residue class (u, v) spans a copy of M_s where u + va ≡ t - qs (mod n).
Counting residue pairs per class gives every multiplicity at once.
"""

import logging
from fractions import Fraction
from typing import List

import numpy as np

from .catalog import catalog
from .errors import InvariantViolation, LabelError
from .group import mod_inverse
from .models import CharacteristicParams, DecompositionVector, GroupParams
from .quiver import tau

logger = logging.getLogger(__name__)

EXACT_INT64_LIMIT = 2**62


def residue_counts(g: GroupParams, q: int) -> np.ndarray:
    """N[r] = #{(u, v) in [0,q)^2 : u + va ≡ r (mod n)}.

    Rows v repeat with period n, so only the q mod n leftover rows need
    to be visited; each row contributes floor/ceil(q/n) u-solutions per class.
    Counts switch to Python ints once q^2 leaves the int64 range.
    """
    n = g.n
    dtype = np.int64 if q * q < EXACT_INT64_LIMIT else object
    full, rest = divmod(q, n)
    per_class_u = (np.arange(n) < rest).astype(dtype) + full

    leftover_rows = np.bincount((np.arange(rest) * g.a) % n, minlength=n)
    row_offsets = leftover_rows.astype(dtype) + full

    shift = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return per_class_u[shift] @ row_offsets


def _check_counts(counts: List[int], t: int, g: GroupParams, q: int):
    if sum(counts) != q * q:
        logger.error(f"^eM_{t} over {g.describe()} has {sum(counts)} summands, q^2 = {q * q}")
        raise InvariantViolation(f"multiplicities of ^eM_{t} do not add up to q^2 = {q * q}")
    for s, c in enumerate(counts):
        # |c_s - q^2/n| <= q, cleared of denominators
        if abs(c * g.n - q * q) > q * g.n:
            logger.error(f"c_{s} = {c} of ^eM_{t} drifts from q^2/n by more than q = {q}")
            raise InvariantViolation(f"c_{s} = {c} violates |c_s - q^2/n| <= q")


def _closed_form(t: int, g: GroupParams, ch: CharacteristicParams) -> DecompositionVector:
    q = ch.q
    by_residue = residue_counts(g, q)
    counts = [int(by_residue[(t - q * s) % g.n]) for s in range(g.n)]
    _check_counts(counts, t, g, q)
    logger.debug(f"^{ch.e}M_{t} over {g.describe()}, p = {ch.p}: {counts}")
    return DecompositionVector(group=g, source_label=t, char=ch, counts=counts)


def decompose(t: int, g: GroupParams, ch: CharacteristicParams) -> DecompositionVector:
    """Multiplicities c_s of M_s in ^eM_t for s = 0..n-1."""
    if not 0 <= t < g.n:
        raise LabelError(f"label {t} must lie in [0, {g.n - 1}]")
    # q must be a unit mod n for the class-to-label map to be a bijection
    mod_inverse(ch.q % g.n, g.n)
    return catalog.get_or_compute(
        (g.n, g.a, "decompose", t, ch.p, ch.e), lambda: _closed_form(t, g, ch)
    )


def decompose_all(g: GroupParams, ch: CharacteristicParams) -> List[DecompositionVector]:
    return [decompose(t, g, ch) for t in range(g.n)]


def f_splitting_number(g: GroupParams, ch: CharacteristicParams) -> int:
    """a_e: the number of free summands of ^eR."""
    return decompose(0, g, ch).counts[0]


def frobenius_ratios(dec: DecompositionVector) -> List[Fraction]:
    q2 = dec.char.q**2
    return [Fraction(c, q2) for c in dec.counts]


def generalized_fsignature(t: int, s: int, g: GroupParams) -> Fraction:
    """s(M_t, M_s) = rank M_t · rank M_s / |G|; every rank is 1 here."""
    for label in (t, s):
        if not 0 <= label < g.n:
            raise LabelError(f"label {label} must lie in [0, {g.n - 1}]")
    return Fraction(1 * 1, g.n)


def tau_stability_check(t: int, g: GroupParams, ch: CharacteristicParams) -> int:
    """Largest |c^t_s - c^{τ(t)}_s|; ^eM_t and ^eτ(M_t) agree up to 2q."""
    own = decompose(t, g, ch).counts
    translated = decompose(tau(t, g), g, ch).counts
    gap = max(abs(x - y) for x, y in zip(own, translated))
    if gap > 2 * ch.q:
        logger.error(f"^eM_{t} and ^eτ(M_{t}) differ by {gap} > 2q over {g.describe()}")
        raise InvariantViolation(f"τ-stability gap {gap} exceeds 2q = {2 * ch.q}")
    return gap

"""Hirzebruch-Jung continued fractions, the i/j-series and the sets F_t, G_t.

The i-series labels the special CM modules M_{i_t}; the pair (i_t, j_t)
gives the exponents of their minimal generators x^{i_t}, y^{j_t}.
"""

import logging
from fractions import Fraction
from typing import List, Sequence

from .errors import InvariantViolation, LabelError
from .models import DigitVector, FGSets, GroupParams, HJExpansion, SeriesData

logger = logging.getLogger(__name__)


def hj_expand(g: GroupParams) -> HJExpansion:
    """Expand n/a = α_1 - 1/(α_2 - 1/(...)) with every α_t >= 2."""
    num, den = g.n, g.a
    alphas: List[int] = []
    while den:
        alpha = -(-num // den)
        alphas.append(alpha)
        num, den = den, alpha * den - num
    return HJExpansion(alphas=alphas)


def hj_evaluate(alphas: Sequence[int]) -> Fraction:
    """Evaluate [α_1, ..., α_r] exactly."""
    if not alphas:
        raise LabelError("cannot evaluate an empty continued fraction")
    value = Fraction(alphas[-1])
    for alpha in reversed(alphas[:-1]):
        value = alpha - 1 / value
    return value


def compute_series(exp: HJExpansion, g: GroupParams) -> SeriesData:
    """Build i_0..i_{r+1} and j_0..j_{r+1} from the three-term recursion."""
    i_series = [g.n, g.a]
    j_series = [0, 1]
    for alpha in exp.alphas:
        i_series.append(alpha * i_series[-1] - i_series[-2])
        j_series.append(alpha * j_series[-1] - j_series[-2])

    if i_series[-1] != 0 or j_series[-1] != g.n:
        raise InvariantViolation(
            f"series for {g.describe()} end at i = {i_series[-1]}, j = {j_series[-1]}"
        )
    return SeriesData(i_series=i_series, j_series=j_series)


def series_for(g: GroupParams) -> SeriesData:
    return compute_series(hj_expand(g), g)


def special_labels(s: SeriesData) -> List[int]:
    """Labels i_t mod n (t = 0..r) of the special CM modules; 0 stands for R."""
    n = s.i_series[0]
    return [i % n for i in s.i_series[: s.r + 1]]


def digit_expansion(beta: int, s: SeriesData) -> DigitVector:
    """Greedy remainder chain β = d_1 i_1 + h_1, h_t = d_{t+1} i_{t+1} + h_{t+1}."""
    n = s.i_series[0]
    if not 0 <= beta <= n - 1:
        raise LabelError(f"β = {beta} must lie in [0, {n - 1}]")

    digits, remainders = [], []
    rest = beta
    for i_t in s.i_series[1 : s.r + 1]:
        digit, rest = divmod(rest, i_t)
        digits.append(digit)
        remainders.append(rest)
    return DigitVector(beta=beta, digits=digits, remainders=remainders)


def tilde(beta: int, s: SeriesData, g: GroupParams) -> int:
    """The unique β~ in [0, n) with a·β~ ≡ β, read off the j-series."""
    expansion = digit_expansion(beta, s)
    value = sum(d * j for d, j in zip(expansion.digits, s.j_series[1 : s.r + 1]))
    if not 0 <= value < g.n or (g.a * value - beta) % g.n:
        logger.error(f"tilde({beta}) = {value} breaks a·β~ ≡ β for {g.describe()}")
        raise InvariantViolation(f"tilde({beta}) = {value} is not a·β~ ≡ β (mod {g.n})")
    return value


def fg_sets(t: int, s: SeriesData, g: GroupParams) -> FGSets:
    """F_t = {0..i_t-1} (x-direction) and G_t = {i_t - m a : m = 1..j_t} (y-direction)."""
    if not 1 <= t <= s.r:
        raise LabelError(f"series index t = {t} must lie in [1, {s.r}]")
    i_t, j_t = s.i_series[t], s.j_series[t]
    f_labels = list(range(i_t))
    g_labels = [(i_t - m * g.a) % g.n for m in range(1, j_t + 1)]
    return FGSets(index=t, f_labels=f_labels, g_labels=g_labels)

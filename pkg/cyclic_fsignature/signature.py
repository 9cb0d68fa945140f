"""Dual F-signature of the special CM modules and the surjection schedule behind it.

For a special index t the target M_{i_t} is generated by x^{i_t} and y^{j_t}.
A copy of M_f with f in F_t covers x^{i_t} via x^{i_t-f}; a copy of M_g with
g in G_t covers y^{j_t} via y^m where g = i_t - ma. One of each surjects onto
M_{i_t}; copies of R can stand in on either side.
"""

import logging
from fractions import Fraction
from typing import List, Tuple

from .config import DEFAULT_SEED, DEFAULT_TRIALS
from .errors import LabelError, NonSpecialModuleError
from .frobenius import decompose
from .group import is_gorenstein, mod_inverse, validate_characteristic
from .models import (
    CharacteristicParams,
    Coverer,
    DecompositionVector,
    FiniteLevel,
    GroupParams,
    SeriesData,
    SignatureReport,
    SurjectionCertificate,
    TauComparison,
    Witness,
)
from .oracle import estimate_b_e
from .quiver import tau
from .series import fg_sets, series_for

logger = logging.getLogger(__name__)


def _special_index(t: int, s: SeriesData):
    if not 0 <= t <= s.r:
        raise NonSpecialModuleError(
            f"series index t = {t} does not name a special module; choose 0..{s.r}"
        )


def special_label(t: int, g: GroupParams) -> int:
    """Label i_t mod n of the t-th special module (0 is R)."""
    s = series_for(g)
    _special_index(t, s)
    return s.i_series[t] % g.n


def label_index(label: int, g: GroupParams) -> int:
    """Series index of a special label; non-special labels are rejected."""
    s = series_for(g)
    for t in range(s.r + 1):
        if s.i_series[t] % g.n == label:
            return t
    raise NonSpecialModuleError(f"M_{label} is not a special CM module of {g.describe()}")


def dual_fsig_special(t: int, g: GroupParams) -> Fraction:
    """s(M_{i_t}): (min(i_t, j_t)+1)/n, or (2i_t+1)/(2n) when i_t = j_t; s(R) = 1/n."""
    s = series_for(g)
    _special_index(t, s)
    if t == 0:
        return Fraction(1, g.n)
    i_t, j_t = s.i_series[t], s.j_series[t]
    if i_t == j_t:
        return Fraction(2 * i_t + 1, 2 * g.n)
    return Fraction(min(i_t, j_t) + 1, g.n)


def _side_totals(dec: DecompositionVector, t: int, s: SeriesData) -> Tuple[int, int]:
    sets = fg_sets(t, s, dec.group)
    x_side = sum(dec.counts[f] for f in sets.f_labels if f)
    y_side = sum(dec.counts[label] for label in sets.g_labels if label)
    return x_side, y_side


def _check_feed(dec: DecompositionVector, t: int, s: SeriesData) -> int:
    _special_index(t, s)
    target = s.i_series[t] % dec.group.n
    if dec.source_label != target:
        raise LabelError(
            f"decomposition of ^eM_{dec.source_label} cannot feed the target M_{target}"
        )
    return target


def surjection_count(dec: DecompositionVector, t: int) -> int:
    """b = c_{i_t} + min(floor((X+Y+c_0)/2), X+c_0, Y+c_0); c_0 when t = 0."""
    s = series_for(dec.group)
    target = _check_feed(dec, t, s)
    if t == 0:
        return dec.counts[0]
    x_side, y_side = _side_totals(dec, t, s)
    free = dec.counts[0]
    # best split of the free copies between the two sides
    pairs = min((x_side + y_side + free) // 2, x_side + free, y_side + free)
    return dec.counts[target] + pairs


def schedule_surjections(
    dec: DecompositionVector, t: int
) -> Tuple[int, SurjectionCertificate]:
    """Largest b the pairing process reaches from dec, with its witnesses.

    Within F_t and G_t the sources are consumed in reverse listing order:
    descending label on the x-side, descending m on the y-side.
    """
    g = dec.group
    s = series_for(g)
    target = _check_feed(dec, t, s)
    counts = dec.counts
    trivial = Witness(kind="trivial", coverers=[Coverer(source=target, hom=(0, 0))])

    if t == 0:
        witnesses = [trivial] * counts[0]
        return counts[0], _certificate(dec, t, target, witnesses)

    i_t, j_t = s.i_series[t], s.j_series[t]
    sets = fg_sets(t, s, g)
    a_inverse = mod_inverse(g.a, g.n)

    x_pool: List[Coverer] = []
    for f in reversed(sets.f_labels[1:]):
        x_pool += [Coverer(source=f, hom=(i_t - f, 0))] * counts[f]
    y_pool: List[Coverer] = []
    for label in reversed(sets.g_labels):
        if label == 0:
            continue
        m = ((i_t - label) * a_inverse) % g.n
        y_pool += [Coverer(source=label, hom=(0, m))] * counts[label]

    free = counts[0]
    pairs = surjection_count(dec, t) - counts[target]
    x_side = x_pool[:pairs] + [Coverer(source=0, hom=(i_t, 0))] * max(0, pairs - len(x_pool))
    y_side = y_pool[:pairs] + [Coverer(source=0, hom=(0, j_t))] * max(0, pairs - len(y_pool))

    witnesses = [trivial] * counts[target]
    for x_cov, y_cov in zip(x_side, y_side):
        kind = "rpair" if x_cov.source == 0 and y_cov.source == 0 else "pair"
        witnesses.append(Witness(kind=kind, coverers=[x_cov, y_cov]))

    b = counts[target] + pairs
    logger.debug(
        f"M_{target} over {g.describe()}, q = {dec.char.q}: X = {len(x_pool)}, "
        f"Y = {len(y_pool)}, c_0 = {free}, b = {b}"
    )
    return b, _certificate(dec, t, target, witnesses)


def _certificate(
    dec: DecompositionVector, t: int, target: int, witnesses: List[Witness]
) -> SurjectionCertificate:
    return SurjectionCertificate(
        decomposition=dec, index=t, target=target, copies=len(witnesses), witnesses=witnesses
    )


def simulate_schedule(dec: DecompositionVector, t: int) -> int:
    """Run the pairing process one surjection at a time.

    Each step peels one f and one g; once a side runs dry a copy of R takes
    its place, and two copies of R cover a target copy when both are empty.
    """
    s = series_for(dec.group)
    target = _check_feed(dec, t, s)
    if t == 0:
        return dec.counts[0]

    x_left, y_left = _side_totals(dec, t, s)
    free = dec.counts[0]
    b = dec.counts[target]
    while True:
        if x_left and y_left:
            x_left, y_left = x_left - 1, y_left - 1
        elif (x_left or y_left) and free:
            x_left, y_left, free = max(0, x_left - 1), max(0, y_left - 1), free - 1
        elif free >= 2:
            free -= 2
        else:
            return b
        b += 1


def signature_report(t: int, g: GroupParams, p: int, max_e: int) -> SignatureReport:
    """s(M_{i_t}) with b_sched/q^2 for e = 1..max_e in characteristic p."""
    if max_e < 0:
        raise LabelError(f"max_e = {max_e} must be non-negative")
    target = special_label(t, g)
    levels = []
    for e in range(1, max_e + 1):
        ch = validate_characteristic(p, e, g)
        b = surjection_count(decompose(target, g, ch), t)
        levels.append(FiniteLevel(e=e, q=ch.q, b=b, ratio=Fraction(b, ch.q**2)))
    return SignatureReport(
        index=t, label=target, formula_value=dual_fsig_special(t, g), finite_level=levels
    )


def compare_with_tau(
    t: int,
    g: GroupParams,
    ch: CharacteristicParams,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    unsafe: bool = False,
) -> TauComparison:
    """Scheduler b for M_{i_t} against the oracle b for τ(M_{i_t}).

    In the Gorenstein case τ fixes every label, so both sides are the same
    module and b_tau is b_self.
    """
    target = special_label(t, g)
    b_self = surjection_count(decompose(target, g, ch), t)
    tau_label = tau(target, g)
    gorenstein = is_gorenstein(g)
    if gorenstein:
        b_tau = b_self
    else:
        b_tau = estimate_b_e(tau_label, g, ch, trials=trials, seed=seed, unsafe=unsafe).estimate

    holds = b_self <= b_tau
    if not holds:
        logger.warning(
            f"b_e(M_{target}) = {b_self} exceeds oracle b_e(M_{tau_label}) = {b_tau} "
            f"over {g.describe()} at q = {ch.q}"
        )
    logger.info(f"τ-comparison for M_{target} over {g.describe()}: {b_self} vs {b_tau}")
    return TauComparison(
        index=t,
        label=target,
        s_formula=dual_fsig_special(t, g),
        tau_label=tau_label,
        b_self=b_self,
        b_tau=b_tau,
        gorenstein=gorenstein,
        holds=holds,
    )

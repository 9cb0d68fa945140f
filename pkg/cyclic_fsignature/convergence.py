"""Finite-level approach of a_e/q^2 and b_e/q^2 to their limits."""

import logging
from fractions import Fraction
from typing import Optional

from .errors import LabelError
from .frobenius import f_splitting_number
from .group import validate_characteristic
from .models import ConvergenceReport, GroupParams, ScheduleLevel, SplittingLevel
from .series import series_for
from .signature import signature_report

logger = logging.getLogger(__name__)


def convergence_report(
    g: GroupParams, p: int, max_e: int, t: Optional[int] = None
) -> ConvergenceReport:
    """Tabulate e = 1..max_e for R and every special module (or only index t).

    The splitting ratio stays within 1/q of 1/n and the scheduler ratio within
    2n/q of s(M_{i_t}); rows outside the bound are flagged and logged.
    """
    if max_e < 1:
        raise LabelError(f"max_e = {max_e} must be at least 1")
    s = series_for(g)
    indices = list(range(1, s.r + 1)) if t is None else [t]
    limit = Fraction(1, g.n)

    splitting = []
    for e in range(1, max_e + 1):
        ch = validate_characteristic(p, e, g)
        a_e = f_splitting_number(g, ch)
        ratio = Fraction(a_e, ch.q**2)
        gap = abs(ratio - limit)
        splitting.append(
            SplittingLevel(
                e=e,
                q=ch.q,
                splitting_number=a_e,
                ratio=ratio,
                gap=gap,
                bound=Fraction(1, ch.q),
                within_bound=gap <= Fraction(1, ch.q),
            )
        )

    schedules = []
    for index in indices:
        report = signature_report(index, g, p, max_e)
        for level in report.finite_level:
            gap = abs(level.ratio - report.formula_value)
            bound = Fraction(2 * g.n, level.q)
            if gap > bound:
                logger.warning(
                    f"b_{level.e}(M_{report.label})/q^2 = {level.ratio} is {gap} from "
                    f"s = {report.formula_value}, beyond 2n/q = {bound}"
                )
            schedules.append(
                ScheduleLevel(
                    index=index,
                    label=report.label,
                    e=level.e,
                    q=level.q,
                    b=level.b,
                    ratio=level.ratio,
                    formula_value=report.formula_value,
                    gap=gap,
                    bound=bound,
                    within_bound=gap <= bound,
                )
            )

    logger.info(
        f"Convergence table for {g.describe()}, p = {p}: {max_e} levels, "
        f"{len(indices)} special modules"
    )
    return ConvergenceReport(
        group=g, p=p, limit=limit, splitting=splitting, schedules=schedules
    )

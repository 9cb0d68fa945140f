"""First-principles checks: enumerated decompositions, certificate ranks, b_e estimates.

Nothing here trusts the closed forms of the frobenius and signature modules;
surjectivity is decided modulo the maximal ideal (Nakayama) by ranks of
mod-m matrices over a field of characteristic p.
"""

import logging
from collections import Counter
from itertools import combinations
from typing import List

import numpy as np

from .config import (
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    ENUMERATION_GUARD,
    ESTIMATOR_GUARD,
    HALL_SUBSET_CAP,
    MAX_FIELD_SIZE,
    MIN_FIELD_SIZE,
)
from .errors import GuardExceededError, InvariantViolation, LabelError, UsageError
from .fields import field_for, galois_field, matrix_rank, pivot_columns
from .frobenius import decompose
from .models import (
    BEstimate,
    CharacteristicParams,
    DecompositionVector,
    GroupParams,
    RankProblem,
    SurjectionCertificate,
)
from .monomials import hom_monomials, induced_matrix, minimal_generators

logger = logging.getLogger(__name__)


def enumerate_decomposition(
    t: int, g: GroupParams, ch: CharacteristicParams, unsafe: bool = False
) -> DecompositionVector:
    """Decompose ^eM_t by grouping its monomials into residue classes mod q.

    The monomials of M_t in the box [0, Dq)^2 (D = n + 1) are split by
    (i mod q, j mod q); stripping the class base and dividing by q must give
    exactly the monomials of one M_s inside [0, D)^2.
    """
    if not 0 <= t < g.n:
        raise LabelError(f"label {t} must lie in [0, {g.n - 1}]")
    q = ch.q
    if q * q > ENUMERATION_GUARD and not unsafe:
        raise GuardExceededError(f"q^2 = {q * q} exceeds the enumeration guard {ENUMERATION_GUARD}")

    box = g.n + 1
    alpha, beta = np.meshgrid(np.arange(box), np.arange(box), indexing="ij")
    base_weights = (alpha + beta * g.a) % g.n
    patterns = np.stack([(base_weights == s).ravel() for s in range(g.n)])

    counts = np.zeros(g.n, dtype=np.int64)
    j_values = np.arange(box)[:, None] * q + np.arange(q)[None, :]  # (beta, v)
    for u in range(q):
        i_values = np.arange(box) * q + u  # (alpha,)
        members = (i_values[:, None, None] + j_values[None, :, :] * g.a) % g.n == t
        classes = members.transpose(2, 0, 1).reshape(q, box * box)  # one row per v
        matches = (classes[:, None, :] == patterns[None, :, :]).all(axis=2)
        if not (matches.sum(axis=1) == 1).all():
            bad = int(np.flatnonzero(matches.sum(axis=1) != 1)[0])
            logger.error(f"class ({u}, {bad}) of ^eM_{t} over {g.describe()} matches no single M_s")
            raise InvariantViolation(f"ambiguous residue class ({u}, {bad}) in ^eM_{t}")
        counts += matches.sum(axis=0)

    return DecompositionVector(
        group=g, source_label=t, char=ch, counts=[int(c) for c in counts]
    )


def _witness_rank(coverers: tuple, target: int, g: GroupParams, field) -> int:
    blocks = [
        induced_matrix(hom, source, target, g).to_array() for source, hom in coverers
    ]
    return matrix_rank(np.hstack(blocks), field)


def verify_certificate(
    cert: SurjectionCertificate, g: GroupParams, ch: CharacteristicParams
) -> bool:
    """Check that the witnesses jointly map onto M_target^b modulo m.

    Every coverer feeds exactly one target copy, so the block matrix is block
    diagonal and its rank is the sum of the per-witness ranks.
    """
    dec = cert.decomposition
    used = cert.consumption()
    overdrawn = [s for s in range(g.n) if used[s] > dec.counts[s]]
    if overdrawn:
        logger.warning(f"certificate for M_{cert.target} overdraws summands {overdrawn}")
        return False
    if cert.copies != len(cert.witnesses):
        logger.warning(
            f"certificate claims {cert.copies} copies with {len(cert.witnesses)} witnesses"
        )
        return False

    mu = minimal_generators(cert.target, g).mu
    field = galois_field(ch.p, 1)
    distinct = Counter(
        tuple((coverer.source, coverer.hom) for coverer in witness.coverers)
        for witness in cert.witnesses
    )
    rank = sum(
        count * _witness_rank(coverers, cert.target, g, field)
        for coverers, count in distinct.items()
    )
    logger.info(
        f"certificate for M_{cert.target}^{cert.copies} over {g.describe()}: "
        f"rank {rank} of {mu * cert.copies}, {len(distinct)} distinct witnesses"
    )
    return rank == mu * cert.copies


class _SourceColumns:
    """Useful generator columns of one source label, with their hom incidence."""

    def __init__(self, label: int, copies: int, incidence: np.ndarray):
        self.label = label
        self.copies = copies
        self.incidence = incidence  # (homs, target gens, useful source gens), 0/1


def _source_columns(dec: DecompositionVector, target: int, g: GroupParams) -> List[_SourceColumns]:
    sources = []
    for label, copies in enumerate(dec.counts):
        if copies == 0:
            continue
        homs = hom_monomials(label, target, g).mingens
        incidence = np.stack(
            [induced_matrix(h, label, target, g).to_array() for h in homs]
        )
        useful = incidence.any(axis=(0, 1))
        if useful.any():
            sources.append(_SourceColumns(label, copies, incidence[:, :, useful]))
    return sources


def hall_upper_bound(target: int, g: GroupParams, dec: DecompositionVector) -> int:
    """min over generator subsets Γ of |columns able to hit Γ| // |Γ|."""
    return _hall_bound(_source_columns(dec, target, g), minimal_generators(target, g).mu)


def _hall_bound(sources: List[_SourceColumns], mu: int) -> int:
    if mu <= HALL_SUBSET_CAP:
        subsets = [c for size in range(1, mu + 1) for c in combinations(range(mu), size)]
    else:
        subsets = [(gamma,) for gamma in range(mu)] + [tuple(range(mu))]
    bound = None
    for subset in subsets:
        reach = sum(
            src.copies * int(src.incidence[:, list(subset), :].any(axis=(0, 1)).sum())
            for src in sources
        )
        value = reach // len(subset)
        bound = value if bound is None else min(bound, value)
    return bound or 0


def _trial_matrix(
    sources: List[_SourceColumns], copies: int, mu: int, field, rng: np.random.Generator
) -> np.ndarray:
    """Transposed block matrix: one row per source generator column, one column per target row."""
    parts = []
    for src in sources:
        homs, _, width = src.incidence.shape
        coefficients = field.sample(rng, (src.copies, copies, homs))
        blocks = field.zeros((src.copies, copies, mu, width))
        for h in range(homs):
            contribution = coefficients[:, :, h, None, None] * src.incidence[h][None, None]
            blocks = field.add(blocks, contribution)
        parts.append(blocks.transpose(0, 3, 1, 2).reshape(src.copies * width, copies * mu))
    return np.vstack(parts)


def build_rank_problem(
    t: int, g: GroupParams, ch: CharacteristicParams, copies: int, seed: int
) -> RankProblem:
    dec = decompose(t, g, ch)
    mu = minimal_generators(t, g).mu
    size = field_for(ch.p, max(MIN_FIELD_SIZE, 2 * mu * copies), MAX_FIELD_SIZE).size
    return RankProblem(
        target=t,
        copies=copies,
        sources=[(s, c) for s, c in enumerate(dec.counts) if c],
        field_size=size,
        seed=seed,
    )


def estimate_b_e(
    t: int,
    g: GroupParams,
    ch: CharacteristicParams,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    unsafe: bool = False,
) -> BEstimate:
    """Randomized lower bound for b_e(M_t) = max{b : ^eM_t ->> M_t^b}.

    Each trial draws independent field coefficients for every (source copy,
    target copy, hom) triple and row-reduces once; the longest prefix of
    target copies whose rows stay independent is that trial's b. Generic
    coefficients attain the maximal rank, so b_e is found with probability
    at least 1 - 2^-trials.
    """
    if trials < 1:
        raise UsageError(f"trials must be at least 1, got {trials}")
    if ch.q**2 > ESTIMATOR_GUARD and not unsafe:
        raise GuardExceededError(f"q^2 = {ch.q ** 2} exceeds the estimator guard {ESTIMATOR_GUARD}")

    dec = decompose(t, g, ch)
    target_gens = minimal_generators(t, g)
    mu = target_gens.mu
    sources = _source_columns(dec, t, g)

    mu_ceiling = sum(c * minimal_generators(s, g).mu for s, c in enumerate(dec.counts)) // mu
    hall = _hall_bound(sources, mu)
    rank_bound = ch.q**2
    upper = min(mu_ceiling, hall, rank_bound)

    problem = build_rank_problem(t, g, ch, upper, seed)
    field = field_for(ch.p, problem.field_size, MAX_FIELD_SIZE)
    logger.info(
        f"Estimating b_e(M_{t}) over {g.describe()}, q = {ch.q}: {len(problem.sources)} source labels, "
        f"upper bound {upper}, {field}, {trials} trials"
    )

    best = 0
    for trial in range(trials if upper else 0):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))
        matrix = _trial_matrix(sources, upper, mu, field, rng)
        pivots = pivot_columns(matrix, field)
        independent = next(
            (k for k, col in enumerate(pivots) if col != k), len(pivots)
        )
        found = independent // mu
        logger.debug(f"trial {trial}: {len(pivots)} pivots, b = {found}")
        best = max(best, found)
        if best == upper:
            break

    return BEstimate(
        target=t,
        char=ch,
        estimate=best,
        mu_ceiling=mu_ceiling,
        hall_bound=hall,
        rank_bound=rank_bound,
        exact=best == upper,
        trials=trials,
        seed=seed,
        field_size=field.size,
    )


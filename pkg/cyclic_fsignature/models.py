from fractions import Fraction
from math import gcd
from typing import Annotated, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PlainSerializer,
    PlainValidator,
    WithJsonSchema,
    model_validator,
)


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)) and not isinstance(value, bool):
        return Fraction(value)
    raise ValueError(f"cannot read {value!r} as an exact rational")


def _fraction_text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


# Exact rationals travel as "num/den" strings in lowest terms.
Rational = Annotated[
    Fraction,
    PlainValidator(_to_fraction),
    PlainSerializer(_fraction_text, return_type=str),
    WithJsonSchema(
        {"type": "string", "pattern": r"^-?\d+/\d+$", "description": "exact rational num/den"}
    ),
]

Exponent = Tuple[int, int]


class FrozenModel(BaseModel):
    """Immutable base for every value object in the package."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class GroupParams(FrozenModel):
    """The cyclic group 1/n(1,a) acting on k[[x,y]]."""

    n: int = Field(..., ge=2, description="Group order")
    a: int = Field(..., ge=1, description="Weight of the second coordinate")

    @model_validator(mode="after")
    def _small_group(self):
        if self.a > self.n - 1 or gcd(self.a, self.n) != 1:
            raise ValueError(f"1/{self.n}(1,{self.a}) contains a pseudo-reflection")
        return self

    def describe(self) -> str:
        return f"1/{self.n}(1,{self.a})"


class CharacteristicParams(FrozenModel):
    """Characteristic p and Frobenius iteration count e, with q = p^e."""

    p: int = Field(..., ge=2, description="Prime characteristic")
    e: int = Field(..., ge=0, description="Frobenius iteration count")
    q: int = Field(..., ge=1, description="p^e")

    @model_validator(mode="after")
    def _q_is_power(self):
        if self.q != self.p**self.e:
            raise ValueError(f"q = {self.q} is not {self.p}^{self.e}")
        return self


class HJExpansion(FrozenModel):
    """Hirzebruch-Jung continued fraction [α_1, ..., α_r] of n/a."""

    alphas: List[int]

    @property
    def r(self) -> int:
        return len(self.alphas)


class SeriesData(FrozenModel):
    """The i-series i_0..i_{r+1} and j-series j_0..j_{r+1}."""

    i_series: List[int]
    j_series: List[int]

    @property
    def r(self) -> int:
        return len(self.i_series) - 2


class DigitVector(FrozenModel):
    """Greedy expansion β = Σ d_t i_t along the i-series."""

    beta: int
    digits: List[int]
    remainders: List[int] = Field(..., description="Greedy remainders h_1..h_r")


class FGSets(FrozenModel):
    """The label sets F_t and G_t feeding the surjection construction."""

    index: int
    f_labels: List[int]
    g_labels: List[int] = Field(..., description="(i_t - m a) mod n for m = 1..j_t")


class MonomialModule(FrozenModel):
    """An MCM module M_t given by its minimal monomial generators."""

    label: int
    mingens: List[Exponent]

    @property
    def mu(self) -> int:
        return len(self.mingens)

    @property
    def rank(self) -> int:
        return 1


class InducedMatrix(FrozenModel):
    """Mod-m matrix of a monomial hom, rows = target generators."""

    hom: Exponent
    source: int
    target: int
    rows: List[List[int]]

    def to_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)


class DecompositionVector(FrozenModel):
    """Multiplicities c_s of M_s inside the Frobenius pushforward ^eM_t."""

    group: GroupParams
    source_label: int
    char: CharacteristicParams
    counts: List[int]

    @property
    def total(self) -> int:
        return sum(self.counts)


class QuiverVertex(FrozenModel):
    label: int
    special: bool
    canonical: bool


class QuiverArrow(FrozenModel):
    source: int
    target: int
    label: Literal["x", "y"]


class ARQuiver(FrozenModel):
    """Auslander-Reiten quiver: arrows (t-1) -x-> t and (t-a) -y-> t."""

    group: GroupParams
    vertices: List[QuiverVertex]
    arrows: List[QuiverArrow]


class ARSequence(FrozenModel):
    """AR sequence ending in M_t, or the fundamental sequence for t = 0."""

    end: int
    middle: Tuple[int, int]
    tau: int
    kind: Literal["ar", "fundamental"]

    def describe(self) -> str:
        def name(label: int) -> str:
            return "R" if label == 0 else f"M_{label}"

        left, right = (name(label) for label in self.middle)
        if self.kind == "fundamental":
            return f"0 → {name(self.tau)} → {left} ⊕ {right} → R → k → 0"
        return f"0 → {name(self.tau)} → {left} ⊕ {right} → {name(self.end)} → 0"


class Coverer(FrozenModel):
    """One source summand copy and the monomial hom applied to it."""

    source: int
    hom: Exponent


class Witness(FrozenModel):
    """Surjection onto one copy of the target module."""

    kind: Literal["trivial", "pair", "rpair"]
    coverers: List[Coverer]

    @model_validator(mode="after")
    def _shape(self):
        expected = 1 if self.kind == "trivial" else 2
        if len(self.coverers) != expected:
            raise ValueError(f"{self.kind} witness needs {expected} coverers")
        return self


class SurjectionCertificate(FrozenModel):
    """Witness list realizing ^eM_{i_t} ->> M_{i_t}^b."""

    decomposition: DecompositionVector
    index: int
    target: int
    copies: int
    witnesses: List[Witness]

    def consumption(self) -> List[int]:
        used = [0] * self.decomposition.group.n
        for witness in self.witnesses:
            for coverer in witness.coverers:
                used[coverer.source] += 1
        return used


class FiniteLevel(FrozenModel):
    e: int
    q: int
    b: int
    ratio: Rational


class SignatureReport(FrozenModel):
    """Formula value of s(M_{i_t}) next to its finite-level approximations."""

    index: int
    label: int
    formula_value: Rational
    finite_level: List[FiniteLevel] = Field(default=[])


class TauComparison(FrozenModel):
    """Scheduler b for M against the oracle b for τ(M)."""

    index: int
    label: int
    s_formula: Rational
    tau_label: int
    b_self: int
    b_tau: int
    gorenstein: bool
    holds: bool = Field(..., description="b_self <= b_tau at this level")


class RankProblem(FrozenModel):
    """Randomized max-rank instance behind the F-surjective number."""

    target: int
    copies: int
    sources: List[Tuple[int, int]] = Field(..., description="(label, multiplicity)")
    field_size: int
    seed: int


class BEstimate(FrozenModel):
    """Oracle lower bound for b_e(M_t) with the upper bounds it is checked against."""

    target: int
    char: CharacteristicParams
    estimate: int
    mu_ceiling: int
    hall_bound: int
    rank_bound: int
    exact: bool
    trials: int
    seed: int
    field_size: int


class RunConfig(FrozenModel):
    """Validated command line options."""

    n: int = Field(..., ge=2)
    a: int = Field(..., ge=1)
    p: Optional[int] = Field(default=None, ge=2)
    e: Optional[int] = Field(default=None, ge=0)
    t: Optional[int] = Field(default=None, ge=0)
    seed: int = Field(default=0, ge=0, lt=2**64)
    format: Literal["table", "json", "dot", "png"] = "table"
    trials: int = Field(default=16, ge=1)
    unsafe_large: bool = False
    output: Optional[str] = None


class SplittingLevel(FrozenModel):
    """a_e/q^2 against its limit 1/n at one Frobenius level."""

    e: int
    q: int
    splitting_number: int
    ratio: Rational
    gap: Rational
    bound: Rational = Field(..., description="1/q")
    within_bound: bool


class ScheduleLevel(FrozenModel):
    """b_sched/q^2 against s(M_{i_t}) at one Frobenius level."""

    index: int
    label: int
    e: int
    q: int
    b: int
    ratio: Rational
    formula_value: Rational
    gap: Rational
    bound: Rational = Field(..., description="2n/q")
    within_bound: bool


class ConvergenceReport(FrozenModel):
    group: GroupParams
    p: int
    limit: Rational = Field(..., description="s(R) = 1/n")
    splitting: List[SplittingLevel]
    schedules: List[ScheduleLevel] = Field(default=[])


class SpecialModuleRow(FrozenModel):
    index: int
    label: int
    mingens: List[Exponent]
    dual_fsignature: Rational


class AnalyzeReport(FrozenModel):
    """Structure of 1/n(1,a): continued fraction, series, special modules."""

    group: GroupParams
    expansion: HJExpansion
    series: SeriesData
    specials: List[SpecialModuleRow]
    canonical_label: int
    gorenstein: bool


class FrobeniusRow(FrozenModel):
    label: int
    counts: List[int]
    ratios: List[Rational] = Field(..., description="c_s / q^2")


class FrobeniusReport(FrozenModel):
    group: GroupParams
    char: CharacteristicParams
    rows: List[FrobeniusRow]
    splitting_number: Optional[int] = Field(default=None, description="a_e, present when R is listed")


class CertifyReport(FrozenModel):
    """Scheduler b for one special module with the verdict of the rank check."""

    index: int
    label: int
    char: CharacteristicParams
    b: int
    ratio: Rational
    formula_value: Rational
    passed: bool
    witness_kinds: Dict[str, int]

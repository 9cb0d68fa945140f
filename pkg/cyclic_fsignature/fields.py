"""Arithmetic in GF(p) and GF(p^k), and row reduction over either.

Prime fields compute mod p directly. Extension fields represent elements
as the integers 0..p^k-1, read as base-p digit vectors of polynomials
modulo a primitive polynomial, and multiply through log/antilog tables.
"""

import logging
from functools import lru_cache
from itertools import product
from typing import List, Optional, Sequence, Union

import numpy as np

from .config import MAX_FIELD_SIZE, MIN_FIELD_SIZE
from .errors import CharacteristicError

logger = logging.getLogger(__name__)

# primes below this keep (p-1)^2 inside int64
INT64_PRIME_LIMIT = 2**31
SAMPLE_LIMIT = 2**62


def _from_digits(digits: Sequence[int], p: int) -> int:
    return sum(d * p**i for i, d in enumerate(digits))


def _powers_of_x(p: int, degree: int, tail: Sequence[int]) -> Optional[List[int]]:
    """Powers 1, x, x^2, ... modulo x^k + Σ tail_i x^i, or None if x is not primitive."""
    size = p**degree
    powers = []
    current = [1] + [0] * (degree - 1)
    for _ in range(size - 1):
        value = _from_digits(current, p)
        if powers and value == 1:
            return None
        powers.append(value)
        overflow = current[-1]
        current = [0] + current[:-1]
        current = [(c - overflow * m) % p for c, m in zip(current, tail)]
    return powers if _from_digits(current, p) == 1 else None


class FiniteField:
    """Elementwise field operations on numpy arrays of element codes."""

    dtype: Union[type, str] = np.int64

    def __init__(self, p: int, degree: int):
        self.p = p
        self.degree = degree
        self.size = p**degree

    def asarray(self, values) -> np.ndarray:
        return np.array(values, dtype=self.dtype, copy=True)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=self.dtype)

    def sample(self, rng: np.random.Generator, shape) -> np.ndarray:
        """Uniform elements; fields above 2^62 draw from the first 2^62 codes."""
        return rng.integers(0, min(self.size, SAMPLE_LIMIT), size=shape).astype(self.dtype)

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.p}^{self.degree})"


class PrimeField(FiniteField):
    """GF(p), computed mod p; Python ints once p^2 would overflow int64."""

    def __init__(self, p: int):
        super().__init__(p, 1)
        self.dtype = np.int64 if p < INT64_PRIME_LIMIT else object

    def asarray(self, values) -> np.ndarray:
        return super().asarray(values) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        return pow(int(a) % self.p, -1, self.p)


class GaloisField(FiniteField):
    """GF(p^k), k >= 2, with full add/mul tables for vectorized lookups."""

    def __init__(self, p: int, degree: int):
        super().__init__(p, degree)

        for tail in product(range(p), repeat=degree):
            if tail[0] == 0:
                continue
            powers = _powers_of_x(p, degree, tail)
            if powers is not None:
                self.modulus = tail
                break
        else:
            raise CharacteristicError(f"no primitive polynomial of degree {degree} over GF({p})")

        order = self.size - 1
        self.exp = np.array(powers, dtype=np.int64)
        self.log = np.full(self.size, -1, dtype=np.int64)
        self.log[self.exp] = np.arange(order)

        elements = np.arange(self.size)
        nonzero = elements != 0
        log_sum = (self.log[:, None] + self.log[None, :]) % order
        self._mul = np.where(nonzero[:, None] & nonzero[None, :], self.exp[log_sum], 0)

        self._add = np.zeros((self.size, self.size), dtype=np.int64)
        self._neg = np.zeros(self.size, dtype=np.int64)
        for i in range(degree):
            place = p**i
            digit = (elements // place) % p
            self._add += ((digit[:, None] + digit[None, :]) % p) * place
            self._neg += ((-digit) % p) * place

        self._inv = np.zeros(self.size, dtype=np.int64)
        self._inv[1:] = self.exp[(-self.log[1:]) % order]

    def add(self, a, b):
        return self._add[a, b]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a, b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self._inv[a])


@lru_cache(maxsize=None)
def galois_field(p: int, degree: int) -> FiniteField:
    if degree == 1:
        return PrimeField(p)
    return GaloisField(p, degree)


def field_for(
    p: int, minimum: int = MIN_FIELD_SIZE, maximum: int = MAX_FIELD_SIZE
) -> FiniteField:
    """Smallest GF(p^k) with at least `minimum` elements, capped at `maximum`.

    Prime fields never need tables, so a large p is used as is.
    """
    degree = 1
    while p**degree < minimum:
        degree += 1
    while degree > 1 and p**degree > maximum:
        degree -= 1
    if p**degree < minimum:
        logger.warning(
            f"coefficient field capped at {p}^{degree} = {p**degree} < {minimum}; "
            "single-trial failure bound is weaker, more trials compensate"
        )
    return galois_field(p, degree)


def pivot_columns(matrix: np.ndarray, field: FiniteField) -> List[int]:
    """Pivot columns of the row echelon form, found left to right.

    Column c is a pivot exactly when it is independent of columns 0..c-1.
    """
    work = field.asarray(matrix)
    rows, cols = work.shape
    pivots: List[int] = []
    top = 0
    for col in range(cols):
        if top == rows:
            break
        nonzero = np.flatnonzero(work[top:, col] != 0)
        if nonzero.size == 0:
            continue
        pivot = top + int(nonzero[0])
        if pivot != top:
            work[[top, pivot]] = work[[pivot, top]]
        work[top, col:] = field.mul(field.inv(work[top, col]), work[top, col:])

        below = top + 1 + np.flatnonzero(work[top + 1 :, col] != 0)
        if below.size:
            scaled = field.mul(work[below, col][:, None], work[top, col:][None, :])
            work[below, col:] = field.add(work[below, col:], field.neg(scaled))
        pivots.append(col)
        top += 1
    return pivots


def matrix_rank(matrix: np.ndarray, field: FiniteField) -> int:
    if matrix.size == 0:
        return 0
    return len(pivot_columns(matrix, field))

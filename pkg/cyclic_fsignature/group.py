"""The group datum 1/n(1,a), the Frobenius datum (p,e) and shared modular arithmetic."""

import logging
from math import gcd

from sympy import isprime

from .errors import CharacteristicError, InvalidGroupError
from .models import CharacteristicParams, GroupParams

logger = logging.getLogger(__name__)


def validate_group(n: int, a: int) -> GroupParams:
    """Return 1/n(1,a) if it is a small (pseudo-reflection free) cyclic group."""
    if n < 2:
        raise InvalidGroupError(f"group order must be at least 2, got n = {n}")
    if not 1 <= a <= n - 1:
        raise InvalidGroupError(f"weight a = {a} must lie in [1, {n - 1}]")
    if gcd(a, n) != 1:
        raise InvalidGroupError(
            f"gcd(a, n) = {gcd(a, n)} for 1/{n}(1,{a}): the action has a pseudo-reflection"
        )
    return GroupParams(n=n, a=a)


def validate_characteristic(p: int, e: int, g: GroupParams) -> CharacteristicParams:
    """Return (p, e, q = p^e) after checking p is a prime not dividing n."""
    if not isprime(p):
        raise CharacteristicError(f"characteristic p = {p} is not prime")
    if e < 0:
        raise CharacteristicError(f"Frobenius iteration count e = {e} is negative")
    if g.n % p == 0:
        raise CharacteristicError(f"p divides n (p = {p}, n = {g.n})")
    return CharacteristicParams(p=p, e=e, q=p**e)


def mod_inverse(x: int, n: int) -> int:
    """Inverse of x modulo n in [0, n)."""
    if gcd(x, n) != 1:
        raise InvalidGroupError(f"{x} is not invertible modulo {n}")
    return pow(x, -1, n) if n > 1 else 0


def is_gorenstein(g: GroupParams) -> bool:
    # R is Gorenstein iff G sits in SL(2), i.e. det σ = ζ^(1+a) = 1
    return (g.a + 1) % g.n == 0

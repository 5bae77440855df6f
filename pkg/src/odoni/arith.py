"""Exact integer and rational arithmetic.

p-adic valuations, quadratic-residue tests, the Chinese Remainder
Theorem, primality testing, deterministic prime search, exact square
tests, and bounded trial division. Everything is pure, exact, and
reentrant: no floats, no global mutable state.

Rationals are ``fractions.Fraction`` throughout (re-exported as
``Rational``); the valuation of 0 is the ``INFINITY`` sentinel, a
dedicated object with ordering but no arithmetic, so that accidentally
computing with it fails loudly instead of silently overflowing.
"""

from __future__ import annotations

import functools
import math
import random
import sys
from fractions import Fraction
from typing import Callable, Union

Rational = Fraction

# Miller-Rabin with the first 13 prime bases is a proven deterministic
# primality test below this bound (Sorenson-Webster), which comfortably
# covers 64-bit inputs.
MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_TRIAL_LIMIT = 10_000
_RANDOM_MR_ROUNDS = 64

DEFAULT_SEARCH_CAP = 10**6


class CapExceededError(RuntimeError):
    """A bounded search (prime scan, trial division) ran past its cap."""


class _Infinity:
    """Valuation of zero.

    Compares above every integer and rational; deliberately supports no
    arithmetic, so ``INFINITY + 1`` raises instead of propagating a
    bogus value into a certificate.
    """

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("odoni.arith.INFINITY")

    def __gt__(self, other):
        if isinstance(other, (int, Fraction)):
            return True
        if other is self:
            return False
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (int, Fraction)) or other is self:
            return True
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, (int, Fraction)) or other is self:
            return False
        return NotImplemented

    def __le__(self, other):
        if other is self:
            return True
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented


INFINITY = _Infinity()

Valuation = Union[int, _Infinity]


def is_prime(n: int) -> bool:
    """Primality test, deterministic below MR_DETERMINISTIC_BOUND.

    Small inputs fall to trial division; mid-range inputs use the fixed
    13-base Miller-Rabin set (proven deterministic there); larger inputs
    get 64 Miller-Rabin rounds with bases drawn from a PRNG seeded by n,
    so the answer is reproducible but only probabilistic; see
    primality_evidence().
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < 53 * 53:
        return True
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    if n < MR_DETERMINISTIC_BOUND:
        bases = _MR_BASES
    else:
        rng = random.Random(n ^ 0x6F646F6E69)  # reproducible per input
        bases = tuple(rng.randrange(2, n - 1) for _ in range(_RANDOM_MR_ROUNDS))
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primality_evidence(n: int) -> str:
    """Evidence level of is_prime(n): "deterministic" or "probabilistic"."""
    return "deterministic" if n < MR_DETERMINISTIC_BOUND else "probabilistic"


def val(q: Union[int, Fraction], p: int) -> Valuation:
    """Exact p-adic valuation of a rational; val(0) is INFINITY.

    Rejects non-prime p: a valuation at a composite modulus is almost
    always a caller bug.
    """
    if not is_prime(p):
        raise ValueError(f"val: modulus {p} is not prime")
    q = Fraction(q)
    if q == 0:
        return INFINITY
    v = 0
    n = q.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = q.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime p, via Euler's criterion.

    Returns 0 iff p | a, 1 for nonzero squares mod p, -1 otherwise.
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"legendre: {p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def crt(pairs: list[tuple[int, int]]) -> int:
    """Smallest non-negative solution of simultaneous congruences.

    ``pairs`` is a list of (residue, modulus); moduli must be pairwise
    coprime (checked, rejected otherwise).
    """
    if not pairs:
        raise ValueError("crt: no congruences given")
    x, modulus = 0, 1
    for r, m in pairs:
        if m < 1:
            raise ValueError(f"crt: modulus {m} < 1")
        if math.gcd(modulus, m) != 1:
            raise ValueError(f"crt: moduli not pairwise coprime at {m}")
        if m == 1:
            continue
        inv = pow(modulus, -1, m)
        x = x + modulus * ((r - x) * inv % m)
        modulus *= m
    return x % modulus


def next_prime_where(
    start: int,
    predicate: Callable[[int], bool],
    cap: int = DEFAULT_SEARCH_CAP,
) -> int:
    """Smallest prime >= start satisfying predicate; loud failure past cap."""
    n = max(2, start)
    while n <= cap:
        if is_prime(n) and predicate(n):
            return n
        n += 1
    raise CapExceededError(f"no prime >= {start} satisfying predicate below cap {cap}")


def is_square(q: Union[int, Fraction]) -> bool:
    """True iff q is the square of a rational (exact integer sqrt test)."""
    q = Fraction(q)
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


@functools.lru_cache(maxsize=4)
def _primes_up_to_cached(bound: int) -> tuple[int, ...]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return tuple(i for i in range(2, bound + 1) if sieve[i])


def primes_up_to(bound: int) -> list[int]:
    """All primes <= bound by a plain sieve (cached for repeat bounds)."""
    if bound < 2:
        return []
    return list(_primes_up_to_cached(bound))


def decimal_str(n: int) -> str:
    """Decimal string of an arbitrarily large integer.

    Certificates carry multi-hundred-kilobit integers, so the
    interpreter's int-to-str digit guard is raised on demand (it exists
    to protect parsers from hostile input, which this is not).
    """
    needed = abs(n).bit_length() // 3 + 10
    if hasattr(sys, "get_int_max_str_digits") and sys.get_int_max_str_digits() < needed:
        sys.set_int_max_str_digits(needed)
    return str(n)


def trial_factor(n: int, bound: int = DEFAULT_SEARCH_CAP) -> tuple[dict[int, int], int]:
    """Partial factorization by trial division with primes <= bound.

    Returns (factors, cofactor) with factors a prime -> exponent map and
    cofactor the unfactored remainder (1 if fully factored). The
    cofactor is deliberately not classified here; callers decide how
    much primality evidence they want on it.
    """
    if n < 0:
        n = -n
    if n == 0:
        raise ValueError("trial_factor: 0 has no factorization")
    factors: dict[int, int] = {}
    for p in primes_up_to(bound):
        if p * p > n:
            break
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    # all prime factors <= bound are divided out, so a remainder below
    # bound^2 cannot be composite
    if 1 < n <= bound * bound:
        factors[n] = factors.get(n, 0) + 1
        n = 1
    return factors, n

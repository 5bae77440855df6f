"""Dense univariate polynomial algebra over Q.

Composition and iteration, derivatives, resultants via the fraction-free
subresultant remainder sequence, discriminants three ways (resultant
oracle, trinomial closed form, and the iterated recursion driven by the
critical orbit), the closed-form product of a trinomial over its nonzero
critical points, and the Eisenstein irreducibility test.

Coefficients are ``fractions.Fraction``; polynomials are immutable
tuples in ascending-degree order with trailing zeros trimmed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .arith import INFINITY, val

Scalar = Union[int, Fraction]

DEFAULT_BIT_BUDGET = 2**20


class BitBudgetExceededError(RuntimeError):
    """An iterated-discriminant computation outgrew its bit budget."""


def _as_fraction_tuple(coeffs: Iterable[Scalar]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    if not out:
        out = [Fraction(0)]
    return tuple(out)


class Poly:
    """Immutable dense polynomial over Q; coeffs[i] multiplies x^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar]):
        object.__setattr__(self, "coeffs", _as_fraction_tuple(coeffs))

    def __setattr__(self, *_):
        raise AttributeError("Poly is immutable")

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: Scalar) -> "Poly":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports -1."""
        if self.is_zero():
            return -1
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly((0,))
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Poly.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, v: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def derivative(self) -> "Poly":
        if len(self.coeffs) == 1:
            return Poly((0,))
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))


def compose(f: Poly, g: Poly) -> Poly:
    """f(g(x)) by Horner's scheme in g."""
    acc = Poly.constant(f.coeffs[-1])
    for c in reversed(f.coeffs[:-1]):
        acc = acc * g + c
    return acc


def iterate(f: Poly, n: int) -> Poly:
    """n-fold self-composition; iterate(f, 0) is x."""
    if n < 0:
        raise ValueError("iterate: n must be >= 0")
    g = Poly.x()
    for _ in range(n):
        g = compose(f, g)
    return g


# ---------------------------------------------------------------------------
# resultants and discriminants
# ---------------------------------------------------------------------------


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of lc(b)^(deg a - deg b + 1) * a modulo b over Z."""
    a = a[:]
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - 1 - db + 1
    while len(a) - 1 >= db and a != [0]:
        da = len(a) - 1
        top = a[-1]
        a = [lb * c for c in a]
        for i in range(db + 1):
            a[da - db + i] -= top * b[i]
        while len(a) > 1 and a[-1] == 0:
            a.pop()
        e -= 1
        if a == [0]:
            break
    if e > 0:
        scale = lb**e
        a = [scale * c for c in a]
    return a


def _int_resultant(a: list[int], b: list[int]) -> int:
    """Resultant over Z by the subresultant PRS (fraction-free)."""
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    while len(b) > 1 and b[-1] == 0:
        b.pop()
    if a == [0] or b == [0]:
        return 0
    if len(a) == 1:
        return a[0] ** (len(b) - 1)
    if len(b) == 1:
        return b[0] ** (len(a) - 1)
    sign = 1
    if len(a) < len(b):
        if (len(a) - 1) % 2 and (len(b) - 1) % 2:
            sign = -sign
        a, b = b, a
    g = h = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = _int_prem(a, b)
        if r == [0]:
            return 0
        a, b = b, r
        denom = g * h**delta
        b = [c // denom for c in b]
        g = a[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = g**delta // h ** (delta - 1)
        if len(b) == 1:
            da = len(a) - 1
            return sign * (b[0] ** da // h ** (da - 1))


def resultant(f: Poly, g: Poly) -> Fraction:
    """Exact resultant Res(f, g) over Q.

    Denominators are cleared and the integer subresultant sequence does
    the work, keeping intermediate coefficient growth linear in the
    answer's size rather than exponential.
    """
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    df, dg = f.degree, g.degree
    if df == 0:
        return f.coeffs[0] ** dg
    if dg == 0:
        return g.coeffs[0] ** df
    af = math.lcm(*[c.denominator for c in f.coeffs])
    ag = math.lcm(*[c.denominator for c in g.coeffs])
    fi = [int(c * af) for c in f.coeffs]
    gi = [int(c * ag) for c in g.coeffs]
    r = _int_resultant(fi, gi)
    return Fraction(r, af**dg * ag**df)


def disc_resultant(f: Poly) -> Fraction:
    """Discriminant via the resultant, with the sign convention
    disc(f) = (-1)^(n(n-1)/2) * Res(f, f') / lc(f)."""
    n = f.degree
    if n < 1:
        raise ValueError("disc_resultant: polynomial must be non-constant")
    if n == 1:
        return Fraction(1)
    r = resultant(f, f.derivative())
    return Fraction((-1) ** (n * (n - 1) // 2)) * r / f.lc


@dataclass(frozen=True)
class Trinomial:
    """A*x^d + B*x^m + C with d > m >= 1 and gcd(m, d) = 1."""

    A: Fraction
    B: Fraction
    C: Fraction
    d: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, "A", Fraction(self.A))
        object.__setattr__(self, "B", Fraction(self.B))
        object.__setattr__(self, "C", Fraction(self.C))
        if self.A == 0:
            raise ValueError("Trinomial: A must be nonzero")
        if not (self.d > self.m >= 1):
            raise ValueError("Trinomial: need d > m >= 1")
        if math.gcd(self.m, self.d) != 1:
            raise ValueError("Trinomial: need gcd(m, d) = 1")

    def expand(self) -> Poly:
        coeffs = [Fraction(0)] * (self.d + 1)
        coeffs[0] = self.C
        coeffs[self.m] += self.B
        coeffs[self.d] = self.A
        return Poly(coeffs)


def disc_trinomial(t: Trinomial) -> Fraction:
    """Closed-form discriminant of A*x^d + B*x^m + C.

    disc = (-1)^(d(d-1)/2) * A^(d-m-1) * C^(m-1)
           * [ (-1)^(d-1) * m^m * (d-m)^(d-m) * B^d + d^d * A^m * C^(d-m) ]

    Agrees with disc_resultant(t.expand()) identically; the resultant
    route is the independent oracle in the test suite.
    """
    d, m = t.d, t.m
    bracket = (
        Fraction((-1) ** (d - 1)) * m**m * (d - m) ** (d - m) * t.B**d
        + Fraction(d**d) * t.A**m * t.C ** (d - m)
    )
    return Fraction((-1) ** (d * (d - 1) // 2)) * t.A ** (d - m - 1) * t.C ** (m - 1) * bracket


def crit_product(d: int, m: int, b: Scalar, w: Scalar) -> Fraction:
    """Product of f - w over the nonzero critical points of f = x^d - b*x^m.

    The nonzero critical points are the (d-m) roots of x^(d-m) = m*b/d;
    the product of f(x) - w over them has the closed form

        d^(-d) * [ d^d * (-w)^(d-m) + (-1)^(d-1) * (d-m)^(d-m) * m^m * (-b)^d ],

    which never materializes a root of unity. Requires b != 0 and
    gcd(m, d) = 1 (the coprimality is what collapses the root-of-unity
    sum).
    """
    b = Fraction(b)
    w = Fraction(w)
    if b == 0:
        raise ValueError("crit_product: b must be nonzero")
    if not (d > m >= 1) or math.gcd(m, d) != 1:
        raise ValueError("crit_product: need d > m >= 1 with gcd(m, d) = 1")
    bracket = Fraction(d**d) * (-w) ** (d - m) + Fraction((-1) ** (d - 1)) * (
        d - m
    ) ** (d - m) * m**m * (-b) ** d
    return bracket / Fraction(d**d)


def _bits(q: Fraction) -> int:
    return q.numerator.bit_length() + q.denominator.bit_length()


def disc_iterate(inst, n: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> Fraction:
    """Discriminant of f^n - x0 for f = x^d - b*x^m without expanding f^n.

    Uses the level recursion

        disc(f^(k+1) - x0) = A~^(d^k) * disc(f^k - x0)^d * (crit factor),
        A~ = (-1)^(d(d-1)/2) * d^d,

    where the critical factor is the product of f^(k+1)(r) - x0 over the
    critical points r of f with multiplicity. Supported shapes: m = d-1
    (single nonzero critical point eta = (d-1)b/d, zero has multiplicity
    d-2) and m = d-2 (critical pair +-eta with eta^2 = (d-2)b/d tracked
    through g(x) = x^(d-2) * (x-b)^2, zero has multiplicity d-3). Other
    (d, m) fall back to the expanded resultant when d^n is small.

    ``inst`` is anything with attributes d, m, b, x0. Growth is doubly
    exponential in n, so the result size is capped by ``bit_budget``.
    """
    d, m = inst.d, inst.m
    b, x0 = Fraction(inst.b), Fraction(inst.x0)
    if n < 1:
        raise ValueError("disc_iterate: n must be >= 1")
    if m not in (d - 1, d - 2):
        if d**n <= 32:
            coeffs = [Fraction(0)] * (d + 1)
            coeffs[m] = -b
            coeffs[d] = Fraction(1)
            return disc_resultant(iterate(Poly(coeffs), n) - x0)
        raise ValueError(f"disc_iterate: unsupported (d, m) = ({d}, {m})")
    disc = disc_trinomial(Trinomial(Fraction(1), -b, -x0, d, m))
    a_tilde = Fraction((-1) ** (d * (d - 1) // 2) * d**d)
    if m == d - 1:
        eta = Fraction(d - 1) * b / d
        y = eta**d - b * eta ** (d - 1)
        for k in range(1, n):
            y = y ** (d - 1) * (y - b)  # f^(k+1)(eta)
            crit = (-x0) ** (d - 2) * (y - x0)
            disc = a_tilde ** (d**k) * disc**d * crit
            if _bits(disc) > bit_budget:
                raise BitBudgetExceededError(
                    f"disc_iterate: {_bits(disc)} bits at level {k + 1} exceeds budget {bit_budget}"
                )
    else:
        # m = d-2: f is odd, so f^k(-eta) = -f^k(eta) and the critical
        # pair contributes -(f^k(eta)^2 - x0^2); the square is tracked
        # exactly via g = x^(d-2) (x-b)^2 with g^k(eta^2) = f^k(eta)^2.
        eta2 = Fraction(d - 2) * b / d
        z = eta2 ** (d - 2) * (eta2 - b) ** 2
        for k in range(1, n):
            z = z ** (d - 2) * (z - b) ** 2  # g^(k+1)(eta^2)
            crit = -(x0 ** (d - 3)) * (z - x0 * x0)
            disc = a_tilde ** (d**k) * disc**d * crit
            if _bits(disc) > bit_budget:
                raise BitBudgetExceededError(
                    f"disc_iterate: {_bits(disc)} bits at level {k + 1} exceeds budget {bit_budget}"
                )
    return disc


def eisenstein_at(f: Poly, p: int) -> bool:
    """Eisenstein test at p for a monic polynomial with p-integral coefficients.

    True iff every non-leading coefficient has valuation >= 1 and the
    constant term has valuation exactly 1. Non-monic or non-p-integral
    input is rejected (that is a caller error, not a False).
    """
    if f.degree < 1 or f.lc != 1:
        raise ValueError("eisenstein_at: polynomial must be monic non-constant")
    vals = [val(c, p) for c in f.coeffs[:-1]]
    if any(v is not INFINITY and v < 0 for v in vals):
        raise ValueError("eisenstein_at: coefficients must be p-integral")
    if not all(v >= 1 for v in vals):
        return False
    return vals[0] == 1

import random
from fractions import Fraction
from types import SimpleNamespace

import pytest

from odoni.poly import (
    BitBudgetExceededError,
    Poly,
    Trinomial,
    compose,
    crit_product,
    disc_iterate,
    disc_resultant,
    disc_trinomial,
    eisenstein_at,
    iterate,
    resultant,
)

X = Poly.x()


def sylvester_resultant(f: Poly, g: Poly) -> Fraction:
    """Independent oracle: determinant of the Sylvester matrix by
    fraction-based Gaussian elimination."""
    m, n = f.degree, g.degree
    assert m >= 1 and n >= 1
    size = m + n
    rows = [[Fraction(0)] * size for _ in range(size)]
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        for j, c in enumerate(fc):
            rows[i][i + j] = c
    for i in range(m):
        for j, c in enumerate(gc):
            rows[n + i][i + j] = c
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, size):
            if rows[r][col] != 0:
                factor = rows[r][col] * inv
                for c in range(col, size):
                    rows[r][c] -= factor * rows[col][c]
    return det


def random_poly(rng, degree, height=20):
    coeffs = [Fraction(rng.randint(-height, height), rng.randint(1, 5)) for _ in range(degree)]
    coeffs.append(Fraction(rng.randint(1, height), rng.randint(1, 5)))
    return Poly(coeffs)


class TestPolyBasics:
    def test_degree_and_trim(self):
        assert Poly((1, 2, 0, 0)).degree == 1
        assert Poly((0,)).degree == -1
        assert Poly((5,)).degree == 0

    def test_arithmetic_and_eval(self):
        f = X * X - X + 1
        assert f(Fraction(2)) == 3
        assert (f * f).degree == 4
        assert f - f == Poly((0,))

    def test_immutability(self):
        with pytest.raises(AttributeError):
            X.coeffs = (1,)

    def test_derivative(self):
        assert (X**3 - 2 * X).derivative() == 3 * X * X - 2
        assert Poly((7,)).derivative().is_zero()


class TestComposeIterate:
    def test_square_example(self):
        f = X * X - X + 1
        assert iterate(f, 2) == X**4 - 2 * X**3 + 2 * X * X - X + 1

    def test_identity(self):
        assert iterate(X * X - X + 1, 0) == X

    def test_compose_example(self):
        assert compose(X * X, X + 1) == X * X + 2 * X + 1

    def test_degree_growth(self):
        f = X**3 - 2 * X
        assert iterate(f, 2).degree == 9

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            iterate(X, -1)


class TestResultant:
    def test_linear_example(self):
        assert resultant(X - 2, X - 3) == -1

    def test_disc_cubic_pinned(self):
        f = X**3 - X * X + 1
        assert disc_resultant(f) == -23
        fp = f.derivative()
        assert sylvester_resultant(f, fp) == resultant(f, fp)

    def test_disc_quadratic(self):
        # b^2 - 4c at b = 1, c = 1
        assert disc_resultant(X * X + X + 1) == -3

    def test_common_root(self):
        assert resultant((X - 1) * (X - 2), (X - 1) * (X + 5)) == 0

    def test_constant_rejected(self):
        with pytest.raises(ValueError):
            disc_resultant(Poly((3,)))

    def test_against_sylvester_oracle(self):
        rng = random.Random(42)
        for _ in range(40):
            f = random_poly(rng, rng.randint(1, 6))
            g = random_poly(rng, rng.randint(1, 6))
            assert resultant(f, g) == sylvester_resultant(f, g)

    def test_swap_sign_rule(self):
        rng = random.Random(7)
        for _ in range(20):
            f = random_poly(rng, rng.randint(1, 5))
            g = random_poly(rng, rng.randint(1, 5))
            assert resultant(f, g) == (-1) ** (f.degree * g.degree) * resultant(g, f)


class TestTrinomial:
    def test_invariants(self):
        with pytest.raises(ValueError):
            Trinomial(0, 1, 1, 3, 2)
        with pytest.raises(ValueError):
            Trinomial(1, 1, 1, 4, 2)  # gcd(2, 4) != 1
        with pytest.raises(ValueError):
            Trinomial(1, 1, 1, 2, 2)

    def test_pinned_disc(self):
        assert disc_trinomial(Trinomial(1, -1, 1, 3, 2)) == -23

    def test_quadratic(self):
        assert disc_trinomial(Trinomial(1, 0, -1, 2, 1)) == 4  # (x-1)(x+1)

    def test_against_resultant_oracle(self):
        rng = random.Random(11)
        pairs = [(3, 2), (5, 3), (5, 4), (7, 5)]
        for d, m in pairs:
            for _ in range(10):
                b = Fraction(rng.randint(1, 9), rng.randint(1, 4))
                beta = Fraction(rng.randint(1, 9), rng.randint(1, 4))
                t = Trinomial(Fraction(1), -b, -beta, d, m)
                assert disc_trinomial(t) == disc_resultant(t.expand())


class TestCritProduct:
    def test_single_rational_point(self):
        # d=2, m=1, b=1: critical point 1/2, f(1/2) = -1/4
        assert crit_product(2, 1, 1, 0) == Fraction(-1, 4)

    def test_top_m_example(self):
        # d=4, m=3, b=4/3: eta = (d-1)b/d = 1, f(1) = 1 - 4/3
        assert crit_product(4, 3, Fraction(4, 3), 0) == Fraction(-1, 3)

    def test_rational_point_oracle(self):
        # m = d-1 has the single nonzero critical point eta = (d-1)b/d
        rng = random.Random(3)
        for d in (2, 4, 6, 8):
            m = d - 1
            for _ in range(10):
                b = Fraction(rng.randint(1, 9), rng.randint(1, 5))
                w = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                eta = Fraction(d - 1) * b / d
                direct = eta**d - b * eta**m - w
                assert crit_product(d, m, b, w) == direct

    def test_zero_b_rejected(self):
        with pytest.raises(ValueError):
            crit_product(3, 2, 0, 1)


def _inst(d, m, b, x0):
    return SimpleNamespace(d=d, m=m, b=Fraction(b), x0=Fraction(x0))


class TestDiscIterate:
    def test_quadratic_level_one(self):
        # disc(x^2 - x - 1) = 1 + 4 = 5
        assert disc_iterate(_inst(2, 1, 1, 1), 1) == 5

    def test_quadratic_level_two_oracle(self):
        inst = _inst(2, 1, 1, 1)
        f = X * X - X
        assert disc_iterate(inst, 2) == disc_resultant(iterate(f, 2) - 1)

    def test_random_small_instances_oracle(self):
        rng = random.Random(23)
        for d, m in ((2, 1), (3, 1), (3, 2), (4, 3), (5, 3)):
            for _ in range(4):
                b = Fraction(rng.randint(1, 6), rng.randint(1, 4))
                x0 = Fraction(rng.randint(1, 6), rng.randint(1, 4))
                inst = _inst(d, m, b, x0)
                coeffs = [Fraction(0)] * (d + 1)
                coeffs[m] = -b
                coeffs[d] = Fraction(1)
                f = Poly(coeffs)
                for n in (1, 2):
                    expected = disc_resultant(iterate(f, n) - x0)
                    assert disc_iterate(inst, n) == expected, (d, m, n)

    def test_generic_fallback(self):
        # (d, m) outside the two supported shapes but small enough to expand
        inst = _inst(5, 2, Fraction(3, 2), 1)
        f = X**5 - Fraction(3, 2) * X * X
        assert disc_iterate(inst, 1) == disc_resultant(f - 1)

    def test_unsupported_shape_rejected(self):
        with pytest.raises(ValueError):
            disc_iterate(_inst(7, 2, 1, 1), 3)

    def test_bit_budget(self, golden_even_4):
        with pytest.raises(BitBudgetExceededError):
            disc_iterate(golden_even_4, 3, bit_budget=256)


class TestEisenstein:
    def test_examples(self):
        assert eisenstein_at(X * X - 2, 2)
        assert not eisenstein_at(X * X - 4, 2)

    def test_non_monic_rejected(self):
        with pytest.raises(ValueError):
            eisenstein_at(2 * X * X - 2, 2)

    def test_non_integral_rejected(self):
        with pytest.raises(ValueError):
            eisenstein_at(X * X + Fraction(1, 2), 2)

    def test_zero_constant_term_fails(self):
        assert not eisenstein_at(X * X - 2 * X, 2)

    def test_golden_iterates(self, golden_even_2, golden_odd_3):
        for inst in (golden_even_2, golden_odd_3):
            f = inst.f_poly()
            for n in (1, 2, 3):
                assert eisenstein_at(iterate(f, n) - inst.x0, inst.p1)


class TestEisensteinImpliesIrreducible:
    def test_no_small_height_factorization(self):
        # exhaustive monic integer factor search of bounded height for a
        # few Eisenstein polynomials of degree <= 6
        import itertools

        candidates = [
            (X * X - 2, 2),
            (X**3 + 2 * X + 2, 2),
            (X**5 + 6 * X**4 + 3, 3),
            (X**6 + 10 * X**3 + 5, 5),
        ]
        height = 8

        def divides(g, f):
            # long division by the monic g; True iff remainder vanishes
            fc = list(f.coeffs)
            gc = list(g.coeffs)
            dg = len(gc) - 1
            while len(fc) - 1 >= dg:
                lead = fc[-1]
                shift = len(fc) - 1 - dg
                for i in range(dg + 1):
                    fc[shift + i] -= lead * gc[i]
                fc.pop()
                while len(fc) > 1 and fc[-1] == 0:
                    fc.pop()
            return all(c == 0 for c in fc)

        for f, prime in candidates:
            assert eisenstein_at(f, prime)
            for deg in range(1, f.degree // 2 + 1):
                for tail in itertools.product(range(-height, height + 1), repeat=deg):
                    g = Poly(list(tail) + [1])
                    assert not divides(g, f), (f, g)


class TestCritProductDiscRelation:
    def test_odd_shape_critical_pair_oracle(self):
        # m = d-2: the two nonzero critical points are +-eta with
        # eta^2 = (d-2)b/d, and f is odd, so the product telescopes to
        # w^2 - f(eta)^2 with f(eta)^2 = eta^2^(d-2) (eta^2 - b)^2
        rng = random.Random(41)
        for d in (5, 7, 9):
            m = d - 2
            for _ in range(8):
                b = Fraction(rng.randint(1, 9), rng.randint(1, 4))
                w = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                eta2 = Fraction(d - 2) * b / d
                f_eta_sq = eta2 ** (d - 2) * (eta2 - b) ** 2
                assert crit_product(d, m, b, w) == w * w - f_eta_sq

    def test_ties_disc_to_critical_product(self):
        # disc(x^d - b x^m - w) factors as
        # (-1)^(d(d-1)/2) d^d (-w)^(m-1) * crit_product(d, m, b, w):
        # the zero critical point contributes (-w)^(m-1), the nonzero
        # ones the closed-form product
        rng = random.Random(43)
        for d, m in ((3, 2), (5, 3), (5, 4), (7, 5), (8, 7)):
            for _ in range(5):
                b = Fraction(rng.randint(1, 9), rng.randint(1, 4))
                w = Fraction(rng.choice([x for x in range(-9, 10) if x]), rng.randint(1, 4))
                lhs = disc_trinomial(Trinomial(1, -b, -w, d, m))
                scale = Fraction((-1) ** (d * (d - 1) // 2) * d**d)
                rhs = scale * (-w) ** (m - 1) * crit_product(d, m, b, w)
                assert lhs == rhs

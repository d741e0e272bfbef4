"""Tests for fractional ideals, splitting and ideal classes."""

from fractions import Fraction

import numpy as np
import pytest

from errors import NotPrime, NotSubmodule, ZeroIdeal
from ideals import (
    FracIdeal,
    class_number,
    class_order,
    ideal_class,
    ideal_conjugate,
    ideal_contains,
    ideal_from_generators,
    ideal_inverse,
    ideal_norm,
    ideal_power,
    ideal_product,
    ideal_subset,
    in_E,
    integral_ideals_up_to,
    inverse_norm,
    is_principal,
    primes_above,
    principal_form,
    principal_ideal,
    quotient_reps,
    unit_ideal,
)
from quadfield import elem_norm, make_field, squarefree_up_to


def _prime(D, p):
    return primes_above(make_field(D), p)[0][0]


class TestNormalForm:
    def test_principal_rational(self):
        f = make_field(5)
        assert principal_ideal(f.element(3)) == FracIdeal(f, Fraction(3), 1, 0)
        assert principal_ideal(f.element(Fraction(1, 2))) == FracIdeal(f, Fraction(1, 2), 1, 0)

    def test_generators_order_irrelevant(self):
        f = make_field(5)
        gens = [f.element(2), f.element(1, 1)]
        assert ideal_from_generators(f, gens) == ideal_from_generators(f, gens[::-1])
        assert ideal_from_generators(f, gens) == FracIdeal(f, Fraction(1), 2, 1)

    def test_zero_ideal(self):
        f = make_field(5)
        with pytest.raises(ZeroIdeal):
            ideal_from_generators(f, [f.zero])

    def test_contains(self):
        f = make_field(5)
        P2 = _prime(5, 2)
        assert ideal_contains(P2, f.element(2))
        assert ideal_contains(P2, f.element(1, 1))
        assert not ideal_contains(P2, f.one)
        assert ideal_subset(principal_ideal(f.element(2)), P2)


class TestSplitting:
    def test_ramified_over_2(self):
        f = make_field(5)
        primes = primes_above(f, 2)
        assert primes == [(FracIdeal(f, Fraction(1), 2, 1), 1)]
        P = primes[0][0]
        assert ideal_product(P, P) == principal_ideal(f.element(2))

    def test_split_over_3(self):
        f = make_field(5)
        (P, e), (Q, e2) = primes_above(f, 3)
        assert (e, e2) == (1, 1)
        assert (P.a, P.b, Q.a, Q.b) == (3, 1, 3, 2)
        assert P == ideal_from_generators(f, [f.element(3), f.element(1, 1)])
        assert ideal_product(P, Q) == principal_ideal(f.element(3))
        assert ideal_conjugate(P) == Q

    def test_split_half_case(self):
        f = make_field(7)
        primes = [P for P, _ in primes_above(f, 2)]
        assert primes == [FracIdeal(f, Fraction(1), 2, 0), FracIdeal(f, Fraction(1), 2, 1)]

    def test_inert(self):
        f = make_field(19)
        assert primes_above(f, 2) == [(principal_ideal(f.element(2)), 2)]

    def test_not_prime(self):
        with pytest.raises(NotPrime):
            primes_above(make_field(5), 4)


class TestInverse:
    def test_inverse_of_prime(self):
        P2 = _prime(5, 2)
        inv = ideal_inverse(P2)
        assert in_E(inv)
        assert inverse_norm(inv) == 2
        assert ideal_product(P2, inv) == unit_ideal(P2.field)

    def test_power(self):
        P2 = _prime(23, 2)
        assert ideal_norm(ideal_power(P2, 3)) == 8
        assert ideal_power(P2, -2) == ideal_inverse(ideal_power(P2, 2))
        assert ideal_power(P2, 0) == unit_ideal(P2.field)


class TestQuotient:
    def test_reps_zero_first(self):
        f = make_field(5)
        P2 = _prime(5, 2)
        reps = quotient_reps(unit_ideal(f), P2)
        assert len(reps) == 2
        assert reps[0].is_zero()

    def test_not_submodule(self):
        f = make_field(5)
        with pytest.raises(NotSubmodule):
            quotient_reps(_prime(5, 2), unit_ideal(f))


class TestPrincipal:
    def test_nonprincipal(self):
        assert is_principal(_prime(5, 2)) is None

    def test_cube_of_prime_over_2(self):
        C = ideal_power(_prime(23, 2), 3)
        g = is_principal(C)
        assert g is not None
        assert elem_norm(g) == 8
        assert principal_ideal(g) == C

    def test_unit_ideal(self):
        f = make_field(1)
        assert is_principal(unit_ideal(f)) is not None


class TestClassGroup:
    @pytest.mark.parametrize("D,h", [(1, 1), (2, 1), (5, 2), (15, 2), (23, 3), (14, 4), (19, 1)])
    def test_class_number(self, D, h):
        assert class_number(make_field(D)) == h

    @pytest.mark.parametrize("D", [5, 15, 23])
    def test_prime_over_2_generates(self, D):
        f = make_field(D)
        assert class_order(_prime(D, 2)) == class_number(f)

    def test_ideal_class_of_principal(self):
        f = make_field(23)
        assert ideal_class(unit_ideal(f)) == principal_form(f)
        assert ideal_class(principal_ideal(f.element(3, 1))) == principal_form(f)

    def test_class_respects_products(self):
        P = _prime(23, 2)
        Q = _prime(23, 3)
        assert ideal_class(ideal_product(P, Q)) == ideal_class(P) * ideal_class(Q)

    def test_integral_ideals_small(self):
        f = make_field(5)
        norms = [ideal_norm(I) for I in integral_ideals_up_to(f, 3)]
        assert norms == [1, 2, 3, 3]


def _random_ideal(rng, pool):
    return pool[rng.integers(len(pool))]


def test_algebra_properties_random():
    rng = np.random.default_rng(7)
    ds = squarefree_up_to(80)
    pools = {}
    for _ in range(1000):
        D = ds[rng.integers(len(ds))]
        f = make_field(D)
        pool = pools.setdefault(D, integral_ideals_up_to(f, 30))
        I, J = _random_ideal(rng, pool), _random_ideal(rng, pool)
        k = Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 5)))
        I = I.scaled(k)

        # norms multiply, inverses cancel
        assert ideal_norm(ideal_product(I, J)) == ideal_norm(I) * ideal_norm(J)
        assert ideal_product(I, ideal_inverse(I)) == unit_ideal(f)

        # |I/IJ| = Nm(J) for fractional I too
        assert len(quotient_reps(unit_ideal(f), J)) == ideal_norm(J)
        assert len(quotient_reps(I, ideal_product(I, J))) == ideal_norm(J)

        # conjugation inverts the class
        assert ideal_class(ideal_conjugate(I)) == ideal_class(I).inverse()


def test_splitting_reconstruction_random():
    rng = np.random.default_rng(11)
    ds = squarefree_up_to(200)
    small_primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    for _ in range(1000):
        f = make_field(ds[rng.integers(len(ds))])
        p = small_primes[rng.integers(len(small_primes))]
        primes = primes_above(f, p)
        product = unit_ideal(f)
        for P, deg in primes:
            product = ideal_product(product, P)
            assert ideal_norm(P) == p ** deg
        if len(primes) == 1 and primes[0][1] == 1:
            product = ideal_product(product, primes[0][0])
        assert product == principal_ideal(f.element(p))


def test_split_primes_ordered_by_normal_form():
    for D in squarefree_up_to(60):
        f = make_field(D)
        for p in (2, 3, 5, 7):
            primes = [P for P, deg in primes_above(f, p) if deg == 1]
            assert [P.b for P in primes] == sorted(P.b for P in primes)

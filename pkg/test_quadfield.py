"""Tests for quadratic field arithmetic."""

from fractions import Fraction

import numpy as np
import pytest

from errors import FieldMismatch, NotSquarefree
from quadfield import (
    ElemOp,
    OmegaKind,
    elem_arith,
    elem_inverse,
    elem_norm,
    embed,
    from_plane,
    is_squarefree,
    make_field,
    squarefree_up_to,
    units,
)


class TestMakeField:
    def test_sqrt_case(self):
        f = make_field(5)
        assert f.disc == -20
        assert f.omega_kind is OmegaKind.SQRT_D
        assert f.unit_count == 2
        assert f.omega_label == "sqrt(-5)"

    def test_half_case(self):
        f = make_field(7)
        assert f.disc == -7
        assert f.omega_kind is OmegaKind.HALF_ONE_PLUS_SQRT_D
        assert (f.trace_omega, f.norm_omega) == (1, 2)

    @pytest.mark.parametrize("D,count", [(1, 4), (2, 2), (3, 6), (23, 2)])
    def test_unit_count(self, D, count):
        assert make_field(D).unit_count == count

    def test_not_squarefree(self):
        with pytest.raises(NotSquarefree, match="2\\^2"):
            make_field(12)

    def test_non_positive(self):
        with pytest.raises(ValueError):
            make_field(0)

    def test_squarefree_count(self):
        assert len(squarefree_up_to(100)) == 61
        assert squarefree_up_to(10) == [1, 2, 3, 5, 6, 7, 10]
        assert not is_squarefree(18)


class TestElements:
    def test_product_with_conjugate(self):
        f = make_field(5)
        a = f.element(1, 1)
        assert a * a.conj() == f.element(6)
        assert elem_norm(a) == 6

    def test_omega_squared_half_case(self):
        f = make_field(7)
        w = f.omega
        # w^2 = w - 2
        assert w * w == f.element(-2, 1)

    def test_elem_arith_ops(self):
        f = make_field(13)
        a, b = f.element(2, 3), f.element(-1, 4)
        assert elem_arith(a, b, ElemOp.ADD) == f.element(1, 7)
        assert elem_arith(a, b, ElemOp.SUB) == f.element(3, -1)
        assert elem_arith(a, None, ElemOp.NEG) == f.element(-2, -3)
        assert elem_arith(a, None, "Conj") == f.element(2, -3)
        with pytest.raises(ValueError, match="two operands"):
            elem_arith(a, None, ElemOp.MUL)

    def test_field_mismatch(self):
        a = make_field(5).one
        b = make_field(6).one
        with pytest.raises(FieldMismatch):
            _ = a + b
        with pytest.raises(FieldMismatch):
            elem_arith(a, b, ElemOp.MUL)

    def test_int_coercion(self):
        f = make_field(2)
        assert f.omega + 3 == f.element(3, 1)
        assert 2 * f.omega == f.element(0, 2)

    def test_inverse(self):
        f = make_field(23)
        a = f.element(3, -2)
        assert a * elem_inverse(a) == f.one
        assert a / a == f.one
        with pytest.raises(ZeroDivisionError):
            elem_inverse(f.zero)

    def test_embed_half_case(self):
        f = make_field(7)
        z = embed(f.omega)
        assert (z.p, z.q) == (Fraction(1, 2), Fraction(1, 2))
        assert z.norm_sq() == elem_norm(f.omega) == 2
        assert from_plane(f, z) == f.omega

    @pytest.mark.parametrize("D", [1, 3])
    def test_units(self, D):
        f = make_field(D)
        us = units(f)
        assert len(us) == f.unit_count
        assert len(set(us)) == f.unit_count
        assert all(elem_norm(u) == 1 for u in us)


def test_norm_multiplicative_random():
    rng = np.random.default_rng(20240601)
    fields = [make_field(D) for D in squarefree_up_to(60)]
    for _ in range(1000):
        f = fields[rng.integers(len(fields))]
        u1, v1, u2, v2 = (int(x) for x in rng.integers(-50, 51, size=4))
        den = int(rng.integers(1, 7))
        a = f.element(Fraction(u1, den), v1)
        b = f.element(u2, Fraction(v2, den))
        assert elem_norm(a * b) == elem_norm(a) * elem_norm(b)
        assert embed(a).norm_sq() == elem_norm(a)

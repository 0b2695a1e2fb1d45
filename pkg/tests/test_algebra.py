from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from crsym.algebra import (
    I,
    GaussRat,
    HoloField,
    MixedPoly,
    conjugate,
    euler_field,
    is_pluriharmonic,
    lie_bracket,
    poly_arith,
    substitute_w,
    wirtinger,
)
from crsym.algebra import Z1, Z2, u, w, z1, z2
from oracles import from_sympy, gauss, holo_polys, polys, real_polys, to_sympy

HALF = Fraction(1, 2)


class TestGaussRat:
    def test_reduced_and_exact(self):
        x = GaussRat(Fraction(2, 4), Fraction(-3, 9))
        assert x.re == Fraction(1, 2) and x.im == Fraction(-1, 3)
        assert (x * x.conj()) == GaussRat(x.abs2())
        assert GaussRat(1, 2) / GaussRat(1, 2) == 1

    def test_rendering(self):
        assert str(GaussRat(Fraction(1, 2), Fraction(3, 4))) == "1/2+3/4*i"
        assert str(GaussRat(0, -1)) == "-i"
        assert str(GaussRat(Fraction(-2, 3))) == "-2/3"

    def test_immutable(self):
        with pytest.raises(AttributeError):
            GaussRat(1).re = 2

    @given(gauss, gauss, gauss)
    def test_field_laws(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert a.conj().conj() == a
        assert (a * b).conj() == a.conj() * b.conj()
        if b:
            assert (a / b) * b == a


class TestPolyArith:
    def test_additive_identity(self):
        p = z1 * Z2 + Z1 * z2
        assert poly_arith(p, MixedPoly.zero(), "add") == p

    def test_real_part_doubled(self):
        assert poly_arith((z1 * Z2).re(), MixedPoly.const(2), "mul") == z1 * Z2 + Z1 * z2

    def test_exponents_add(self):
        assert str(poly_arith(z1 * z2 ** 2, Z1 ** 2 * Z2 ** 2, "mul")) == "z1*z2^2*Z1^2*Z2^2"

    def test_no_zero_coefficients(self):
        p = poly_arith(z1 + z2, z1, "sub")
        assert p == z2 and len(p) == 1

    @given(polys(20), polys(20))
    def test_mul_matches_expansion(self, p, q):
        assert p * q == from_sympy(to_sympy(p) * to_sympy(q))

    @given(real_polys(), real_polys())
    def test_reality_propagates(self, p, q):
        assert p.is_real and q.is_real
        assert (p + q).is_real and (p * q).is_real


class TestConjugate:
    def test_examples(self):
        assert conjugate(z1 * Z2 * I) == -(z2 * Z1 * I)
        P = (Z1 * z2 ** 2).re()
        assert conjugate(P) == P
        assert conjugate(z1 ** 2 * z2 ** 3) == Z1 ** 2 * Z2 ** 3

    def test_w_dependent_rejected(self):
        with pytest.raises(ValueError):
            conjugate(w * z1)

    @given(polys())
    def test_involution(self, p):
        assert conjugate(conjugate(p)) == p


class TestWirtinger:
    def test_power_rule(self):
        P = (Z1 * z2 ** 2 + z1 * Z2 ** 2).scale(HALF)
        assert wirtinger(P, "z1") == (Z2 ** 2).scale(HALF)
        assert wirtinger(z1 ** 2 * Z1 ** 2, "z1") == 2 * z1 * Z1 ** 2

    def test_derived_example(self):
        P = I * z1 ** 2 * z2 ** 3 * (z1 - z2)
        assert wirtinger(P, "z2") == I * z1 ** 2 * (3 * z2 ** 2 * z1 - 4 * z2 ** 3)

    def test_rejects_conjugate_variable(self):
        with pytest.raises(ValueError):
            wirtinger(z1, "Z1")

    @given(polys(8), polys(8), st.sampled_from(["z1", "z2"]))
    def test_leibniz(self, p, q, var):
        assert wirtinger(p * q, var) == wirtinger(p, var) * q + p * wirtinger(q, var)


class TestPluriharmonic:
    def test_examples(self):
        assert is_pluriharmonic((z2 ** 2).re())
        assert not is_pluriharmonic(z1 * Z1)
        assert not is_pluriharmonic((Z1 * z2 ** 2).re())

    def test_rejects_non_real(self):
        with pytest.raises(ValueError):
            is_pluriharmonic(z1 * Z2)

    @given(real_polys(8))
    def test_split(self, p):
        mixed = p - p.pluriharmonic_part()
        assert mixed == p.mixed_part()
        assert is_pluriharmonic(p.pluriharmonic_part())
        assert mixed.pluriharmonic_part().is_zero()
        assert mixed.mixed_part() == mixed


class TestSubstituteW:
    def test_examples(self):
        assert substitute_w(w, z1 * Z1) == u + I * z1 * Z1
        assert substitute_w(w ** 2, MixedPoly.zero()) == u ** 2
        P = (Z1 * z2 ** 2).re()
        assert substitute_w(I * w, P) == I * u - (Z1 * z2 ** 2 + z1 * Z2 ** 2).scale(HALF)

    @given(holo_polys(), real_polys(3))
    def test_no_w_left(self, p, P):
        assert not substitute_w(p * w ** 2, P).has_w


class TestFields:
    def test_bracket_examples(self):
        W = HoloField.make(g=1)
        E = HoloField.make(g=w)
        assert lie_bracket(W, E) == W
        Y = euler_field(Fraction(1, 3), Fraction(1, 5))
        X = HoloField.make(f1=z1 ** 2 * z2 ** 3)
        lam1, lam2 = Fraction(1, 3), Fraction(1, 5)
        expected = X.scale(lam1 * (2 - 1) + lam2 * 3)
        assert lie_bracket(HoloField(Y.f1, Y.f2, 0), X) == expected

    def test_bracket_against_termwise_oracle(self):
        A = HoloField.make(f2=z1)
        B = HoloField.make(f1=I * z2 ** 2)
        # [A, B] = A(B^k) - B(A^k) by hand: A(i z2^2) = 2i z1 z2, B(z1) = i z2^2
        assert lie_bracket(A, B) == HoloField.make(f1=2 * I * z1 * z2, f2=-(I * z2 ** 2))

    @given(holo_polys(3), holo_polys(3), holo_polys(3), holo_polys(3))
    def test_antisymmetry_and_jacobi(self, a, b, c, d):
        X, Y, Z = HoloField(a, b, 0), HoloField(c, d, a), HoloField(b, 0, c)
        assert lie_bracket(X, Y) == -lie_bracket(Y, X)
        jac = lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) + lie_bracket(Z, lie_bracket(X, Y))
        assert jac.is_zero()

    def test_antiholomorphic_rejected(self):
        from crsym.errors import AntiholomorphicCoefficient

        with pytest.raises(AntiholomorphicCoefficient):
            HoloField.make(f1=Z1)

    def test_rendering(self):
        assert str(HoloField.make(f1=I * z2 ** 2)) == "i*z2^2*d1"
        assert str(euler_field(Fraction(1, 3), Fraction(1, 3))) == "1/3*z1*d1 + 1/3*z2*d2 + w*dw"

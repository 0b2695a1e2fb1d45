from fractions import Fraction as F

import pytest

from crsym.algebra import I, Z1, Z2, HoloField, MixedPoly, euler_field, z1, z2
from crsym.errors import DegenerateModel, NotHomogeneous
from crsym.linalg import rref_basis
from crsym.tangency import (
    bracket_closure_failures,
    complex_tangency_residual,
    compute_symmetry_algebra,
    holomorphic_degeneracy,
    is_symmetry,
    rigid_oracle_space,
    solve_weight,
    tangency_residual,
)
from crsym.weights import Weight, admissible_field_weights, infer_multitype_weights
from oracles import residual_oracle

T1 = (Z1 * z2 ** 2).re()
T2 = z1 * Z1 * (z2.re()) ** 2
L13 = Weight(F(1, 3), F(1, 3))


def test_w_derivative_always_symmetry():
    assert tangency_residual(HoloField.make(g=1), T1).is_zero()


def test_euler_field_is_symmetry():
    assert tangency_residual(euler_field(F(1, 3), F(1, 3)), T1).is_zero()
    assert tangency_residual(euler_field(F(1, 4), F(1, 4)), T2).is_zero()


def test_exotic_field_residual():
    X = HoloField.make(f1=I * z2 ** 2)
    assert tangency_residual(X, T1).is_zero()
    assert not tangency_residual(HoloField.make(f1=z2 ** 2), T1).is_zero()


def test_residual_matches_real_coordinates():
    P = T1
    for X in (HoloField.make(f1=I * z2 ** 2), HoloField.make(f1=z2, g=z1), euler_field(F(1, 3), F(1, 2))):
        ours = tangency_residual(X, P).is_zero()
        assert ours == (residual_oracle(X, P) == 0)


def test_solve_weight_examples():
    assert [str(X) for X in solve_weight(T1, L13, -1)] == ["dw"]
    assert len(solve_weight(T1, L13, 0)) == 3
    basis = solve_weight(T1, L13, F(1, 3))
    target = HoloField.make(f1=I * z2 ** 2)
    assert target in basis or any(X.scale(c) == target for X in basis for c in (1, -1, I, -I))


def test_solve_weight_rejects_inhomogeneous():
    with pytest.raises(NotHomogeneous):
        solve_weight(T1, Weight(F(1, 2), F(1, 2)), 0)
    with pytest.raises(DegenerateModel):
        solve_weight((z2 ** 2).re(), L13, 0)


@pytest.mark.parametrize("P, dim", [(T1, 10), (T2, 7)])
def test_dimensions(P, dim):
    alg = compute_symmetry_algebra(P)
    assert alg.dim == dim


def test_basis_fields_verified_by_independent_oracle():
    alg = compute_symmetry_algebra(T1)
    for _, X in alg.basis():
        assert residual_oracle(X, T1) == 0


def test_every_field_has_its_weight():
    alg = compute_symmetry_algebra(T2)
    lam = alg.weights
    for nu, X in alg.basis():
        for slot, shift in (("f1", lam.mu1), ("f2", lam.mu2), ("g", 1)):
            for m in getattr(X, slot).monomials():
                assert lam.mu1 * m[0] + lam.mu2 * m[1] + m[4] == nu + shift


def test_w_and_euler_present():
    for P in (T1, T2, z1 * Z1 + (z2 * Z2) ** 2):
        alg = compute_symmetry_algebra(P)
        lam = alg.weights
        assert alg.contains(HoloField.make(g=1), -1)
        assert alg.contains(euler_field(lam.mu1, lam.mu2), 0)


def test_bracket_closure():
    for P in (T1, T2):
        assert bracket_closure_failures(compute_symmetry_algebra(P)) == []


def test_rigid_oracle_matches_solver():
    P = T1
    lam = infer_multitype_weights(P)
    for nu in admissible_field_weights(lam):
        layout, rows = rigid_oracle_space(P, lam, nu)
        solved = compute_symmetry_algebra(P).rigid.get(nu, [])
        proj = rref_basis(layout.to_vector(HoloField(X.f1, X.f2, 0)) for X in solved)
        assert proj == rows


def test_parallel_matches_serial():
    a = compute_symmetry_algebra(T1, workers=1)
    b = compute_symmetry_algebra(T1, workers=2)
    assert [(nu, [str(X) for X in B]) for nu, B in a.components.items()] == [
        (nu, [str(X) for X in B]) for nu, B in b.components.items()
    ]


class TestHolomorphicDegeneracy:
    def test_independent_of_variable(self):
        X = holomorphic_degeneracy(z1 * Z1)
        assert X is not None and X.f1.is_zero() and X.g.is_zero()
        assert complex_tangency_residual(X, z1 * Z1).is_zero()

    def test_function_of_product(self):
        P = z1 * z2 * Z1 * Z2
        X = holomorphic_degeneracy(P)
        assert X is not None
        # proportional to z1 d1 - z2 d2
        c = X.f1.coeff((1, 0, 0, 0, 0, 0))
        assert X == HoloField.make(f1=z1, f2=-z2).scale(c)

    def test_nondegenerate(self):
        assert holomorphic_degeneracy(T1) is None


def test_symmetry_of_zero_field():
    assert is_symmetry(HoloField.zero(), T1)
    assert MixedPoly.zero() == tangency_residual(HoloField.zero(), T1)

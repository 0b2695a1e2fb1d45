from fractions import Fraction

import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from crsym.linalg import Echelon, in_span, kernel, rank, rref_basis

entries = st.integers(-4, 4).map(Fraction)
matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=1, max_size=6).map(lambda rows: (rows, n))
)


def sparse(row):
    return {k: v for k, v in enumerate(row) if v}


def as_dense(v, n):
    return [v.get(k, Fraction(0)) for k in range(n)]


@given(matrices)
def test_kernel_matches_sympy(data):
    rows, n = data
    ours = kernel([sparse(r) for r in rows], n)
    M = sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in r] for r in rows])
    ref = M.nullspace()
    assert len(ours) == len(ref)
    for v in ours:
        assert all(x == 0 for x in M * sp.Matrix([sp.Rational(x.numerator, x.denominator) for x in as_dense(v, n)]))
    if ref:
        ref_rref = rref_basis(sparse([Fraction(int(x.p), int(x.q)) for x in vec]) for vec in ref)
        assert ref_rref == ours


@given(matrices, st.randoms())
def test_kernel_row_order_independent(data, rnd):
    rows, n = data
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    assert kernel([sparse(r) for r in rows], n) == kernel([sparse(r) for r in shuffled], n)


@given(matrices)
def test_rank_matches_sympy(data):
    rows, n = data
    M = sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in r] for r in rows])
    assert rank([sparse(r) for r in rows]) == M.rank()


def test_in_span():
    basis = rref_basis([{0: 1, 1: 2}, {1: 1, 2: 1}])
    assert in_span(basis, {0: 2, 1: 5, 2: 1}) is not None
    assert in_span(basis, {2: 1}) is None


def test_echelon_integral_rows():
    e = Echelon().extend([{0: Fraction(1, 2), 1: Fraction(1, 3)}, {0: 3, 1: 2}])
    assert e.rank == 1
    assert e.rows[0] == {0: 3, 1: 2}

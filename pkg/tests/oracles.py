"""Independent reference computations built on sympy."""
from fractions import Fraction

import sympy as sp
from hypothesis import strategies as st

from crsym.algebra import GaussRat, MixedPoly

SYMS = sp.symbols("z1 z2 Z1 Z2 w u")
x1, y1, x2, y2, uu = sp.symbols("x1 y1 x2 y2 u", real=True)


def to_sympy(p: MixedPoly):
    out = sp.Integer(0)
    for m, c in p.items():
        coef = sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(c.im.numerator, c.im.denominator)
        term = coef
        for s, e in zip(SYMS, m):
            term *= s ** e
        out += term
    return sp.expand(out)


def from_sympy(expr) -> MixedPoly:
    expr = sp.expand(expr)
    if expr == 0:
        return MixedPoly.zero()
    poly = sp.Poly(expr, *SYMS)
    terms = {}
    for mono, c in poly.terms():
        re, im = sp.re(c), sp.im(c)
        terms[tuple(mono)] = GaussRat(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))
    return MixedPoly(terms)


def realify(expr, P_expr=None):
    """Substitute z = x + iy, conj z = x - iy and w = u + iP."""
    sub = {
        SYMS[0]: x1 + sp.I * y1,
        SYMS[1]: x2 + sp.I * y2,
        SYMS[2]: x1 - sp.I * y1,
        SYMS[3]: x2 - sp.I * y2,
        SYMS[5]: uu,
    }
    if P_expr is not None:
        sub[SYMS[4]] = uu + sp.I * P_expr.subs(sub)
    return sp.expand(expr.subs(sub, simultaneous=True))


def residual_oracle(X, P: MixedPoly):
    """``Im g - 2 Re(f1 P_z1 + f2 P_z2)`` on ``w = u + iP`` in real coordinates."""
    Ps = to_sympy(P)
    f1, f2, g = (to_sympy(c) for c in X.components())
    s = f1 * sp.diff(Ps, SYMS[0]) + f2 * sp.diff(Ps, SYMS[1])
    s_r = realify(s, Ps)
    g_r = realify(g, Ps)
    return sp.expand(sp.im(g_r) - 2 * sp.re(s_r))


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
gauss = st.builds(GaussRat, rationals, rationals)
small_exp = st.integers(0, 3)
monos = st.tuples(small_exp, small_exp, small_exp, small_exp, st.just(0), st.just(0))
holo_monos = st.tuples(small_exp, small_exp, st.just(0), st.just(0), st.just(0), st.just(0))


def polys(max_terms=6, mono_strategy=monos):
    return st.dictionaries(mono_strategy, gauss, max_size=max_terms).map(MixedPoly)


def real_polys(max_terms=5):
    return polys(max_terms).map(lambda p: p.re())


def holo_polys(max_terms=4):
    return polys(max_terms, holo_monos)

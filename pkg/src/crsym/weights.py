"""Weighted degrees, multitype weights of a model in the given coordinates, and
the finite set of weights a weighted-homogeneous field can carry."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .algebra import MixedPoly, Mono, holo_mono, is_mixed
from .errors import InputError, NoFiniteMultitype, NonRealModel, NotHomogeneous, PluriharmonicInput

HALF = Fraction(1, 2)


@dataclass(frozen=True, order=True)
class Weight:
    """Weights ``(mu1, mu2)`` of ``z1, z2``; ``w`` always has weight 1."""

    mu1: Fraction
    mu2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "mu1", Fraction(self.mu1))
        object.__setattr__(self, "mu2", Fraction(self.mu2))

    @property
    def is_catlin(self) -> bool:
        return 0 < self.mu2 <= self.mu1 <= HALF

    def __iter__(self):
        return iter((self.mu1, self.mu2))

    def __str__(self):
        return f"({self.mu1}, {self.mu2})"


def weighted_degree(m: Mono, lam: Weight) -> Fraction:
    return lam.mu1 * (m[0] + m[2]) + lam.mu2 * (m[1] + m[3]) + (m[4] + m[5])


def is_homogeneous(P: MixedPoly, lam: Weight, degree=1) -> bool:
    return all(weighted_degree(m, lam) == degree for m in P.monomials())


def _check_model_input(P: MixedPoly):
    if P.is_zero():
        raise PluriharmonicInput("P is zero")
    if P.has_w or P.has_u:
        raise InputError("model polynomial must not contain w or u")
    if not P.is_real:
        raise NonRealModel("model polynomial must be real valued")


def support_rows(P: MixedPoly) -> list:
    """Distinct per-variable total degrees ``(a1+b1, a2+b2)``."""
    return sorted({(m[0] + m[2], m[1] + m[3]) for m in P.monomials()})


def _solve_two(r, s):
    det = r[0] * s[1] - r[1] * s[0]
    mu1 = Fraction(s[1] - r[1], det)
    mu2 = Fraction(r[0] - s[0], det)
    return mu1, mu2


def infer_multitype_weights(P: MixedPoly) -> Weight:
    """Lexicographically least ``(mu1, mu2)`` with ``0 < mu2 <= mu1 <= 1/2``
    giving every monomial of P weighted degree 1 (given coordinates only)."""
    _check_model_input(P)
    if any(not is_mixed(m) for m in P.monomials()):
        raise PluriharmonicInput("P contains pluriharmonic terms")
    rows = support_rows(P)
    if all(r[1] == 0 for r in rows) or all(r[0] == 0 for r in rows):
        raise NoFiniteMultitype("P does not depend on both variables")
    base = rows[0]
    other = next((r for r in rows[1:] if r[0] * base[1] - r[1] * base[0]), None)
    if other is None:
        if len(rows) > 1:
            raise NotHomogeneous(f"monomials of bidegrees {rows} cannot all have degree 1")
        c1, c2 = base
        mu1 = mu2 = Fraction(1, c1 + c2)
    else:
        mu1, mu2 = _solve_two(base, other)
        for r in rows:
            if mu1 * r[0] + mu2 * r[1] != 1:
                raise NotHomogeneous(f"no weight makes all bidegrees {rows} have degree 1")
    lam = Weight(mu1, mu2)
    if not lam.is_catlin:
        raise NoFiniteMultitype(
            f"the only homogeneity weight {lam} violates 0 < mu2 <= mu1 <= 1/2"
        )
    return lam


def homogeneity_weight(P: MixedPoly) -> Weight:
    """Some positive weight making P homogeneous of degree 1 (ordering and the
    1/2 bound not enforced); used for gradings of degenerate inputs."""
    _check_model_input(P)
    rows = support_rows(P)
    base = rows[0]
    other = next((r for r in rows[1:] if r[0] * base[1] - r[1] * base[0]), None)
    if other is not None:
        mu1, mu2 = _solve_two(base, other)
        if mu1 <= 0 or mu2 <= 0 or any(mu1 * r[0] + mu2 * r[1] != 1 for r in rows):
            raise NotHomogeneous("P is not weighted homogeneous for positive weights")
        return Weight(mu1, mu2)
    if len(rows) > 1:
        raise NotHomogeneous("P is not weighted homogeneous")
    # a single bidegree: equal weights work, whether or not a variable is absent
    mu = Fraction(1, sum(base))
    return Weight(mu, mu)


def farey(n: int) -> list:
    """All rationals in (0, 1/2] with denominator <= n, increasing."""
    vals = {Fraction(a, d) for d in range(2, n + 1) for a in range(1, d // 2 + 1)}
    return sorted(vals)


def brute_force_weights(P: MixedPoly, max_denominator: int = 64) -> Weight | None:
    """Enumerate weights with denominators <= max_denominator and return the
    lexicographically least valid one (independent check of the inference).
    For each candidate mu1 the only possible mu2 is read off one row."""
    rows = support_rows(P)
    grid = farey(max_denominator)
    allowed = set(grid)
    pivot = next((r for r in rows if r[1]), None)
    for mu1 in grid:
        if pivot is None:
            cands = [mu2 for mu2 in grid if mu2 <= mu1]
        else:
            mu2 = (1 - mu1 * pivot[0]) / pivot[1]
            cands = [mu2] if mu2 in allowed and mu2 <= mu1 else []
        for mu2 in cands:
            if all(mu1 * r[0] + mu2 * r[1] == 1 for r in rows):
                return Weight(mu1, mu2)
    return None


def admissible_field_weights(lam: Weight, degree_cap=1) -> list:
    """Sorted weights in ``[-1, degree_cap]`` at which a nonzero
    weighted-homogeneous holomorphic field ansatz exists."""
    cap = Fraction(degree_cap)
    mu1, mu2 = lam.mu1, lam.mu2
    top = cap + 1
    vals = set()
    for c3 in range(0, floor(top) + 1):
        for c1 in range(0, floor((top - c3) / mu1) + 1):
            rest = top - c3 - c1 * mu1
            for c2 in range(0, floor(rest / mu2) + 1):
                s = c1 * mu1 + c2 * mu2 + c3
                for shift in (mu1, mu2, Fraction(1)):
                    v = s - shift
                    if -1 <= v <= cap:
                        vals.add(v)
    return sorted(vals)


def enumerate_holo_monomials(target, lam: Weight, allow_w: bool = True) -> list:
    """Holomorphic monomials ``z1^c1 z2^c2 w^c3`` of weighted degree ``target``."""
    target = Fraction(target)
    if target < 0:
        return []
    out = []
    for c3 in range(0, (floor(target) if allow_w else 0) + 1):
        r3 = target - c3
        for c1 in range(0, floor(r3 / lam.mu1) + 1):
            r1 = r3 - c1 * lam.mu1
            c2 = r1 / lam.mu2
            if c2.denominator == 1:
                out.append(holo_mono(c1, int(c2), c3))
    return sorted(out)

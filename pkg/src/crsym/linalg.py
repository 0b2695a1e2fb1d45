"""Exact sparse linear algebra over the rationals.

Rows are sparse ``{column: value}`` dicts. Elimination is fraction-free: each
incoming row is scaled to a primitive integer vector and reduced against the
stored pivots by integer cross-multiplication, so entries stay integral and
small (content is divided out after every step). Reduced row echelon forms are
unique, which makes kernels and spans independent of row order.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

SparseVec = dict


def _primitive(row: Mapping) -> dict:
    """Integer multiple of ``row`` with content 1 and positive leading entry."""
    items = [(c, Fraction(v)) for c, v in row.items() if v]
    if not items:
        return {}
    den = 1
    for _, v in items:
        den = lcm(den, v.denominator)
    ints = {c: int(v * den) for c, v in items}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if ints[min(ints)] < 0:
        g = -g
    return {c: v // g for c, v in ints.items()}


class Echelon:
    """Incremental fraction-free row echelon form."""

    def __init__(self):
        self.rows: dict = {}  # leading column -> primitive integer row

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list:
        return sorted(self.rows)

    def reduce(self, row: Mapping) -> dict:
        """Integer row obtained by eliminating every stored pivot it meets
        in leading position. Zero result means ``row`` is in the span."""
        r = _primitive(row)
        while r:
            lead = min(r)
            p = self.rows.get(lead)
            if p is None:
                return r
            a, b = p[lead], r[lead]
            out = {}
            for c in set(r) | set(p):
                v = a * r.get(c, 0) - b * p.get(c, 0)
                if v:
                    out[c] = v
            r = _primitive(out)
        return r

    def add(self, row: Mapping) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        self.rows[min(r)] = r
        return True

    def extend(self, rows: Iterable) -> "Echelon":
        for row in rows:
            self.add(row)
        return self

    def rref(self) -> dict:
        """Reduced row echelon form ``{pivot: {col: Fraction}}`` with unit pivots."""
        out: dict = {}
        for p in sorted(self.rows, reverse=True):
            row = self.rows[p]
            lead = row[p]
            r = {c: Fraction(v, lead) for c, v in row.items()}
            for c in sorted(k for k in r if k != p and k in out):
                f = r.get(c)
                if not f:
                    continue
                for k, v in out[c].items():
                    nv = r.get(k, 0) - f * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
            out[p] = r
        return dict(sorted(out.items()))


def rref_basis(vectors: Iterable[Mapping]) -> list:
    """Canonical basis of the span: rows of the RREF, ordered by pivot."""
    return list(Echelon().extend(vectors).rref().values())


def kernel(rows: Iterable[Mapping], ncols: int) -> list:
    """Canonical (RREF) basis of ``{x : row . x = 0 for all rows}``."""
    R = Echelon().extend(rows).rref()
    free = [c for c in range(ncols) if c not in R]
    raw = []
    for f in free:
        v = {f: Fraction(1)}
        for p, row in R.items():
            x = row.get(f)
            if x:
                v[p] = -x
        raw.append(v)
    return rref_basis(raw)


def rank(rows: Iterable[Mapping]) -> int:
    return Echelon().extend(rows).rank


def in_span(basis_rref: list, target: Mapping) -> list | None:
    """Coefficients expressing ``target`` in an RREF basis, or None."""
    leads = [min(b) for b in basis_rref]
    coeffs = [Fraction(target.get(l, 0)) for l in leads]
    resid = {c: Fraction(v) for c, v in target.items() if v}
    for a, b in zip(coeffs, basis_rref):
        if a:
            for c, v in b.items():
                nv = resid.get(c, 0) - a * v
                if nv:
                    resid[c] = nv
                else:
                    resid.pop(c, None)
    return None if resid else coeffs


def dense(v: Mapping, n: int) -> list:
    return [Fraction(v.get(k, 0)) for k in range(n)]

"""Infinitesimal CR symmetries of ``M_P = {Im w = P}``.

A holomorphic field ``X = f1 d1 + f2 d2 + g dw`` is a symmetry iff

    rho = Im g - 2 Re(f1 P_z1 + f2 P_z2)

vanishes identically after substituting ``w = u + iP``. For a weight ``nu`` the
ansatz has ``f_j`` of weighted degree ``nu + mu_j`` and ``g`` of degree
``nu + 1``; every complex coefficient contributes a real and an imaginary
rational unknown, and every coefficient of ``rho`` gives real linear
constraints. The symmetry space of weight ``nu`` is the rational kernel.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    FIELD_SLOTS,
    ONE,
    I,
    HoloField,
    MixedPoly,
    lie_bracket,
    swap_mono,
    u_plus_iP_powers,
)
from .errors import DegenerateModel, InternalInconsistency, NotHomogeneous
from .linalg import in_span, kernel
from .weights import (
    Weight,
    admissible_field_weights,
    enumerate_holo_monomials,
    homogeneity_weight,
    infer_multitype_weights,
    is_homogeneous,
)

HALF = Fraction(1, 2)
_DERIV = {"f1": "z1", "f2": "z2"}


def _substituted(mono, P: MixedPoly, cache: dict) -> MixedPoly:
    base = MixedPoly._raw({(mono[0], mono[1], 0, 0, 0, 0): ONE})
    k = mono[4]
    return base if k == 0 else base * u_plus_iP_powers(P, k, cache)


def tangency_residual(X: HoloField, P: MixedPoly) -> MixedPoly:
    """``Im g - 2 Re(f1 P_z1 + f2 P_z2)`` restricted to ``w = u + iP``."""
    cache: dict = {}
    g = X.g.substitute_w(P, cache)
    s = X.f1.substitute_w(P, cache) * P.derivative("z1") + X.f2.substitute_w(P, cache) * P.derivative("z2")
    return g.im() - s.re().scale(2)


def complex_tangency_residual(X: HoloField, P: MixedPoly) -> MixedPoly:
    """``X(Im w - P) = g/(2i) - f1 P_z1 - f2 P_z2`` on ``w = u + iP``."""
    cache: dict = {}
    g = X.g.substitute_w(P, cache)
    s = X.f1.substitute_w(P, cache) * P.derivative("z1") + X.f2.substitute_w(P, cache) * P.derivative("z2")
    return g.scale(I * Fraction(-1, 2)) - s


def is_symmetry(X: HoloField, P: MixedPoly) -> bool:
    return tangency_residual(X, P).is_zero()


@dataclass(frozen=True)
class Layout:
    """Unknowns of a weight-``nu`` ansatz: ``(slot, mono, part)`` with part 0
    for the real and 1 for the imaginary part of the coefficient."""

    nu: Fraction
    unknowns: tuple

    @classmethod
    def build(cls, lam: Weight, nu, rigid: bool = False, slots=FIELD_SLOTS) -> "Layout":
        nu = Fraction(nu)
        degs = {"f1": nu + lam.mu1, "f2": nu + lam.mu2, "g": nu + 1}
        unk = []
        for slot in slots:
            for m in enumerate_holo_monomials(degs[slot], lam, allow_w=not rigid):
                unk.append((slot, m, 0))
                unk.append((slot, m, 1))
        return cls(nu, tuple(unk))

    def __len__(self):
        return len(self.unknowns)

    def to_field(self, vec) -> HoloField:
        parts = {s: {} for s in FIELD_SLOTS}
        for k, v in (vec.items() if isinstance(vec, dict) else enumerate(vec)):
            if not v:
                continue
            slot, m, part = self.unknowns[k]
            c = parts[slot].get(m, 0)
            parts[slot][m] = c + (Fraction(v) if part == 0 else I * Fraction(v))
        return HoloField(*(MixedPoly(parts[s]) for s in FIELD_SLOTS))

    def to_vector(self, X: HoloField) -> dict | None:
        """Coordinates of X in this layout; None if X uses other monomials."""
        index = {u: k for k, u in enumerate(self.unknowns)}
        vec = {}
        for (slot, m), c in X.items():
            for part, val in ((0, c.re), (1, c.im)):
                if val:
                    k = index.get((slot, m, part))
                    if k is None:
                        return None
                    vec[k] = val
        return vec


def _unit_residuals(layout: Layout, P: MixedPoly, complex_: bool = False) -> list:
    """Residual polynomial contributed by each unit unknown."""
    cache: dict = {}
    dP = {"f1": P.derivative("z1"), "f2": P.derivative("z2")}
    out = []
    unk = layout.unknowns
    for k in range(0, len(unk), 2):
        slot, m, _ = unk[k]
        s = _substituted(m, P, cache)
        if slot == "g":
            if complex_:
                t = s.scale(I * Fraction(-1, 2))
                out += [t, t.scale(I)]
            else:
                sc = s.conjugate()
                out += [(s - sc).scale(I * Fraction(-1, 2)), (s + sc).scale(HALF)]
        else:
            t = s * dP[slot]
            if complex_:
                out += [-t, t.scale(-I)]
            else:
                tc = t.conjugate()
                out += [-(t + tc), (tc - t).scale(I)]
    return out


def _constraint_rows(residuals: list, real_residual: bool) -> list:
    by_mono: dict = {}
    for col, r in enumerate(residuals):
        for m, c in r._terms.items():
            by_mono.setdefault(m, {})[col] = c
    rows = []
    for m in sorted(by_mono):
        entries = by_mono[m]
        if real_residual:
            sm = swap_mono(m)
            if sm < m:
                continue  # conjugate constraint of the swapped monomial
            rows.append({c: v.re for c, v in entries.items() if v.re})
            if sm != m:
                rows.append({c: v.im for c, v in entries.items() if v.im})
        else:
            rows.append({c: v.re for c, v in entries.items() if v.re})
            rows.append({c: v.im for c, v in entries.items() if v.im})
    return [r for r in rows if r]


def _check_input(P: MixedPoly, lam: Weight):
    if P.is_zero() or not P.mixed_part():
        raise DegenerateModel("P is zero or pluriharmonic")
    if not is_homogeneous(P, lam):
        raise NotHomogeneous(f"P is not homogeneous of degree 1 for weights {lam}")


def solve_weight_vectors(P: MixedPoly, lam: Weight, nu, rigid: bool = False):
    """Kernel (canonical RREF rows) and layout for weight ``nu``."""
    layout = Layout.build(lam, nu, rigid)
    if not len(layout):
        return layout, []
    res = _unit_residuals(layout, P)
    return layout, kernel(_constraint_rows(res, True), len(layout))


def solve_weight(P: MixedPoly, lam: Weight, nu, rigid: bool = False) -> list:
    """Echelonized real basis of the symmetries of weight ``nu``."""
    _check_input(P, lam)
    layout, vecs = solve_weight_vectors(P, lam, nu, rigid)
    basis = [layout.to_field(v) for v in vecs]
    for X in basis:
        if not is_symmetry(X, P):
            raise InternalInconsistency(f"solver returned a non-symmetry {X}")
    return basis


def component_tag(nu: Fraction) -> str:
    if nu == -1:
        return "g-1"
    if nu < 0:
        return "gt"
    if nu == 0:
        return "g0"
    if nu < 1:
        return "gc+gn"
    return "g1"


@dataclass
class GradedAlgebra:
    P: MixedPoly
    weights: Weight
    components: dict = field(default_factory=dict)  # nu -> [HoloField]
    rigid: dict = field(default_factory=dict)  # nu -> [HoloField]
    vectors: dict = field(default_factory=dict)  # nu -> (Layout, rref rows)

    @property
    def labels(self) -> dict:
        return {nu: component_tag(nu) for nu in self.components}

    @property
    def dim(self) -> int:
        return sum(len(b) for b in self.components.values())

    def dims(self) -> dict:
        return {nu: len(b) for nu, b in self.components.items()}

    def basis(self) -> list:
        return [(nu, X) for nu, b in self.components.items() for X in b]

    def contains(self, X: HoloField, nu) -> bool:
        nu = Fraction(nu)
        if X.is_zero():
            return True
        if nu not in self.vectors:
            return False
        layout, rows = self.vectors[nu]
        vec = layout.to_vector(X)
        return vec is not None and in_span(rows, vec) is not None


def _solve_job(args):
    P, lam, nu = args
    layout, vecs = solve_weight_vectors(P, lam, nu, rigid=False)
    rlayout, rvecs = solve_weight_vectors(P, lam, nu, rigid=True)
    return nu, layout, vecs, [rlayout.to_field(v) for v in rvecs]


def worker_count(workers: int | None = None) -> int:
    if workers is None:
        raw = os.environ.get("CRSYM_THREADS", "1")
        try:
            workers = int(raw)
        except ValueError:
            workers = 1
    if workers <= 0:
        workers = os.cpu_count() or 1
    return workers


def compute_symmetry_algebra(P: MixedPoly, lam: Weight | None = None, workers: int | None = None) -> GradedAlgebra:
    """Solve every admissible weight in ``[-1, 1]``; results merged in weight order."""
    if lam is None:
        lam = infer_multitype_weights(P)
    _check_input(P, lam)
    jobs = [(P, lam, nu) for nu in admissible_field_weights(lam)]
    n = worker_count(workers)
    if n > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n) as ex:
            results = list(ex.map(_solve_job, jobs))
    else:
        results = [_solve_job(j) for j in jobs]
    alg = GradedAlgebra(P, lam)
    for nu, layout, vecs, rigid in sorted(results, key=lambda r: r[0]):
        if not vecs:
            continue
        basis = [layout.to_field(v) for v in vecs]
        for X in basis + rigid:
            if not is_symmetry(X, P):
                raise InternalInconsistency(f"solver returned a non-symmetry {X}")
        alg.components[nu] = basis
        alg.rigid[nu] = rigid
        alg.vectors[nu] = (layout, vecs)
    return alg


def bracket_closure_failures(alg: GradedAlgebra) -> list:
    """Pairs of basis fields whose bracket leaves the computed algebra."""
    bad = []
    items = alg.basis()
    for i, (a, X) in enumerate(items):
        for b, Y in items[i + 1:]:
            s = a + b
            if not (-1 <= s <= 1):
                continue
            Z = lie_bracket(X, Y)
            if not alg.contains(Z, s):
                bad.append((X, Y, Z))
    return bad


def rigid_oracle_space(P: MixedPoly, lam: Weight, nu):
    """Rigid (f1, f2) solutions from the pluriharmonicity criterion alone:
    ``2 Re(f1 P_z1 + f2 P_z2)`` has no mixed monomial. Returns the f-only
    layout and an RREF basis in it."""
    layout = Layout.build(lam, nu, rigid=True, slots=("f1", "f2"))
    if not len(layout):
        return layout, []
    dP = {"f1": P.derivative("z1"), "f2": P.derivative("z2")}
    res = []
    for k in range(0, len(layout.unknowns), 2):
        slot, m, _ = layout.unknowns[k]
        t = MixedPoly._raw({m: ONE}) * dP[slot]
        tc = t.conjugate()
        res += [(t + tc).mixed_part(), (t - tc).scale(I).mixed_part()]
    return layout, kernel(_constraint_rows(res, True), len(layout))


def holomorphic_degeneracy(P: MixedPoly, degree_cap=1) -> HoloField | None:
    """A nonzero holomorphic field tangent to ``M_P`` in the complex sense,
    searched weight by weight; None if every homogeneous kernel is trivial."""
    lam = homogeneity_weight(P)
    for nu in admissible_field_weights(lam, degree_cap):
        layout = Layout.build(lam, nu)
        if not len(layout):
            continue
        res = _unit_residuals(layout, P, complex_=True)
        vecs = kernel(_constraint_rows(res, False), len(layout))
        if vecs:
            X = layout.to_field(vecs[0])
            if not complex_tangency_residual(X, P).is_zero():
                raise InternalInconsistency("degeneracy witness fails verification")
            return X
    return None

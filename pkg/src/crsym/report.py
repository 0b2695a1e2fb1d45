"""Full analysis of a model and its versioned JSON report."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .algebra import MixedPoly
from .classify import (
    detect_balanced,
    detect_exotic,
    is_linear,
    levi_rank_at_origin,
    match_table_row,
    rotations_of,
    split_components,
)
from .errors import InternalInconsistency, NonRealModel
from .tangency import GradedAlgebra, compute_symmetry_algebra, holomorphic_degeneracy
from .weights import brute_force_weights, infer_multitype_weights

SCHEMA_VERSION = 1


@dataclass
class Report:
    input: str
    weights: object
    levi_rank_origin: int
    holo_nondegenerate: bool
    algebra: GradedAlgebra
    classification: object = None
    table_row: str | None = None
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        comps = []
        for nu, basis in self.algebra.components.items():
            comps.append(
                {
                    "weight": str(nu),
                    "dim": len(basis),
                    "rigid_dim": len(self.algebra.rigid.get(nu, [])),
                    "basis": [str(X) for X in basis],
                }
            )
        return {
            "schema_version": SCHEMA_VERSION,
            "input": self.input,
            "weights": {"mu1": str(self.weights.mu1), "mu2": str(self.weights.mu2)},
            "levi_rank_origin": self.levi_rank_origin,
            "holo_nondegenerate": self.holo_nondegenerate,
            "components": comps,
            "classification": self.classification.as_dict() if self.classification else None,
            "table_row": self.table_row,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [
            f"P = {self.input}",
            f"weights (given coordinates): mu1 = {self.weights.mu1}, mu2 = {self.weights.mu2}",
            f"Levi rank at 0: {self.levi_rank_origin}",
            f"holomorphically nondegenerate: {'yes' if self.holo_nondegenerate else 'no'}",
            f"dim g = {self.algebra.dim}",
        ]
        for nu, basis in self.algebra.components.items():
            rd = len(self.algebra.rigid.get(nu, []))
            lines.append(f"  weight {nu}: dim {len(basis)} (rigid {rd})")
            lines.extend(f"    {X}" for X in basis)
        if self.classification:
            c = self.classification
            lines.append(
                "profile (g, gt, g0_re, g0_im, g1) = "
                f"{c.table_profile}; g0 = {c.dim_g0}, gc = {c.dim_gc}, gn = {c.dim_gn}, "
                f"nilpotent rotation: {'yes' if c.dim_g0_nil else 'no'}"
            )
            lines.append(f"table row: {self.table_row or 'none'}")
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)


def analyze(P: MixedPoly, strip_pluriharmonic: bool = False, max_denominator: int = 64, workers=None) -> Report:
    if not P.is_real:
        raise NonRealModel(f"{P} is not real valued")
    notes = []
    if strip_pluriharmonic:
        ph = P.pluriharmonic_part()
        if ph:
            notes.append(f"stripped pluriharmonic terms: {ph}")
            P = P.mixed_part()
    lam = infer_multitype_weights(P)
    brute = brute_force_weights(P, max_denominator)
    if brute is None:
        notes.append(f"brute-force weight check skipped: denominators exceed {max_denominator}")
    elif brute != lam:
        raise InternalInconsistency(f"inferred weights {lam} differ from enumerated {brute}")
    notes.append("weights are computed in the given coordinates")
    levi = levi_rank_at_origin(P)
    if levi == 2:
        notes.append("Levi form nondegenerate at 0")
    witness = holomorphic_degeneracy(P)
    alg = compute_symmetry_algebra(P, lam, workers=workers)
    rep = Report(str(P), lam, levi, witness is None, alg, notes=notes)
    if witness is not None:
        notes.append(f"holomorphically degenerate: {witness} is tangent; classification skipped")
        return rep
    row = split_components(alg)
    rep.classification = row
    rep.table_row = match_table_row(row, lam)
    if (detect_balanced(P) is not None) != (row.dim_g1 > 0):
        raise InternalInconsistency("balanced detector disagrees with dim g1")
    for Y in rotations_of(alg):
        if not is_linear(Y):
            notes.append(f"nonlinear rotation {Y}: diagonal rotation counts may not match adapted coordinates")
    ex = detect_exotic(alg)
    if ex is not None:
        kind = "monomial multiple of a diagonal field" if ex.monomial_diagonal else "not monomial-diagonal"
        notes.append(f"exotic symmetry of weight {ex.weight}: {ex.field} ({kind})")
    return rep

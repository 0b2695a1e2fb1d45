"""Model families with exotic symmetries, their expected dimension profiles and
a sweep harness that checks computed algebras against them."""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd

from .algebra import GaussRat, MixedPoly
from .classify import ClassificationRow, match_table_row, split_components
from .errors import CRSymError, DegenerateInstance, InvalidParams
from .tangency import compute_symmetry_algebra, holomorphic_degeneracy, worker_count
from .weights import Weight, infer_multitype_weights

ROW_IDS = ("T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8", "T9", "GN10", "GN9", "QUADRIC_M", "EX_S5", "EX_TH2")

z1, z2 = MixedPoly.var("z1"), MixedPoly.var("z2")
Z1, Z2 = MixedPoly.var("Z1"), MixedPoly.var("Z2")
ONE = MixedPoly.const(1)

DEFAULTS = {
    "T1": {"alpha": 2},
    "T2": {"k": 1, "m": 2},
    "T3": {"k": 1, "l": 1, "m": 1, "alpha": 1, "beta": 2},
    "T4": {"alpha": 2},
    "T5": {"alpha": 4},
    "T6": {"alpha": 2},
    "T7": {"p": 3, "q": 1, "alpha": 2, "beta": 1, "m": 1, "C": 3},
    "T8": {"p": 1, "q": 1, "alpha": 1, "beta": 3, "terms": ((2, 0, 1), (3, 1, 1))},
    "T9": {"alpha": 2},
    "GN10": {"l": 2},
    "GN9": {"l": 2, "sign": 1},
    "QUADRIC_M": {"m": 2},
    "EX_S5": {},
    "EX_TH2": {},
}


@dataclass(frozen=True)
class ModelSpec:
    row_id: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.row_id not in ROW_IDS:
            raise InvalidParams(f"unknown row id {self.row_id!r}; expected one of {', '.join(ROW_IDS)}")
        merged = dict(DEFAULTS[self.row_id])
        unknown = set(self.params) - set(merged) - {"Q", "tau"}
        if unknown:
            raise InvalidParams(f"unknown parameters for {self.row_id}: {sorted(unknown)}")
        merged.update(self.params)
        object.__setattr__(self, "params", merged)

    def label(self) -> str:
        shown = {k: v for k, v in self.params.items() if k not in ("Q", "terms")}
        text = ",".join(f"{k}={v}" for k, v in shown.items())
        return f"{self.row_id}({text})" if text else self.row_id


def _int(params, name, minimum=None):
    v = params[name]
    if isinstance(v, bool) or not isinstance(v, int):
        raise InvalidParams(f"{name} must be an integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise InvalidParams(f"{name} must be >= {minimum}, got {v}")
    return v


def abs2(z: MixedPoly, power: int) -> MixedPoly:
    return (z * z.conjugate()) ** power


def monomial_T(alpha: int, beta: int, m: int, e1: int, e2: int):
    """``(|z1|^(2 e1) |z2|^(2 e2), Re T)`` with a factor ``1/z_j`` of T moved
    into ``conj(z_j)`` and one power of ``|z_j|^2`` per factor of ``Re T``."""
    T = ONE
    if alpha >= 0:
        T = T * z1 ** alpha
    else:
        T, e1 = T * Z1, e1 - m
    if beta >= 0:
        T = T * z2 ** beta
    else:
        T, e2 = T * Z2, e2 - m
    if e1 < 0 or e2 < 0:
        return None
    return abs2(z1, e1) * abs2(z2, e2), T.re()


def z2_perturbations(degree: int, skip_absorbable: bool = False) -> list:
    """Real non-circular ``Re(z2^a conj(z2)^b)`` with ``a > b >= 1``, ``a + b = degree``."""
    out = []
    for b in range(1, degree):
        a = degree - b
        if a <= b:
            break
        if skip_absorbable and b == 1:
            continue
        out.append((z2 ** a * Z2 ** b).re())
    return out


def perturbation_candidates(spec: ModelSpec) -> list:
    """Q candidates for the perturbed rows, smallest first."""
    a = spec.params["alpha"]
    if spec.row_id == "T5":
        # Re(z2^alpha conj z2) is removed by z1 -> z1 + c z2, so skip it first
        return z2_perturbations(a + 1, skip_absorbable=True) + z2_perturbations(a + 1)[:1]
    return z2_perturbations(2 * a + 1)


def _check_perturbation(Q: MixedPoly, lam: Weight):
    if not isinstance(Q, MixedPoly) or not Q.is_real:
        raise InvalidParams("perturbation Q must be a real polynomial")
    if Q.depends_on("z1") or Q.depends_on("Z1"):
        raise InvalidParams("perturbation Q must depend on z2 only")
    if Q.pluriharmonic_part():
        raise InvalidParams("perturbation Q has pluriharmonic terms")
    if any(lam.mu2 * (m[1] + m[3]) != 1 for m in Q.monomials()):
        raise InvalidParams(f"perturbation Q does not have weighted degree 1 for weights {lam}")


def _gcre(params) -> MixedPoly:
    p, q = _int(params, "p", 0), _int(params, "q", 0)
    a, b = _int(params, "alpha", -1), _int(params, "beta", -1)
    m, C = _int(params, "m", 1), _int(params, "C", 1)
    if gcd(p, q) != 1 or p * b - q * a == 0:
        raise InvalidParams("need gcd(p, q) = 1 and p beta - q alpha != 0")
    taus = params.get("tau", {})
    P = MixedPoly.zero()
    for K in range(1, C // 2 + 1):
        N = C - 2 * K
        base = monomial_T(a, b, m, K * p - m * a, K * q - m * b)
        if base is None or (a < 0 and p) or (b < 0 and q):
            continue
        tau = GaussRat.coerce(taus.get((K, N), 1) if isinstance(taus, dict) else taus)
        QN = MixedPoly.monomial((p * N, q * N, 0, 0, 0, 0), tau)
        P = P + QN.re() * base[0] * base[1] ** m
    if P.is_zero():
        raise InvalidParams("no solution of 2K + N = C gives nonnegative exponents")
    return P


def _gcim(params) -> MixedPoly:
    p, q = _int(params, "p", 0), _int(params, "q", 0)
    a, b = _int(params, "alpha", -1), _int(params, "beta", -1)
    if gcd(p, q) != 1 or p * b - q * a == 0:
        raise InvalidParams("need gcd(p, q) = 1 and p beta - q alpha != 0")
    P = MixedPoly.zero()
    for K, m, r in params["terms"]:
        if K < 1 or m < 0:
            raise InvalidParams("terms need K >= 1 and m >= 0")
        base = monomial_T(a, b, m, K * p - m * a, K * q - m * b)
        if base is None:
            raise InvalidParams(f"term (K={K}, m={m}) has a negative exponent")
        P = P + (base[0] * base[1] ** m).scale(Fraction(r))
    return P


def _raw_model(spec: ModelSpec) -> MixedPoly:
    rid, pr = spec.row_id, spec.params
    if rid == "T1":
        a = _int(pr, "alpha", 2)
        return (Z1 * z2 ** a).re()
    if rid == "T2":
        k, m = _int(pr, "k", 1), _int(pr, "m", 1)
        return abs2(z1, k) * z2.re() ** m
    if rid == "T3":
        k, l, m = _int(pr, "k", 0), _int(pr, "l", 0), _int(pr, "m", 1)
        a, b = _int(pr, "alpha", -1), _int(pr, "beta", -1)
        base = monomial_T(a, b, m, k, l)
        if base is None:
            raise InvalidParams("negative exponent after absorbing 1/z_j")
        return base[0] * base[1] ** m
    if rid == "T4":
        a = _int(pr, "alpha", 2)
        return (Z1 * z2 ** (2 * a - 1)).re() + abs2(z2, a)
    if rid in ("T5", "T9"):
        a = _int(pr, "alpha", 2 if rid == "T5" else 1)
        main = (Z1 * z2 ** a).re() if rid == "T5" else (z2 ** a).re() * (Z1 * z2 ** a).re()
        Q = pr.get("Q")
        if Q is None:
            cands = perturbation_candidates(spec)
            if not cands:
                raise InvalidParams(f"no non-circular perturbation for {spec.label()}")
            Q = cands[0]
        lam = infer_multitype_weights(main)
        _check_perturbation(Q, lam)
        return main + Q
    if rid == "T6":
        a = _int(pr, "alpha", 2)
        return (z2 ** a).re() * (Z1 * z2 ** a).re()
    if rid == "T7":
        return _gcre(pr)
    if rid == "T8":
        return _gcim(pr)
    if rid == "GN10":
        return (z1 * Z2 ** _int(pr, "l", 2)).re()
    if rid == "GN9":
        sign = pr.get("sign", 1)
        if sign not in (1, -1):
            raise InvalidParams("sign must be 1 or -1")
        return abs2(z1, 1) + abs2(z2, _int(pr, "l", 2)).scale(sign)
    if rid == "QUADRIC_M":
        return (abs2(z1, 1) + abs2(z2, 1)) ** _int(pr, "m", 2)
    if rid == "EX_S5":
        return abs2(z1, 3) * ((z1 ** 5 * Z2).re() ** 2).scale(8) + abs2(z1, 4) * (z1 ** 9).re().scale(4)
    if rid == "EX_TH2":
        Pp, Qp = th2_polynomials()
        return (Pp * Qp.conjugate()).re()
    raise InvalidParams(rid)


def th2_polynomials():
    """The pair ``(P', Q')`` with ``X(P') = i Q'`` and ``X(Q') = 0``."""
    Pp = (z1 ** 2 * z2 ** 3 * (z1 - z2)).scale(GaussRat(0, 1))
    Qp = (z1 ** 3 * z2 ** 5 * (z1 - z2)).scale(3)
    return Pp, Qp


def th2_field():
    from .algebra import HoloField

    return HoloField.make(
        f1=z1 * z2 ** 2 * (z1.scale(5) - z2.scale(6)),
        f2=-(z2 ** 3) * (z1.scale(4) - z2.scale(3)),
    )


_LOWER_BOUNDS = {
    "T1": {"alpha": 2},
    "T2": {"k": 1, "m": 1},
    "T4": {"alpha": 2},
    "T5": {"alpha": 2},
    "T6": {"alpha": 2},
    "T9": {"alpha": 2},
    "GN10": {"l": 2},
    "GN9": {"l": 2},
    "QUADRIC_M": {"m": 2},
}


def build_model(spec: ModelSpec, check_degeneracy: bool = True) -> MixedPoly:
    for name, lo in _LOWER_BOUNDS.get(spec.row_id, {}).items():
        _int(spec.params, name, lo)
    P = _raw_model(spec)
    if P.is_zero() or not P.is_real:
        raise InvalidParams(f"{spec.label()} gives a zero or non-real polynomial")
    if check_degeneracy:
        X = holomorphic_degeneracy(P)
        if X is not None:
            raise DegenerateInstance(f"{spec.label()} is holomorphically degenerate: {X} is tangent")
    return P


@dataclass(frozen=True)
class ExpectedProfile:
    """Dimensions claimed for a family; None where nothing is claimed."""

    dim_g: int | None = None
    dim_gt: int | None = None
    dim_g0: int | None = None
    dim_g0_re: int | None = None
    dim_g0_im: int | None = None
    dim_gc: int | None = None
    dim_gn: int | None = None
    dim_g1: int | None = None
    weights: tuple | None = None

    def mismatches(self, row: ClassificationRow, lam: Weight | None = None) -> dict:
        out = {}
        for name in ("dim_g", "dim_gt", "dim_g0", "dim_g0_re", "dim_g0_im", "dim_gc", "dim_gn", "dim_g1"):
            want = getattr(self, name)
            if want is not None and getattr(row, name) != want:
                out[name] = (want, getattr(row, name))
        if self.weights is not None and lam is not None and tuple(lam) != self.weights:
            out["weights"] = (self.weights, tuple(lam))
        return out


_TABLE = {
    "T1": (10, 2, 1, 1, 1),
    "T2": (7, 1, 1, 1, 1),
    "T3": (6, 0, 1, 1, 1),
    "T4": (6, 2, 0, 1, 0),
    "T5": (5, 2, 0, 0, 0),
    "T6": (5, 1, 1, 0, 0),
    "T7": (4, 0, 1, 0, 0),
    "T8": (4, 0, 0, 1, 0),
    "T9": (4, 1, 0, 0, 0),
}


def expected_profile(spec: ModelSpec) -> ExpectedProfile:
    rid = spec.row_id
    if rid in _TABLE:
        g, gt, re, im, g1 = _TABLE[rid]
        return ExpectedProfile(g, gt, None, re, im, 1, 2 if rid == "T1" else 0, g1)
    if rid == "GN10":
        return ExpectedProfile(dim_g=10, dim_gn=2)
    if rid == "GN9":
        return ExpectedProfile(dim_g=9)
    if rid == "QUADRIC_M":
        return ExpectedProfile(dim_g=7, dim_g0=5)
    if rid == "EX_S5":
        return ExpectedProfile(dim_g=3, dim_gc=1, weights=(Fraction(1, 17), Fraction(1, 34)))
    if rid == "EX_TH2":
        return ExpectedProfile(dim_g=3, dim_gc=1)
    raise InvalidParams(rid)


# -- sweep -----------------------------------------------------------------

@dataclass
class InstanceResult:
    spec: ModelSpec
    ok: bool
    model: str | None = None
    weights: Weight | None = None
    row: ClassificationRow | None = None
    matched: str | None = None
    mismatches: dict = field(default_factory=dict)
    tried: list = field(default_factory=list)
    error: str | None = None

    def to_json(self) -> str:
        d = {
            "instance": self.spec.label(),
            "status": "pass" if self.ok else "fail",
            "model": self.model,
        }
        if self.weights is not None:
            d["weights"] = {"mu1": str(self.weights.mu1), "mu2": str(self.weights.mu2)}
        if self.row is not None:
            d["classification"] = self.row.as_dict()
            d["table_row"] = self.matched
        if self.mismatches:
            d["mismatches"] = {k: [None if x is None else str(x) for x in v] for k, v in self.mismatches.items()}
        if self.tried:
            d["tried_perturbations"] = self.tried
        if self.error:
            d["error"] = self.error
        return json.dumps(d, sort_keys=True)


def check_instance(spec: ModelSpec) -> InstanceResult:
    """Build, solve and compare one instance; perturbed rows retry the next
    Q candidate when the profile does not match."""
    if spec.row_id in ("T5", "T9") and "Q" not in spec.params:
        cands = perturbation_candidates(spec)
        if not cands:
            return InstanceResult(spec, False, error="no non-circular perturbation candidate")
        tried, res = [], None
        for Q in cands:
            res = check_instance(ModelSpec(spec.row_id, {**spec.params, "Q": Q}))
            tried.append(str(Q))
            if res.ok:
                break
        res.spec, res.tried = spec, tried
        return res
    try:
        P = build_model(spec)
        alg = compute_symmetry_algebra(P, workers=1)
        row = split_components(alg)
    except CRSymError as e:
        return InstanceResult(spec, False, error=f"{type(e).__name__}: {e}")
    exp = expected_profile(spec)
    mism = exp.mismatches(row, alg.weights)
    return InstanceResult(
        spec, not mism, str(P), alg.weights, row, match_table_row(row, alg.weights), mism
    )


def expand_grid(row_id: str, grid: dict) -> list:
    """All specs in the product of the parameter value lists."""
    names = sorted(grid)
    return [ModelSpec(row_id, dict(zip(names, vals))) for vals in product(*(grid[n] for n in names))]


def sweep_table(ranges: dict, workers: int | None = None) -> list:
    """``ranges``: row id -> {param: [values]}; results in input order."""
    specs = []
    for rid, grid in ranges.items():
        specs.extend(expand_grid(rid, grid or {}))
    n = worker_count(workers)
    if n > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=n) as ex:
            return list(ex.map(check_instance, specs))
    return [check_instance(s) for s in specs]


DEFAULT_GRID = {
    "T1": {"alpha": [2, 3]},
    "T2": {"k": [1, 2], "m": [2, 3]},
    "T3": {},
    "T4": {"alpha": [2, 3]},
    "T5": {"alpha": [4]},
    "T6": {"alpha": [2, 3]},
    "T7": {},
    "T8": {},
    "T9": {"alpha": [2, 3]},
    "GN10": {"l": [2, 3]},
    "GN9": {"l": [2, 3]},
    "QUADRIC_M": {"m": [2, 3]},
    "EX_S5": {},
    "EX_TH2": {},
}


def catalog_instances(grid: dict | None = None) -> list:
    out = []
    for rid, g in (grid or DEFAULT_GRID).items():
        out.extend(expand_grid(rid, g or {}))
    return out

"""Component labels, rotations, balancedness, exotic symmetries and profile
matching for computed symmetry algebras."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, isqrt

from .algebra import GaussRat, HoloField, I, MixedPoly, holo_mono, is_mixed
from .errors import InternalInconsistency, NonlinearRotation
from .linalg import Echelon, in_span, kernel, rref_basis
from .tangency import GradedAlgebra, is_symmetry
from .weights import Weight

W_MONO = holo_mono(0, 0, 1)
ONE_MONO = (0, 0, 0, 0, 0, 0)


@dataclass(frozen=True)
class ClassificationRow:
    dim_g: int
    dim_gt: int
    dim_g0: int
    dim_g0_re: int
    dim_g0_im: int
    dim_g0_nil: int
    dim_gc: int
    dim_gn: int
    dim_g1: int
    has_euler: bool
    two_jet_determined: bool

    @property
    def table_profile(self) -> tuple:
        return (self.dim_g, self.dim_gt, self.dim_g0_re, self.dim_g0_im, self.dim_g1)

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class DiagField:
    """``lam1 z1 d1 + lam2 z2 d2``."""

    lam1: GaussRat
    lam2: GaussRat

    @property
    def is_real(self) -> bool:
        return self.lam1.is_real and self.lam2.is_real

    @property
    def is_imag(self) -> bool:
        return self.lam1.is_imag and self.lam2.is_imag

    def to_field(self) -> HoloField:
        return HoloField.make(
            f1=MixedPoly.var("z1").scale(self.lam1), f2=MixedPoly.var("z2").scale(self.lam2)
        )

    def __str__(self):
        return str(self.to_field())


def _primitive_int(v):
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return [x // g for x in ints]


def _diag_kernel(rows) -> list:
    vecs = kernel([{0: r[0], 1: r[1]} for r in rows], 2)
    return [_primitive_int([v.get(0, 0), v.get(1, 0)]) for v in vecs]


def detect_real_rotations(P: MixedPoly) -> list:
    """Real diagonal rotations: ``lam1(a1+b1) + lam2(a2+b2) = 0`` on every monomial."""
    rows = {(m[0] + m[2], m[1] + m[3]) for m in P.monomials()}
    return [DiagField(GaussRat(a), GaussRat(b)) for a, b in _diag_kernel(sorted(rows))]


def detect_imag_rotations(P: MixedPoly) -> list:
    """Imaginary diagonal rotations ``i(lam1 z1 d1 + lam2 z2 d2)`` with
    ``lam1(a1-b1) + lam2(a2-b2) = 0`` on every monomial."""
    rows = {(m[0] - m[2], m[1] - m[3]) for m in P.monomials()}
    return [DiagField(I * a, I * b) for a, b in _diag_kernel(sorted(rows))]


def detect_balanced(P: MixedPoly) -> DiagField | None:
    """Real ``(lam1, lam2)`` with ``lam.a = lam.b = 1`` for every monomial
    ``z^a Z^b``, i.e. a complex reproducing field, or None."""
    rows = set()
    for m in P.monomials():
        rows.add((m[0], m[1]))
        rows.add((m[2], m[3]))
    ech = Echelon().extend({0: a, 1: b, 2: -1} for a, b in rows)
    R = ech.rref()
    if 2 in R:
        return None
    sol = [Fraction(0), Fraction(0)]
    for p, row in R.items():
        sol[p] = -row.get(2, 0)
    return DiagField(GaussRat(sol[0]), GaussRat(sol[1]))


def complete_rigid(f1: MixedPoly, f2: MixedPoly, P: MixedPoly) -> HoloField | None:
    """The rigid symmetry with z-part ``f1 d1 + f2 d2``, if any: requires
    ``2 Re(f1 P_z1 + f2 P_z2)`` pluriharmonic and takes ``g`` with
    ``Im g`` equal to it."""
    s = (f1 * P.derivative("z1") + f2 * P.derivative("z2")).re().scale(2)
    if s.mixed_part():
        return None
    hol = {}
    const = s.coeff(ONE_MONO).re
    for m, c in s.items():
        if m != ONE_MONO and m[2] == 0 and m[3] == 0:
            hol[m] = c * 2
    g = (MixedPoly(hol) + const).scale(I)
    X = HoloField(f1, f2, g)
    return X if is_symmetry(X, P) else None


# -- linear parts and Jordan split --------------------------------------

def linear_part(Y: HoloField) -> list:
    """2x2 GaussRat matrix A with (f1, f2) linear part = A (z1, z2)."""
    A = [[GaussRat(0), GaussRat(0)], [GaussRat(0), GaussRat(0)]]
    for i, f in enumerate((Y.f1, Y.f2)):
        A[i][0] = f.coeff(holo_mono(1, 0))
        A[i][1] = f.coeff(holo_mono(0, 1))
    return A


def is_linear(Y: HoloField) -> bool:
    for f in (Y.f1, Y.f2):
        for m in f.monomials():
            if m not in (holo_mono(1, 0), holo_mono(0, 1)):
                return False
    return True


def _field_from_matrix(A) -> HoloField:
    z1, z2 = MixedPoly.var("z1"), MixedPoly.var("z2")
    return HoloField.make(
        f1=z1.scale(A[0][0]) + z2.scale(A[0][1]), f2=z1.scale(A[1][0]) + z2.scale(A[1][1])
    )


def _sqrt_rat(q: Fraction):
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


@dataclass(frozen=True)
class RotationSplit:
    re: HoloField | None
    im: HoloField | None
    nil: HoloField | None


def rotation_split(Y: HoloField, P: MixedPoly | None = None) -> RotationSplit:
    """Jordan split of a linear rotation into real-eigenvalue, imaginary-eigenvalue
    and nilpotent parts. With ``P`` given, a part that is not itself a symmetry
    of ``M_P`` is returned as None."""
    if not is_linear(Y) or not Y.is_rigid:
        raise NonlinearRotation(f"{Y} is not a rigid linear field")
    A = linear_part(Y)
    t = A[0][0] + A[1][1]
    d = A[0][0] * A[1][1] - A[0][1] * A[1][0]
    half_t = t.scale(Fraction(1, 2))
    M0 = [[A[0][0] - half_t, A[0][1]], [A[1][0], A[1][1] - half_t]]  # trace free
    disc = t * t - 4 * d
    Id = [[GaussRat(1), GaussRat(0)], [GaussRat(0), GaussRat(1)]]
    zero = [[GaussRat(0)] * 2 for _ in range(2)]

    def comb(a, X, b, Yy):
        return [[a * X[i][j] + b * Yy[i][j] for j in range(2)] for i in range(2)]

    if not disc:
        S_re = comb(GaussRat(half_t.re), Id, 0, zero)
        S_im = comb(GaussRat(0, half_t.im), Id, 0, zero)
        N = M0
    else:
        # Re(lambda)/lambda-type weight on the trace-free part: (1 + conj(D)/|D|)/2
        absD = _sqrt_rat(disc.abs2())
        if absD is None:
            raise NonlinearRotation("eigenvalue split is not rational for this rotation")
        c = (GaussRat(1) + disc.conj().scale(1 / absD)).scale(Fraction(1, 2))
        S_re = comb(GaussRat(half_t.re), Id, c, M0)
        S_im = comb(GaussRat(0, half_t.im), Id, GaussRat(1) - c, M0)
        N = zero
    parts = []
    for M in (S_re, S_im, N):
        X = _field_from_matrix(M)
        if P is not None and not X.is_zero():
            X = complete_rigid(X.f1, X.f2, P)
        parts.append(X)
    return RotationSplit(*parts)


# -- nilpotent rotations ---------------------------------------------------

def _mat_vec(A) -> dict:
    v = {}
    for k, x in enumerate((A[0][0], A[0][1], A[1][0], A[1][1])):
        if x.re:
            v[2 * k] = x.re
        if x.im:
            v[2 * k + 1] = x.im
    return v


def _vec_mat(v: dict):
    e = [GaussRat(v.get(2 * k, 0), v.get(2 * k + 1, 0)) for k in range(4)]
    return [[e[0], e[1]], [e[2], e[3]]]


def _mbracket(A, B):
    def mul(X, Y):
        return [[X[i][0] * Y[0][j] + X[i][1] * Y[1][j] for j in range(2)] for i in range(2)]

    AB, BA = mul(A, B), mul(B, A)
    return [[AB[i][j] - BA[i][j] for j in range(2)] for i in range(2)]


def _det(A):
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def _span(mats) -> list:
    return [_vec_mat(v) for v in rref_basis(_mat_vec(M) for M in mats)]


def _derived(mats) -> list:
    return _span(_mbracket(A, B) for A, B in combinations(mats, 2))


def has_nilpotent_rotation(rotations: list) -> bool:
    """Whether a real combination of the rotations' linear parts is a nonzero
    nilpotent matrix."""
    mats = [linear_part(Y) for Y in rotations]
    # trace-free part of the real span
    trace_rows = {}
    for k, M in enumerate(mats):
        t = M[0][0] + M[1][1]
        trace_rows.setdefault(0, {})[k] = t.re
        trace_rows.setdefault(1, {})[k] = t.im
    combos = kernel(list(trace_rows.values()), len(mats)) if mats else []
    L0 = []
    for c in combos:
        M = [[GaussRat(0)] * 2 for _ in range(2)]
        for k, x in c.items():
            M = [[M[i][j] + mats[k][i][j].scale(x) for j in range(2)] for i in range(2)]
        L0.append(M)
    L0 = _span(L0)
    if not L0:
        return False
    if not _derived(L0):
        # commuting trace-free 2x2 family: all nilpotent or none
        return any(not _det(M) for M in L0)
    series = L0
    while True:
        nxt = _derived(series)
        if not nxt:
            return True  # solvable and nonabelian: brackets are nilpotent
        if len(nxt) == len(series):
            break
        series = nxt
    S = series
    if len(S) != 3:
        return True
    return not _killing_negative_definite(S)


def _killing_negative_definite(S) -> bool:
    basis = rref_basis(_mat_vec(M) for M in S)
    mats = [_vec_mat(v) for v in basis]

    def coords(M):
        c = in_span(basis, _mat_vec(M))
        if c is None:
            raise InternalInconsistency("subalgebra not closed under bracket")
        return c

    ad = []
    for X in mats:
        cols = [coords(_mbracket(X, Y)) for Y in mats]
        ad.append([[cols[j][i] for j in range(3)] for i in range(3)])

    def trace_prod(A, B):
        return sum(A[i][k] * B[k][i] for i in range(3) for k in range(3))

    K = [[trace_prod(ad[i], ad[j]) for j in range(3)] for i in range(3)]
    m1 = K[0][0]
    m2 = K[0][0] * K[1][1] - K[0][1] * K[1][0]
    m3 = (
        K[0][0] * (K[1][1] * K[2][2] - K[1][2] * K[2][1])
        - K[0][1] * (K[1][0] * K[2][2] - K[1][2] * K[2][0])
        + K[0][2] * (K[1][0] * K[2][1] - K[1][1] * K[2][0])
    )
    return m1 < 0 and m2 > 0 and m3 < 0


# -- components ------------------------------------------------------------

def rotations_of(alg: GradedAlgebra) -> list:
    return list(alg.rigid.get(Fraction(0), []))


def split_components(alg: GradedAlgebra, check: bool = True) -> ClassificationRow:
    comps, rigid = alg.components, alg.rigid
    gt = sum(len(b) for nu, b in comps.items() if -1 < nu < 0)
    g0 = len(comps.get(Fraction(0), []))
    gc = sum(len(rigid[nu]) for nu in comps if 0 < nu < 1)
    gn = sum(len(comps[nu]) - len(rigid[nu]) for nu in comps if 0 < nu < 1)
    g1 = len(comps.get(Fraction(1), []))
    has_euler = any(X.g.coeff(W_MONO) for X in comps.get(Fraction(0), []))
    rots = rotations_of(alg)
    nil = 0
    if rots and all(is_linear(Y) for Y in rots) and has_nilpotent_rotation(rots):
        nil = 1
    row = ClassificationRow(
        dim_g=alg.dim,
        dim_gt=gt,
        dim_g0=g0,
        dim_g0_re=len(detect_real_rotations(alg.P)),
        dim_g0_im=len(detect_imag_rotations(alg.P)),
        dim_g0_nil=nil,
        dim_gc=gc,
        dim_gn=gn,
        dim_g1=g1,
        has_euler=has_euler,
        two_jet_determined=(gc == 0),
    )
    if check:
        if nil and gc:
            raise InternalInconsistency("nilpotent rotation together with an exotic symmetry")
        if gc > 1:
            raise InternalInconsistency(f"dim g_c = {gc} > 1")
        if row.dim_g != len(comps.get(Fraction(-1), [])) + gt + g0 + gc + gn + g1:
            raise InternalInconsistency("component dimensions do not add up")
    return row


# -- exotic symmetries ------------------------------------------------------

@dataclass(frozen=True)
class ExoticSymmetry:
    field: HoloField
    weight: Fraction
    monomial_diagonal: bool
    form: str | None  # "two-term", "d1", "d2"


def monomial_diagonal_form(X: HoloField) -> dict | None:
    """Recognize ``X = s z1^alpha z2^beta (q z1 d1 - p z2 d2)`` (z-part only);
    returns ``{"alpha", "beta", "c1", "c2", "form"}`` with
    ``f1 = c1 z1^(alpha+1) z2^beta`` and ``f2 = c2 z1^alpha z2^(beta+1)``."""
    if X.f1.has_w or X.f2.has_w or (X.f1.is_zero() and X.f2.is_zero()):
        return None
    if len(X.f1) > 1 or len(X.f2) > 1:
        return None
    (m1, c1), = X.f1.items() if X.f1 else ((None, GaussRat(0)),)
    (m2, c2), = X.f2.items() if X.f2 else ((None, GaussRat(0)),)
    if m1 is not None and m2 is not None:
        alpha, beta = m2[0], m1[1]
        if m1[0] != alpha + 1 or m2[1] != beta + 1:
            return None
        return {"alpha": alpha, "beta": beta, "c1": c1, "c2": c2, "form": "two-term"}
    if m2 is None:
        # f1 = c1 z1^a z2^b: alpha = a - 1 (alpha = -1 is the boundary form)
        return {"alpha": m1[0] - 1, "beta": m1[1], "c1": c1, "c2": GaussRat(0), "form": "d1"}
    return {"alpha": m2[0], "beta": m2[1] - 1, "c1": GaussRat(0), "c2": c2, "form": "d2"}


def detect_exotic(alg: GradedAlgebra) -> ExoticSymmetry | None:
    found = [(nu, X) for nu in alg.components if 0 < nu < 1 for X in alg.rigid[nu]]
    if not found:
        return None
    if len(found) > 1:
        raise InternalInconsistency(f"dim g_c = {len(found)} > 1")
    nu, X = found[0]
    form = monomial_diagonal_form(X)
    return ExoticSymmetry(X, nu, form is not None, form["form"] if form else None)


# -- table matching ---------------------------------------------------------

TABLE_PROFILES = {
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


def match_table_row(row: ClassificationRow, lam: Weight | None = None) -> str | None:
    """Table row (or extra catalog entry) whose dimension profile matches."""
    if row.dim_gc == 1:
        for rid, prof in TABLE_PROFILES.items():
            if row.table_profile == prof:
                return rid
        if row.dim_g == 3:
            return "SOLITARY"
        return None
    if row.dim_g == 9 and row.dim_gn > 0 and (lam is None or lam.mu1 == Fraction(1, 2)):
        return "GN9"
    if row.dim_g == 7 and row.dim_g0 == 5:
        return "QUADRIC_M"
    return None


def levi_rank_at_origin(P: MixedPoly) -> int:
    """Rank of the Hermitian matrix of ``z_i Z_j`` coefficients."""
    H = [[P.coeff((int(i == 0), int(i == 1), int(j == 0), int(j == 1), 0, 0)) for j in range(2)] for i in range(2)]
    if _det(H):
        return 2
    return 1 if any(x for r in H for x in r) else 0


def mixed_only(P: MixedPoly) -> bool:
    return all(is_mixed(m) for m in P.monomials())

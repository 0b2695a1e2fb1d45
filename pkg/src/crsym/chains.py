"""X-pairs of chains.

For a holomorphic field ``X`` two chains ``U_0..U_m`` and ``V_0..V_m`` of
holomorphic polynomials form an X-pair when ``X(U_j) = A_j U_{j+1}``,
``X(V_j) = B_j V_{j+1}``, both chains end in the kernel of ``X`` and
``A_j = -conj(B_{m-j-1})``. Their chain sum ``Re sum U_j conj(V_{m-j})`` is
then a model admitting ``X`` as a symmetry.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd

from .algebra import GaussRat, HoloField, I, MixedPoly, holo_mono
from .classify import monomial_diagonal_form
from .errors import InvalidParams, NotAnXPair, NotMonomialDiagonal

MAX_CHAIN_LENGTH = 16


@dataclass(frozen=True)
class ChainPair:
    U: tuple
    V: tuple
    A: tuple = field(default=())
    B: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "U", tuple(MixedPoly(u) if not isinstance(u, MixedPoly) else u for u in self.U))
        object.__setattr__(self, "V", tuple(MixedPoly(v) if not isinstance(v, MixedPoly) else v for v in self.V))
        if len(self.U) != len(self.V) or not self.U:
            raise NotAnXPair("chains must be nonempty and of equal length")
        if len(self.U) > MAX_CHAIN_LENGTH:
            raise NotAnXPair(f"chain length {len(self.U)} exceeds {MAX_CHAIN_LENGTH}")
        for p in self.U + self.V:
            if not p.is_holomorphic:
                raise NotAnXPair(f"chain entry {p} is not holomorphic")

    @property
    def m(self) -> int:
        return len(self.U) - 1


@dataclass(frozen=True)
class MonomialField:
    """``X = s z1^alpha z2^beta (q z1 d1 - p z2 d2)`` with ``gcd(p, q) = 1``."""

    s: GaussRat
    alpha: int
    beta: int
    p: int
    q: int

    @property
    def kappa(self) -> GaussRat:
        """Chain constant of every pure pair: ``s (p beta - q alpha)``."""
        return self.s * (self.p * self.beta - self.q * self.alpha)

    def Q(self, power: int = 1) -> MixedPoly:
        return MixedPoly.monomial(holo_mono(self.p * power, self.q * power))


def monomial_field(X: HoloField) -> MonomialField:
    if not X.g.is_zero():
        raise NotMonomialDiagonal(f"{X} has a w-component")
    form = monomial_diagonal_form(X)
    if form is None:
        raise NotMonomialDiagonal(f"{X} is not a monomial multiple of a diagonal field")
    c1, c2 = form["c1"], form["c2"]
    if form["form"] == "d1":
        p, q, s = 0, 1, c1
    elif form["form"] == "d2":
        p, q, s = 1, 0, -c2
    else:
        ratio = -(c1 / c2)  # = q / p
        if not ratio.is_real or ratio.re <= 0:
            raise NotMonomialDiagonal(f"{X}: coefficient ratio is not a positive rational")
        q, p = ratio.re.numerator, ratio.re.denominator
        s = c2 / (-p)
    return MonomialField(s, form["alpha"], form["beta"], p, q)


def minimal_annihilated_monomial(X: HoloField):
    """``z1^p z2^q``: every monomial killed by X is a power of it."""
    mf = monomial_field(X)
    return holo_mono(mf.p, mf.q)


@dataclass(frozen=True)
class XPairCheck:
    ok: bool
    A: tuple
    B: tuple
    failure: str | None = None

    def __bool__(self):
        return self.ok


def _chain_constants(X: HoloField, chain, name: str):
    consts = []
    m = len(chain) - 1
    for j in range(m):
        img = X.apply(chain[j])
        nxt = chain[j + 1]
        if nxt.is_zero():
            if not img.is_zero():
                return consts, f"X({name}_{j}) != 0 although {name}_{j + 1} = 0"
            consts.append(GaussRat(0))
            continue
        lead, c = next(iter(nxt.items()))
        a = img.coeff(lead) / c
        if img != nxt.scale(a):
            return consts, f"X({name}_{j}) is not a multiple of {name}_{j + 1}"
        consts.append(a)
    if not X.apply(chain[m]).is_zero():
        return consts, f"X({name}_{m}) != 0"
    return consts, None


def verify_xpair(X: HoloField, pair: ChainPair) -> XPairCheck:
    A, err = _chain_constants(X, pair.U, "U")
    if err:
        return XPairCheck(False, tuple(A), (), err)
    B, err = _chain_constants(X, pair.V, "V")
    if err:
        return XPairCheck(False, tuple(A), tuple(B), err)
    m = pair.m
    for j in range(m):
        if A[j] != -B[m - j - 1].conj():
            return XPairCheck(False, tuple(A), tuple(B), f"A_{j} != -conj(B_{m - j - 1})")
    return XPairCheck(True, tuple(A), tuple(B))


@dataclass(frozen=True)
class PurePairParams:
    p: int
    q: int
    alpha: int
    beta: int
    K: int
    N: int
    m: int
    tau: GaussRat = GaussRat(1)

    def __post_init__(self):
        object.__setattr__(self, "tau", GaussRat.coerce(self.tau))

    def validate(self) -> "PurePairParams":
        p, q, a, b = self.p, self.q, self.alpha, self.beta
        if p < 0 or q < 0 or gcd(p, q) != 1:
            raise InvalidParams("p, q must be coprime nonnegative integers")
        if a < -1 or b < -1 or (a == -1 and b == -1):
            raise InvalidParams("alpha, beta must be >= -1 and not both -1")
        if (a == -1 and p != 0) or (b == -1 and q != 0):
            raise InvalidParams("alpha = -1 needs p = 0 and beta = -1 needs q = 0")
        if self.K < 1 or self.N < 0 or self.m < 0:
            raise InvalidParams("need K >= 1 and N, m >= 0")
        if self.K * p < self.m * a or self.K * q < self.m * b:
            raise InvalidParams("need K p >= m alpha and K q >= m beta")
        if p * b - q * a == 0:
            raise InvalidParams("p beta - q alpha = 0 gives a holomorphically degenerate model")
        if not self.tau:
            raise InvalidParams("tau must be nonzero")
        if self.m + 1 > MAX_CHAIN_LENGTH:
            raise InvalidParams(f"chain length exceeds {MAX_CHAIN_LENGTH}")
        return self

    def field(self) -> HoloField:
        """``i z1^alpha z2^beta (q z1 d1 - p z2 d2)``."""
        a, b = self.alpha, self.beta
        f1 = MixedPoly.monomial(holo_mono(a + 1, b), I * self.q) if self.q else MixedPoly.zero()
        f2 = MixedPoly.monomial(holo_mono(a, b + 1), I * -self.p) if self.p else MixedPoly.zero()
        return HoloField(f1, f2, MixedPoly.zero())

    @property
    def kappa(self) -> GaussRat:
        return I * (self.p * self.beta - self.q * self.alpha)


def _pure_entry(p, q, alpha, beta, S, j, coeff=1) -> MixedPoly:
    """``coeff * Q^S / T^j / j!``."""
    e1, e2 = S * p - j * alpha, S * q - j * beta
    if e1 < 0 or e2 < 0:
        raise InvalidParams("negative exponent in pure chain entry")
    return MixedPoly.monomial(holo_mono(e1, e2), GaussRat.coerce(coeff).scale(Fraction(1, factorial(j))))


def pure_pair(params: PurePairParams) -> ChainPair:
    pr = params.validate()
    m = pr.m
    U = [_pure_entry(pr.p, pr.q, pr.alpha, pr.beta, pr.K, m - j) for j in range(m + 1)]
    QN = MixedPoly.monomial(holo_mono(pr.p * pr.N, pr.q * pr.N), pr.tau)
    V = [u * QN for u in U]
    k = pr.kappa
    return ChainPair(tuple(U), tuple(V), (k,) * m, (k,) * m)


def chain_sum(pair: ChainPair) -> MixedPoly:
    m = pair.m
    total = MixedPoly.zero()
    for j in range(m + 1):
        total = total + pair.U[j] * pair.V[m - j].conjugate()
    return total.re()


def pure_chain_sum_closed_form(params: PurePairParams) -> MixedPoly:
    """``(2^m/m!) Re(tau Q^N) |z1|^(2(Kp - m alpha)) |z2|^(2(Kq - m beta)) (Re T)^m``
    with ``T = z1^alpha z2^beta``; a factor ``1/z_j`` in T is absorbed as
    ``|z_j|^2 Re(T) = Re(conj(z_j) z_j T)``."""
    pr = params.validate()
    z1, z2 = MixedPoly.var("z1"), MixedPoly.var("z2")
    Z1, Z2 = MixedPoly.var("Z1"), MixedPoly.var("Z2")
    a, b = pr.alpha, pr.beta
    e1, e2 = pr.K * pr.p - pr.m * a, pr.K * pr.q - pr.m * b
    T = MixedPoly.const(1)
    if a >= 0:
        T = T * z1 ** a
    else:
        T, e1 = T * Z1, e1 - pr.m
    if b >= 0:
        T = T * z2 ** b
    else:
        T, e2 = T * Z2, e2 - pr.m
    QN = MixedPoly.monomial(holo_mono(pr.p * pr.N, pr.q * pr.N), pr.tau)
    coeff = Fraction(2 ** pr.m, factorial(pr.m))
    return (QN.re() * (z1 * Z1) ** e1 * (z2 * Z2) ** e2 * T.re() ** pr.m).scale(coeff)


def natural_constant(X: HoloField | None) -> GaussRat:
    if X is None:
        return I
    try:
        return monomial_field(X).kappa
    except NotMonomialDiagonal:
        return I


def normalize_chains(pair: ChainPair, X: HoloField | None = None, kappa=None) -> ChainPair:
    """Rescale ``U_j -> c_j U_j`` and ``V_j -> d_j V_j`` so that every constant
    equals ``kappa`` (default: ``s(p beta - q alpha)`` for a monomial X, else i),
    then divide V by ``conj(tau)``, ``tau = c_j conj(d_{m-j})``, so the chain
    sum is unchanged. Needs the pair's constants (from verify_xpair) on the pair."""
    if X is not None and not pair.A and pair.m:
        chk = verify_xpair(X, pair)
        if not chk:
            raise NotAnXPair(chk.failure)
        pair = ChainPair(pair.U, pair.V, chk.A, chk.B)
    k = GaussRat.coerce(kappa) if kappa is not None else natural_constant(X)
    m = pair.m
    if m and (len(pair.A) != m or len(pair.B) != m):
        raise NotAnXPair("pair constants missing")
    if k.re or not k:
        raise NotAnXPair("normalizing constant must be nonzero imaginary")
    if any(not a for a in pair.A + pair.B):
        raise NotAnXPair("zero chain constant: the chain is shorter than stated")
    c, d = [GaussRat(1)], [GaussRat(1)]
    for j in range(m):
        c.append(c[j] * pair.A[j] / k)
        d.append(d[j] * pair.B[j] / k)
    tau = c[0] * d[m].conj()
    for j in range(m + 1):
        if c[j] * d[m - j].conj() != tau:
            raise NotAnXPair("c_j conj(d_(m-j)) is not constant")
    scale_v = GaussRat(1) / tau.conj()
    U = tuple(u.scale(c[j]) for j, u in enumerate(pair.U))
    V = tuple(v.scale(d[j] * scale_v) for j, v in enumerate(pair.V))
    return ChainPair(U, V, (k,) * m, (k,) * m)


def _peel(chain, mf: MonomialField) -> list:
    """Write a normalized chain as ``sum a Y^(k,S)`` where
    ``Y^(k,S)_j = Q^S / T^(k-j) / (k-j)!`` for ``j <= k``; returns ``(k, S, a)``."""
    m = len(chain) - 1
    resid = list(chain)
    parts = []
    deg = mf.p + mf.q
    for k in range(m, -1, -1):
        for mono, a in resid[k].items():
            if mono[0] * mf.q != mono[1] * mf.p or mono[4]:
                raise NotAnXPair(f"chain entry {k} has a term outside ker X after peeling")
            S = (mono[0] + mono[1]) // deg if deg else 0
            parts.append((k, S, a))
            for j in range(k + 1):
                resid[j] = resid[j] - _pure_entry(mf.p, mf.q, mf.alpha, mf.beta, S, k - j, a)
    if any(not r.is_zero() for r in resid):
        raise NotAnXPair("chain is not a sum of pure chains")
    return parts


def decompose_xpair(X: HoloField, pair: ChainPair) -> list:
    """Split a pair for a monomial field into monomial X-pairs whose chain sums
    add up to the original one."""
    mf = monomial_field(X)
    chk = verify_xpair(X, pair)
    if not chk:
        raise NotAnXPair(chk.failure)
    pair = normalize_chains(ChainPair(pair.U, pair.V, chk.A, chk.B), X)
    m = pair.m
    ups, vps = _peel(pair.U, mf), _peel(pair.V, mf)
    out = []
    for k, S, a in ups:
        for l, S2, b in vps:
            n = k + l - m
            if n < 0:
                continue
            U = tuple(_pure_entry(mf.p, mf.q, mf.alpha, mf.beta, S, n - i, a) for i in range(n + 1))
            V = tuple(_pure_entry(mf.p, mf.q, mf.alpha, mf.beta, S2, n - i, b) for i in range(n + 1))
            out.append(ChainPair(U, V, (mf.kappa,) * n, (mf.kappa,) * n))
    return out

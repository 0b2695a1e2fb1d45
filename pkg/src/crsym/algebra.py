"""Exact Gaussian-rational scalars, sparse polynomials in (z1, z2, Z1, Z2, w, u)
and holomorphic polynomial vector fields.

``Z1``/``Z2`` denote the conjugate variables, ``w`` the transversal variable and
``u = Re w`` a real variable used after restricting to ``Im w = P``.

A monomial is a plain 6-tuple of exponents ``(a1, a2, b1, b2, cw, cu)``; its
canonical order is plain tuple order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping

Rat = Fraction
Mono = tuple  # (a1, a2, b1, b2, cw, cu)

ONE_MONO: Mono = (0, 0, 0, 0, 0, 0)
VARIABLES = ("z1", "z2", "Z1", "Z2", "w", "u")
_VAR_INDEX = {name: k for k, name in enumerate(VARIABLES)}


def fmt_rat(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class GaussRat:
    """Exact complex rational ``re + im*i``. Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussRat):
            if im:
                raise TypeError("GaussRat(GaussRat, im) is ambiguous")
            re, im = re.re, re.im
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    def __reduce__(self):
        return (GaussRat, (self.re, self.im))

    @staticmethod
    def coerce(x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Rational)):
            return GaussRat(x)
        raise TypeError(f"cannot convert {type(x).__name__} to GaussRat")

    def __add__(self, other):
        if not isinstance(other, GaussRat):
            if isinstance(other, (int, Rational)):
                return GaussRat(self.re + other, self.im)
            return NotImplemented
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, (GaussRat, int, Rational)):
            return NotImplemented
        return self + (-GaussRat.coerce(other))

    def __rsub__(self, other):
        return GaussRat.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussRat):
            if isinstance(other, (int, Rational)):
                return GaussRat(self.re * other, self.im * other)
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussRat(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussRat.coerce(other)
        n = other.abs2()
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        return (self * other.conj()).scale(Fraction(1) / n)

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return GaussRat(1) / self ** (-k)
        out = GaussRat(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, q) -> "GaussRat":
        return GaussRat(self.re * q, self.im * q)

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return self.im == 0

    @property
    def is_imag(self) -> bool:
        return self.re == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __repr__(self):
        return f"GaussRat({self})"

    def __str__(self):
        if self.im == 0:
            return fmt_rat(self.re)
        im = _fmt_imag(self.im)
        if self.re == 0:
            return im
        return f"{fmt_rat(self.re)}{'' if im.startswith('-') else '+'}{im}"


def _fmt_imag(q: Fraction) -> str:
    if q == 1:
        return "i"
    if q == -1:
        return "-i"
    return f"{fmt_rat(q)}*i"


I = GaussRat(0, 1)
ZERO = GaussRat(0)
ONE = GaussRat(1)


def swap_mono(m: Mono) -> Mono:
    return (m[2], m[3], m[0], m[1], m[4], m[5])


def mono_mul(m: Mono, n: Mono) -> Mono:
    return (m[0] + n[0], m[1] + n[1], m[2] + n[2], m[3] + n[3], m[4] + n[4], m[5] + n[5])


def is_mixed(m: Mono) -> bool:
    return (m[0] + m[1] + m[4]) > 0 and (m[2] + m[3]) > 0


def holo_mono(c1: int = 0, c2: int = 0, cw: int = 0) -> Mono:
    return (c1, c2, 0, 0, cw, 0)


def render_mono(m: Mono) -> str:
    parts = []
    for name, e in zip(VARIABLES, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


class MixedPoly:
    """Sparse polynomial ``sum c_m * z^a Z^b w^cw u^cu`` with GaussRat
    coefficients. Zero coefficients are never stored. Immutable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Mono, object] | Iterable | None = None):
        clean: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for m, c in items:
                m = tuple(int(e) for e in m)
                if len(m) != 6 or min(m) < 0:
                    raise ValueError(f"bad monomial {m!r}")
                c = GaussRat.coerce(c)
                if m in clean:
                    c = clean[m] + c
                if c:
                    clean[m] = c
                else:
                    clean.pop(m, None)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, terms: dict) -> "MixedPoly":
        # trusted: tuples of ints, nonzero GaussRat values
        p = object.__new__(cls)
        object.__setattr__(p, "_terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("MixedPoly is immutable")

    def __reduce__(self):
        return (MixedPoly, (tuple(self._terms.items()),))

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls) -> "MixedPoly":
        return cls._raw({})

    @classmethod
    def const(cls, c) -> "MixedPoly":
        c = GaussRat.coerce(c)
        return cls._raw({ONE_MONO: c} if c else {})

    @classmethod
    def var(cls, name: str) -> "MixedPoly":
        e = [0] * 6
        e[_VAR_INDEX[name]] = 1
        return cls._raw({tuple(e): ONE})

    @classmethod
    def monomial(cls, m: Mono, c=1) -> "MixedPoly":
        return cls({tuple(m): c})

    @classmethod
    def real_part_of(cls, p: "MixedPoly") -> "MixedPoly":
        """Symmetrizing constructor: ``(p + conj p)/2``."""
        return p.re()

    # -- access -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator:
        return iter(sorted(self._terms.items()))

    def monomials(self) -> list:
        return sorted(self._terms)

    def coeff(self, m: Mono) -> GaussRat:
        return self._terms.get(tuple(m), ZERO)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, MixedPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Rational, GaussRat)):
            return self == MixedPoly.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "MixedPoly":
        if isinstance(other, MixedPoly):
            return other
        if isinstance(other, (int, Rational, GaussRat)):
            return MixedPoly.const(other)
        raise TypeError(f"cannot combine MixedPoly with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            if m in out:
                s = out[m] + c
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = c
        return MixedPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MixedPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "MixedPoly":
        c = GaussRat.coerce(c)
        if not c:
            return MixedPoly.zero()
        return MixedPoly._raw({m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational, GaussRat)):
            return self.scale(other)
        if not isinstance(other, MixedPoly):
            return NotImplemented
        out: dict = {}
        for m, c in self._terms.items():
            cr, ci = c.re, c.im
            m0, m1, m2, m3, m4, m5 = m
            for n, d in other._terms.items():
                key = (m0 + n[0], m1 + n[1], m2 + n[2], m3 + n[3], m4 + n[4], m5 + n[5])
                dr, di = d.re, d.im
                if ci == 0 and di == 0:
                    re, im = cr * dr, 0
                else:
                    re, im = cr * dr - ci * di, cr * di + ci * dr
                prev = out.get(key)
                if prev is None:
                    out[key] = [re, im]
                else:
                    prev[0] += re
                    prev[1] += im
        return MixedPoly._raw({k: GaussRat(v[0], v[1]) for k, v in out.items() if v[0] or v[1]})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = MixedPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    # -- structure ----------------------------------------------------
    def conjugate(self) -> "MixedPoly":
        """Swap holomorphic and antiholomorphic exponents, conjugate
        coefficients. ``u`` is real and kept; ``w`` has no conjugate slot."""
        if any(m[4] for m in self._terms):
            raise ValueError("conjugate of a w-dependent polynomial is not representable")
        return MixedPoly._raw({swap_mono(m): c.conj() for m, c in self._terms.items()})

    def re(self) -> "MixedPoly":
        return (self + self.conjugate()).scale(Fraction(1, 2))

    def im(self) -> "MixedPoly":
        return (self - self.conjugate()).scale(GaussRat(0, Fraction(-1, 2)))

    @property
    def is_real(self) -> bool:
        t = self._terms
        for m, c in t.items():
            if m[4]:
                return False
            d = t.get(swap_mono(m))
            if d is None or d != c.conj():
                return False
        return True

    reality_flag = is_real

    @property
    def is_holomorphic(self) -> bool:
        return all(m[2] == 0 and m[3] == 0 and m[5] == 0 for m in self._terms)

    @property
    def has_w(self) -> bool:
        return any(m[4] for m in self._terms)

    @property
    def has_u(self) -> bool:
        return any(m[5] for m in self._terms)

    def depends_on(self, name: str) -> bool:
        k = _VAR_INDEX[name]
        return any(m[k] for m in self._terms)

    def derivative(self, name: str) -> "MixedPoly":
        k = _VAR_INDEX[name]
        out = {}
        for m, c in self._terms.items():
            e = m[k]
            if e:
                n = list(m)
                n[k] = e - 1
                out[tuple(n)] = c * e
        return MixedPoly._raw(out)

    def pluriharmonic_part(self) -> "MixedPoly":
        return MixedPoly._raw({m: c for m, c in self._terms.items() if not is_mixed(m)})

    def mixed_part(self) -> "MixedPoly":
        return MixedPoly._raw({m: c for m, c in self._terms.items() if is_mixed(m)})

    def substitute_w(self, P: "MixedPoly", _cache: dict | None = None) -> "MixedPoly":
        return substitute_w(self, P, _cache)

    def map_monomials(self, fn) -> "MixedPoly":
        return MixedPoly({fn(m): c for m, c in self._terms.items()})

    # -- rendering ----------------------------------------------------
    def __str__(self):
        return render_terms(sorted(self._terms.items()))

    def __repr__(self):
        return f"MixedPoly({self})"


def _render_term(c: GaussRat, mono_str: str) -> tuple:
    """Return (sign, body) for one term, sign in {+1, -1}."""
    if c.im == 0 or c.re == 0:
        neg = (c.re < 0) if c.im == 0 else (c.im < 0)
        a = -c if neg else c
        if mono_str:
            if a == 1:
                body = mono_str
            elif a == I:
                body = f"i*{mono_str}"
            else:
                body = f"{a}*{mono_str}"
        else:
            body = str(a)
        return (-1 if neg else 1), body
    body = f"({c})*{mono_str}" if mono_str else f"({c})"
    return 1, body


def render_terms(items: Iterable, suffix_of=render_mono) -> str:
    out = []
    for m, c in items:
        sign, body = _render_term(c, suffix_of(m))
        if not out:
            out.append(body if sign > 0 else f"-{body}")
        else:
            out.append(f"{'+' if sign > 0 else '-'} {body}")
    return " ".join(out) if out else "0"


# -- module-level operations --------------------------------------------

def poly_arith(lhs: MixedPoly, rhs: MixedPoly, op: str) -> MixedPoly:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown op {op!r}")


def conjugate(p: MixedPoly) -> MixedPoly:
    return p.conjugate()


def wirtinger(p: MixedPoly, var: str) -> MixedPoly:
    if var not in ("z1", "z2", "w"):
        raise ValueError("wirtinger derivative is taken in z1, z2 or w")
    return p.derivative(var)


def is_pluriharmonic(p: MixedPoly) -> bool:
    if not p.is_real or p.has_u:
        raise ValueError("is_pluriharmonic expects a real polynomial in z, Z")
    return not any(is_mixed(m) for m in p._terms)


def u_plus_iP_powers(P: MixedPoly, k: int, cache: dict | None = None) -> MixedPoly:
    """``(u + i P)^k``; ``cache`` maps k to the power for a fixed P."""
    if cache is None:
        cache = {}
    if k not in cache:
        if k == 0:
            cache[0] = MixedPoly.const(1)
        else:
            base = MixedPoly.var("u") + P.scale(I)
            cache[k] = u_plus_iP_powers(P, k - 1, cache) * base
    return cache[k]


def substitute_w(p: MixedPoly, P: MixedPoly, cache: dict | None = None) -> MixedPoly:
    """Replace every ``w^k`` by ``(u + iP)^k`` (restriction to ``Im w = P``)."""
    if P.has_w or P.has_u:
        raise ValueError("P must be free of w and u")
    if not p.has_w:
        return p
    if cache is None:
        cache = {}
    by_power: dict = {}
    for m, c in p._terms.items():
        by_power.setdefault(m[4], {})[(m[0], m[1], m[2], m[3], 0, m[5])] = c
    out = MixedPoly.zero()
    for k, part in by_power.items():
        q = MixedPoly._raw(part)
        out = out + (q if k == 0 else q * u_plus_iP_powers(P, k, cache))
    return out


# -- vector fields ------------------------------------------------------

FIELD_SLOTS = ("f1", "f2", "g")
_DIRECTION_VAR = {"f1": "z1", "f2": "z2", "g": "w"}
DIRECTION_TOKENS = {"f1": "d1", "f2": "d2", "g": "dw"}


@dataclass(frozen=True)
class HoloField:
    """``f1*d/dz1 + f2*d/dz2 + g*d/dw`` with holomorphic polynomial
    coefficients in (z1, z2, w)."""

    f1: MixedPoly
    f2: MixedPoly
    g: MixedPoly

    def __post_init__(self):
        for name in FIELD_SLOTS:
            p = getattr(self, name)
            if not isinstance(p, MixedPoly):
                p = MixedPoly.const(p)
                object.__setattr__(self, name, p)
            if not p.is_holomorphic:
                from .errors import AntiholomorphicCoefficient

                raise AntiholomorphicCoefficient(f"coefficient {name} = {p} is not holomorphic")

    @classmethod
    def make(cls, f1=0, f2=0, g=0) -> "HoloField":
        return cls(f1, f2, g)

    @classmethod
    def zero(cls) -> "HoloField":
        return cls.make()

    def components(self) -> tuple:
        return (self.f1, self.f2, self.g)

    def is_zero(self) -> bool:
        return not (self.f1 or self.f2 or self.g)

    @property
    def is_rigid(self) -> bool:
        return not (self.f1.has_w or self.f2.has_w or self.g.has_w)

    def __add__(self, other: "HoloField") -> "HoloField":
        return HoloField(self.f1 + other.f1, self.f2 + other.f2, self.g + other.g)

    def __sub__(self, other: "HoloField") -> "HoloField":
        return HoloField(self.f1 - other.f1, self.f2 - other.f2, self.g - other.g)

    def __neg__(self):
        return HoloField(-self.f1, -self.f2, -self.g)

    def scale(self, c) -> "HoloField":
        return HoloField(self.f1.scale(c), self.f2.scale(c), self.g.scale(c))

    def __mul__(self, c):
        if isinstance(c, MixedPoly):
            return HoloField(self.f1 * c, self.f2 * c, self.g * c)
        return self.scale(c)

    __rmul__ = __mul__

    def apply(self, h: MixedPoly) -> MixedPoly:
        """Derivative of a holomorphic polynomial ``h`` along the field."""
        out = MixedPoly.zero()
        for coef, var in ((self.f1, "z1"), (self.f2, "z2"), (self.g, "w")):
            if coef:
                d = h.derivative(var)
                if d:
                    out = out + coef * d
        return out

    __call__ = apply

    def items(self):
        """Canonically ordered ``((slot, mono), coeff)`` pairs."""
        for slot in FIELD_SLOTS:
            for m, c in getattr(self, slot).items():
                yield (slot, m), c

    def __str__(self):
        return render_terms(
            self.items(),
            suffix_of=lambda key: "*".join(x for x in (render_mono(key[1]), DIRECTION_TOKENS[key[0]]) if x),
        )

    def __repr__(self):
        return f"HoloField({self})"


def lie_bracket(X: HoloField, Y: HoloField) -> HoloField:
    """Commutator ``[X, Y] = XY - YX`` of holomorphic vector fields."""
    return HoloField(*(X.apply(b) - Y.apply(a) for a, b in zip(X.components(), Y.components())))


def euler_field(mu1, mu2) -> HoloField:
    return HoloField.make(
        f1=MixedPoly.var("z1").scale(mu1),
        f2=MixedPoly.var("z2").scale(mu2),
        g=MixedPoly.var("w"),
    )


# short aliases used throughout the tests and catalog
z1 = MixedPoly.var("z1")
z2 = MixedPoly.var("z2")
Z1 = MixedPoly.var("Z1")
Z2 = MixedPoly.var("Z2")
w = MixedPoly.var("w")
u = MixedPoly.var("u")

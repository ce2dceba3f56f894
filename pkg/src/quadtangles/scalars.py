"""Scalar arithmetic for the quadratic-tangle calculus.

Three interchangeable contexts supply the ring everything else lives in:

* :class:`SymbolicContext` -- Laurent polynomials in ``q`` with coefficients in
  the cyclotomic field ``Q(zeta_N)``.  A ring only; division is exact division.
* :class:`ExactContext` -- ``q`` specialised to a rational number, scalars are
  elements of ``Q(zeta_N)`` with :class:`fractions.Fraction` coordinates.  This
  is a field, so idempotents, dual bases and Gram inverses are computed exactly.
* :class:`NumericContext` -- double precision complex numbers at a real ``q``.

All scalar types follow the Python number protocol (``+ - * /``, ``**``,
``conjugate()``), so higher layers are written once against any context.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

__all__ = [
    "Cyclo",
    "DegenerateParameterError",
    "ExactContext",
    "LaurentPoly",
    "NumericContext",
    "RootOfUnity",
    "SymbolicContext",
    "W",
    "cyclotomic_poly",
    "qbinom",
    "q_from_delta",
    "q_from_delta2",
    "qint",
    "scalar_from_json",
    "scalar_to_json",
    "session_modulus",
]


class DegenerateParameterError(ArithmeticError):
    """A formula was evaluated where one of its denominators vanishes."""


# ---------------------------------------------------------------------------
# Cyclotomic polynomials and the field Q(zeta_N)
# ---------------------------------------------------------------------------

def _poly_divexact_int(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        c, rem = divmod(num[k + len(den) - 1], lead)
        if rem:
            raise ArithmeticError("inexact integer polynomial division")
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact integer polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> tuple[int, ...]:
    """Integer coefficients (lowest degree first) of the N-th cyclotomic polynomial."""
    if N < 1:
        raise ValueError("N must be positive")
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly = _poly_divexact_int(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_table(N: int) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """(phi, rows) where rows[k] is zeta^k written in the power basis, 0 <= k < N."""
    phi_poly = cyclotomic_poly(N)
    phi = len(phi_poly) - 1
    rows: list[tuple[int, ...]] = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(N):
        rows.append(tuple(cur))
        # multiply by x and reduce with the monic relation
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * phi_poly[j]
    return phi, tuple(rows)


def _qpoly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _qpoly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    if len(a) < len(b):
        return [], _qpoly_trim(a)
    quo = [Fraction(0)] * (len(a) - len(b) + 1)
    inv_lead = 1 / Fraction(b[-1])
    for k in range(len(quo) - 1, -1, -1):
        c = a[k + len(b) - 1] * inv_lead
        quo[k] = c
        if c:
            for j, d in enumerate(b):
                a[k + j] -= c * d
    return _qpoly_trim(quo), _qpoly_trim(a[: len(b) - 1])


def _qpoly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _qpoly_trim(out)


def _qpoly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _qpoly_trim(out)


_Rational = (int, Fraction)


class Cyclo:
    """An element of Q(zeta_N), stored in the power basis modulo Phi_N."""

    __slots__ = ("N", "c")

    def __init__(self, N: int, coeffs: Iterable = (0,)):
        phi, rows = _reduction_table(N)
        raw = [Fraction(x) for x in coeffs]
        if len(raw) > phi:
            c = [Fraction(0)] * phi
            for k, x in enumerate(raw):
                if x:
                    row = rows[k % N]
                    for j in range(phi):
                        if row[j]:
                            c[j] += x * row[j]
        else:
            c = raw + [Fraction(0)] * (phi - len(raw))
        self.N = N
        self.c = tuple(c)

    @classmethod
    def _raw(cls, N: int, c: tuple) -> "Cyclo":
        obj = object.__new__(cls)
        obj.N = N
        obj.c = c
        return obj

    @classmethod
    def zeta(cls, N: int, k: int = 1) -> "Cyclo":
        """zeta_N ** k."""
        phi, rows = _reduction_table(N)
        return cls._raw(N, tuple(Fraction(x) for x in rows[k % N]))

    @classmethod
    def const(cls, N: int, x) -> "Cyclo":
        phi, _ = _reduction_table(N)
        return cls._raw(N, (Fraction(x),) + (Fraction(0),) * (phi - 1))

    # -- helpers ----------------------------------------------------------
    def _coerce(self, other) -> "Cyclo":
        if isinstance(other, Cyclo):
            if other.N != self.N:
                raise ValueError(f"mixing Q(zeta_{self.N}) with Q(zeta_{other.N})")
            return other
        if isinstance(other, _Rational):
            return Cyclo.const(self.N, other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.c[0]

    # -- ring operations --------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclo._raw(self.N, tuple(a + b for a, b in zip(self.c, other.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo._raw(self.N, tuple(-a for a in self.c))

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclo._raw(self.N, tuple(a - b for a, b in zip(self.c, other.c)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, _Rational):
            return Cyclo._raw(self.N, tuple(a * other for a in self.c))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        phi, rows = _reduction_table(self.N)
        if phi == 1:
            return Cyclo._raw(self.N, (self.c[0] * other.c[0],))
        prod = [Fraction(0)] * (2 * phi - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        prod[i + j] += a * b
        out = prod[:phi]
        for k in range(phi, 2 * phi - 1):
            x = prod[k]
            if x:
                row = rows[k % self.N]
                for j in range(phi):
                    if row[j]:
                        out[j] += x * row[j]
        return Cyclo._raw(self.N, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_N)")
        phi, _ = _reduction_table(self.N)
        if phi == 1:
            return Cyclo._raw(self.N, (1 / self.c[0],))
        # extended Euclid: s*a + t*Phi = g, g a nonzero constant
        mod = [Fraction(x) for x in cyclotomic_poly(self.N)]
        r0, r1 = mod, _qpoly_trim(list(self.c))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            quo, rem = _qpoly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _qpoly_sub(s0, _qpoly_mul(quo, s1))
        g = r1[0]
        return Cyclo(self.N, [x / g for x in s1])

    def __truediv__(self, other):
        if isinstance(other, _Rational):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Cyclo._raw(self.N, tuple(a / other for a in self.c))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Cyclo.const(self.N, 1)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "Cyclo":
        """Complex conjugation: zeta -> zeta^{-1}."""
        raw = [Fraction(0)] * self.N
        for k, x in enumerate(self.c):
            raw[(-k) % self.N] += x
        return Cyclo(self.N, raw)

    # -- comparison / conversion ------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (Cyclo, int, Fraction)):
            other = self._coerce(other)
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash((self.N, self.c))

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        z = cmath.exp(2j * math.pi / self.N)
        return complex(sum(float(x) * z**k for k, x in enumerate(self.c) if x))

    def __repr__(self):
        if self.is_rational():
            return f"Cyclo({self.N}, {self.c[0]})"
        terms = [f"{x}*z^{k}" if k else str(x) for k, x in enumerate(self.c) if x]
        return f"Cyclo({self.N}, {' + '.join(terms)})"


# ---------------------------------------------------------------------------
# Roots of unity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootOfUnity:
    """exp(2 pi i a / m), kept with 0 <= a < m and gcd(a, m) = 1."""

    a: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("order must be positive")
        a = self.a % self.m
        g = math.gcd(a, self.m)
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "m", self.m // g)

    @classmethod
    def parse(cls, text: str) -> "RootOfUnity":
        """Parse an ``"a/m"`` rational angle; ``"1"`` and ``"-1"`` are accepted."""
        text = text.strip()
        if text in ("1", "+1"):
            return cls(0, 1)
        if text == "-1":
            return cls(1, 2)
        match = re.fullmatch(r"(-?\d+)\s*/\s*(\d+)", text)
        if not match:
            raise ValueError(f"expected a rational angle 'a/m', got {text!r}")
        return cls(int(match.group(1)), int(match.group(2)))

    @classmethod
    def one(cls) -> "RootOfUnity":
        return cls(0, 1)

    def __str__(self):
        return f"{self.a}/{self.m}"

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return _root_mul(self.a, self.m, other.a, other.m)

    def __pow__(self, k: int) -> "RootOfUnity":
        return _root_pow(self.a, self.m, k)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(-self.a, self.m)

    conjugate = inverse

    def sqrts(self) -> tuple["RootOfUnity", "RootOfUnity"]:
        """The two square roots, smallest angle first."""
        return RootOfUnity(self.a, 2 * self.m), RootOfUnity(self.a + self.m, 2 * self.m)

    def is_power_root(self, n: int) -> bool:
        """True when this is an n-th root of unity."""
        return n % self.m == 0

    @property
    def angle(self) -> float:
        return 2 * math.pi * self.a / self.m

    def __complex__(self):
        return _root_complex(self.a, self.m)


# Root arithmetic sits in hot loops of the parameter sweeps; memoise it.
@lru_cache(maxsize=65536)
def _root_mul(a1: int, m1: int, a2: int, m2: int) -> RootOfUnity:
    m = m1 * m2 // math.gcd(m1, m2)
    return RootOfUnity(a1 * (m // m1) + a2 * (m // m2), m)


@lru_cache(maxsize=65536)
def _root_pow(a: int, m: int, k: int) -> RootOfUnity:
    return RootOfUnity(a * k, m)


@lru_cache(maxsize=65536)
def _root_complex(a: int, m: int) -> complex:
    return cmath.exp(2j * math.pi * a / m)


def session_modulus(n: int) -> int:
    """lcm(4n, 2n+2): a cyclotomic modulus housing every omega, sigma and (-sigma) power at weight n."""
    return math.lcm(4 * n, 2 * n + 2)


# ---------------------------------------------------------------------------
# Laurent polynomials over Q(zeta_N)
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Finite sum  sum_e c_e q^e  with c_e in Q(zeta_N); zero coefficients are never stored."""

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms: dict | None = None):
        self.N = N
        clean = {}
        for e, c in (terms or {}).items():
            if not isinstance(c, Cyclo):
                c = Cyclo.const(N, c)
            elif c.N != N:
                raise ValueError("coefficient field mismatch")
            if not c.is_zero():
                clean[int(e)] = c
        self.terms = clean

    @classmethod
    def monomial(cls, N: int, e: int, c=1) -> "LaurentPoly":
        return cls(N, {e: c})

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.N != self.N:
                raise ValueError("coefficient field mismatch")
            return other
        if isinstance(other, (int, Fraction, Cyclo)):
            return LaurentPoly(self.N, {0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return LaurentPoly(self.N, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.N, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, Cyclo] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return LaurentPoly(self.N, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self.terms) != 1:
                raise ArithmeticError("only monomials are invertible Laurent polynomials")
            (e, c), = self.terms.items()
            return LaurentPoly(self.N, {-e * (-k): c ** k})
        result = LaurentPoly(self.N, {0: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Long division after clearing negative exponents; remainder has lower degree than the divisor."""
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self.terms)
        dlo, dhi = min(other.terms), max(other.terms)
        lead_inv = other.terms[dhi].inverse()
        quo: dict[int, Cyclo] = {}
        while rem:
            hi = max(rem)
            lo = min(rem)
            if hi - lo < dhi - dlo:
                break
            c = rem[hi] * lead_inv
            shift = hi - dhi
            quo[shift] = c
            for e, d in other.terms.items():
                k = e + shift
                v = rem.get(k, Cyclo.const(self.N, 0)) - c * d
                if v.is_zero():
                    rem.pop(k, None)
                else:
                    rem[k] = v
        return LaurentPoly(self.N, quo), LaurentPoly(self.N, rem)

    def exact_div(self, other) -> "LaurentPoly":
        quo, rem = self.divmod(other)
        if rem.terms:
            raise ArithmeticError("Laurent polynomial division is not exact")
        return quo

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            inv = 1 / Fraction(other) if not isinstance(other, Cyclo) else other.inverse()
            return LaurentPoly(self.N, {e: c * inv for e, c in self.terms.items()})
        return self.exact_div(other)

    def conjugate(self) -> "LaurentPoly":
        """Ring automorphism fixing q and inverting every root of unity."""
        return LaurentPoly(self.N, {e: c.conjugate() for e, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted((e, c.c) for e, c in self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def evaluate(self, q, N_target: int | None = None):
        """Substitute a value for q.

        ``q`` a Fraction/int gives a :class:`Cyclo` (optionally in a larger field
        ``N_target``); a float or complex gives a complex number with
        ``zeta_N -> exp(2 pi i / N)``.
        """
        if isinstance(q, _Rational):
            target = N_target or self.N
            if target % self.N:
                raise ValueError("target field must contain Q(zeta_N)")
            step = target // self.N
            total = Cyclo.const(target, 0)
            for e, c in self.terms.items():
                total = total + _lift(c, target, step) * Fraction(q) ** e
            return total
        q = complex(q)
        return sum((complex(c) * q**e for e, c in self.terms.items()), 0j)

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "terms": [
                {"qexp": e, "coeffs": [_frac_str(x) for x in self.terms[e].c]}
                for e in sorted(self.terms)
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LaurentPoly":
        N = int(obj["N"])
        return cls(N, {int(t["qexp"]): Cyclo(N, [Fraction(s) for s in t["coeffs"]])
                       for t in obj["terms"]})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            cs = str(c.c[0]) if c.is_rational() else repr(c)
            parts.append(f"{cs}*q^{e}")
        return " + ".join(parts)


def _lift(c: Cyclo, target: int, step: int) -> Cyclo:
    if step == 1:
        return c
    raw = [Fraction(0)] * target
    for k, x in enumerate(c.c):
        raw[(k * step) % target] += x
    return Cyclo(target, raw)


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Contexts
# ---------------------------------------------------------------------------

Scalar = Union[complex, float, Fraction, Cyclo, LaurentPoly]


class _Context:
    """Shared behaviour; subclasses provide ``q_power``, ``root`` and ``const``."""

    exact = True

    def q_power(self, k: int):
        raise NotImplementedError

    def const(self, x):
        raise NotImplementedError

    def root(self, w: RootOfUnity):
        raise NotImplementedError

    @property
    def zero(self):
        return self.const(0)

    @property
    def one(self):
        return self.const(1)

    @property
    def delta(self):
        return self.qint(2)

    def qint(self, r: int):
        """Quantum integer [r] = (q^r - q^-r)/(q - q^-1)."""
        return qint(r, self)

    def W(self, k: int, w: RootOfUnity):
        return W(k, w, self)

    def is_zero(self, x) -> bool:
        if isinstance(x, (Cyclo, LaurentPoly)):
            return x.is_zero()
        return x == 0

    def eq(self, x, y) -> bool:
        return self.is_zero(x - y)

    def residual(self, x, y) -> float:
        return abs(self.to_complex(x) - self.to_complex(y))

    def to_complex(self, x) -> complex:
        raise NotImplementedError


@dataclass(frozen=True)
class SymbolicContext(_Context):
    """Generic q: scalars are :class:`LaurentPoly` over Q(zeta_N)."""

    N: int = 1

    def q_power(self, k: int) -> LaurentPoly:
        return LaurentPoly.monomial(self.N, k)

    def const(self, x) -> LaurentPoly:
        return LaurentPoly(self.N, {0: x})

    def root(self, w: RootOfUnity) -> LaurentPoly:
        if self.N % w.m:
            raise ValueError(f"root of order {w.m} not in Q(zeta_{self.N})")
        return LaurentPoly(self.N, {0: Cyclo.zeta(self.N, w.a * (self.N // w.m))})

    def to_complex(self, x) -> complex:
        raise TypeError("symbolic scalars have no single complex value; evaluate() first")


@dataclass(frozen=True)
class ExactContext(_Context):
    """q fixed to a rational number; scalars live in Q(zeta_N)."""

    q: Fraction = Fraction(2)
    N: int = 1

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        if self.q == 0:
            raise DegenerateParameterError("q must be nonzero")

    # N == 1 keeps plain Fractions: the Temperley-Lieb layer never needs roots of unity
    def q_power(self, k: int):
        if self.N == 1:
            return self.q ** k
        return Cyclo.const(self.N, self.q ** k)

    def const(self, x):
        if isinstance(x, Cyclo):
            if x.N != self.N:
                raise ValueError("field mismatch")
            return x.rational() if self.N == 1 else x
        return Fraction(x) if self.N == 1 else Cyclo.const(self.N, x)

    def root(self, w: RootOfUnity):
        if self.N % w.m:
            raise ValueError(f"root of order {w.m} not in Q(zeta_{self.N})")
        if self.N == 1:
            return Fraction(1)
        return Cyclo.zeta(self.N, w.a * (self.N // w.m))

    def to_complex(self, x) -> complex:
        return complex(x)


@dataclass(frozen=True)
class NumericContext(_Context):
    """Double precision complex scalars at a concrete q."""

    q: float = 1.5
    tol: float = 1e-9
    exact = False

    def q_power(self, k: int) -> complex:
        return complex(self.q) ** k

    def const(self, x) -> complex:
        return complex(x)

    def root(self, w: RootOfUnity) -> complex:
        return complex(w)

    def is_zero(self, x) -> bool:
        return abs(x) < self.tol

    def to_complex(self, x) -> complex:
        return complex(x)


Context = Union[SymbolicContext, ExactContext, NumericContext]


# ---------------------------------------------------------------------------
# Quantum integers and friends
# ---------------------------------------------------------------------------

def qint(r: int, ctx: Context):
    """[r] as a scalar of ``ctx``; [-r] = -[r], [0] = 0."""
    if isinstance(ctx, NumericContext):
        q = complex(ctx.q)
        denom = q - 1 / q
        if abs(denom) < 1e-300:
            raise DegenerateParameterError("q = +-1 makes (q - 1/q) vanish")
        value = (q**r - q**-r) / denom
        return value
    if isinstance(ctx, ExactContext) and ctx.q in (1, -1):
        raise DegenerateParameterError("q = +-1 makes (q - 1/q) vanish")
    sign = 1 if r >= 0 else -1
    total = ctx.zero
    for k in range(abs(r)):
        total = total + ctx.q_power(abs(r) - 1 - 2 * k)
    return total if sign > 0 else -total


def qbinom(m: int, i: int, ctx: Context):
    """Quantum binomial [m choose i] via the q-Pascal rule (ring operations only)."""
    if not 0 <= i <= m:
        raise ValueError(f"qbinom needs 0 <= i <= m, got m={m}, i={i}")
    row = [ctx.one]
    for k in range(1, m + 1):
        new = [ctx.one] * (k + 1)
        for j in range(1, k):
            # [k, j] = q^{-j} [k-1, j] + q^{k-j} [k-1, j-1]
            new[j] = ctx.q_power(-j) * row[j] + ctx.q_power(k - j) * row[j - 1]
        row = new
    return row[i]


def q_from_delta(delta: float) -> float:
    """The root q >= 1 of q + 1/q = delta (delta >= 2)."""
    if delta < 2:
        raise DegenerateParameterError(f"delta={delta} < 2 has no real q > 0")
    return (delta + math.sqrt(delta * delta - 4)) / 2


def q_from_delta2(delta2: float) -> float:
    return q_from_delta(math.sqrt(delta2))


def W(k: int, w: RootOfUnity, ctx: Context):
    """q^k + q^-k - w - w^-1."""
    return ctx.q_power(k) + ctx.q_power(-k) - ctx.root(w) - ctx.root(w.inverse())


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def scalar_to_json(x) -> dict | list:
    """Exact scalars use the {"N", "terms"} schema; numeric ones become [re, im]."""
    if isinstance(x, LaurentPoly):
        return x.to_json()
    if isinstance(x, Cyclo):
        return LaurentPoly(x.N, {0: x}).to_json()
    if isinstance(x, (int, Fraction)):
        return LaurentPoly(1, {0: x}).to_json()
    z = complex(x)
    return [z.real, z.imag]


def scalar_from_json(obj):
    if isinstance(obj, list):
        return complex(obj[0], obj[1])
    return LaurentPoly.from_json(obj)

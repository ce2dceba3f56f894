"""Temperley-Lieb diagrams and the algebra TL_{n,+-}.

A diagram with ``n`` strands is a non-crossing perfect matching of ``2n``
boundary points.  Points are numbered counterclockwise starting just after the
distinguished (starred) interval, which sits on the left edge of the usual
rectangle picture: the bottom row is points ``0 .. n-1`` read left to right and
the top row is points ``n .. 2n-1`` read right to left.  With this numbering a
matching is non-crossing exactly when it is a balanced bracket word, and the
Fourier transform is the cyclic shift ``p -> p + 1``.

Public serialisation uses 1-based points ``1 .. 2n``; everything internal is
0-based.  A pairing is stored as the tuple ``partner[p]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator

from .scalars import Context, scalar_from_json, scalar_to_json

Pairing = tuple[int, ...]

PLUS, MINUS = "+", "-"


class ShapeError(ValueError):
    """Operands live in different TL_{n,+-}."""


def _norm_sign(sign: str) -> str:
    if sign in ("+", "plus"):
        return PLUS
    if sign in ("-", "−", "minus"):
        return MINUS
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def _flip(sign: str) -> str:
    return MINUS if sign == PLUS else PLUS


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


# ---------------------------------------------------------------------------
# Pairings
# ---------------------------------------------------------------------------

def is_noncrossing_pairing(pairing: Pairing) -> bool:
    m = len(pairing)
    if m % 2:
        return False
    if any(not 0 <= pairing[p] < m or pairing[p] == p or pairing[pairing[p]] != p for p in range(m)):
        return False
    stack = []
    for p in range(m):
        if p < pairing[p]:
            stack.append(pairing[p])
        elif not stack or stack.pop() != p:
            return False
    return True


@lru_cache(maxsize=None)
def noncrossing_pairings(n: int) -> tuple[Pairing, ...]:
    """All non-crossing pairings of 2n points, sorted lexicographically."""
    if n < 0:
        raise ValueError("n must be non-negative")

    def build(lo: int, hi: int) -> Iterator[dict[int, int]]:
        # pairings of the interval [lo, hi)
        if lo >= hi:
            yield {}
            return
        for mate in range(lo + 1, hi, 2):
            for inner in build(lo + 1, mate):
                for outer in build(mate + 1, hi):
                    d = {lo: mate, mate: lo}
                    d.update(inner)
                    d.update(outer)
                    yield d

    out = [tuple(d[p] for p in range(2 * n)) for d in build(0, 2 * n)]
    return tuple(sorted(out))


def identity_pairing(n: int) -> Pairing:
    return tuple(2 * n - 1 - p for p in range(2 * n))


def e_pairing(i: int, n: int) -> Pairing:
    """E_i: caps joining positions i, i+1 on the bottom and on the top."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"E_i needs 1 <= i <= n-1, got i={i}, n={n}")
    partner = list(identity_pairing(n))
    b0, b1 = i - 1, i
    t0, t1 = 2 * n - i, 2 * n - i - 1
    partner[b0], partner[b1] = b1, b0
    partner[t0], partner[t1] = t1, t0
    return tuple(partner)


def hook_pairing(n: int, top: int, bottom: int) -> Pairing:
    """One cap on each boundary (top cap at positions top, top+1; bottom cap at bottom, bottom+1), the rest through."""
    if not (1 <= top <= n - 1 and 1 <= bottom <= n - 1):
        raise ValueError("cap positions must lie in 1..n-1")
    partner = [0] * (2 * n)
    b0, b1 = bottom - 1, bottom
    t0, t1 = 2 * n - top, 2 * n - top - 1
    partner[b0], partner[b1] = b1, b0
    partner[t0], partner[t1] = t1, t0
    bots = [p for p in range(n) if p not in (b0, b1)]
    tops = [2 * n - j for j in range(1, n + 1) if 2 * n - j not in (t0, t1)]
    for b, t in zip(bots, tops):
        partner[b], partner[t] = t, b
    return tuple(partner)


def compose(x: Pairing, y: Pairing, n: int) -> tuple[Pairing, int]:
    """Stack x above y (x's bottom glued to y's top); return (pairing, closed loops)."""
    two_n = 2 * n
    last = two_n - 1
    res = [-1] * two_n
    seen = [False] * n  # glued points, indexed by x's bottom point
    # strands entering from y's bottom row
    for p in range(n):
        if res[p] >= 0:
            continue
        mate = y[p]
        while mate >= n:  # in y, at a top point: cross into x
            b = last - mate
            seen[b] = True
            mate = x[b]
            if mate >= n:
                break
            seen[mate] = True
            mate = y[last - mate]
        res[p] = mate
        res[mate] = p
    # strands running top to top through x (possibly via y)
    for t in range(n, two_n):
        if res[t] >= 0:
            continue
        mate = x[t]
        while mate < n:
            seen[mate] = True
            mate = y[last - mate]
            if mate < n:
                break
            b = last - mate
            seen[b] = True
            mate = x[b]
        res[t] = mate
        res[mate] = t
    loops = 0
    for b in range(n):
        if not seen[b]:
            loops += 1
            cur = b
            while not seen[cur]:
                seen[cur] = True
                nxt = y[last - cur]
                seen[last - nxt] = True
                cur = x[last - nxt]
    return tuple(res), loops


def closure_loops(pairing: Pairing) -> int:
    """Loops formed by the trace closure (bottom position j joined to top position j)."""
    two_n = len(pairing)
    last = two_n - 1
    seen = [False] * two_n
    loops = 0
    for p in range(two_n):
        if not seen[p]:
            loops += 1
            cur = p
            while not seen[cur]:
                seen[cur] = True
                mate = pairing[cur]
                seen[mate] = True
                cur = last - mate
    return loops


def union_loops(x: Pairing, y: Pairing) -> int:
    """Number of cycles in the union of two matchings on the same points."""
    seen = [False] * len(x)
    loops = 0
    for p in range(len(x)):
        if not seen[p]:
            loops += 1
            cur = p
            while not seen[cur]:
                seen[cur] = True
                mate = x[cur]
                seen[mate] = True
                cur = y[mate]
    return loops


def shift_pairing(pairing: Pairing, k: int) -> Pairing:
    two_n = len(pairing)
    if two_n == 0:
        return pairing
    out = [0] * two_n
    for p, mate in enumerate(pairing):
        out[(p + k) % two_n] = (mate + k) % two_n
    return tuple(out)


def reflect_pairing(pairing: Pairing) -> Pairing:
    last = len(pairing) - 1
    out = [0] * len(pairing)
    for p, mate in enumerate(pairing):
        out[last - p] = last - mate
    return tuple(out)


def embed_pairing(pairing: Pairing, n: int) -> Pairing:
    """Add a through strand on the right: TL_n -> TL_{n+1}."""
    relabel = [p if p < n else p + 2 for p in range(2 * n)]
    out = [0] * (2 * n + 2)
    for p, mate in enumerate(pairing):
        out[relabel[p]] = relabel[mate]
    out[n], out[n + 1] = n + 1, n
    return tuple(out)


def close_last_strand(pairing: Pairing, n: int) -> tuple[Pairing, int]:
    """Partial trace over the rightmost strand; returns (pairing on n-1 strands, loops)."""
    b, t = n - 1, n  # rightmost bottom point, rightmost top point
    if pairing[b] == t:
        loops = 1
    else:
        loops = 0
    out = [0] * (2 * n - 2)

    def relabel(p: int) -> int:
        return p if p < b else p - 2

    for p in range(2 * n):
        if p in (b, t):
            continue
        mate = pairing[p]
        while mate in (b, t):
            mate = pairing[t if mate == b else b]
        out[relabel(p)] = relabel(mate)
    return tuple(out), loops


# ---------------------------------------------------------------------------
# Diagrams and elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TLDiagram:
    n: int
    sign: str
    pairing: Pairing

    def __post_init__(self):
        object.__setattr__(self, "sign", _norm_sign(self.sign))
        if len(self.pairing) != 2 * self.n or not is_noncrossing_pairing(self.pairing):
            raise ValueError("not a non-crossing pairing of 2n points")

    def pairs(self) -> list[tuple[int, int]]:
        """1-based point pairs (a, b) with a < b."""
        return [(p + 1, m + 1) for p, m in enumerate(self.pairing) if p < m]


def enumerate_basis(n: int, sign: str = PLUS) -> list[TLDiagram]:
    sign = _norm_sign(sign)
    return [TLDiagram(n, sign, p) for p in noncrossing_pairings(n)]


class TLElement:
    """A linear combination of TL diagrams sharing (n, sign), with scalars from ``ctx``."""

    __slots__ = ("n", "sign", "ctx", "terms")

    def __init__(self, n: int, sign: str, ctx: Context, terms: dict[Pairing, object] | None = None):
        self.n = n
        self.sign = _norm_sign(sign)
        self.ctx = ctx
        self.terms = {p: c for p, c in (terms or {}).items() if not _is_exact_zero(c)}

    # -- constructors -----------------------------------------------------
    @classmethod
    def diagram(cls, pairing: Pairing, ctx: Context, sign: str = PLUS, coeff=None) -> "TLElement":
        n = len(pairing) // 2
        return cls(n, sign, ctx, {tuple(pairing): ctx.one if coeff is None else coeff})

    @classmethod
    def identity(cls, n: int, ctx: Context, sign: str = PLUS) -> "TLElement":
        return cls.diagram(identity_pairing(n), ctx, sign)

    @classmethod
    def zero(cls, n: int, ctx: Context, sign: str = PLUS) -> "TLElement":
        return cls(n, sign, ctx)

    # -- linear structure -------------------------------------------------
    def _check(self, other: "TLElement") -> None:
        if self.n != other.n or self.sign != other.sign:
            raise ShapeError(f"TL_{self.n},{self.sign} vs TL_{other.n},{other.sign}")

    def __add__(self, other: "TLElement") -> "TLElement":
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out[p] + c if p in out else c
        return TLElement(self.n, self.sign, self.ctx, out)

    def __neg__(self) -> "TLElement":
        return TLElement(self.n, self.sign, self.ctx, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "TLElement") -> "TLElement":
        return self + (-other)

    def scale(self, s) -> "TLElement":
        return TLElement(self.n, self.sign, self.ctx, {p: s * c for p, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TLElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def coeff(self, pairing: Pairing):
        return self.terms.get(tuple(pairing), self.ctx.zero)

    def is_zero(self) -> bool:
        return all(self.ctx.is_zero(c) for c in self.terms.values())

    def __eq__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        if self.n != other.n or self.sign != other.sign:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"TLElement(n={self.n}, sign={self.sign!r}, terms={len(self.terms)})"

    def with_sign(self, sign: str) -> "TLElement":
        """Reinterpret the same diagrams with the other shading."""
        return TLElement(self.n, sign, self.ctx, self.terms)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "n": self.n,
            "sign": self.sign,
            "terms": [
                {"pairing": [[p + 1, m + 1] for p, m in enumerate(key) if p < m],
                 "coeff": scalar_to_json(c)}
                for key, c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json(cls, obj: dict, ctx: Context) -> "TLElement":
        n = int(obj["n"])
        terms = {}
        for t in obj["terms"]:
            partner = [0] * (2 * n)
            for a, b in t["pairing"]:
                partner[a - 1], partner[b - 1] = b - 1, a - 1
            key = tuple(partner)
            if not is_noncrossing_pairing(key):
                raise ValueError("serialized pairing is not non-crossing")
            c = scalar_from_json(t["coeff"])
            if hasattr(c, "evaluate") and not isinstance(c, complex):
                c = _from_symbolic(c, ctx)
            terms[key] = c
        return cls(n, obj["sign"], ctx, terms)


def _from_symbolic(poly, ctx):
    from .scalars import ExactContext, LaurentPoly, NumericContext

    if isinstance(ctx, ExactContext):
        value = poly.evaluate(ctx.q, N_target=ctx.N if ctx.N % poly.N == 0 else None)
        return value.rational() if ctx.N == 1 else value
    if isinstance(ctx, NumericContext):
        return poly.evaluate(ctx.q)
    return poly if isinstance(poly, LaurentPoly) else ctx.const(poly)


def _is_exact_zero(c) -> bool:
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return c == 0


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def multiply(x: TLElement, y: TLElement) -> TLElement:
    """x stacked above y; each closed loop contributes a factor delta."""
    x._check(y)
    n = x.n
    delta_pows = [x.ctx.one]
    out: dict[Pairing, object] = {}
    for px, cx in x.terms.items():
        for py, cy in y.terms.items():
            res, loops = compose(px, py, n)
            while len(delta_pows) <= loops:
                delta_pows.append(delta_pows[-1] * x.ctx.delta)
            c = cx * cy
            if loops:
                c = c * delta_pows[loops]
            if res in out:
                out[res] = out[res] + c
            else:
                out[res] = c
    return TLElement(n, x.sign, x.ctx, out)


def trace(x: TLElement):
    """Markov trace: delta^(loops of the closure), extended linearly; Tr(1_n) = delta^n."""
    total = x.ctx.zero
    delta = x.ctx.delta
    for p, c in x.terms.items():
        total = total + c * delta ** closure_loops(p)
    return total


def adjoint(x: TLElement) -> TLElement:
    return TLElement(x.n, x.sign, x.ctx,
                     {reflect_pairing(p): c.conjugate() for p, c in x.terms.items()})


def inner(x: TLElement, y: TLElement):
    """<x, y> = Tr(x* y); antilinear in x, linear in y."""
    x._check(y)
    return trace(multiply(adjoint(x), y))


def cond_expectation(x: TLElement) -> TLElement:
    """Close the last strand; Tr is preserved."""
    if x.n < 1:
        raise ValueError("conditional expectation needs n >= 1")
    delta = x.ctx.delta
    out: dict[Pairing, object] = {}
    for p, c in x.terms.items():
        res, loops = close_last_strand(p, x.n)
        if loops:
            c = c * delta
        out[res] = out[res] + c if res in out else c
    return TLElement(x.n - 1, x.sign, x.ctx, out)


def embed(x: TLElement) -> TLElement:
    """Inclusion TL_n -> TL_{n+1} adding a through strand on the right."""
    return TLElement(x.n + 1, x.sign, x.ctx, {embed_pairing(p, x.n): c for p, c in x.terms.items()})


def fourier(x: TLElement, power: int = 1) -> TLElement:
    """One click of the boundary (p -> p + 1) per power; flips the shading for odd powers."""
    if x.n < 1:
        raise ValueError("the Fourier transform needs n >= 1")
    sign = x.sign if power % 2 == 0 else _flip(x.sign)
    return TLElement(x.n, sign, x.ctx, {shift_pairing(p, power): c for p, c in x.terms.items()})


def rotation(x: TLElement, power: int = 1) -> TLElement:
    return fourier(x, 2 * power)


def e_generator(i: int, n: int, ctx: Context, sign: str = PLUS) -> TLElement:
    return TLElement.diagram(e_pairing(i, n), ctx, sign)


def gram_matrix(n: int, ctx: Context, sign: str = PLUS) -> list[list]:
    """<D, E> over the diagram basis."""
    basis = noncrossing_pairings(n)
    delta = ctx.delta
    rows = []
    for a in basis:
        ra = reflect_pairing(a)
        row = []
        for b in basis:
            res, loops = compose(ra, b, n)
            row.append(delta ** (loops + closure_loops(res)))
        rows.append(row)
    return rows

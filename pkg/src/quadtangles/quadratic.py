"""Quadratic tangles S o T and S * T: projections, the master formula and its check.

Two independent routes to <P_A(S o T), rho^j(P o Q)> (and the star variant)
live here:

* :func:`master_inner` evaluates the closed form term by term.
* :func:`oracle_inner` expands both arguments in the dual basis with
  :func:`project_annular`, rotates, and contracts against the inverse Gram
  matrix.  It shares no code with the closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .annular import DUAL, AnnularVector, LowestWeightLabel, dual_gram, half_rotation
from .jw import jw_rot_inner_any
from .scalars import Context, NumericContext, RootOfUnity

CIRC = "circ"
STAR = "star"

# The star half of the closed form as printed uses conj(sigma_P) sigma_Q on the
# a-bar a term and sigma_S conj(sigma_T) on the b-bar b term.  "corrected" swaps
# both to sigma_P conj(sigma_Q) and sigma_T conj(sigma_S), which is what the
# projection formula forces.
PRINTED = "printed"
CORRECTED = "corrected"


@dataclass
class StructureConstants:
    """a[R][S][T] = Tr(RST) and b[R][S][T] = Tr(R' S' T') over a common label set."""

    labels: list[LowestWeightLabel]
    a: list
    b: list

    def __post_init__(self):
        ns = {lab.n for lab in self.labels}
        if len(ns) != 1:
            raise ValueError("all labels must share the same weight n")
        size = len(self.labels)
        for table in (self.a, self.b):
            if len(table) != size or any(len(row) != size or any(len(r) != size for r in row) for row in table):
                raise ValueError(f"tables must be {size}x{size}x{size}")

    @property
    def n(self) -> int:
        return self.labels[0].n

    def index(self, key) -> int:
        if isinstance(key, int):
            return key
        for i, lab in enumerate(self.labels):
            if lab.name == key:
                return i
        raise KeyError(key)

    def violations(self, tol: float = 1e-9) -> list[str]:
        """Broken invariants: cyclicity, self-adjointness, and the odd-n b/a relation."""
        size, n = len(self.labels), self.n
        out = []

        def close(x, y) -> bool:
            return abs(complex(x) - complex(y)) <= tol

        for r in range(size):
            for s in range(size):
                for t in range(size):
                    for name, tab in (("a", self.a), ("b", self.b)):
                        if not close(tab[r][s][t], tab[s][t][r]):
                            out.append(f"{name}[{r}][{s}][{t}] not cyclic")
                        if not close(tab[r][s][t].conjugate(), tab[r][t][s]):
                            out.append(f"{name}[{r}][{s}][{t}] not self-adjoint")
                    if n % 2:
                        eps = complex(self._sigma_prod(r, s, t) ** n)
                        if not close(self.b[r][s][t], eps * complex(self.a[r][t][s])):
                            out.append(f"b[{r}][{s}][{t}] breaks the odd-n relation")
        return out

    def validate(self, tol: float = 1e-9) -> None:
        bad = self.violations(tol)
        if bad:
            raise ValueError("invalid structure constants: " + "; ".join(bad[:5]))

    def _sigma_prod(self, r: int, s: int, t: int) -> RootOfUnity:
        return self.labels[r].sigma * self.labels[s].sigma * self.labels[t].sigma

    def to_json(self) -> dict:
        def enc(x):
            z = complex(x)
            return [z.real, z.imag]

        return {
            "labels": [lab.to_json() for lab in self.labels],
            "a": [[[enc(x) for x in row] for row in plane] for plane in self.a],
            "b": [[[enc(x) for x in row] for row in plane] for plane in self.b],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "StructureConstants":
        labels = [LowestWeightLabel.from_json(lab) for lab in obj["labels"]]

        def dec(x):
            return complex(x[0], x[1]) if isinstance(x, list) else complex(x)

        a = [[[dec(x) for x in row] for row in plane] for plane in obj["a"]]
        b = [[[dec(x) for x in row] for row in plane] for plane in obj["b"]]
        return cls(labels, a, b)


def _symmetrize(table: np.ndarray, eps: np.ndarray | None) -> np.ndarray:
    """Average over the symmetry group: cyclic shifts, conjugate reversal, and eps-twisted conjugation."""
    cyc = (table + table.transpose(1, 2, 0) + table.transpose(2, 0, 1)) / 3
    rev = (cyc + np.conj(cyc.transpose(0, 2, 1))) / 2
    if eps is None:
        return rev
    return (rev + eps * np.conj(rev)) / 2


def random_structure_constants(labels: list[LowestWeightLabel], rng: np.random.Generator) -> StructureConstants:
    """Complex constants obeying every symmetry that genuine ones have.

    Beyond the validator's invariants this imposes Tr(RPQ) = (s_R s_P s_Q)^n Tr(RQP)
    for even n, which the even-n consistency identity relies on.
    """
    size, n = len(labels), labels[0].n
    eps = np.empty((size, size, size))
    for r in range(size):
        for s in range(size):
            for t in range(size):
                sig = labels[r].sigma * labels[s].sigma * labels[t].sigma
                eps[r, s, t] = -1 if (sig ** n).a else 1
    shape = (size, size, size)
    raw_a = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    raw_b = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    if n % 2:
        a = _symmetrize(raw_a, None)
        b = eps * a.transpose(0, 2, 1)
    else:
        a = _symmetrize(raw_a, eps)
        b = _symmetrize(raw_b, eps)
    return StructureConstants(labels, a.tolist(), b.tolist())


def random_labels(n: int, count: int, rng: np.random.Generator) -> list[LowestWeightLabel]:
    return [
        LowestWeightLabel.from_sigma(n, RootOfUnity(int(rng.integers(2 * n)), 2 * n), name=f"R{i}")
        for i in range(count)
    ]


@dataclass(frozen=True)
class QuadraticRef:
    """rho^j applied to S o T or S * T; labels are indices into the structure constants."""

    kind: str
    s: int
    t: int
    j: int = 0

    def __post_init__(self):
        if self.kind not in (CIRC, STAR):
            raise ValueError(f"kind must be circ or star, got {self.kind!r}")

    def check_range(self, n: int) -> None:
        if self.kind == CIRC and not 0 <= 2 * self.j <= n:
            raise ValueError(f"circ needs 0 <= 2j <= n, got j={self.j}, n={n}")
        if self.kind == STAR and not 0 <= 2 * self.j < n:
            raise ValueError(f"star needs 0 <= 2j < n, got j={self.j}, n={n}")


def project_annular(x: QuadraticRef, sc: StructureConstants, ctx: Context) -> dict[int, AnnularVector]:
    """Dual-basis coefficients of P_A(x) for each label R (rotation by rho^j included)."""
    n = sc.n
    lab_s, lab_t = sc.labels[x.s], sc.labels[x.t]
    out = {}
    for r, lab_r in enumerate(sc.labels):
        vec = AnnularVector.zero(lab_r, ctx, DUAL)
        ratio = ctx.root(lab_s.sigma * lab_t.sigma.inverse())
        a = ctx.const(sc.a[r][x.s][x.t])
        b = ctx.const(sc.b[r][x.s][x.t])
        if x.kind == CIRC:
            vec.add_at(n + 1, ctx.root(lab_r.sigma ** n) * a)
            vec.add_at(0, ratio * b)
        else:
            outer = ctx.root(lab_s.sigma * lab_t.sigma)
            vec.add_at(n + 2, outer * ctx.root(lab_r.sigma ** n) * b)
            vec.add_at(1, outer * ratio * a)
        out[r] = half_rotation(vec, 2 * x.j)
    return out


def oracle_inner(x: QuadraticRef, y: QuadraticRef, sc: StructureConstants, ctx: Context):
    """<P_A(x), P_A(y)> by Gram-matrix inversion."""
    px, py = project_annular(x, sc, ctx), project_annular(y, sc, ctx)
    total = ctx.zero
    for r, lab in enumerate(sc.labels):
        ginv = dual_gram(lab, ctx)
        gy = linalg.matvec(ginv, py[r].coeffs, ctx)
        total = total + sum((c.conjugate() * d for c, d in zip(px[r].coeffs, gy)), ctx.zero)
    return total


def master_inner(x: QuadraticRef, y: QuadraticRef, sc: StructureConstants, ctx: Context, form: str = PRINTED):
    """Closed form of <P_A(S o T), rho^j(P o Q)> or <P_A(S o T), rho^j(P * Q)>."""
    if x.kind != CIRC or x.j != 0:
        raise ValueError("the first argument must be S o T with j = 0")
    if form not in (PRINTED, CORRECTED):
        raise ValueError(f"unknown form {form!r}")
    n, j = sc.n, y.j
    y.check_range(n)
    S, T, P, Q = (sc.labels[i] for i in (x.s, x.t, y.s, y.t))
    sg = {name: lab.sigma for name, lab in zip("STPQ", (S, T, P, Q))}
    inv = {k: v.inverse() for k, v in sg.items()}
    root, qi = ctx.root, ctx.qint
    sign = -1 if (n + 1) % 2 else 1  # (-1)^(n+1)
    total = ctx.zero
    for r, R in enumerate(sc.labels):
        om, om_inv = root(R.omega), root(R.omega.inverse())
        w = ctx.W(2 * n + 2, R.omega)
        a_st = ctx.const(sc.a[r][x.s][x.t]).conjugate()
        b_st = ctx.const(sc.b[r][x.s][x.t]).conjugate()
        a_pq = ctx.const(sc.a[r][y.s][y.t])
        b_pq = ctx.const(sc.b[r][y.s][y.t])
        mixed = root(sg["T"] * inv["S"] * inv["Q"] * sg["P"])
        if y.kind == CIRC:
            first = (a_st * a_pq + mixed * b_st * b_pq) * (om_inv * qi(2 * j) + qi(2 * (n - j) + 2))
            second = root(R.sigma) * (
                root(inv["Q"] * sg["P"]) * a_st * b_pq + root(sg["T"] * inv["S"]) * b_st * a_pq
            ) * (om_inv * qi(n + 2 * j + 1) + qi(n - 2 * j + 1))
            total = total + root(R.omega ** j) / w * (first + sign * second)
        else:
            if form == PRINTED:
                f_aa, f_bb = inv["P"] * sg["Q"], sg["S"] * inv["T"]
            else:
                f_aa, f_bb = sg["P"] * inv["Q"], sg["T"] * inv["S"]
            first = root(R.sigma.inverse()) * (mixed * b_st * a_pq + a_st * b_pq) * (
                om * qi(2 * (n - j) + 1) + qi(2 * j + 1)
            )
            second = (root(f_aa) * a_st * a_pq + root(f_bb) * b_st * b_pq) * (om * qi(n - 2 * j) + qi(n + 2 * j + 2))
            total = total - root(R.omega ** j) / w * (first + sign * second)
    if y.kind == STAR:
        total = root(sg["P"] * sg["Q"]) * total
    return total


def tl_inner(x: QuadraticRef, y: QuadraticRef, sc: StructureConstants, ctx: Context):
    """<P_T(x), P_T(y)> for orthonormal labels: only S = T and P = Q contribute."""
    if x.s != x.t or y.s != y.t:
        return ctx.zero
    n = sc.n

    def coeff_and_shift(ref: QuadraticRef):
        if ref.kind == CIRC:
            return ctx.one, 2 * ref.j
        return ctx.root(sc.labels[ref.s].omega), 2 * ref.j + 1

    cx, ax = coeff_and_shift(x)
    cy, ay = coeff_and_shift(y)
    norm = ctx.qint(n + 2)
    return cx.conjugate() * cy * jw_rot_inner_any(n + 1, ay - ax, ctx) / (norm * norm)


def full_inner(x: QuadraticRef, y: QuadraticRef, sc: StructureConstants, ctx: Context, form: str = PRINTED):
    """Annular plus TL parts: the whole inner product when nothing new appears at level n+1."""
    return master_inner(x, y, sc, ctx, form) + tl_inner(x, y, sc, ctx)


def single_label_circ(n: int, omega: RootOfUnity, sigma: RootOfUnity, alpha, beta, ctx: Context):
    """(1/W)((alpha^2+beta^2)[2n+2] + (-1)^(n+1) 2 alpha beta (sigma + sigma^-1)[n+1])."""
    sign = -1 if (n + 1) % 2 else 1
    s = ctx.root(sigma) + ctx.root(sigma.inverse())
    body = (alpha * alpha + beta * beta) * ctx.qint(2 * n + 2) + sign * 2 * alpha * beta * s * ctx.qint(n + 1)
    return body / ctx.W(2 * n + 2, omega)


def single_label_star(n: int, omega: RootOfUnity, sigma: RootOfUnity, alpha, beta, ctx: Context):
    """(1/W)((-1)^n omega (alpha^2+beta^2)(omega[n]+[n+2]) - 2 alpha beta sigma (omega[2n+1]+1))."""
    om = ctx.root(omega)
    sign = -1 if n % 2 else 1
    body = sign * om * (alpha * alpha + beta * beta) * (om * ctx.qint(n) + ctx.qint(n + 2)) - 2 * alpha * beta * ctx.root(
        sigma
    ) * (om * ctx.qint(2 * n + 1) + ctx.one)
    return body / ctx.W(2 * n + 2, omega)


@dataclass(frozen=True)
class ConsistencyResult:
    exponent: str
    form: str
    residual: float
    holds: bool


def even_consistency(
    sc: StructureConstants, s: int, t: int, p: int, q: int, ctx: NumericContext
) -> list[ConsistencyResult]:
    """<S o T, rho^k(P o Q)> against omega_P^e omega_Q^k conj(<T o S, P * Q>), n = 2k.

    Both sides include their TL parts.  Every combination of the exponent
    e in {k-1, k+1} and printed/corrected star form is evaluated, plus the
    oracle in place of the star closed form.
    """
    n = sc.n
    if n % 2:
        raise ValueError("the consistency identity needs even n")
    k = n // 2
    lhs = complex(full_inner(QuadraticRef(CIRC, s, t), QuadraticRef(CIRC, p, q, k), sc, ctx))
    x, y = QuadraticRef(CIRC, t, s), QuadraticRef(STAR, p, q)
    star_values = {
        PRINTED: complex(master_inner(x, y, sc, ctx, PRINTED)),
        CORRECTED: complex(master_inner(x, y, sc, ctx, CORRECTED)),
        "oracle": complex(oracle_inner(x, y, sc, ctx)),
    }
    tl = complex(tl_inner(x, y, sc, ctx))
    om_p, om_q = complex(sc.labels[p].omega), complex(sc.labels[q].omega)
    out = []
    for name, e in (("k-1", k - 1), ("k+1", k + 1)):
        for form, val in star_values.items():
            rhs = om_p ** e * om_q ** k * (val + tl).conjugate()
            res = abs(lhs - rhs)
            out.append(ConsistencyResult(name, form, res, res <= ctx.tol * max(1.0, abs(lhs))))
    return out

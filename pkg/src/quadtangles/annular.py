"""Annular consequences of a lowest weight vector.

For a label R at weight n the space they span has basis cup_i R,
i in Z/(2n+2).  Everything here is expressed through coefficient vectors in
that basis (or in its dual basis); the vectors themselves are never drawn.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .scalars import Context, DegenerateParameterError, NumericContext, RootOfUnity

PRIMAL = "primal"
DUAL = "dual"


@dataclass(frozen=True)
class LowestWeightLabel:
    """Weight n, rotation eigenvalue omega and the chosen square root sigma."""

    n: int
    omega: RootOfUnity
    sigma: RootOfUnity
    name: str = "R"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("weight must be at least 1")
        if self.sigma ** 2 != self.omega:
            raise ValueError(f"sigma={self.sigma} does not square to omega={self.omega}")
        if not self.omega.is_power_root(self.n):
            raise ValueError(f"omega={self.omega} is not an {self.n}-th root of unity")

    @classmethod
    def from_sigma(cls, n: int, sigma: RootOfUnity, name: str = "R") -> "LowestWeightLabel":
        return cls(n, sigma ** 2, sigma, name)

    @property
    def size(self) -> int:
        return 2 * self.n + 2

    def to_json(self) -> dict:
        return {"name": self.name, "n": self.n, "omega": str(self.omega), "sigma": str(self.sigma)}

    @classmethod
    def from_json(cls, obj: dict) -> "LowestWeightLabel":
        sigma = RootOfUnity.parse(obj["sigma"])
        omega = RootOfUnity.parse(obj["omega"]) if "omega" in obj else sigma ** 2
        return cls(int(obj["n"]), omega, sigma, obj.get("name", "R"))


def admissible_labels(n: int) -> list[LowestWeightLabel]:
    """Every (omega, sigma) with omega^n = 1 and sigma^2 = omega, ordered by sigma's angle."""
    return [LowestWeightLabel.from_sigma(n, RootOfUnity(a, 2 * n)) for a in range(2 * n)]


def label_modulus(n: int) -> int:
    """Smallest cyclotomic order containing every sigma at weight n (and -1)."""
    return 2 * n


@dataclass
class AnnularVector:
    label: LowestWeightLabel
    basis: str
    coeffs: list = field(default_factory=list)

    def __post_init__(self):
        if self.basis not in (PRIMAL, DUAL):
            raise ValueError(f"unknown basis tag {self.basis!r}")
        if len(self.coeffs) != self.label.size:
            raise ValueError(f"expected {self.label.size} coefficients, got {len(self.coeffs)}")

    @classmethod
    def zero(cls, label: LowestWeightLabel, ctx: Context, basis: str = DUAL) -> "AnnularVector":
        return cls(label, basis, [ctx.zero] * label.size)

    def __add__(self, other: "AnnularVector") -> "AnnularVector":
        if other.label != self.label or other.basis != self.basis:
            raise ValueError("vectors live in different spaces")
        return AnnularVector(self.label, self.basis, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    def scale(self, s) -> "AnnularVector":
        return AnnularVector(self.label, self.basis, [s * x for x in self.coeffs])

    def add_at(self, index: int, value) -> None:
        i = index % self.label.size
        self.coeffs[i] = self.coeffs[i] + value


def gram(label: LowestWeightLabel, ctx: Context) -> linalg.Matrix:
    """<cup_i R, cup_j R>: delta on the diagonal, sigma at (i, i+1), sigma^-1 at (i, i-1)."""
    size = label.size
    g = [[ctx.zero] * size for _ in range(size)]
    s = ctx.root(label.sigma)
    s_inv = ctx.root(label.sigma.inverse())
    for i in range(size):
        g[i][i] = ctx.delta
        g[i][(i + 1) % size] = g[i][(i + 1) % size] + s
        g[i][(i - 1) % size] = g[i][(i - 1) % size] + s_inv
    return g


def gram_form(u: AnnularVector, v: AnnularVector, ctx: Context):
    """Inner product of two primal-basis vectors, conjugate-linear in ``u``."""
    if u.basis != PRIMAL or v.basis != PRIMAL:
        raise ValueError("gram_form expects primal coordinates")
    g = gram(u.label, ctx)
    gv = linalg.matvec(g, v.coeffs, ctx)
    return sum((x.conjugate() * y for x, y in zip(u.coeffs, gv)), ctx.zero)


def half_rotation(v: AnnularVector, power: int = 1) -> AnnularVector:
    """Send cup_i R to cup_{i+1} R (and likewise on the dual basis)."""
    size = v.label.size
    out = [None] * size
    for i, c in enumerate(v.coeffs):
        out[(i + power) % size] = c
    return AnnularVector(v.label, v.basis, out)


def _minus_sigma_power(label: LowestWeightLabel, k: int, ctx: Context):
    return ctx.root((RootOfUnity(1, 2) * label.sigma) ** k)


def _W(label: LowestWeightLabel, ctx: Context):
    w = ctx.W(label.size, label.omega)
    if ctx.is_zero(w):
        raise DegenerateParameterError(f"W({label.size}, {label.omega}) vanishes")
    return w


def dual_row0(label: LowestWeightLabel, ctx: Context) -> list:
    """Coefficients of the dual of cup_0 R from the closed-form expansion of the JW idempotent."""
    n, size = label.n, label.size
    w = _W(label, ctx)
    om = ctx.root(label.omega)
    row = [ctx.zero] * size
    row[0] = ctx.qint(size)
    for i in range(-n, n + 1):
        term = _minus_sigma_power(label, n + i - 1, ctx) * (ctx.qint(n + i + 1) + om * ctx.qint(n - i + 1))
        k = (n - i + 1) % size
        row[k] = row[k] + term
    return [c / w for c in row]


def dual_coeffs(label: LowestWeightLabel, ctx: Context) -> linalg.Matrix:
    """Row i holds the cup-basis coefficients of the dual of cup_i R (rows > 0 by shifting)."""
    row0 = dual_row0(label, ctx)
    size = label.size
    return [[row0[(k - i) % size] for k in range(size)] for i in range(size)]


def _with_adjoint(label: LowestWeightLabel, x: list, ctx: Context) -> list:
    """Coefficients of X + X*, using (cup_k R)* = cup_{-k} R."""
    size = label.size
    out = list(x)
    for k, c in enumerate(x):
        out[(-k) % size] = out[(-k) % size] + c.conjugate()
    return out


def versions_ii_row0(label: LowestWeightLabel, ctx: Context) -> list:
    """The dual of cup_0 R assembled from the X + X* form."""
    n, size = label.n, label.size
    om = ctx.root(label.omega)
    x = [ctx.zero] * size
    for j in range(1, n + 1):
        x[j] = _minus_sigma_power(label, -j, ctx) * (om * ctx.qint(j) + ctx.qint(size - j))
    row = _with_adjoint(label, x, ctx)
    row[0] = row[0] + ctx.qint(size)
    mid = (_minus_sigma_power(label, n + 1, ctx) + _minus_sigma_power(label, -n - 1, ctx)) * ctx.qint(n + 1)
    row[n + 1] = row[n + 1] + mid
    w = _W(label, ctx)
    return [c / w for c in row]


def versions_iii_row(label: LowestWeightLabel, ctx: Context) -> list:
    """The dual of cup_{n+1} R assembled from the Y + Y* form."""
    n, size = label.n, label.size
    om = ctx.root(label.omega)
    y = [ctx.zero] * size
    for j in range(1, n + 1):
        y[j] = _minus_sigma_power(label, n - j - 1, ctx) * (om * ctx.qint(n + j + 1) + ctx.qint(n - j + 1))
    row = _with_adjoint(label, y, ctx)
    row[n + 1] = row[n + 1] + ctx.qint(size)
    mid = (_minus_sigma_power(label, n + 1, ctx) + _minus_sigma_power(label, -n - 1, ctx)) * ctx.qint(n + 1)
    row[0] = row[0] + mid
    w = _W(label, ctx)
    return [c / w for c in row]


def single_sum_row(label: LowestWeightLabel, ctx: Context, printed: bool = True) -> list:
    """The dual of cup_{n+1} R via the single-sum expansion.

    As printed the sum carries the prefactor [2n+2]/W; ``printed=False`` uses
    1/W, which is the form that agrees with the dual basis.
    """
    n, size = label.n, label.size
    w = _W(label, ctx)
    pref = ctx.qint(size) / w if printed else ctx.one / w
    row = [ctx.zero] * size
    row[n + 1] = ctx.qint(size) / w
    for i in range(-n, n + 1):
        term = (_minus_sigma_power(label, n + i - 1, ctx) * ctx.qint(n + i + 1)
                + _minus_sigma_power(label, n + i + 1, ctx) * ctx.qint(n - i + 1))
        k = (-i) % size
        row[k] = row[k] + pref * term
    return row


def duality_matrix(label: LowestWeightLabel, ctx: Context) -> linalg.Matrix:
    """gram . dual_coeffs^T, which should be the identity."""
    return linalg.matmul(gram(label, ctx), linalg.transpose(dual_coeffs(label, ctx)), ctx)


def dual_gram(label: LowestWeightLabel, ctx: Context) -> linalg.Matrix:
    """<dual_k, dual_l> computed independently as the inverse Gram matrix."""
    return linalg.inverse(gram(label, ctx), ctx)


def gram_eigenvalues(label: LowestWeightLabel, q: float) -> list[float]:
    """delta + sigma z + conj(sigma z) over the (2n+2)-th roots z (the Gram matrix is circulant)."""
    delta = q + 1 / q
    s = complex(label.sigma)
    out = []
    for k in range(label.size):
        z = cmath.exp(2j * math.pi * k / label.size)
        out.append((delta + 2 * (s * z).real))
    return out


def numeric_gram_eigenvalues(label: LowestWeightLabel, q: float) -> list[float]:
    g = gram(label, NumericContext(q))
    return sorted(np.linalg.eigvalsh(np.array(g)).tolist())

"""Multiplicity two: associativity of the quotient algebra and the odd-n obstruction.

With two new lowest weight vectors S, T the span of S, T and p_n is a
commutative algebra.  Associativity constrains its structure constants, and
the vanishing of <S o T, T o S> (through the master formula) forces those
constants to zero when the index is at least 4.5 and n is odd.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .annular import LowestWeightLabel
from .quadratic import CIRC, QuadraticRef, StructureConstants, master_inner, oracle_inner
from .scalars import ExactContext, NumericContext, RootOfUnity

INDEX_THRESHOLD = 4.5
# norm-squared of the smallest graph that could start with *20, quoted as an annotation only
SMALLEST_GRAPH_INDEX = "(5+sqrt(17))/2"


class IndeterminateError(ValueError):
    """The parameters lie outside the range where the obstruction argument applies."""


class QuadExt:
    """Exact numbers a + b sqrt(A) + c sqrt(B) + d sqrt(AB) with rational A, B > 0."""

    __slots__ = ("A", "B", "c")

    def __init__(self, A: Fraction, B: Fraction, coeffs: dict | None = None):
        self.A, self.B = Fraction(A), Fraction(B)
        self.c = {k: Fraction(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def sqrt_power(cls, A, B, coeff, i: int, j: int) -> "QuadExt":
        """coeff * sqrt(A)^i * sqrt(B)^j, folding even powers into the rational part."""
        A, B = Fraction(A), Fraction(B)
        coeff = Fraction(coeff) * A ** (i // 2) * B ** (j // 2)
        return cls(A, B, {(i % 2, j % 2): coeff})

    def _lift(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if (other.A, other.B) != (self.A, self.B):
                raise ValueError("different quadratic extensions")
            return other
        return QuadExt(self.A, self.B, {(0, 0): other})

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.c)
        for k, v in other.c.items():
            out[k] = out.get(k, 0) + v
        return QuadExt(self.A, self.B, out)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(self.A, self.B, {k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict = {}
        for (i1, j1), v1 in self.c.items():
            for (i2, j2), v2 in other.c.items():
                term = QuadExt.sqrt_power(self.A, self.B, v1 * v2, i1 + i2, j1 + j2)
                for k, v in term.c.items():
                    out[k] = out.get(k, 0) + v
        return QuadExt(self.A, self.B, out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.c

    def __float__(self):
        sa, sb = math.sqrt(self.A), math.sqrt(self.B)
        return float(sum(v * sa ** i * sb ** j for (i, j), v in self.c.items()))

    def __repr__(self):
        return f"QuadExt(A={self.A}, B={self.B}, {self.c})"


@dataclass(frozen=True)
class Mult2Constants:
    """x = Tr(S^3), y = Tr(T^3), u = Tr(S^2 T), v = Tr(S T^2)."""

    n: int
    x: object
    y: object
    u: object
    v: object
    omega_s: RootOfUnity = RootOfUnity(0, 1)
    omega_t: RootOfUnity = RootOfUnity(0, 1)


def _qint_any(r: int, q):
    if isinstance(q, (int, Fraction)):
        return ExactContext(Fraction(q)).qint(r)
    return (q ** r - q ** -r) / (q - 1 / q)


def associativity_residual(c: Mult2Constants, q):
    """u^2 + v^2 - (x v + y u + 1/[n+1]); exact when q is rational and the constants are exact."""
    inv = 1 / _qint_any(c.n + 1, q)
    return c.u * c.u + c.v * c.v - (c.x * c.v + c.y * c.u + inv)


@dataclass(frozen=True)
class ModelAlgebra:
    """Three orthogonal minimal idempotents with traces ``weights``; S = s/sqrt(A), T = w/sqrt(B)."""

    weights: tuple[Fraction, Fraction, Fraction]
    s: tuple[Fraction, Fraction, Fraction]
    w: tuple[Fraction, Fraction, Fraction]

    @property
    def A(self) -> Fraction:
        return sum(t * x * x for t, x in zip(self.weights, self.s))

    @property
    def B(self) -> Fraction:
        return sum(t * x * x for t, x in zip(self.weights, self.w))

    def moment(self, i: int, j: int) -> Fraction:
        return sum(t * x ** i * y ** j for t, x, y in zip(self.weights, self.s, self.w))

    def constants(self, n: int) -> Mult2Constants:
        A, B = self.A, self.B
        # Tr(S^i T^j) = moment(i, j) / (sqrt(A)^i sqrt(B)^j)
        def tr(i: int, j: int) -> QuadExt:
            return QuadExt.sqrt_power(A, B, self.moment(i, j) / (A ** i * B ** j), i, j)

        return Mult2Constants(n, tr(3, 0), tr(0, 3), tr(2, 1), tr(1, 2))


def random_model(n: int, q: Fraction, rng: random.Random) -> ModelAlgebra:
    """A commutative model with positive rational weights summing to [n+1]."""
    total = ExactContext(Fraction(q)).qint(n + 1)
    t1 = total * Fraction(rng.randint(1, 30), 100)
    t2 = total * Fraction(rng.randint(1, 30), 100)
    t3 = total - t1 - t2
    while True:
        v1, v2 = rng.randint(-9, 9), rng.randint(-9, 9)
        v3 = -(t1 * v1 + t2 * v2) / t3
        if (v1, v2) != (0, 0) and not (v1 == v2 == v3):
            break
    t = (t1, t2, t3)
    tv = (t1 * v1, t2 * v2, t3 * v3)
    # orthogonal to both the weights and the weighted s: a cross product
    w = (t[1] * tv[2] - t[2] * tv[1], t[2] * tv[0] - t[0] * tv[2], t[0] * tv[1] - t[1] * tv[0])
    sign = rng.choice((1, -1))
    return ModelAlgebra(t, (Fraction(v1), Fraction(v2), v3), tuple(sign * x for x in w))


# ---------------------------------------------------------------------------
# The odd-n obstruction
# ---------------------------------------------------------------------------

def _pair_constants(n: int, sig_s: RootOfUnity, sig_t: RootOfUnity, a_s, a_t) -> StructureConstants:
    """Constants for commuting self-adjoint S, T with Tr(S^2 T) = a_s, Tr(S T^2) = a_t."""
    labels = [LowestWeightLabel.from_sigma(n, sig_s, "S"), LowestWeightLabel.from_sigma(n, sig_t, "T")]
    sig = [sig_s, sig_t]
    a = [[[0.0] * 2 for _ in range(2)] for _ in range(2)]
    b = [[[0.0] * 2 for _ in range(2)] for _ in range(2)]
    for r in range(2):
        for x in range(2):
            for y in range(2):
                count_t = (r, x, y).count(1)
                a[r][x][y] = {1: a_s, 2: a_t}.get(count_t, 0.0)
    for r in range(2):
        for x in range(2):
            for y in range(2):
                eps = complex((sig[r] * sig[x] * sig[y]) ** n)
                b[r][x][y] = eps * a[r][y][x]
    return StructureConstants(labels, a, b)


def _check_odd(n: int) -> None:
    if n % 2 == 0 or n < 3:
        raise ValueError(f"the obstruction concerns odd n >= 3, got n={n}")


def default_sigma(omega: RootOfUnity) -> RootOfUnity:
    return omega.sqrts()[0]


def evenst_coefficients(
    n: int,
    q: float,
    omega_s: RootOfUnity,
    omega_t: RootOfUnity,
    sigma_s: RootOfUnity | None = None,
    sigma_t: RootOfUnity | None = None,
    use_oracle: bool = False,
) -> tuple[complex, complex]:
    """Coefficients of a_S^2 and a_T^2 in <P_A(S o T), T o S>, read off with unit impulses."""
    _check_odd(n)
    sig_s = sigma_s or default_sigma(omega_s)
    sig_t = sigma_t or default_sigma(omega_t)
    ctx = NumericContext(q)
    x, y = QuadraticRef(CIRC, 0, 1), QuadraticRef(CIRC, 1, 0)
    evaluate = oracle_inner if use_oracle else master_inner
    c_s = complex(evaluate(x, y, _pair_constants(n, sig_s, sig_t, 1.0, 0.0), ctx))
    c_t = complex(evaluate(x, y, _pair_constants(n, sig_s, sig_t, 0.0, 1.0), ctx))
    return c_s, c_t


def evenst_displayed(
    n: int, q: float, omega_s: RootOfUnity, omega_t: RootOfUnity,
    sigma_s: RootOfUnity | None = None, sigma_t: RootOfUnity | None = None,
) -> tuple[complex, complex, complex, complex]:
    """The hand-reduced form ([2n+2](1 + omega_S^-1 omega_T) + alpha [n+1]) / W and alpha, beta.

    alpha and beta are the sums of (at most four) roots of unity multiplying [n+1].
    """
    _check_odd(n)
    sig_s = complex(sigma_s or default_sigma(omega_s))
    sig_t = complex(sigma_t or default_sigma(omega_t))
    om_s, om_t = sig_s ** 2, sig_t ** 2
    qi = lambda r: (q ** r - q ** -r) / (q - 1 / q)  # noqa: E731
    sign = (-1) ** (n + 1)
    alpha = 2 * sign * sig_t ** (n + 1) * (1 + om_s.conjugate())
    beta = 2 * sign * sig_t ** 2 * sig_s.conjugate() * sig_s ** n * (1 + om_t.conjugate())
    head = qi(2 * n + 2) * (1 + om_s.conjugate() * om_t)

    def W(om: complex) -> float:
        return q ** (2 * n + 2) + q ** -(2 * n + 2) - 2 * om.real

    return (head + alpha * qi(n + 1)) / W(om_s), (head + beta * qi(n + 1)) / W(om_t), alpha, beta


def rotation_factor(n: int, omega_s: RootOfUnity, omega_t: RootOfUnity) -> RootOfUnity:
    """The n-th root gamma with gamma^2 = omega_S / omega_T (n odd makes it unique)."""
    _check_odd(n)
    return (omega_s * omega_t.inverse()) ** ((n + 1) // 2)


def sufficient_inequalities(n: int, q: float) -> dict:
    """The two estimates that make the [2n+2] term dominate."""
    qi = lambda r: (q ** r - q ** -r) / (q - 1 / q)  # noqa: E731
    return {
        "dominance": qi(2 * n + 2) > 2 * qi(n + 1) / math.sin(math.pi / (2 * n)),
        "power_bound": q ** (n + 1) >= 4 * n / 3 - 1e-12,
    }


def boundary_identity() -> dict:
    """At q^2 = 2 and n = 3: q^(n+1) = 4 = (4/3) * 3 exactly."""
    q_squared = Fraction(2)
    lhs = q_squared ** 2
    rhs = Fraction(4, 3) * 3
    delta2 = q_squared + 2 + 1 / q_squared
    return {"q^4": lhs, "4n/3": rhs, "equal": lhs == rhs, "delta^2": delta2}


def evenst_obstructed(n: int, q: float, sigma_choice: int = 0) -> tuple[bool, dict]:
    """True when every pair (omega_S, omega_T) gives coefficients of one strict sign.

    Only real parts matter since a_S and a_T are real; a common sign forces
    a_S = a_T = 0, contradicting associativity.  ``sigma_choice`` picks which
    square root of each omega is used (0 or 1), to exhibit choice-invariance.
    """
    _check_odd(n)
    delta2 = (q + 1 / q) ** 2
    if delta2 < INDEX_THRESHOLD - 1e-12:
        raise IndeterminateError(f"delta^2 = {delta2} is below {INDEX_THRESHOLD}")
    ineq = sufficient_inequalities(n, q)
    worst = None
    for a_s in range(n):
        for a_t in range(n):
            om_s, om_t = RootOfUnity(a_s, n), RootOfUnity(a_t, n)
            sig_s, sig_t = om_s.sqrts()[sigma_choice], om_t.sqrts()[sigma_choice]
            c_s, c_t = evenst_coefficients(n, q, om_s, om_t, sig_s, sig_t)
            g = complex(rotation_factor(n, om_s, om_t))
            re_s, re_t = (g * c_s).real, (g * c_t).real
            margin = min(abs(re_s), abs(re_t)) if re_s * re_t > 0 else -1.0
            if worst is None or margin < worst["margin"]:
                worst = {"omega_s": str(om_s), "omega_t": str(om_t), "re_s": re_s, "re_t": re_t, "margin": margin}
    ok = worst["margin"] > 0
    witness = {"n": n, "delta2": delta2, "weakest_pair": worst, "inequalities": ineq}
    if ineq["power_bound"] and not ok:
        witness["implication_broken"] = True
    return ok, witness


def chirality_distinct(omega_s: RootOfUnity, omega_t: RootOfUnity) -> bool:
    """Admissible (True) exactly when omega_S != omega_T."""
    return omega_s != omega_t

"""Multiplicity one at the first non-trivial level.

Given n, q > 1 and the chirality omega, the two trace equations coming from
<R o R, R o R> and <R o R, R * R> are linear in alpha^2 + beta^2 and
alpha beta, where alpha = Tr(R^3) and beta = Tr(R'^3).  Their solution
determines the trace ratios r and r-check of the two new projections.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from .annular import LowestWeightLabel
from .quadratic import CIRC, STAR, QuadraticRef, StructureConstants, full_inner
from .scalars import ExactContext, NumericContext, RootOfUnity


class InfeasibleError(ValueError):
    """The parameters cannot come from a planar algebra with this multiplicity sequence."""


def _qint(r: int, q: float) -> float:
    return (q ** r - q ** -r) / (q - 1 / q)


@dataclass(frozen=True)
class Mult1Instance:
    n: int
    q: float
    omega: RootOfUnity
    sigma: RootOfUnity
    alpha: float
    beta: float
    r: float
    rcheck: float
    tr_e: float
    tr_f: float
    flags: dict

    def to_json(self) -> dict:
        out = asdict(self)
        out["omega"] = str(self.omega)
        out["sigma"] = str(self.sigma)
        return out


def _check_params(n: int, q: float, omega: RootOfUnity, strict: bool) -> None:
    if q <= 1:
        raise ValueError("need q > 1 so that delta > 2")
    if not omega.is_power_root(n):
        raise ValueError(f"omega={omega} is not an {n}-th root of unity")
    if n % 2:
        raise InfeasibleError("n is odd: alpha = beta would force q^(n+1)+q^-(n+1) = -+2cos, impossible for q > 1")
    if strict and omega == RootOfUnity(1, 2) and n % 4:
        raise InfeasibleError("omega = -1 forces n/2 to be even")


def ratio_from_trace(t: float, weight: float) -> float:
    """x >= 1 with sqrt(x) - 1/sqrt(x) = t sqrt(weight); t is taken in absolute value."""
    c = abs(t) * math.sqrt(weight)
    root = (c + math.sqrt(c * c + 4)) / 2
    return root * root


def solve(n: int, q: float, omega: RootOfUnity, strict: bool = True) -> Mult1Instance:
    """Closed-form alpha, beta and the trace ratios they force.

    With ``strict=False`` the divisibility condition for omega = -1 is only
    reported in the flags instead of raising; the identities themselves do not
    depend on it.
    """
    _check_params(n, q, omega, strict)
    sigma = omega.sqrts()[0]
    s = 2 * math.cos(sigma.angle)
    d = _qint(n, q) * _qint(n + 1, q) * _qint(n + 2, q)
    big_q = q ** (n + 1) + q ** -(n + 1)
    alpha = s / math.sqrt(d)
    beta = big_q / math.sqrt(d)
    weight = _qint(n + 1, q)
    r = ratio_from_trace(alpha, weight)
    rcheck = ratio_from_trace(beta, weight)
    expected_rcheck = _qint(n + 2, q) / _qint(n, q)
    om = complex(omega)
    r_eq = r + 1 / r - 2 - (2 + 2 * om.real) / (_qint(n, q) * _qint(n + 2, q))
    flags = {
        "rcheck_identity": abs(rcheck - expected_rcheck) <= 1e-10 * max(1.0, expected_rcheck),
        "rcheck_residual": abs(rcheck - expected_rcheck),
        "r_equation_residual": abs(r_eq),
        "r_equation": abs(r_eq) <= 1e-10,
        "n_even": True,
        "omega_minus_one_divisibility": omega != RootOfUnity(1, 2) or n % 4 == 0,
    }
    return Mult1Instance(
        n, q, omega, sigma, alpha, beta, r, rcheck,
        weight / (1 + r), r * weight / (1 + r), flags,
    )


def equation_residuals(n: int, q: float, sigma: RootOfUnity, alpha, beta) -> tuple[complex, complex]:
    """Residuals of the two linear equations in (alpha^2 + beta^2, alpha beta)."""
    om_c = complex(sigma ** 2)
    sg = complex(sigma)
    qn, qn1, qn2 = _qint(n, q), _qint(n + 1, q), _qint(n + 2, q)
    d = qn * qn1 * qn2
    w = q ** (2 * n + 2) + q ** -(2 * n + 2) - 2 * om_c.real
    delta = q + 1 / q
    big_q = q ** (n + 1) + q ** -(n + 1)
    sym, prod = alpha * alpha + beta * beta, alpha * beta
    s = (sg + sg.conjugate()).real
    sign = -1 if (n + 1) % 2 else 1
    first = w / d - (sign * 2 * prod * s / big_q + sym)
    second = w * (qn + qn2 * om_c) / d - (
        (-sign) * prod * sg * (_qint(2 * n + 2, q) * delta + om_c.conjugate() - om_c) - sym * (qn * om_c + qn2)
    )
    return complex(first), complex(second)


def equation_residuals_exact(n: int, q: Fraction, omega: RootOfUnity):
    """Both equations at alpha^2+beta^2 and alpha beta given by their root-free closed forms.

    Returns the two residuals as exact field elements (zero means the identity holds).
    """
    ctx = ExactContext(Fraction(q), 2 * n)
    sigma = omega.sqrts()[0]
    sg, sg_inv = ctx.root(sigma), ctx.root(sigma.inverse())
    om, om_inv = ctx.root(omega), ctx.root(omega.inverse())
    qi = ctx.qint
    d = qi(n) * qi(n + 1) * qi(n + 2)
    big_q = ctx.q_power(n + 1) + ctx.q_power(-n - 1)
    s = sg + sg_inv
    prod = (-1) ** n * s * big_q / d
    sym = (big_q * big_q + s * s) / d
    w = ctx.W(2 * n + 2, omega)
    sign = -1 if (n + 1) % 2 else 1
    first = w / d - (sign * 2 * prod * s / big_q + sym)
    second = w * (qi(n) + qi(n + 2) * om) / d - (
        (-sign) * prod * sg * (qi(2 * n + 2) * ctx.delta + om_inv - om) - sym * (qi(n) * om + qi(n + 2))
    )
    return first, second


def verify_equations(inst: Mult1Instance) -> dict:
    """Residuals of both equations plus the two inner-product decompositions.

    The decompositions rebuild <R o R, R o R> = 1/[n] and
    <R o R, R * R> = omega^(3/2) alpha beta + (-1)^(n-1) omega^2/([n+1][n])
    from the annular closed form and the TL part.
    """
    n, q = inst.n, inst.q
    first, second = equation_residuals(n, q, inst.sigma, inst.alpha, inst.beta)
    ctx = NumericContext(q)
    label = LowestWeightLabel(n, inst.omega, inst.sigma)
    sc = StructureConstants([label], [[[inst.alpha]]], [[[inst.beta]]])
    x = QuadraticRef(CIRC, 0, 0)
    circ = complex(full_inner(x, x, sc, ctx))
    star = complex(full_inner(x, QuadraticRef(STAR, 0, 0), sc, ctx))
    om = complex(inst.omega)
    sg = complex(inst.sigma)
    star_expected = om * sg * inst.alpha * inst.beta + (-1) ** (n - 1) * om * om / (_qint(n + 1, q) * _qint(n, q))
    return {
        "first_residual": abs(first),
        "second_residual": abs(second),
        "circ_decomposition_residual": abs(circ - 1 / _qint(n, q)),
        "star_decomposition_residual": abs(star - star_expected),
    }


def chirality_from_r(n: int, q: float, r: float, tol: float = 1e-9) -> list[RootOfUnity]:
    """Every n-th root omega with r + 1/r = 2 + (2 + omega + 1/omega)/([n][n+2])."""
    if r < 1:
        raise ValueError("r must be at least 1")
    lhs = r + 1 / r - 2
    denom = _qint(n, q) * _qint(n + 2, q)
    out = []
    for a in range(n):
        om = RootOfUnity(a, n)
        if abs(lhs - (2 + 2 * math.cos(om.angle)) / denom) <= tol:
            out.append(om)
    return out


def odd_n_gap(n: int, q: float) -> float:
    """min over omega of |q^(n+1) + q^-(n+1) -+ (sigma + 1/sigma)|, positive whenever q > 1."""
    big_q = q ** (n + 1) + q ** -(n + 1)
    gaps = []
    for a in range(2 * n):
        s = 2 * math.cos(math.pi * a / n)
        gaps.extend((abs(big_q - s), abs(big_q + s)))
    return min(gaps)

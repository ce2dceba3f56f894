"""Acceptance criteria 1-9, one test each, with pinned tolerances and time limits.

Each test emits one PASS/FAIL line (repeated in the terminal summary) before
asserting, so a failing criterion still reports what was measured.
"""

import json
import math
import random
import shutil
import subprocess
import sys
import time
from fractions import Fraction
from math import comb

import numpy as np

from quadtangles import annular, linalg, mult1, mult2
from quadtangles import jw as jwmod
from quadtangles.graphs import (
    check_pg1,
    leading_multiplicity,
    partition_dims,
    partition_dims_bruteforce,
    partition_level4_traces,
)
from quadtangles.quadratic import (
    CIRC,
    CORRECTED,
    PRINTED,
    STAR,
    QuadraticRef,
    even_consistency,
    master_inner,
    oracle_inner,
    random_labels,
    random_structure_constants,
)
from quadtangles.scalars import ExactContext, NumericContext, RootOfUnity, SymbolicContext, q_from_delta2
from quadtangles.tl import (
    cond_expectation,
    e_generator,
    multiply,
    noncrossing_pairings,
    trace,
)

MASTER_TOL = 1e-9
MULT1_TOL = 1e-9
PG1_TOL = 1e-8

LIMIT_TL = 10
LIMIT_JW = 60
LIMIT_ROT = 60
LIMIT_ANNULAR = 20
LIMIT_MASTER = 300
LIMIT_MULT1 = 30
LIMIT_MULT2 = 120
LIMIT_GRAPH = 30
LIMIT_SUITE = 600


def qi(r, q):
    return (q ** r - q ** -r) / (q - 1 / q)


def _line(emit, k, ok, elapsed, limit, detail):
    status = "PASS" if ok and elapsed < limit else "FAIL"
    emit(f"criterion {k}: {status} ({elapsed:.1f}s < {limit}s) {detail}")


def test_criterion_1_tl_foundations(acceptance_line):
    start = time.perf_counter()
    counts = all(len(noncrossing_pairings(n)) == comb(2 * n, n) // (n + 1) for n in range(11))
    relations = True
    for ctx in (SymbolicContext(1), ExactContext(Fraction(2))):
        e = {i: e_generator(i, 6, ctx) for i in range(1, 6)}
        for i in e:
            relations &= multiply(e[i], e[i]) == e[i].scale(ctx.delta)
            for j in e:
                if abs(i - j) == 1:
                    relations &= multiply(multiply(e[i], e[j]), e[i]) == e[i]
                elif abs(i - j) >= 2:
                    relations &= multiply(e[i], e[j]) == multiply(e[j], e[i])
    elapsed = time.perf_counter() - start
    _line(acceptance_line, 1, counts and relations, elapsed, LIMIT_TL,
          f"catalan_counts_n<=10={counts} e_relations_TL6={relations}")
    assert counts and relations
    assert elapsed < LIMIT_TL


def test_criterion_2_jones_wenzl(acceptance_line):
    ctx = ExactContext(Fraction(2))
    jwmod.clear_cache()
    start = time.perf_counter()
    failures = []
    for n in range(9):
        p = jwmod.jw(n, ctx)
        if multiply(p, p) != p:
            failures.append(f"idempotent n={n}")
        for i in range(1, n):
            e = e_generator(i, n, ctx)
            if not (multiply(e, p).is_zero() and multiply(p, e).is_zero()):
                failures.append(f"E_{i} p_{n}")
        if trace(p) != ctx.qint(n + 1):
            failures.append(f"trace n={n}")
        if n >= 1 and cond_expectation(p) != jwmod.jw(n - 1, ctx).scale(ctx.qint(n + 1) / ctx.qint(n)):
            failures.append(f"expectation n={n}")
    for m in range(4, 9):
        p = jwmod.jw(m, ctx)
        for k in range(m - 1):
            if p.coeff(jwmod.hook_diagram(m, k)) != jwmod.jw_hook_coefficient(m, k, ctx):
                failures.append(f"hook m={m} p={k}")
    elapsed = time.perf_counter() - start
    _line(acceptance_line, 2, not failures, elapsed, LIMIT_JW, f"n<=8 exact at q=2, hooks p_4..p_8; failures={failures}")
    assert not failures
    assert elapsed < LIMIT_JW


def test_criterion_3_rotated_jw(acceptance_line):
    ctx = ExactContext(Fraction(2))
    start = time.perf_counter()
    forms = {"i(m-i)": True, "mi": True}
    for m in range(7):
        for i in range(m + 1):
            direct = jwmod.jw_rot_inner_direct(m, i, ctx)
            for form in forms:
                forms[form] &= direct == jwmod.jw_rot_inner(m, i, ctx, form)
    winners = [f for f, ok in forms.items() if ok]
    elapsed = time.perf_counter() - start
    ok = winners == [jwmod.ROT_SIGN_FORM]
    _line(acceptance_line, 3, ok, elapsed, LIMIT_ROT,
          f"m<=6 exact; correct printed sign form: (-1)^({'/'.join(winners) or 'none'})")
    assert ok
    assert elapsed < LIMIT_ROT


def test_criterion_4_annular_duality(acceptance_line):
    start = time.perf_counter()
    bad = []
    for n in range(1, 7):
        ctx = ExactContext(Fraction(2), annular.label_modulus(n))
        for lab in annular.admissible_labels(n):
            if not linalg.equal(annular.duality_matrix(lab, ctx), linalg.identity(lab.size, ctx), ctx):
                bad.append((n, str(lab.omega), str(lab.sigma)))
    elapsed = time.perf_counter() - start
    _line(acceptance_line, 4, not bad, elapsed, LIMIT_ANNULAR, f"exact in Q(zeta_2n), all labels n<=6; failures={bad}")
    assert not bad
    assert elapsed < LIMIT_ANNULAR


def test_criterion_5_master_formula(acceptance_line):
    start = time.perf_counter()
    ctx = NumericContext(1.3, MASTER_TOL)
    worst = {(CIRC, PRINTED): 0.0, (STAR, PRINTED): 0.0, (STAR, CORRECTED): 0.0}
    exponents = {}
    for n in range(2, 7):
        rng = np.random.default_rng([2024, n])
        cons = {"k-1": 0.0, "k+1": 0.0}
        for _ in range(20):
            sc = random_structure_constants(random_labels(n, 3, rng), rng)
            for kind in (CIRC, STAR):
                for j in range(n + 1):
                    if (kind == CIRC and 2 * j > n) or (kind == STAR and 2 * j >= n):
                        continue
                    s, t, p, q = (int(v) for v in rng.integers(3, size=4))
                    x, y = QuadraticRef(CIRC, s, t), QuadraticRef(kind, p, q, j)
                    want = complex(oracle_inner(x, y, sc, ctx))
                    for form in ((PRINTED,) if kind == CIRC else (PRINTED, CORRECTED)):
                        res = abs(complex(master_inner(x, y, sc, ctx, form)) - want)
                        worst[kind, form] = max(worst[kind, form], res)
            if n % 2 == 0:
                s, t, p, q = (int(v) for v in rng.integers(3, size=4))
                for c in even_consistency(sc, s, t, p, q, ctx):
                    if c.form == "oracle":
                        cons[c.exponent] = max(cons[c.exponent], c.residual)
        if n % 2 == 0:
            exponents[n] = sorted(e for e, r in cons.items() if r < MASTER_TOL)
    elapsed = time.perf_counter() - start
    closed_ok = worst[CIRC, PRINTED] < MASTER_TOL and worst[STAR, PRINTED] < MASTER_TOL
    consistency_ok = all(exponents.values())
    _line(acceptance_line, 5, closed_ok and consistency_ok, elapsed, LIMIT_MASTER,
          f"max residual circ={worst[CIRC, PRINTED]:.2e} star(printed)={worst[STAR, PRINTED]:.2e} "
          f"star(sigma factors corrected)={worst[STAR, CORRECTED]:.2e}; "
          f"consistency exponent verifying per even n: {exponents}")
    assert worst[CIRC, PRINTED] < MASTER_TOL
    assert consistency_ok
    assert elapsed < LIMIT_MASTER
    assert worst[STAR, PRINTED] < MASTER_TOL, "printed star closed form disagrees with the Gram-inverse oracle"


def test_criterion_6_multiplicity_one(acceptance_line):
    start = time.perf_counter()
    worst = 0.0
    for q in (1.1, 1.3):
        for n in range(2, 13, 2):
            for a in range(n):
                inst = mult1.solve(n, q, RootOfUnity(a, n), strict=False)
                res = mult1.verify_equations(inst)
                rc = qi(n + 2, q) / qi(n, q)
                r_eq = inst.r + 1 / inst.r - 2 - (2 + 2 * math.cos(2 * math.pi * a / n)) / (qi(n, q) * qi(n + 2, q))
                worst = max(worst, res["first_residual"], res["second_residual"], abs(inst.rcheck - rc) / rc, abs(r_eq))
    fixtures = {}
    b = 1.5
    fc = mult1.solve(2, q_from_delta2(2 * b * b), RootOfUnity(0, 1))
    fixtures["fuss_catalan"] = max(abs(fc.rcheck - 2 * (b * b - 1)), abs(fc.r - b * b / (b * b - 1)))
    hg = mult1.solve(4, q_from_delta2((5 + math.sqrt(13)) / 2), RootOfUnity(1, 2))
    fixtures["haagerup"] = abs(hg.r - 1)
    pa = mult1.solve(4, q_from_delta2(6), RootOfUnity(0, 1))
    plus, minus = partition_level4_traces(6, "+"), partition_level4_traces(6, "-")
    fixtures["partition"] = max(abs(pa.r - float(plus[1] / plus[0])), abs(pa.rcheck - float(minus[1] / minus[0])))
    elapsed = time.perf_counter() - start
    ok = worst < MULT1_TOL and all(v < MULT1_TOL for v in fixtures.values())
    _line(acceptance_line, 6, ok, elapsed, LIMIT_MULT1,
          f"sweep max residual={worst:.2e}; fixtures={ {k: f'{v:.1e}' for k, v in fixtures.items()} }")
    assert ok
    assert elapsed < LIMIT_MULT1


def test_criterion_7_multiplicity_two(acceptance_line):
    start = time.perf_counter()
    rng = random.Random(7)
    q2 = Fraction(2)
    nonzero = 0
    for k in range(1000):
        n = 3 + 2 * (k % 3)
        if not mult2.associativity_residual(mult2.random_model(n, q2, rng).constants(n), q2).is_zero():
            nonzero += 1
    uv_zero = all(
        mult2.associativity_residual(mult2.Mult2Constants(n, Fraction(3, 7), Fraction(-2, 5), Fraction(0), Fraction(0)), q2)
        == -1 / ExactContext(q2).qint(n + 1)
        for n in (3, 5, 7, 9)
    )
    q = q_from_delta2(4.5)
    not_obstructed = [n for n in range(3, 100, 2) if not mult2.evenst_obstructed(n, q)[0]]
    ident = mult2.boundary_identity()
    boundary = ident["q^4"] == Fraction(4) == ident["4n/3"] and ident["delta^2"] == Fraction(9, 2)
    n = 5
    flagged = {(a, b) for a in range(n) for b in range(n)
               if not mult2.chirality_distinct(RootOfUnity(a, n), RootOfUnity(b, n))}
    diagonal = flagged == {(a, a) for a in range(n)}
    elapsed = time.perf_counter() - start
    ok = nonzero == 0 and uv_zero and not not_obstructed and boundary and diagonal
    _line(acceptance_line, 7, ok, elapsed, LIMIT_MULT2,
          f"nonzero residuals={nonzero}/1000 u=v=0 exact={uv_zero} unobstructed odd n={not_obstructed} "
          f"boundary={boundary} diagonal={diagonal}")
    assert ok
    assert elapsed < LIMIT_MULT2


def test_criterion_8_graph_partition(acceptance_line):
    start = time.perf_counter()
    dims = [partition_dims(n, n) for n in (3, 4, 5)] == [5, 15, 52]
    brute = all(partition_dims(k, n) == partition_dims_bruteforce(k, n) for k in range(1, 6) for n in range(6))
    lm = leading_multiplicity([1, 1, 2, 5, 15, 52])
    lead = (lm.supertransitivity, lm.excess, lm.next_term) == (3, 1, 0)
    pg1 = True
    for n in (2, 4, 6):
        for q in (1.1, 1.3):
            rc = qi(n + 2, q) / qi(n, q)
            pg1 &= check_pg1(n, q, rc, PG1_TOL)
            pg1 &= not check_pg1(n, q, rc * (1 + 1e-3), PG1_TOL) and not check_pg1(n, q, rc * (1 - 1e-3), PG1_TOL)
    elapsed = time.perf_counter() - start
    ok = dims and brute and lead and pg1
    _line(acceptance_line, 8, ok, elapsed, LIMIT_GRAPH,
          f"dims 5,15,52={dims} brute force k,n<=5={brute} leading={lm} pg1={pg1}")
    assert ok
    assert elapsed < LIMIT_GRAPH


def test_criterion_9_suite_run(acceptance_line, tmp_path):
    exe = shutil.which("quadtangles")
    cmd = [exe] if exe else [sys.executable, "-m", "quadtangles"]
    outputs, codes = [], []
    start = time.perf_counter()
    for i in range(2):
        out = tmp_path / f"suite{i}.json"
        proc = subprocess.run(cmd + ["suite", "--seed", "0", "--out", str(out)], capture_output=True, text=True)
        codes.append(proc.returncode)
        outputs.append(out.read_bytes() if out.exists() else b"")
        if i == 0:
            elapsed = time.perf_counter() - start
    deterministic = outputs[0] == outputs[1] and outputs[0] != b""
    failed = [r["id"] for r in json.loads(outputs[0])["records"] if r["pass"] is False] if outputs[0] else []
    ok = codes[0] == 0 and deterministic
    _line(acceptance_line, 9, ok, elapsed, LIMIT_SUITE,
          f"exit codes={codes} byte-identical={deterministic} failing records={failed}")
    assert deterministic
    assert elapsed < LIMIT_SUITE
    assert codes[0] == 0, f"suite reported failing records: {failed}"

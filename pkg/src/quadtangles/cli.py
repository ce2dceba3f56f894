"""Command-line front end: run a verification suite and write its report.

Exit status is 0 when every check passes, 1 when some check fails and 2 on
bad input or infeasible parameters.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import mult1, mult2, suites
from .annular import LowestWeightLabel
from .graphs import GraphError, PointedBipartiteGraph, check_pg1, local_eigen_residual, pf_weights
from .quadratic import CIRC, CORRECTED, PRINTED, QuadraticRef, StructureConstants, oracle_inner, master_inner
from .report import ORACLE, Report, check, info
from .scalars import (
    DegenerateParameterError,
    ExactContext,
    NumericContext,
    RootOfUnity,
    SymbolicContext,
    q_from_delta2,
)

COMMANDS = ("scalars", "tl", "jw", "annular", "master", "mult1", "mult2", "graph", "partition", "suite")


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    backend: str = "exact"
    tol: float = 1e-9
    seed: int = 0
    out: str | None = None
    fmt: str = "json"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        if self.backend not in ("exact", "numeric"):
            raise ValueError("backend must be exact or numeric")


def parse_range(text: str | None, default):
    """'6' -> [6]; '2:7' -> 2..6; '2:13:2' -> even numbers; '2,4,6' -> list.  An empty range is allowed."""
    if text is None:
        return list(default)
    if "," in text:
        return [int(t) for t in text.split(",") if t.strip()]
    if ":" in text:
        parts = [int(t) for t in text.split(":")]
        return list(range(*parts))
    return [int(text)]


def _q_value(params: dict, backend: str, default_exact="2", default_numeric=1.3):
    if params.get("delta2") is not None:
        if backend == "exact":
            raise ValueError("--delta2 gives an irrational q in general; use --numeric or --q")
        return q_from_delta2(float(params["delta2"]))
    raw = params.get("q")
    if backend == "exact":
        return Fraction(raw if raw is not None else default_exact)
    return float(Fraction(raw)) if raw is not None else default_numeric


def _ctx(cfg: RunConfig):
    q = _q_value(cfg.params, cfg.backend)
    return ExactContext(q) if cfg.backend == "exact" else NumericContext(q, cfg.tol)


def _root(text: str | None) -> RootOfUnity | None:
    return None if text is None else RootOfUnity.parse(text)


# ---------------------------------------------------------------------------
# Per-command runners
# ---------------------------------------------------------------------------

def run_scalars(cfg: RunConfig) -> list:
    return suites.scalars_suite(_ctx(cfg), cfg.tol)


def run_tl(cfg: RunConfig) -> list:
    p = cfg.params
    n_max = int(p["n"]) if p.get("n") is not None else 10
    return suites.tl_suite(_ctx(cfg), n_max=n_max, relations_n=min(n_max, 6) if p.get("n") is None else n_max,
                           tol=cfg.tol)


def run_jw(cfg: RunConfig) -> list:
    p = cfg.params
    check_arg = p.get("check") or "all"
    checks = suites.JW_CHECKS if check_arg == "all" else tuple(
        {"idem": ("idem", "killed"), "trace": ("trace", "expect")}.get(check_arg, (check_arg,)))
    ctx = _ctx(cfg)
    if p.get("n") is not None:
        n = int(p["n"])
        ns, hook_ms, rot_ms = [n], [n] if n >= 4 else [], [n] if n <= 6 else []
    else:
        ns, hook_ms, rot_ms = range(0, 9), range(4, 9), range(0, 7)
    return suites.jw_suite(ctx, ns, checks, hook_ms, rot_ms, cfg.tol)


def run_annular(cfg: RunConfig) -> list:
    p = cfg.params
    q = _q_value(p, cfg.backend)
    checks = suites.ANNULAR_CHECKS if (p.get("check") or "all") == "all" else (p["check"],)
    ns = parse_range(p.get("n"), range(1, 7))
    labels = None
    if p.get("omega") is not None:
        if len(ns) != 1:
            raise ValueError("--omega needs a single --n")
        omega = RootOfUnity.parse(p["omega"])
        sigma = _root(p.get("sigma")) or omega.sqrts()[0]
        labels = [LowestWeightLabel(ns[0], omega, sigma)]
    tol = cfg.tol if p.get("tol_given") else 1e-10
    return suites.annular_suite(cfg.backend, q, ns, labels, checks, tol)


def run_master(cfg: RunConfig) -> list:
    p = cfg.params
    q = float(_q_value(p, "numeric"))
    if p.get("labels") is None:
        ns = parse_range(p.get("n"), range(2, 7))
        return suites.master_suite(ns, int(p.get("draws") or 20), q, cfg.seed, tol=cfg.tol)
    with open(p["labels"]) as fh:
        sc = StructureConstants.from_json(json.load(fh))
    sc.validate(cfg.tol)
    ctx = NumericContext(q, cfg.tol)
    st = [int(v) for v in (p.get("st") or "0,0").split(",")]
    pq = [int(v) for v in (p.get("pq") or "0,0").split(",")]
    kind = p.get("kind") or CIRC
    x, y = QuadraticRef(CIRC, *st), QuadraticRef(kind, *pq, int(p.get("j") or 0))
    y.check_range(sc.n)
    params = {"n": sc.n, "q": q, "kind": kind, "j": y.j, "st": st, "pq": pq}
    got = complex(master_inner(x, y, sc, ctx, PRINTED))
    records = []
    if p.get("oracle"):
        want = complex(oracle_inner(x, y, sc, ctx))
        res = abs(got - want)
        records.append(check("master.closed_form", ORACLE, params, want, got, res, res <= cfg.tol))
        if kind != CIRC:
            corr = complex(master_inner(x, y, sc, ctx, CORRECTED))
            records.append(info("master.closed_form_corrected", ORACLE, params, corr, residual=abs(corr - want)))
    else:
        records.append(info("master.closed_form", "closed form", params, got))
    return records


def run_mult1(cfg: RunConfig) -> list:
    p = cfg.params
    if p.get("n") is None and p.get("omega") is None and p.get("q") is None and p.get("delta2") is None:
        return suites.mult1_suite(tol=cfg.tol)
    q = float(_q_value(p, "numeric"))
    ns = parse_range(p.get("n"), range(2, 13, 2))
    if p.get("sweep") or p.get("omega") is None:
        return [r for n in ns for a in range(n)
                for r in suites.mult1_instance_records(n, q, RootOfUnity(a, n), strict=False, tol=cfg.tol)]
    omega = RootOfUnity.parse(p["omega"])
    out = []
    for n in ns:
        inst = mult1.solve(n, q, omega)
        out.extend(suites.mult1_instance_records(n, q, omega, tol=cfg.tol))
        out.append(info(f"mult1.chirality.n{n}", "chirality recovered from r", {"n": n, "q": q},
                        [str(w) for w in mult1.chirality_from_r(n, q, inst.r)]))
    return out


def run_mult2(cfg: RunConfig) -> list:
    p = cfg.params
    delta2 = float(p.get("delta2") or mult2.INDEX_THRESHOLD)
    what = p.get("check") or "all"
    if what == "all" and p.get("n") is None:
        return suites.mult2_suite(seed=cfg.seed, delta2=delta2, tol=cfg.tol)
    ns = parse_range(p.get("n"), range(3, 100, 2))
    q = q_from_delta2(delta2)
    out = []
    if what in ("all", "assoc"):
        out.extend(r for r in suites.mult2_suite(draws=int(p.get("draws") or 1000), seed=cfg.seed, delta2=delta2,
                                                 obstruction_ns=[], coeff_ns=[], tol=cfg.tol)
                   if r.id.startswith("mult2.associativity"))
    if what in ("all", "coeffs"):
        om_s, om_t = _root(p.get("omega_s")), _root(p.get("omega_t"))
        for n in ns:
            pairs = [(om_s, om_t)] if om_s and om_t else [(RootOfUnity(a, n), RootOfUnity(b, n))
                                                          for a in range(n) for b in range(n)]
            for s, t in pairs:
                closed = mult2.evenst_coefficients(n, q, s, t)
                oracle = mult2.evenst_coefficients(n, q, s, t, use_oracle=True)
                res = max(abs(a - b) for a, b in zip(closed, oracle))
                out.append(check(f"mult2.coefficients.n{n}.{s.a}_{s.m}.{t.a}_{t.m}", ORACLE,
                                 {"n": n, "delta2": delta2, "omega_s": s, "omega_t": t},
                                 list(oracle), list(closed), res, res <= cfg.tol))
    if what in ("all", "obstruction"):
        for n in ns:
            ok, wit = mult2.evenst_obstructed(n, q)
            out.append(check(f"mult2.obstruction.n{n}", "odd n: both coefficients share a strict sign",
                             {"n": n, "delta2": delta2}, True, ok, note=json.dumps(wit["weakest_pair"], sort_keys=True)))
    return out


def _load_graph(path: str) -> PointedBipartiteGraph:
    with open(path) as fh:
        return PointedBipartiteGraph.from_json(json.load(fh))


def run_graph(cfg: RunConfig) -> list:
    p = cfg.params
    action = p.get("action") or "all"
    if action == "all":
        return suites.graph_suite() + suites.partition_suite()
    if action == "pf":
        if p.get("file") is None:
            return suites.graph_suite(pg_ns=())
        g = _load_graph(p["file"])
        w, d = pf_weights(g)
        res = max(abs(local_eigen_residual(g, w, d, v)) for v in g.vertices)
        return [check("graph.pf", "Perron-Frobenius eigenvector equation", {"file": p["file"]},
                      0.0, {"delta": d, "weights": w}, res, res <= 1e-10)]
    if action == "pg1":
        if p.get("n") is None:
            return suites.graph_suite(path_ms=())
        n, q = int(p["n"]), float(_q_value(p, "numeric"))
        rc = float(Fraction(p["rcheck"])) if p.get("rcheck") else None
        if rc is None:
            return suites.graph_suite(path_ms=(), pg_ns=(n,), pg_qs=(q,))
        return [info(f"graph.pg1.n{n}", "eigenvector equation at the univalent vertex", {"n": n, "q": q, "rcheck": rc},
                     check_pg1(n, q, rc))]
    if action in ("dims", "partition"):
        return suites.partition_suite()
    raise ValueError(f"unknown graph action {action!r}")


def run_partition(cfg: RunConfig) -> list:
    return suites.partition_suite()


def run_suite(cfg: RunConfig) -> list:
    exact = ExactContext(Fraction(2))
    records = []
    records += suites.scalars_suite(exact, cfg.tol)
    records += suites.scalars_suite(ExactContext(Fraction(3, 2), 12), cfg.tol)
    records += suites.tl_suite(exact, tol=cfg.tol)
    records += suites.tl_suite(SymbolicContext(1), n_max=-1, tol=cfg.tol)
    records += suites.jw_suite(exact, tol=cfg.tol)
    records += suites.annular_suite("exact", Fraction(2))
    records += suites.annular_suite("numeric", 1.3, checks=("duality", "versions"))
    records += suites.master_suite(seed=cfg.seed, tol=cfg.tol)
    records += suites.mult1_suite(tol=cfg.tol)
    records += suites.mult2_suite(seed=cfg.seed, tol=cfg.tol)
    records += suites.graph_suite()
    records += suites.partition_suite()
    return records


RUNNERS = {
    "scalars": run_scalars,
    "tl": run_tl,
    "jw": run_jw,
    "annular": run_annular,
    "master": run_master,
    "mult1": run_mult1,
    "mult2": run_mult2,
    "graph": run_graph,
    "partition": run_partition,
    "suite": run_suite,
}


def run(cfg: RunConfig) -> Report:
    report = Report(cfg.command)
    report.extend(RUNNERS[cfg.command](cfg))
    return report


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    backend = common.add_mutually_exclusive_group()
    backend.add_argument("--exact", dest="backend", action="store_const", const="exact", help="exact arithmetic (default)")
    backend.add_argument("--numeric", dest="backend", action="store_const", const="numeric", help="double precision")
    common.add_argument("--tol", type=float, default=None, help="residual tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the report here instead of stdout")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON report (default)")
    fmt.add_argument("--table", dest="fmt", action="store_const", const="table", help="human-readable table")
    common.add_argument("--q", help="q > 1, rational like 3/2 for exact runs")
    common.add_argument("--delta2", help="delta^2 instead of q (numeric)")

    parser = argparse.ArgumentParser(prog="quadtangles", description="Quadratic-tangle verification suites.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("scalars", parents=[common])
    p = sub.add_parser("tl", parents=[common])
    p.add_argument("--n", help="largest n for basis counts; also the level of the relation checks")
    p = sub.add_parser("jw", parents=[common])
    p.add_argument("--n")
    p.add_argument("--check", choices=("all", "idem", "trace", "hooks", "rot"), default="all")
    p = sub.add_parser("annular", parents=[common])
    p.add_argument("--n", help="n, a range a:b or a list a,b,c")
    p.add_argument("--omega", help="rotation eigenvalue as a/m")
    p.add_argument("--sigma", help="square root of omega as a/m")
    p.add_argument("--check", choices=("all",) + ("duality", "gram", "versions"), default="all")
    p = sub.add_parser("master", parents=[common])
    p.add_argument("--n")
    p.add_argument("--draws")
    p.add_argument("--labels", help="structure-constant JSON file")
    p.add_argument("--st", help="first pair of label indices, e.g. 0,1")
    p.add_argument("--pq", help="second pair of label indices")
    p.add_argument("--j")
    p.add_argument("--kind", choices=("circ", "star"))
    p.add_argument("--oracle", action="store_true", help="compare against the Gram-inverse oracle")
    p = sub.add_parser("mult1", parents=[common])
    p.add_argument("--n")
    p.add_argument("--omega")
    p.add_argument("--sweep", action="store_true", help="all n-th roots omega")
    p = sub.add_parser("mult2", parents=[common])
    p.add_argument("--n")
    p.add_argument("--omega-s", dest="omega_s")
    p.add_argument("--omega-t", dest="omega_t")
    p.add_argument("--draws")
    p.add_argument("--check", choices=("all", "assoc", "coeffs", "obstruction"), default="all")
    p = sub.add_parser("graph", parents=[common])
    p.add_argument("action", nargs="?", choices=("all", "pf", "pg1", "dims", "partition"), default="all")
    p.add_argument("--file", help="graph JSON file for pf")
    p.add_argument("--n")
    p.add_argument("--rcheck")
    sub.add_parser("partition", parents=[common])
    sub.add_parser("suite", parents=[common])
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    skip = {"command", "backend", "tol", "seed", "out", "fmt"}
    params = {k: v for k, v in vars(ns).items() if k not in skip}
    params["tol_given"] = ns.tol is not None
    return RunConfig(ns.command, params, ns.backend or "exact", ns.tol if ns.tol is not None else 1e-9,
                     ns.seed, ns.out, ns.fmt or "json")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        report = run(cfg)
    except (ValueError, KeyError, OSError, json.JSONDecodeError, GraphError, mult1.InfeasibleError,
            mult2.IndeterminateError, DegenerateParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = report.dumps() if cfg.fmt == "json" else report.to_table()
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())

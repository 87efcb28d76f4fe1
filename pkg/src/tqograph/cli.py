"""Command-line front end: generate graphs, run set analyses, verify codes.

Reports are deterministic JSON (sorted keys; the only run-dependent field is
elapsed_ms).  Exit codes: 0 all requested checks passed, 1 a check failed,
2 budget exhausted (env var TQO_BUDGET_MS soft-caps per-command runtime).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from typing import List, Optional

from . import __version__
from .gf2 import BitString
from .graphs import FamilySpec, Graph, format_edge_list, gen_family, s_vector
from . import analysis
from .analysis import BudgetExceededError, Caps, Deadline, SetQuery
from . import oracle as qoracle
from . import stabilizer

SCHEMA = "tqograph-report/1"

COST_NOTE = (
    "Cost notes: the state-vector check enumerates sum_{w<=d-1} C(n,w)*3^w "
    "Pauli operators on 2^n amplitudes (n capped at 14); set enumerations "
    "scan sum_{w<=d-1} C(n,w) bitstrings, and C-set listing walks the "
    "2^r-element orthogonal span (r capped by --max-span-dim)."
)


def _add_caps(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-weight", type=int, default=None,
                   help="refuse enumerations above this weight class")
    p.add_argument("--max-span-dim", type=int, default=analysis.DEFAULT_MAX_SPAN_DIM,
                   help="refuse subspace walks above this dimension (default 30)")
    p.add_argument("--max-members", type=int, default=analysis.DEFAULT_MAX_MEMBERS,
                   help="truncate emitted C members at this count (default 1024)")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int, default=1,
                   help="worker count for partitionable scans (result-invariant)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for sampled property checks")
    p.add_argument("--format", choices=("json", "table"), default="json")


def _add_graph(p: argparse.ArgumentParser) -> None:
    p.add_argument("family",
                   help="family name (star, complete, complete_bipartite, "
                        "multi_star, lattice, toric, connected_multi_star, "
                        "line_of_complete, line_of_bipartite, toric3d, custom)")
    p.add_argument("params", nargs="*", type=int, help="family parameters")
    p.add_argument("--graph-file", default=None,
                   help="edge-list file for the custom family")
    p.add_argument("--open-boundary", action="store_true",
                   help="non-periodic lattice boundaries")


def _build_graph(args) -> Graph:
    spec = FamilySpec(
        args.family,
        tuple(args.params),
        periodic=not getattr(args, "open_boundary", False),
        path=getattr(args, "graph_file", None),
    )
    return gen_family(spec)


def _caps(args) -> Caps:
    return Caps(args.max_weight, args.max_span_dim, args.max_members)


def _deadline() -> Optional[Deadline]:
    ms = os.environ.get("TQO_BUDGET_MS")
    return Deadline(float(ms) / 1000.0) if ms else None


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        def walk(prefix, obj):
            if isinstance(obj, dict):
                for k in sorted(obj):
                    walk(f"{prefix}{k}.", obj[k])
            elif isinstance(obj, (list, tuple)):
                for i, v in enumerate(obj):
                    walk(f"{prefix}{i}.", v)
            else:
                print(f"{prefix[:-1]}\t{obj}")
        walk("", report)


def _report(args, command: str, config: dict, results: dict,
            ok: bool, budget: bool, t0: float) -> int:
    report = {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "config": config,
        "results": results,
        "ok": ok,
        "budget_exceeded": budget,
        "elapsed_ms": round((time.monotonic() - t0) * 1000, 3),
    }
    _emit(report, getattr(args, "format", "json"))
    return 2 if budget else (0 if ok else 1)


def _graph_config(args, g: Graph) -> dict:
    return {
        "family": args.family,
        "params": list(args.params),
        "n": g.n,
        "edges": g.m,
        "max_weight": args.max_weight,
        "max_span_dim": args.max_span_dim,
        "max_members": args.max_members,
        "threads": args.threads,
        "seed": args.seed,
    }


def cmd_gen(args) -> int:
    g = _build_graph(args)
    text = format_edge_list(g)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {g.n} vertices, {g.m} edges to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_cset(args) -> int:
    t0 = time.monotonic()
    g = _build_graph(args)
    config = _graph_config(args, g)
    config["d"] = args.d
    try:
        res = analysis.c_set(SetQuery(g, args.d, _caps(args)), _deadline())
    except BudgetExceededError as exc:
        return _report(args, "cset", config, {"error": str(exc)}, False, True, t0)
    results = {
        "empty": res.empty,
        "exhaustive": res.exhaustive,
        "member_count": len(res.members),
        "members": [b.to_text() for b in res.members],
        "zperp_dim": len(res.zperp_basis),
        "z_span_dim": len(res.z_basis),
    }
    return _report(args, "cset", config, results, True, False, t0)


def cmd_dmax(args) -> int:
    t0 = time.monotonic()
    g = _build_graph(args)
    config = _graph_config(args, g)
    config["strategy"] = args.strategy
    res = analysis.d_max(g, args.strategy, _caps(args), _deadline())
    results = {
        "d_max": res.value,
        "certificate": res.certificate.to_text() if res.certificate else None,
        "bracket": list(res.bracket) if res.bracket else None,
        "error": res.error,
    }
    return _report(args, "dmax", config, results, res.ok, not res.ok and res.error is not None, t0)


def _read_labels(path: str, n: int) -> List[BitString]:
    out = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                b = BitString.from_text(line)
                if b.n != n:
                    raise ValueError(f"label length {b.n} != {n}")
                out.append(b)
    return out


def cmd_verify(args) -> int:
    t0 = time.monotonic()
    g = _build_graph(args)
    config = _graph_config(args, g)
    config.update({"d": args.d, "codewords": args.codewords,
                   "ldpc": args.ldpc, "m": args.m})
    try:
        if args.ldpc:
            if args.m is None:
                raise ValueError("--ldpc requires --m")
            code = analysis.read_classical_code(args.ldpc)
            labels = [b for b in analysis.ldpc_embed(code, args.m) if not b.is_zero()]
        elif args.codewords:
            labels = _read_labels(args.codewords, g.n)
        else:
            raise ValueError("need --codewords or --ldpc")
        verdict = analysis.verify_codewords(g, args.d, labels, _caps(args), _deadline())
    except BudgetExceededError as exc:
        return _report(args, "verify", config, {"error": str(exc)}, False, True, t0)
    results = {
        "pass": verdict.ok,
        "witness": verdict.witness,
        "label_count": len(labels),
        "labels": [b.to_text() for b in labels],
    }
    return _report(args, "verify", config, results, verdict.ok, False, t0)


def cmd_oracle(args) -> int:
    t0 = time.monotonic()
    g = _build_graph(args)
    config = _graph_config(args, g)
    config.update({"d": args.d, "h": args.h, "matrix_elements": args.matrix_elements,
                   "samples": args.samples})
    deadline = _deadline()
    try:
        if args.matrix_elements:
            rng = random.Random(args.seed)
            a = g.adjacency()
            worst = 0.0
            for _ in range(args.samples):
                if deadline is not None:
                    deadline.check()
                h, gg, k, l = (BitString(g.n, rng.getrandbits(g.n)) for _ in range(4))
                lhs = analysis.graph_basis_inner_analytic(a, h, gg, k, l)
                rhs = qoracle.pauli_matrix_element(
                    qoracle.graph_basis_state(g, h),
                    qoracle.graph_basis_state(g, gg), k, l)
                worst = max(worst, abs(lhs - rhs))
            ok = worst <= qoracle.DEFAULT_TOL
            results = {"samples": args.samples, "max_deviation": worst, "pass": ok}
        elif args.h is not None:
            if args.d is None:
                raise ValueError("--h requires --d")
            h = BitString.from_text(args.h)
            if h.n != g.n:
                raise ValueError(f"label length {h.n} != {g.n}")
            states = [qoracle.build_graph_state(g), qoracle.graph_basis_state(g, h)]
            verdict = qoracle.brute_force_qecc_check(states, args.d, deadline=deadline)
            analytic = analysis.in_C(SetQuery(g, args.d, _caps(args)), h, deadline)
            ok = bool(verdict) and verdict.ok == analytic
            results = {
                "pass": verdict.ok,
                "analytic_membership": analytic,
                "agreement": verdict.ok == analytic,
                "operators_checked": verdict.operators_checked,
                "witness": None if verdict.witness is None else {
                    "i": verdict.witness[0], "j": verdict.witness[1],
                    "k": verdict.witness[2].to_text(),
                    "l": verdict.witness[3].to_text(),
                },
            }
        else:
            raise ValueError("need --h/--d or --matrix-elements")
    except BudgetExceededError as exc:
        return _report(args, "oracle", config, {"error": str(exc)}, False, True, t0)
    return _report(args, "oracle", config, results, ok, False, t0)


def cmd_code3d(args) -> int:
    t0 = time.monotonic()
    config = {"L": args.L, "distance_scan": args.distance_scan,
              "threads": args.threads, "seed": args.seed}
    try:
        rep = stabilizer.verify_3d_code(
            args.L, distance_scan=args.distance_scan,
            threads=args.threads, deadline=_deadline())
    except BudgetExceededError as exc:
        return _report(args, "code3d", config, {"error": str(exc)}, False, True, t0)
    results = {
        "params": rep.params(),
        "n": rep.n,
        "k": rep.k,
        "constraints_hold": rep.constraints_hold,
        "rank": rep.rank,
        "rank_deficiency": rep.rank_deficiency,
        "code_dim": rep.code_dim,
        "logicals_ok": rep.logicals_ok,
        "derivation_ok": rep.derivation_ok,
        "distance": rep.distance,
        "distance_operator": rep.distance_operator,
    }
    return _report(args, "code3d", config, results, rep.ok, False, t0)


def cmd_scan(args) -> int:
    t0 = time.monotonic()
    params_list = [tuple(int(x) for x in chunk.split(",")) for chunk in args.params]
    config = {"family": args.family, "params": args.params,
              "max_weight": args.max_weight, "max_span_dim": args.max_span_dim,
              "max_members": args.max_members, "threads": args.threads,
              "seed": args.seed}
    res = analysis.family_scan(args.family, params_list, _caps(args), _deadline())
    ok = all(e.d_max is not None for e in res.entries)
    results = {
        "entries": [
            {"params": list(e.params), "n": e.n, "d_max": e.d_max, "error": e.error}
            for e in res.entries
        ],
        "exponent": res.exponent,
    }
    return _report(args, "scan", config, results, ok, not ok, t0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tqograph",
        description="Decide distance properties of graph-state families via "
                    "bitstring-set criteria and verify the derived codes.",
        epilog=COST_NOTE,
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("gen", help="write a family graph as an edge list")
    _add_graph(p)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("cset", help="enumerate the set C(G, n, d)")
    _add_graph(p)
    p.add_argument("--d", type=int, required=True)
    _add_caps(p)
    _add_common(p)
    p.set_defaults(func=cmd_cset)

    p = sub.add_parser("dmax", help="largest d with C(G, n, d) nonempty")
    _add_graph(p)
    p.add_argument("--strategy", choices=("incremental", "bisection"),
                   default="incremental")
    _add_caps(p)
    _add_common(p)
    p.set_defaults(func=cmd_dmax)

    p = sub.add_parser("verify", help="check a codeword label set at distance d")
    _add_graph(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--codewords", default=None, help="file of bitstring labels")
    p.add_argument("--ldpc", default=None, help="classical generator-matrix file")
    p.add_argument("--m", type=int, default=None, help="star size for --ldpc")
    _add_caps(p)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="state-vector cross-checks")
    _add_graph(p)
    p.add_argument("--h", default=None, help="graph-basis label bitstring")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--matrix-elements", action="store_true",
                   help="compare analytic vs state-vector matrix elements")
    p.add_argument("--samples", type=int, default=100)
    _add_caps(p)
    _add_common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("code3d", help="verify the 3D toric-layer code")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--no-distance-scan", dest="distance_scan",
                   action="store_false",
                   help="structure checks only (use for L >= 4)")
    _add_common(p)
    p.set_defaults(func=cmd_code3d)

    p = sub.add_parser("scan", help="d_max across family sizes with exponent fit")
    p.add_argument("family")
    p.add_argument("params", nargs="+",
                   help="comma-joined parameter tuples, e.g. 2,2 3,3 4,4")
    _add_caps(p)
    _add_common(p)
    p.set_defaults(func=cmd_scan)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Subcommands: validate, gen, unravel, chain, bound, certify, constants,
plot-g. Reports go to stdout, human-readable by default or JSON with
--json; exit code 0 means all checks passed, 1 means a check failed, 2 means
a usage or input error. Reports are deterministic for fixed seeds except for
the wall_time_s field.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .bounds import (
    EdgeFunction,
    alon_boppana_rhs,
    general_rhs,
    mu,
    refined_constants,
    simple_rhs,
    strong_rhs,
    tangent_line,
    threshold_degree,
    universal_cover_rhs,
    weak_rhs,
)
from .certify import (
    build_theorem_vector,
    case1_vector,
    lambda2_certificate,
    theorem_existence_check,
    verify_lemma42,
    verify_ratio_identity,
)
from .cover import DEFAULT_NODE_BUDGET, unravel
from .errors import CertificateError, CoverboundError
from .generators import GeneratorSpec, generate
from .graph import parse_graph
from .markov import uniform_nb_chain, weighted_nb_chain
from .oracle import dense_eigs, enumerate_nb_walks
from .spectra import adjacency_operator

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _load_graph(path):
    with open(path, "rb") as fh:
        raw = fh.read()
    graph = parse_graph(raw.decode("utf-8"))
    return graph, hashlib.sha256(raw).hexdigest()


def _make_chain(G, name):
    if name == "uniform":
        return uniform_nb_chain(G)
    if name == "weighted":
        return weighted_nb_chain(G)
    raise ValueError(f"unknown chain {name!r}")


def _make_g(G, spec):
    if spec == "one":
        return EdgeFunction.one()
    if spec == "inv-sqrt-complement":
        return EdgeFunction.inv_sqrt_complement()
    if spec.startswith("table:"):
        path = spec[len("table:"):]
        edges = G.directed_edges()
        vals = np.zeros(edges.count)
        filled = np.zeros(edges.count, dtype=bool)
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                body = line.split("#", 1)[0].strip()
                if not body:
                    continue
                parts = body.split()
                if len(parts) != 3:
                    raise ValueError(f"g-table line {lineno}: expected '<u> <v> <value>'")
                u, v, val = G.index_of(parts[0]), G.index_of(parts[1]), float(parts[2])
                eid = edges.edge_id(u, v)
                vals[eid] = val
                filled[eid] = True
        if not filled.all():
            raise ValueError("g-table must cover every directed edge")
        return EdgeFunction.from_table(vals)
    raise ValueError(f"unknown g spec {spec!r}")


def _emit(report, human_lines, as_json):
    if as_json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        for line in human_lines:
            print(line)


# -- subcommand handlers ---------------------------------------------------


def _cmd_validate(args):
    G, digest = _load_graph(args.graph)
    degs = G.weighted_degrees()
    reg = G.regularity()
    results = {
        "vertices": G.vertex_count,
        "edges": G.edge_count,
        "connected": G.is_connected(),
        "min_combinatorial_degree": G.min_combinatorial_degree(),
        "average_combinatorial_degree": G.average_combinatorial_degree()
        if G.vertex_count
        else None,
        "regular_weighted_degree": reg,
        "min_weighted_degree": float(degs.min()) if len(degs) else None,
        "max_weighted_degree": float(degs.max()) if len(degs) else None,
    }
    human = [
        f"graph: {args.graph} (sha256 {digest[:16]}...)",
        f"vertices={results['vertices']} edges={results['edges']} "
        f"connected={results['connected']}",
        f"regular weighted degree: {reg if reg is not None else 'not regular'}",
        "valid",
    ]
    return EXIT_OK, {"results": results, "input_sha256": digest}, human


def _cmd_gen(args):
    spec = GeneratorSpec(
        family=args.family,
        n=args.n,
        d=args.d,
        weight_range=(args.wmin, args.wmax),
        seed=args.seed,
        balance_tol=args.balance_tol,
    )
    G = generate(spec)
    text = G.serialize()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        human = [f"wrote {G.vertex_count} vertices / {G.edge_count} edges to {args.out}"]
    else:
        human = [text.rstrip("\n")] if text else []
    report = {
        "results": {
            "family": args.family,
            "vertices": G.vertex_count,
            "edges": G.edge_count,
            "seed": args.seed,
            "out": args.out,
        }
    }
    if not args.out:
        report["results"]["edge_list"] = text
    return EXIT_OK, report, human


def _cmd_unravel(args):
    G, digest = _load_graph(args.graph)
    v = G.index_of(args.vertex)
    tree = unravel(G, v, args.r, node_budget=args.budget)
    lam = None
    if args.eig:
        from .spectra import lambda1

        lam = lambda1(adjacency_operator(tree), tol=args.tol).value
    results = {
        "vertex": args.vertex,
        "r": args.r,
        "nodes": tree.n_nodes,
        "level_sizes": tree.level_sizes(),
        "lambda1": lam,
    }
    human = [
        f"unraveled ball at {args.vertex!r}, radius {args.r}: {tree.n_nodes} nodes",
        f"level sizes: {results['level_sizes']}",
    ]
    if lam is not None:
        human.append(f"lambda1 = {lam:.12g}")
    if args.oracle:
        counts = enumerate_nb_walks(G, v, args.r, budget=args.budget).counts
        agrees = counts == tree.level_sizes()
        results["oracle_level_counts"] = counts
        results["oracle_agrees"] = agrees
        human.append(f"oracle walk counts: {counts} ({'match' if agrees else 'MISMATCH'})")
        if not agrees:
            return EXIT_CHECK_FAILED, {"results": results, "input_sha256": digest}, human
    if args.dump:
        human.extend(tree.dump_edges())
        results["edges"] = list(tree.dump_edges())
    return EXIT_OK, {"results": results, "input_sha256": digest}, human


def _cmd_chain(args):
    G, digest = _load_graph(args.graph)
    chain = _make_chain(G, args.chain)
    edges = chain.edges
    lab = G.label
    transition_lines = []
    ptr = edges.prol_indptr
    for e1 in range(edges.count):
        for k in range(ptr[e1], ptr[e1 + 1]):
            e2 = int(edges.prol_indices[k])
            transition_lines.append(
                f"{lab(int(edges.tail[e1]))} {lab(int(edges.head[e1]))} "
                f"{lab(int(edges.tail[e2]))} {lab(int(edges.head[e2]))} "
                f"{chain.probs[k]:.17g}"
            )
    pi_lines = [
        f"{lab(int(edges.tail[e]))} {lab(int(edges.head[e]))} {chain.stationary[e]:.17g}"
        for e in range(edges.count)
    ]
    results = {
        "chain": args.chain,
        "states": edges.count,
        "transitions": transition_lines,
        "stationary": pi_lines,
    }
    human = ["# transitions: e1_tail e1_head e2_tail e2_head p"]
    human.extend(transition_lines)
    human.append("# stationary: tail head pi")
    human.extend(pi_lines)
    return EXIT_OK, {"results": results, "input_sha256": digest}, human


def _cmd_bound(args):
    G, digest = _load_graph(args.graph)
    checks = []
    results = {"kind": args.kind, "r": args.r}
    chain = g = None
    if args.kind in ("general", "universal-cover"):
        chain = _make_chain(G, args.chain)
        g = _make_g(G, args.g)
        value = (
            general_rhs(G, chain, g)
            if args.kind == "general"
            else universal_cover_rhs(G, chain, g)
        )
    elif args.kind == "strong":
        g = _make_g(G, args.g)
        value = strong_rhs(G, w=args.w, g=g)
    elif args.kind == "simple":
        value = simple_rhs(G, w=args.w)
    elif args.kind == "weak":
        w = args.w if args.w is not None else G.regularity()
        if w is None:
            raise CoverboundError("weak bound needs a weighted-regular graph or --w")
        bv = weak_rhs(w, G.average_combinatorial_degree())
        value = bv.value
        results["applicability"] = bv.applicability
        checks.append(("applicability", bv.applicable, bv.applicability))
    elif args.kind == "alon-boppana":
        w = args.w if args.w is not None else G.regularity()
        if w is None:
            raise CoverboundError("alon-boppana bound needs a weighted-regular graph or --w")
        value = alon_boppana_rhs(w, G.average_combinatorial_degree(), args.r)
    else:
        raise ValueError(f"unknown bound kind {args.kind!r}")
    results["value"] = value

    if args.kind in ("general", "strong", "simple", "weak") and not args.no_existence:
        if chain is None:
            chain = _make_chain(G, args.chain)
        if g is None:
            g = _make_g(G, args.g)
        ratio_rhs = value
        try:
            ex = theorem_existence_check(
                G, chain, g, args.r, node_budget=args.budget, threads=args.threads
            )
            per_vertex = [float(x) for x in ex.per_vertex]
            results["existence"] = {
                "argmax_vertex": G.label(ex.vertex),
                "max_ratio": ex.lhs,
                "general_rhs": ex.rhs,
                "per_vertex_lambda1": per_vertex,
            }
            ok = ex.lhs >= ratio_rhs - 1e-9
            checks.append(
                ("existence max_v lambda1/lambda1(path) >= bound", ok, {"lhs": ex.lhs, "rhs": ratio_rhs})
            )
        except CertificateError as exc:
            checks.append(("existence", False, str(exc)))
        if args.oracle and G.vertex_count <= 200:
            dense = dense_eigs(adjacency_operator(G).dense(), vectors=False)
            results["oracle_lambda1"] = float(dense.values[0])
            results["oracle_lambda2"] = float(dense.values[1]) if G.vertex_count > 1 else None

    passed = all(ok for _name, ok, _detail in checks)
    results["checks"] = [
        {"name": name, "passed": bool(ok), "detail": detail} for name, ok, detail in checks
    ]
    human = [f"bound kind={args.kind}: value = {value:.12g}"]
    if "existence" in results:
        ex_res = results["existence"]
        human.append(
            f"  argmax vertex {ex_res['argmax_vertex']}: max ratio = {ex_res['max_ratio']:.12g}"
        )
        table = ex_res["per_vertex_lambda1"]
        if len(table) <= 24:
            human.append("  per-vertex lambda1: " + " ".join(f"{x:.10g}" for x in table))
        else:
            human.append(
                f"  per-vertex lambda1: {len(table)} values in "
                f"[{min(table):.10g}, {max(table):.10g}] (full table in --json output)"
            )
    for name, ok, detail in checks:
        human.append(f"  [{'pass' if ok else 'FAIL'}] {name}: {detail}")
    human.append("PASS" if passed else "FAIL")
    code = EXIT_OK if passed else EXIT_CHECK_FAILED
    return code, {"results": results, "input_sha256": digest}, human


def _cmd_certify(args):
    G, digest = _load_graph(args.graph)
    checks = []
    results = {"kind": args.kind}
    cert = None
    if args.kind == "theorem":
        chain = _make_chain(G, args.chain)
        g = _make_g(G, args.g)
        cert = build_theorem_vector(G, chain, g, args.r, node_budget=args.budget)
        checks.append(
            (
                "rayleigh equals lambda1(path) * general_rhs",
                abs(cert.slack) <= 1e-9 * max(1.0, abs(cert.bound)),
                {"rayleigh": cert.rayleigh, "bound": cert.bound},
            )
        )
    elif args.kind == "case1":
        if not args.edge:
            raise CoverboundError("--edge U V is required for case1")
        u, v = (G.index_of(x) for x in args.edge)
        cert = case1_vector(G, (u, v), r=max(args.r, 1))
        checks.append(("rayleigh equals edge weight", cert.slack >= -1e-12, None))
    elif args.kind == "lambda2":
        cert = lambda2_certificate(
            G,
            args.r,
            node_budget=args.budget,
            threads=args.threads,
            include_vector=args.include_vector,
        )
        checks.append(
            (
                "rayleigh >= lambda1(path) * w sqrt(d-1)/d",
                cert.slack >= -1e-8,
                {"rayleigh": cert.rayleigh, "bound": cert.bound},
            )
        )
        checks.append(
            (
                "rayleigh <= lambda2",
                cert.rayleigh <= cert.metadata["lambda2"] + 1e-8,
                {"lambda2": cert.metadata["lambda2"]},
            )
        )
    elif args.kind == "lemma42":
        if args.vertex is None:
            raise CoverboundError("--vertex is required for lemma42")
        v = G.index_of(args.vertex)
        res = verify_lemma42(G, v, args.r, node_budget=args.budget)
        results["lemma42"] = {"ball_lambda1": res.lhs, "tree_lambda1": res.rhs}
        checks.append(
            ("lambda1(ball) >= lambda1(unraveled ball)", res.lhs >= res.rhs - 1e-9, results["lemma42"])
        )
    elif args.kind == "ratio":
        chain = _make_chain(G, args.chain)
        rep = verify_ratio_identity(G, chain, sample_walks=args.samples, seed=args.seed)
        results["ratio"] = rep
        checks.append(
            ("walk probability ratio identity", len(rep["failures"]) == 0, rep["max_relative_error"])
        )
    else:
        raise ValueError(f"unknown certificate kind {args.kind!r}")

    if cert is not None:
        results["certificate"] = cert.to_json_dict(include_vector=args.include_vector)
    if args.oracle and G.vertex_count <= 400:
        dense = dense_eigs(adjacency_operator(G).dense(), vectors=False)
        results["oracle_spectrum_head"] = [float(v) for v in dense.values[:2]]
        if args.kind == "lambda2" and cert is not None:
            checks.append(
                (
                    "oracle: rayleigh <= dense lambda2",
                    cert.rayleigh <= float(dense.values[1]) + 1e-8,
                    {"dense_lambda2": float(dense.values[1])},
                )
            )
        if args.kind == "lemma42":
            from .cover import ball as distance_ball

            sub = distance_ball(G, G.index_of(args.vertex), args.r)
            dense_ball = dense_eigs(adjacency_operator(sub).dense(), vectors=False)
            checks.append(
                (
                    "oracle: sparse lambda1(ball) matches dense",
                    abs(results["lemma42"]["ball_lambda1"] - float(dense_ball.values[0]))
                    <= 1e-8,
                    {"dense_ball_lambda1": float(dense_ball.values[0])},
                )
            )
    passed = all(ok for _name, ok, _detail in checks)
    results["checks"] = [
        {"name": name, "passed": bool(ok), "detail": detail} for name, ok, detail in checks
    ]
    human = [f"certify kind={args.kind}"]
    if cert is not None:
        human.append(
            f"  rayleigh = {cert.rayleigh:.12g}, bound = {cert.bound:.12g}, "
            f"slack = {cert.slack:.3e}"
        )
    for name, ok, detail in checks:
        human.append(f"  [{'pass' if ok else 'FAIL'}] {name}")
    human.append("PASS" if passed else "FAIL")
    code = EXIT_OK if passed else EXIT_CHECK_FAILED
    return code, {"results": results, "input_sha256": digest}, human


def _cmd_constants(args):
    t0, x0 = refined_constants()
    slope, intercept = tangent_line(t0, 1.0)
    results = {
        "mu": mu(),
        "threshold_degree": threshold_degree(),
        "t0": t0,
        "x0": x0,
        "inv_t0": 1.0 / t0,
        "tangent_slope": slope,
        "tangent_intercept": intercept,
    }
    human = [f"{key} = {val:.12g}" for key, val in results.items()]
    return EXIT_OK, {"results": results}, human


def _cmd_plot_g(args):
    t0, _x0 = refined_constants()
    slope, intercept = tangent_line(t0, args.w)
    rows = []
    steps = 512
    for k in range(steps + 1):
        y = args.w * k / steps
        gy = y**1.5 * math.sqrt(args.w - y) if y <= args.w else float("nan")
        rows.append((y, gy, slope * y + intercept))
    lines = ["y,g,ell_t0"] + [f"{y:.17g},{gy:.17g},{ly:.17g}" for y, gy, ly in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        human = [f"wrote {len(rows)} rows to {args.out}"]
    else:
        human = lines
    return EXIT_OK, {"results": {"rows": len(rows), "out": args.out}}, human


# -- argument parsing ------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="coverbound",
        description="Spectral lower bounds for weighted graphs via unraveled balls.",
    )
    parser.add_argument("--version", action="version", version=f"coverbound {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph=True):
        if graph:
            p.add_argument("--graph", required=True, help="edge-list file")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--tol", type=float, default=1e-10, help="solver tolerance")
        p.add_argument(
            "--budget", type=int, default=DEFAULT_NODE_BUDGET, help="tree node budget"
        )
        p.add_argument(
            "--threads",
            type=int,
            default=os.cpu_count() or 1,
            help="worker threads for per-vertex searches",
        )
        p.add_argument("--oracle", action="store_true", help="cross-check with the dense oracle")

    p = sub.add_parser("validate", help="parse and validate a graph file")
    common(p)
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("gen", help="generate a corpus graph")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--d", type=int, default=0)
    p.add_argument("--wmin", type=float, default=1.0)
    p.add_argument("--wmax", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--balance-tol", type=float, default=1e-10)
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("unravel", help="build an unraveled ball")
    common(p)
    p.add_argument("--vertex", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--dump", action="store_true", help="dump tree edges")
    p.add_argument("--eig", action="store_true", help="also compute lambda1 of the tree")
    p.set_defaults(handler=_cmd_unravel)

    p = sub.add_parser("chain", help="emit an assigned Markov chain")
    common(p)
    p.add_argument("--chain", default="uniform", choices=("uniform", "weighted"))
    p.set_defaults(handler=_cmd_chain)

    p = sub.add_parser("bound", help="evaluate a bound and verify existence")
    common(p)
    p.add_argument(
        "--kind",
        required=True,
        choices=("general", "strong", "simple", "weak", "alon-boppana", "universal-cover"),
    )
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--chain", default="uniform", choices=("uniform", "weighted"))
    p.add_argument("--g", default="one", help="one | inv-sqrt-complement | table:<file>")
    p.add_argument("--w", type=float, default=None, help="override the regular degree")
    p.add_argument("--no-existence", action="store_true", help="skip the per-vertex search")
    p.set_defaults(handler=_cmd_bound)

    p = sub.add_parser("certify", help="build and verify a certificate")
    common(p)
    p.add_argument(
        "--kind", required=True, choices=("theorem", "case1", "lambda2", "lemma42", "ratio")
    )
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--chain", default="uniform", choices=("uniform", "weighted"))
    p.add_argument("--g", default="one")
    p.add_argument("--vertex", default=None)
    p.add_argument("--edge", nargs=2, default=None, metavar=("U", "V"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--include-vector", action="store_true")
    p.set_defaults(handler=_cmd_certify)

    p = sub.add_parser("constants", help="print the closed-form constants")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_constants)

    p = sub.add_parser("plot-g", help="CSV table of the edge-term profile and its tangent")
    p.add_argument("--w", type=float, default=1.0)
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_plot_g)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        code, report, human = args.handler(args)
    except CertificateError as exc:
        # a certified inequality failed verification: check failure, not usage
        if getattr(args, "json", False):
            print(
                json.dumps(
                    {"error": str(exc), "command": args.command, "passed": False},
                    sort_keys=True,
                )
            )
        else:
            print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (CoverboundError, OSError, ValueError) as exc:
        if getattr(args, "json", False):
            print(json.dumps({"error": str(exc), "command": args.command}, sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = dict(report)
    report["command"] = args.command
    report["passed"] = code == EXIT_OK
    report["wall_time_s"] = round(time.perf_counter() - start, 6)
    _emit(report, human, getattr(args, "json", False))
    return code


if __name__ == "__main__":
    sys.exit(main())

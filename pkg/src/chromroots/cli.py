"""Command-line entry point.

Subcommands:
  poly              chromatic polynomial of a graph file
  qvec              partitioned chromatic polynomial of a framed graph
  family            symbolic strip-family polynomial
  root4             isolate the real root near 4 of a strip family
  classify          positive/negative classification of an end-graph
  predict           do two end-graphs give roots approaching 4?
  verify-golden     golden-ratio identity check for strip polynomials
  verify-M          brute-force verification of the layer-count matrix
  croots            all complex roots of a strip polynomial (CSV)
  reproduce-tables  regenerate the bundled reference tables and compare

Graphs are given as file paths or bundled fixture names (W4, H, L, neg10).
All outputs are deterministic for a fixed configuration.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .chromatic import (PartitionVector, ResourceLimitError,
                        chromatic_polynomial, partitioned_chromatic)
from .graphs import FIXTURE_NAMES, FramedGraph, load_fixture, parse_graph_text
from .roots import (NoSignChangeError, complex_roots, fraction_to_decimal,
                    largest_root_near_four)
from .spectral import classify_end_graph
from .tables import (BY_N_ROWS, DOUBLING_ROWS, ROOT_TOLERANCE,
                     reference_partition_components, reference_roots_by_n,
                     reference_roots_doubling)
from .transfer import (StripFamily, golden_identity_check,
                       verify_M_against_oracle)


def _load_graph(spec: str):
    """Resolve a CLI graph argument: an existing path, else a fixture name."""
    path = Path(spec)
    if path.exists():
        return parse_graph_text(path.read_text())
    stem = spec[:-6] if spec.endswith(".graph") else spec
    if stem in FIXTURE_NAMES:
        return load_fixture(stem)
    raise SystemExit(f"error: {spec!r} is neither a file nor a bundled "
                     f"fixture {FIXTURE_NAMES}")


def _load_framed(spec: str) -> FramedGraph:
    g = _load_graph(spec)
    if not isinstance(g, FramedGraph):
        raise SystemExit(f"error: graph {spec!r} has no frame line")
    return g


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        out = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        out = text
    if getattr(args, "output", None):
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)


def _fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


# ----------------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------------

def cmd_poly(args) -> int:
    g = _load_graph(args.graph)
    graph = g.graph if isinstance(g, FramedGraph) else g
    p = chromatic_polynomial(graph, node_budget=args.node_budget)
    payload = {"vertices": graph.vertex_count, "edges": graph.edge_count,
               "degree": p.degree, "coefficients": p.to_decimal_strings()}
    text = f"P({args.graph}) = {p}\n"
    _emit(args, payload, text)
    return 0


def cmd_qvec(args) -> int:
    fg = _load_framed(args.graph)
    q = partitioned_chromatic(fg, node_budget=args.node_budget)
    payload = {"frame": list(fg.frame), "components": q.to_json()}
    text = "".join(f"P{i} = {p}\n" for i, p in enumerate(q, start=1))
    _emit(args, payload, text)
    return 0


def cmd_family(args) -> int:
    fam = StripFamily.from_framed(_load_framed(args.endA),
                                  _load_framed(args.endB),
                                  f"{args.endA},{args.endB}")
    p = fam.polynomial(args.n, symbolic_limit=args.symbolic_limit)
    payload = {"endA": args.endA, "endB": args.endB, "n": args.n,
               "degree": p.degree, "coefficients": p.to_decimal_strings()}
    _emit(args, payload, f"X({fam.label})({args.n}): degree {p.degree}\n{p}\n")
    return 0


def cmd_root4(args) -> int:
    fam = StripFamily.from_framed(_load_framed(args.endA),
                                  _load_framed(args.endB),
                                  f"{args.endA},{args.endB}")
    width = Fraction(1, 10 ** (args.digits + 1))
    try:
        res = largest_root_near_four(fam, args.n, width=width,
                                     digits=args.digits)
    except NoSignChangeError as exc:
        _emit(args, {"error": "no-sign-change", "detail": str(exc)},
              f"no sign change: {exc}\n")
        return 1
    payload = {"n": args.n, "digits": args.digits, "root": res.decimal,
               "bracket_lo": _fraction_str(res.bracket.lo),
               "bracket_hi": _fraction_str(res.bracket.hi)}
    text = (f"root near 4 for X({fam.label})({args.n}) = {res.decimal}\n"
            f"bracket [{_fraction_str(res.bracket.lo)}, "
            f"{_fraction_str(res.bracket.hi)}]\n")
    _emit(args, payload, text)
    return 0


def cmd_classify(args) -> int:
    fg = _load_framed(args.graph)
    q = partitioned_chromatic(fg, node_budget=args.node_budget)
    c = classify_end_graph(q)
    payload = {"verdict": c.verdict, "constant": _fraction_str(c.constant),
               "sweep": [{"k": k, "sign": s} for k, s in c.sweep]}
    lines = [f"{c.verdict}", f"constant {_fraction_str(c.constant)}", "k,sign"]
    lines += [f"{k},{s}" for k, s in c.sweep]
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0


def cmd_predict(args) -> int:
    qa = partitioned_chromatic(_load_framed(args.endA),
                               node_budget=args.node_budget)
    qb = partitioned_chromatic(_load_framed(args.endB),
                               node_budget=args.node_budget)
    verdict_a = classify_end_graph(qa).verdict
    verdict_b = classify_end_graph(qb).verdict
    approaching = (verdict_a != "inconclusive" and verdict_b != "inconclusive"
                   and verdict_a != verdict_b)
    payload = {"endA": verdict_a, "endB": verdict_b,
               "roots_approach_four": approaching}
    text = (f"{args.endA}: {verdict_a}\n{args.endB}: {verdict_b}\n"
            f"roots approach 4: {'yes' if approaching else 'no'}\n")
    _emit(args, payload, text)
    return 0 if verdict_a != "inconclusive" and verdict_b != "inconclusive" else 1


def cmd_verify_golden(args) -> int:
    fam = StripFamily.from_framed(_load_framed(args.endA),
                                  _load_framed(args.endB),
                                  f"{args.endA},{args.endB}")
    sizes = (fam_vertex_count(args.endA), fam_vertex_count(args.endB))
    ns = range(1, args.max_n + 1) if args.max_n else [args.n]
    results = []
    ok = True
    for n in ns:
        p = fam.polynomial(n)
        vertices = sizes[0] + sizes[1] + 4 * n - 8
        res = golden_identity_check(p, vertices)
        results.append({"n": n, "vertices": vertices, "passed": res.passed})
        ok = ok and res.passed
    payload = {"family": fam.label, "results": results, "passed": ok}
    text = "".join(f"n={r['n']} vertices={r['vertices']}: "
                   f"{'pass' if r['passed'] else 'FAIL'}\n" for r in results)
    _emit(args, payload, text)
    return 0 if ok else 1


def fam_vertex_count(spec: str) -> int:
    return _load_framed(spec).graph.vertex_count


def cmd_verify_m(args) -> int:
    report = verify_M_against_oracle()
    payload = {"passed": report.passed,
               "entries": {f"{i + 1},{j + 1}": report.entry_ok[(i, j)]
                           for i in range(4) for j in range(4)}}
    lines = [f"entry ({i + 1},{j + 1}): "
             f"{'ok' if report.entry_ok[(i, j)] else 'MISMATCH'}"
             for i in range(4) for j in range(4)]
    lines.append("all entries match" if report.passed else "MISMATCHES FOUND")
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0 if report.passed else 1


def cmd_croots(args) -> int:
    fam = StripFamily.from_framed(_load_framed(args.endA),
                                  _load_framed(args.endB),
                                  f"{args.endA},{args.endB}")
    p = fam.polynomial(args.n, symbolic_limit=max(args.n, 128))
    rs = complex_roots(p, args.bits, max_iter=args.max_iter)
    lines = ["re,im"]
    import mpmath as mp
    digits = max(10, args.bits // 4)
    for re, im in rs.roots:
        lines.append(f"{mp.nstr(re, digits)},{mp.nstr(im, digits)}")
    text = "\n".join(lines) + "\n"
    target = args.out or getattr(args, "output", None)
    if target:
        Path(target).write_text(text)
        sys.stdout.write(f"wrote {len(rs.roots)} roots to {target} "
                         f"(max residual {mp.nstr(rs.max_residual, 5)})\n")
    else:
        sys.stdout.write(text)
    return 0


# -- table reproduction -------------------------------------------------------

def _root_worker(task):
    """Worker for one root row; reconstructs the family from JSON."""
    qa_json, qb_json, n, digits = task
    fam = StripFamily(PartitionVector.from_json(qa_json),
                      PartitionVector.from_json(qb_json))
    res = largest_root_near_four(fam, n, width=Fraction(1, 10 ** (digits + 1)),
                                 digits=digits)
    return n, res.decimal, res.midpoint


def _reproduce_roots(fam: StripFamily, rows, reference, digits, offset, jobs):
    tasks = [(fam.qa.to_json(), fam.qb.to_json(), n + offset, digits)
             for n in rows]
    results = {}
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for n_fam, decimal, midpoint in pool.map(_root_worker, tasks):
                results[n_fam - offset] = (decimal, midpoint)
    else:
        for task in tasks:
            n_fam, decimal, midpoint = _root_worker(task)
            results[n_fam - offset] = (decimal, midpoint)
    checks = []
    for n in rows:
        decimal, midpoint = results[n]
        ref = reference[n]
        ok = abs(midpoint - ref) <= ROOT_TOLERANCE
        checks.append({"n": n, "computed": decimal,
                       "reference": fraction_to_decimal(ref, digits),
                       "ok": ok})
    return checks


def cmd_reproduce_tables(args) -> int:
    which = args.only or "all"
    jobs = args.jobs or min(4, os.cpu_count() or 1)
    report = {}
    all_ok = True
    t_start = time.time()

    need_family = which in ("all", "table2", "table3")
    fam = None
    if which in ("all", "table1") or need_family:
        h = load_fixture("H")
        qh = partitioned_chromatic(h)
    if which in ("all", "table1"):
        expected = reference_partition_components()
        ok = tuple(qh) == tuple(expected)
        report["table1"] = {"passed": ok}
        all_ok = all_ok and ok
        sys.stdout.write(f"table1 (partition components): "
                         f"{'pass' if ok else 'FAIL'}\n")
    if need_family:
        fam = StripFamily(qh, partitioned_chromatic(load_fixture("W4")), "H,W4")
    if which in ("all", "table2"):
        rows = [n for n in BY_N_ROWS if n <= args.max_n]
        checks = _reproduce_roots(fam, rows, reference_roots_by_n(),
                                  digits=10, offset=0, jobs=jobs)
        ok = all(c["ok"] for c in checks)
        report["table2"] = {"passed": ok, "rows": checks}
        all_ok = all_ok and ok
        for c in checks:
            sys.stdout.write(f"table2 n={c['n']}: {c['computed']} "
                             f"ref {c['reference']} "
                             f"{'pass' if c['ok'] else 'FAIL'}\n")
    if which in ("all", "table3"):
        rows = [n for n in DOUBLING_ROWS if n <= args.max_n]
        checks = _reproduce_roots(fam, rows, reference_roots_doubling(),
                                  digits=9, offset=1, jobs=jobs)
        ok = all(c["ok"] for c in checks)
        report["table3"] = {"passed": ok, "rows": checks}
        all_ok = all_ok and ok
        for c in checks:
            sys.stdout.write(f"table3 n={c['n']} (strip {c['n'] + 1}): "
                             f"{c['computed']} ref {c['reference']} "
                             f"{'pass' if c['ok'] else 'FAIL'}\n")

    report["elapsed_seconds"] = round(time.time() - t_start, 3)
    report["passed"] = all_ok
    if args.report:
        Path(args.report).write_text(json.dumps(report, sort_keys=True,
                                                indent=2) + "\n")
    sys.stdout.write(f"reproduce-tables: {'PASS' if all_ok else 'FAIL'} "
                     f"({report['elapsed_seconds']}s)\n")
    return 0 if all_ok else 1


# ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chromroots", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, output=True):
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--node-budget", type=int, default=4_000_000,
                       help="deletion-contraction node cap")
        if output:
            p.add_argument("-o", "--output", help="write output to a file")

    p = sub.add_parser("poly", help="chromatic polynomial of a graph")
    p.add_argument("graph")
    common(p)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("qvec", help="partitioned chromatic polynomial")
    p.add_argument("graph")
    common(p)
    p.set_defaults(func=cmd_qvec)

    p = sub.add_parser("family", help="strip-family chromatic polynomial")
    p.add_argument("--endA", required=True)
    p.add_argument("--endB", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--symbolic-limit", type=int, default=128)
    common(p)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("root4", help="isolate the real root near 4")
    p.add_argument("--endA", required=True)
    p.add_argument("--endB", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--digits", type=int, default=10)
    common(p)
    p.set_defaults(func=cmd_root4)

    p = sub.add_parser("classify", help="positive/negative end-graph class")
    p.add_argument("graph")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("predict", help="roots-approach-4 prediction for a pair")
    p.add_argument("--endA", required=True)
    p.add_argument("--endB", required=True)
    common(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("verify-golden", help="golden-ratio identity check")
    p.add_argument("--endA", default="H")
    p.add_argument("--endB", default="W4")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--max-n", type=int, help="check all n up to this bound")
    common(p)
    p.set_defaults(func=cmd_verify_golden)

    p = sub.add_parser("verify-M", help="brute-force check of the layer matrix")
    common(p)
    p.set_defaults(func=cmd_verify_m)

    p = sub.add_parser("croots", help="complex roots of a strip polynomial")
    p.add_argument("--endA", default="H")
    p.add_argument("--endB", default="W4")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--bits", type=int, default=256)
    p.add_argument("--max-iter", type=int, default=400,
                   help="iteration cap for the simultaneous root iteration")
    p.add_argument("--out", help="CSV output path")
    common(p)
    p.set_defaults(func=cmd_croots)

    p = sub.add_parser("reproduce-tables",
                       help="regenerate the bundled reference tables")
    p.add_argument("--only", choices=("table1", "table2", "table3"))
    p.add_argument("--max-n", type=int, default=512)
    p.add_argument("--jobs", type=int, help="worker processes (default <= 4)")
    p.add_argument("--report", help="write a JSON report to this path")
    common(p, output=False)
    p.set_defaults(func=cmd_reproduce_tables)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

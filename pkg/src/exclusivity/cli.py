"""Command-line entry point.

Exit status: 0 success, 1 computational failure (e.g. SDP non-convergence),
2 usage or input error.  Machine output (``--format json``) prints numbers to
12 significant digits, human output (``--format table``) to 6.
"""
import argparse
import csv
import io
import json
import sys

from .audit import e_principle_audit, product_exclusivity_graph, quantum_model, with_london_override
from .errors import ConvergenceError, InputError
from .events import london_events, paris_events, slp_events
from .graphs import (
    ExclusivityGraph,
    apply_permutation,
    circulant,
    complement,
    cycle,
    from_events,
    independence_number,
    is_isomorphic,
    is_self_complementary,
    is_vertex_transitive,
    max_cliques,
)
from .quantum import london_model, paris_model
from .report import HUMAN_DIGITS, _rounded, format_table, generate_report, num
from .theta import SdpSettings, lovasz_theta, verify_witness


class UsageError(Exception):
    pass


def build_family(family):
    """Graph for a ``--family`` value."""
    kind, _, rest = family.partition(":")
    try:
        if kind == "london" and not rest:
            return from_events(london_events())
        if kind == "paris" and not rest:
            return from_events(paris_events())
        if kind == "slp" and not rest:
            return from_events(slp_events())
        if kind == "product" and not rest:
            return product_exclusivity_graph()
        if kind == "cycle":
            return cycle(int(rest))
        if kind == "circulant":
            n, _, offs = rest.partition(":")
            return circulant(int(n), [int(d) for d in offs.split(",") if d])
    except ValueError as exc:
        raise UsageError(f"bad family {family!r}: {exc}") from None
    raise UsageError(f"unknown family {family!r}")


def read_graph(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return ExclusivityGraph.loads(fh.read())
    except FileNotFoundError:
        raise UsageError(f"file not found: {path}") from None
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def emit(doc, fmt, out):
    if fmt == "json":
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        rows = [(k, _human(v)) for k, v in doc.items()]
        out.write(format_table(rows, header=("quantity", "value")))


def _human(v):
    v = _rounded(v, HUMAN_DIGITS)
    if isinstance(v, float):
        return f"{v:.{HUMAN_DIGITS}g}"
    if isinstance(v, (list, dict)):
        text = json.dumps(v, separators=(",", ":"))
        return text if len(text) <= 72 else text[:69] + "..."
    return str(v)


# subcommands

def cmd_graph_build(args, out):
    g = build_family(args.family)
    text = g.dumps()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        emit({"family": args.family, "n": g.n, "edges": g.edge_count, "out": args.out}, args.format, out)
    else:
        out.write(text)
    return 0


def cmd_graph_analyze(args, out):
    g = read_graph(args.path)
    doc = {"n": g.n, "edges": g.edge_count, "degrees": g.degrees()}
    if args.independence:
        alpha, witness = independence_number(g)
        doc["independence_number"] = alpha
        doc["independent_set"] = list(witness)
    if args.cliques:
        cl = max_cliques(g)
        doc["maximal_clique_count"] = len(cl)
        doc["clique_number"] = max(len(c) for c in cl)
        doc["maximal_cliques"] = [list(c) for c in cl]
    if args.complement_iso:
        h = read_graph(args.complement_iso)
        perm = is_isomorphic(complement(g), h)
        doc["complement_isomorphic"] = perm is not None
        doc["permutation"] = None if perm is None else list(perm)
        if perm is not None:
            doc["permutation_verified"] = apply_permutation(complement(g), perm).adj == h.adj
    if args.vertex_transitive:
        doc["vertex_transitive"] = is_vertex_transitive(g)
    if args.self_complementary:
        doc["self_complementary"] = is_self_complementary(g)
    emit(doc, args.format, out)
    return 0


def cmd_theta(args, out):
    g = read_graph(args.path)
    try:
        settings = SdpSettings(tolerance=args.tol, max_iterations=args.max_iter, step_parameter=args.step)
    except InputError as exc:
        raise UsageError(str(exc)) from None
    r = lovasz_theta(g, settings)
    check = verify_witness(g, r)
    emit(
        {
            "n": g.n,
            "theta": num(r.value),
            "primal_residual": num(r.primal_residual),
            "dual_residual": num(r.dual_residual),
            "iterations": r.iterations,
            "witness_verified": check.passed,
        },
        args.format,
        out,
    )
    return 0


def cmd_simulate(args, out):
    rows = []
    if args.model == "london":
        if args.orderings:
            raise UsageError("--orderings applies to the paris model only")
        table = london_model()
        for ev, p in table.probabilities.items():
            (a, i), (b, j) = [(o, s.token) for s, o in ev.items]
            rows.append({"context": f"{i},{j}", "ordering": f"{i},{j}", "outcomes": f"{a},{b}", "event": str(ev), "probability": p})
        total = table.s_value
    else:
        table = paris_model()
        for k, (ev, value, orders) in enumerate(zip(paris_events(), table.values, table.orderings)):
            context = ",".join(str((k + d) % 8) for d in range(3))
            if args.orderings == "all":
                targets = dict(zip(((k + d) % 8 for d in range(3)), (0, 0, 1)))
                for order, p in orders:
                    rows.append({
                        "context": context,
                        "ordering": ",".join(map(str, order)),
                        "outcomes": ",".join(str(targets[o]) for o in order),
                        "event": str(ev),
                        "probability": p,
                    })
            else:
                rows.append({"context": context, "ordering": context, "outcomes": "0,0,1", "event": str(ev), "probability": value})
        total = table.s_value

    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["context", "ordering", "outcomes", "probability"])
        for r in rows:
            w.writerow([r["context"], r["ordering"], r["outcomes"], f"{r['probability']:.12g}"])
        out.write(buf.getvalue())
    elif args.format == "json":
        for r in rows:
            r["probability"] = num(r["probability"])
        out.write(json.dumps({"model": args.model, "rows": rows, "sum": num(total)}, indent=2) + "\n")
    else:
        body = [(r["context"], r["ordering"], r["outcomes"], f"{r['probability']:.6g}") for r in rows]
        body.append(("sum", "", "", f"{total:.6g}"))
        out.write(format_table(body, header=("context", "ordering", "outcomes", "probability")))
    return 0


def cmd_audit(args, out):
    model = quantum_model()
    if args.pl_override is not None:
        if not 0.0 <= args.pl_override <= 1.0:
            raise UsageError("--pl-override must be a probability")
        model = with_london_override(model, args.pl_override)
    rep = e_principle_audit(model)
    doc = rep.to_dict()
    doc["violation_count"] = len(rep.violations)
    doc["passed"] = rep.passed
    emit(_rounded(doc), args.format, out)
    return 0


def cmd_report(args, out):
    rep = generate_report(pl_override=args.pl_override)
    text = rep.to_json() if args.format == "json" else rep.to_table()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        s_lp = rep.data["joint"]["s_lp"]["value"]
        out.write(f"wrote {args.out} (S_LP = {s_lp:.12g})\n")
    else:
        out.write(text)
    return 0


def make_parser():
    fmt = dict(choices=["json", "table"], default="json", help="machine (json) or human (table) output")
    p = argparse.ArgumentParser(
        prog="exclusivity",
        description="Exclusivity-principle verification of the CHSH Tsirelson bound.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph", help="build or analyze exclusivity graphs")
    gsub = g.add_subparsers(dest="graph_command", required=True)
    b = gsub.add_parser("build", help="write a graph file")
    b.add_argument("--family", required=True,
                   help="london | paris | slp | product | cycle:N | circulant:N:d1,d2,...")
    b.add_argument("--out", help="output path (default: stdout)")
    b.add_argument("--format", **fmt)
    b.set_defaults(func=cmd_graph_build)
    a = gsub.add_parser("analyze", help="exact combinatorial analysis of a graph file")
    a.add_argument("path")
    a.add_argument("--independence", action="store_true")
    a.add_argument("--cliques", action="store_true")
    a.add_argument("--complement-iso", metavar="PATH2")
    a.add_argument("--vertex-transitive", action="store_true")
    a.add_argument("--self-complementary", action="store_true")
    a.add_argument("--format", **fmt)
    a.set_defaults(func=cmd_graph_analyze)

    t = sub.add_parser("theta", help="Lovasz number of a graph file")
    t.add_argument("path")
    t.add_argument("--tol", type=float, default=SdpSettings.tolerance)
    t.add_argument("--max-iter", type=int, default=SdpSettings.max_iterations)
    t.add_argument("--step", type=float, default=SdpSettings.step_parameter)
    t.add_argument("--format", **fmt)
    t.set_defaults(func=cmd_theta)

    s = sub.add_parser("simulate", help="quantum event probabilities")
    s.add_argument("model", choices=["london", "paris"])
    s.add_argument("--orderings", choices=["all"])
    s.add_argument("--format", choices=["json", "table", "csv"], default="json")
    s.set_defaults(func=cmd_simulate)

    au = sub.add_parser("audit", help="exclusivity-principle clique audit")
    au.add_argument("--pl-override", type=float, metavar="X",
                    help="counterfactual uniform CHSH event probability")
    au.add_argument("--format", **fmt)
    au.set_defaults(func=cmd_audit)

    r = sub.add_parser("report", help="full reproduction report")
    r.add_argument("--out")
    r.add_argument("--pl-override", type=float, metavar="X")
    r.add_argument("--format", **fmt)
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args, out)
    except (UsageError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"error: {exc} {exc.residuals}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

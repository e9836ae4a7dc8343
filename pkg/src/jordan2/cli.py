"""Command-line interface.

Exit codes: 0 success/positive verdict, 1 negative verdict (not Jordan,
probe FAIL, pole at 0), 2 usage or input-format error, 3 numeric
failure (non-convergence or an indeterminate sign decision).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import deform
from .contract import (contract as contract_law, degeneration_graph,
                       edges_csv, emit_dot, load_family)
from .classify import (CanonicalClass, IndeterminateError, canonical_law,
                       classify, report_to_document)
from .core import is_jordan, is_simple, law_to_document, load_law, sj_residuals
from .geometry import tangent_report, tangent_report_to_document
from .scalars import format_rational, format_real

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


# ---------------------------------------------------------------------------
# Stable JSON rendering (fixed field order, "p/q" rationals, 17-digit reals)


def _dump_json(value, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = ",\n".join(
            '%s  "%s": %s' % (pad, k, _dump_json(v, indent + 1))
            for k, v in value.items())
        return "{\n%s\n%s}" % (items, pad)
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = ",\n".join("%s  %s" % (pad, _dump_json(v, indent + 1))
                           for v in value)
        return "[\n%s\n%s]" % (items, pad)
    if isinstance(value, bool) or value is None:
        return {True: "true", False: "false", None: "null"}[value]
    if isinstance(value, Fraction):
        return '"%s"' % format_rational(value)
    if isinstance(value, float):
        return format_real(value)
    if isinstance(value, int):
        return str(value)
    return '"%s"' % str(value).replace("\\", "\\\\").replace('"', '\\"')


def _emit(doc, as_json: bool, human_lines) -> None:
    if as_json:
        print(_dump_json(doc))
    else:
        for line in human_lines:
            print(line)


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return format_real(value)
    return str(value)


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_check(args) -> int:
    law = load_law(args.law)
    residuals = sj_residuals(law)
    verdict = is_jordan(law)
    doc = {"residuals": [Fraction(r) if law.mode.exact else float(r)
                         for r in residuals],
           "is_jordan": verdict}
    _emit(doc, args.json,
          ["residual[%d] = %s" % (i, _fmt(v))
           for i, v in enumerate(doc["residuals"])]
          + ["is_jordan: %s" % verdict])
    return EXIT_OK if verdict else EXIT_NEGATIVE


def _cmd_classify(args) -> int:
    law = load_law(args.law)
    report = classify(law, with_witness=args.witness)
    doc = report_to_document(report)
    doc["simple"] = is_simple(law)
    _emit(doc, args.json,
          ["class: %s" % report.cls,
           "unit: %s" % (doc["unit"],),
           "isotropy: %s" % (doc["isotropy"],),
           "discriminant_sign: %s" % (doc["discriminant_sign"],),
           "image_rank: %d" % report.image_rank,
           "simple: %s" % doc["simple"]])
    return EXIT_OK


def _cmd_orbit(args) -> int:
    law = load_law(args.law)
    report = tangent_report(law)
    doc = tangent_report_to_document(report)
    _emit(doc, args.json,
          ["orbit_dim: %d" % report.orbit_dim]
          + ["tangent[%d]: %s" % (i, b.to_matrix2())
             for i, b in enumerate(report.tangent_basis)])
    return EXIT_OK


def _cmd_gspace(args) -> int:
    law = load_law(args.law)
    report = tangent_report(law)
    doc = tangent_report_to_document(report)
    _emit({"g_dim": doc["g_dim"], "g_basis": doc["g_basis"]}, args.json,
          ["g_dim: %d" % report.g_dim]
          + ["g_basis[%d]: %s" % (i, b.to_matrix2())
             for i, b in enumerate(report.g_basis)])
    return EXIT_OK


def _class_arg(text: str) -> CanonicalClass:
    try:
        return CanonicalClass(text.lower())
    except ValueError:
        raise argparse.ArgumentTypeError(
            "unknown class %r (expected psi0..psi5 or abelian)" % text)


def _cmd_rigidity(args) -> int:
    report = deform.rigidity_probe(args.cls, args.eps, args.samples,
                                   args.seed)
    doc = report.to_document()
    _emit(doc, args.json,
          ["base_class: %s" % report.base_class,
           "samples: %d  eps: %s  seed: %d"
           % (report.samples, format_real(report.epsilon), report.seed)]
          + ["  %s: %d" % (c, n)
             for c, n in sorted(report.class_histogram.items(),
                                key=lambda cn: cn[0].value)]
          + ["indeterminate: %d" % report.indeterminate_count,
             "empirically rigid at this radius: %s"
             % report.empirically_rigid])
    return EXIT_OK if report.empirically_rigid else EXIT_NEGATIVE


def _cmd_forbidden(args) -> int:
    report = deform.forbidden_degeneration_check(args.eps, args.samples,
                                                 args.seed)
    doc = report.to_document()
    _emit(doc, args.json,
          ["samples: %d  eps: %s  seed: %d"
           % (report.samples, format_real(report.epsilon), report.seed),
           "psi5 count: %d" % report.psi5_count,
           "ideal checks: %d (failures %d)"
           % (report.ideal_checked, report.ideal_failures),
           "verdict: %s" % ("PASS" if report.passed else "FAIL")])
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def _cmd_contract(args) -> int:
    law = load_law(args.law)
    family = load_family(args.family)
    result = contract_law(law, family)
    doc = result.to_document()
    if result.is_limit:
        _emit(doc, args.json,
              ["outcome: limit",
               "law: %s" % (result.law.to_matrix2(),),
               "class: %s" % classify(result.law).cls])
        return EXIT_OK
    _emit(doc, args.json,
          ["outcome: pole at s=0",
           "entry: c[%d][%d][%d]" % result.pole_entry,
           "valuation: %d" % result.pole_valuation])
    return EXIT_NEGATIVE


def _cmd_graph(args) -> int:
    graph = degeneration_graph()
    if args.dot:
        sys.stdout.write(emit_dot(graph))
        return EXIT_OK
    if args.csv:
        sys.stdout.write(edges_csv(graph))
        return EXIT_OK
    doc = {"nodes": [c.value for c in sorted(graph.nodes,
                                             key=lambda c: c.value)],
           "edges": [[s.value, t.value] for s, t in graph.edges]}
    _emit(doc, args.json,
          ["%s -> %s" % (s.value, t.value) for s, t in graph.edges])
    return EXIT_OK


def _cmd_catalogue(args) -> int:
    docs = []
    lines = []
    for cls in CanonicalClass:
        law = canonical_law(cls)
        doc = law_to_document(law)
        doc["class"] = cls.value
        docs.append(doc)
        rows = law.to_matrix2()
        lines.append("%s: (%s)" % (
            cls.value,
            "; ".join(" ".join(format_rational(Fraction(v)) for v in row)
                      for row in rows)))
    _emit(docs, args.json, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jordan2",
        description="Classification, geometry, rigidity probes and "
                    "contractions of two-dimensional real Jordan algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")
        p.set_defaults(fn=fn)
        return p

    p = add("check", _cmd_check, help="evaluate the defining polynomials")
    p.add_argument("law", help="law file (JSON)")

    p = add("classify", _cmd_classify, help="classify a law")
    p.add_argument("law")
    p.add_argument("--witness", action="store_true",
                   help="compute an isomorphism witness")

    p = add("orbit", _cmd_orbit, help="orbit dimension and tangent basis")
    p.add_argument("law")

    p = add("gspace", _cmd_gspace, help="kernel of the delta operator")
    p.add_argument("law")

    p = add("rigidity", _cmd_rigidity, help="empirical rigidity probe")
    p.add_argument("--class", dest="cls", type=_class_arg, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)

    p = add("forbidden", _cmd_forbidden,
            help="probe for the forbidden psi2 -> psi5 jump")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)

    p = add("contract", _cmd_contract, help="symbolic contraction limit")
    p.add_argument("--law", required=True)
    p.add_argument("--family", required=True)

    p = add("graph", _cmd_graph, help="degeneration graph")
    p.add_argument("--dot", action="store_true", help="DOT output")
    p.add_argument("--csv", action="store_true", help="edge-list CSV")

    add("catalogue", _cmd_catalogue, help="print the seven canonical laws")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (deform.NonConvergenceError, IndeterminateError) as exc:
        print("numeric failure: %s" % exc, file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, KeyError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 budget exceeded, 3 a verification
check failed.
"""

import argparse
import csv
import io
import json
import sys
from importlib import resources

from ._numeric import format_number
from .checks import run_all
from .combinatorics import WordSpec
from .errors import BudgetError, DomainError, SchemaError
from .finite_n import Sn_full_moment, convergence_table, default_family, table_to_csv, table_to_json
from .graphon import rho_graph, rho_graphon
from .graphs import h_graph
from .io import load_json, parse_graph, parse_graphon, parse_model
from .limit_laws import S_limit_moment, lex_limit_moment, master_limit_moment
from .decorated import lex_limit_decoration

EXIT_OK, EXIT_SCHEMA, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3

BUNDLED_MODEL = "tensor2.json"
# finite-n sums grow like (2^L - 1)^p times the number of kernel classes
FINITE_P_DEFAULT = 4


def _bundled_model():
    return json.loads(resources.files("epsclt.data").joinpath(BUNDLED_MODEL).read_text())


def parse_word(text):
    """``"12 12* 3"`` -> WordSpec(({1,2}, {1,2}, {3}), ("1", "*", "1"))."""
    J, alpha = [], []
    for tok in text.split():
        star = tok.endswith("*")
        digits = tok[:-1] if star else tok
        if not digits.isdigit():
            raise SchemaError("--word", f"cannot read letter {tok!r}; use digits with an optional *")
        J.append({int(c) for c in digits})
        alpha.append("*" if star else "1")
    if not J:
        raise SchemaError("--word", "empty word")
    return WordSpec(J, alpha)


def _emit(rows, columns, fmt, out):
    """Write rows (tuples matching ``columns``) as CSV or JSON."""
    cells = [[c if isinstance(c, (str, int)) and not isinstance(c, bool) else format_number(c) for c in row]
             for row in rows]
    if fmt == "json":
        json.dump([dict(zip(columns, row)) for row in cells], out, indent=2)
        out.write("\n")
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(cells)


def _load_model(path, exact):
    obj = _bundled_model() if path is None else load_json(path)
    return parse_model(obj, exact)


def _family(model, override):
    if override is not None:
        return override if override in ("complete", "edgeless") else default_family(model.w)
    g = model.g_prime
    if g is None or g == "blowup":
        return default_family(model.w)
    return g


def cmd_limit_moments(args, out):
    model = _load_model(args.model, args.exact)
    lm = model.limit_model()
    if args.word:
        dec = lex_limit_decoration(lm.gL, lm.w) if args.route == "master" else None
        rows = []
        for text in args.word:
            spec = parse_word(text)
            if spec.L > lm.L:
                raise SchemaError("--word", f"{text!r} uses layers beyond L = {lm.L}")
            val = master_limit_moment(dec, spec) if dec else lex_limit_moment(lm, spec)
            rows.append((str(spec), val))
        _emit(rows, ("word", "moment"), args.format, out)
        return EXIT_OK
    p_max = args.p_max or model.p_max
    rows = [
        (p, S_limit_moment(lm, p, normalize=args.normalize, route=args.route))
        for p in range(1, p_max + 1)
    ]
    _emit(rows, ("p", "moment"), args.format, out)
    return EXIT_OK


def cmd_finite_moments(args, out):
    model = _load_model(args.model, args.exact)
    p_max = args.p_max or min(model.p_max, FINITE_P_DEFAULT)
    ns = args.n or model.ns or [2, 4, 8]
    law = model.summand_law(p_max)
    fam = _family(model, args.family)
    rows = []
    for p in range(1, p_max + 1):
        for n in ns:
            val = Sn_full_moment(model.gL, fam, law, p, n=n, normalize=args.normalize, budget=args.budget)
            rows.append((p, n, val))
    _emit(rows, ("p", "n", "moment"), args.format, out)
    return EXIT_OK


def cmd_converge(args, out):
    model = _load_model(args.model, args.exact)
    p_max = args.p_max or min(model.p_max, FINITE_P_DEFAULT)
    ns = args.n or model.ns or [2, 4, 8]
    rows = convergence_table(
        model.limit_model(),
        family=_family(model, args.family),
        p_max=p_max,
        ns=ns,
        law=model.summand_law(p_max),
        normalize=args.normalize,
        budget=args.budget,
    )
    if args.format == "json":
        json.dump(table_to_json(rows), out, indent=2)
        out.write("\n")
    else:
        out.write(table_to_csv(rows))
    return EXIT_OK


def cmd_verify(args, out):
    model = _load_model(args.model, args.exact)
    results = run_all(model.limit_model(), seed=args.seed, p_max=min(model.p_max, 8))
    _emit([(r.name, r.status, r.detail) for r in results], ("check", "status", "detail"), args.format, out)
    return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFY


def cmd_rho(args, out):
    f = parse_graph(load_json(args.f), "$")
    if (args.g is None) == (args.w is None):
        raise SchemaError("--g/--w", "give exactly one of a graph or a graphon")
    if args.g is not None:
        val = rho_graph(f, parse_graph(load_json(args.g), "$"))
    else:
        val = rho_graphon(f, parse_graphon(load_json(args.w), args.exact, "$"))
    _emit([(val,)], ("rho",), args.format, out)
    return EXIT_OK


def _subset_name(S):
    return "{" + ",".join(str(x) for x in sorted(S)) + "}"


def cmd_hl_graph(args, out):
    obj = load_json(args.graph)
    if isinstance(obj, dict) and "g_L" in obj:
        gL = parse_model(obj, args.exact).gL
    else:
        gL = parse_graph(obj, "$")
    h = h_graph(gL)
    if args.format == "json":
        doc = {
            "vertices": [_subset_name(v) for v in h.vertices],
            "edges": [[_subset_name(u), _subset_name(v)] for u, v in h.sorted_edges()],
        }
        json.dump(doc, out, indent=2)
        out.write("\n")
    else:
        _emit([(_subset_name(u), _subset_name(v)) for u, v in h.sorted_edges()], ("u", "v"), "csv", out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; exit code 2 is reserved for budget overruns
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_SCHEMA, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(
        prog="epsclt",
        description="Exact moments of central limit laws for graph-independent variables.",
    )
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--mode", choices=("exact", "float"), default="exact",
                        help="exact rationals (default) or floating point")
    common.add_argument("--budget", type=lambda s: int(float(s)), default=None,
                        help="cap on brute-force trace evaluations (default: $EPSCLT_BUDGET or 1e8)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised checks")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def model_cmd(name, help_, fn):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("model", nargs="?", help="model JSON file (default: bundled L=2 tensor model)")
        p.set_defaults(func=fn)
        return p

    p = model_cmd("limit-moments", "limiting moments of S or of words in the s_J", cmd_limit_moments)
    p.add_argument("--p-max", type=int)
    p.add_argument("--route", choices=("lex", "master", "h"), default="lex")
    p.add_argument("--normalize", choices=("raw", "unit_variance"), default="raw")
    p.add_argument("--word", action="append", help='word such as "12 12* 1 1"; may repeat')

    for name, fn, norm in (("finite-moments", cmd_finite_moments, "raw"),
                           ("converge", cmd_converge, "unit_variance")):
        p = model_cmd(name, "finite-n moments of S_n" if fn is cmd_finite_moments else
                      "finite-n moments next to their limits", fn)
        p.add_argument("--p-max", type=int)
        p.add_argument("--n", type=int, nargs="+")
        p.add_argument("--family", choices=("complete", "edgeless", "blowup"))
        p.add_argument("--normalize", choices=("raw", "unit_variance"), default=norm)

    model_cmd("verify", "run the cross-check suites", cmd_verify)

    p = sub.add_parser("rho", parents=[common], help="homomorphism density of a graph")
    p.add_argument("--f", required=True, help="pattern graph JSON")
    p.add_argument("--g", help="target graph JSON")
    p.add_argument("--w", help="step graphon JSON")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("hl-graph", parents=[common], help="independence graph of the limit variables")
    p.add_argument("graph", help="layer graph JSON (or a model file)")
    p.set_defaults(func=cmd_hl_graph)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    args.exact = args.mode == "exact"
    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except SchemaError as exc:
        print(f"error: {exc.path}: {exc.message}", file=sys.stderr)
        return EXIT_SCHEMA
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Every subcommand reads an edge list (a path, ``-`` for standard input, or
``--dataset NAME``) and writes CSV or JSON to standard output.  Errors go to
standard error as ``triadic: error[<kind>]: <message>`` where ``<kind>`` is
``usage``, ``data`` or ``undefined``; the exit codes are 2, 3 and 4.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__, datasets
from .analysis import MODES, corrected_centrality, eigen_centrality, stc_profile, walk_centrality
from .bigraph import parse_edge_list, read_edge_list
from .census import full_census, index_partition, simple_census, structural_census
from .dynamics import closure_counts, dynamic_closure
from .errors import ConvergenceError, DataError, UndefinedStatistic
from .instrument import assess, read_panel
from .nullmodels import c_rand
from .wedges import (
    NAMED_SCHEMES, Category, Congruence, Formulation, WedgeScheme,
    global_cc, global_counts, local_values, wedge_dependent_cc,
)

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_UNDEFINED = 0, 2, 3, 4

SCHEMAS = """\
output schemas (CSV; JSON carries the same fields):
  census --format simple        s0,s1,s2,s3 (one row, no header)
  census --format structural    x,y,count   (x = pairs with exclusive events, y = min(w,1))
  census --format full          index,class,count (class is mu1.mu2.mu3-w, nonzero rows only)
  clustering --level global     value (one row, no header)
  clustering --level local      actor,value (empty when undefined)
  clustering --level wedge-dependent   wedges,actors,mean
  dynamic                       value (one row, no header)
  stc                           s,triples,weak,probability
  centrality                    actor,score
  nullmodel                     mean,std,undefined_draws,samples
  instrument                    measure,statistic,other,value,n,dropped
  datasets list                 name,description
Floats are printed in shortest round-trip form; JSON adds exact fractions.
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(value):
    if value is None:
        return ""
    return repr(float(value))


def _exact(value):
    return None if value is None else str(Fraction(value))


def _emit_csv(out, header, rows):
    writer = csv.writer(out, lineterminator="\n")
    if header:
        writer.writerow(header)
    writer.writerows(rows)


def _emit_json(out, payload):
    json.dump(payload, out, indent=2)
    out.write("\n")


# -- argument handling ----------------------------------------------------------


def _add_input(p):
    p.add_argument("input", nargs="?", help="edge-list CSV (actor,event[,time]); '-' for stdin")
    p.add_argument("--dataset", help="bundled dataset name instead of a file")


def _add_output(p):
    p.add_argument("--output-format", choices=("csv", "json"), default="csv")
    # also accepted after the subcommand
    p.add_argument("--threads", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS)


def _add_scheme(p):
    p.add_argument("--statistic", choices=(*NAMED_SCHEMES, "custom"), default="classical")
    p.add_argument("--category", choices=[c.value for c in Category])
    p.add_argument("--congruence", choices=[c.value for c in Congruence])
    p.add_argument("--formulation", choices=[f.value for f in Formulation], default="rate")


def build_parser():
    parser = _Parser(
        prog="triadic",
        description="Triad censuses and clustering statistics for affiliation networks.",
        epilog=SCHEMAS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker cap for parallel work (default: available CPUs)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("census", help="full, structural or simple triad census")
    _add_input(p)
    _add_output(p)
    p.add_argument("--format", choices=("full", "structural", "simple"), default="full")

    p = sub.add_parser("clustering", help="clustering coefficient of a wedge scheme")
    _add_input(p)
    _add_output(p)
    _add_scheme(p)
    p.add_argument("--level", choices=("global", "local", "wedge-dependent"), default="global")

    p = sub.add_parser("dynamic", help="dynamic triadic closure of a timed network")
    _add_input(p)
    _add_output(p)

    p = sub.add_parser("stc", help="weak-tie probability by wedge strength")
    _add_input(p)
    _add_output(p)
    p.add_argument("--max-s", type=int, default=10)

    p = sub.add_parser("centrality", help="walk-count and eigenvector centrality")
    _add_input(p)
    _add_output(p)
    p.add_argument("--ell", type=int, default=2)
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--corrected", action="store_true", help="report c_inf - c_ell")
    kind.add_argument("--eigen", action="store_true", help="report c_inf")
    p.add_argument("--mode", choices=MODES, default="bipartite")

    p = sub.add_parser("nullmodel", help="clustering over degree-preserving random graphs")
    _add_input(p)
    _add_output(p)
    _add_scheme(p)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--burn-in", type=int, default=None,
                   help="swaps before and between draws (default 10 x attendance)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chains", type=int, default=1)

    p = sub.add_parser("instrument", help="assess statistics on a subject,statistic,period,value panel")
    p.add_argument("input", help="panel CSV; '-' for stdin")
    _add_output(p)
    p.add_argument("--validity", action="append", default=[], metavar="A:B",
                   help="report R^2 between statistics A and B (repeatable)")

    p = sub.add_parser("datasets", help="list or extract bundled datasets")
    p.add_argument("action", choices=("list", "extract"))
    p.add_argument("name", nargs="?")
    _add_output(p)
    return parser


def _scheme(args):
    formulation = Formulation(args.formulation)
    if args.statistic == "custom":
        if not (args.category and args.congruence):
            raise UsageError("--statistic custom needs --category and --congruence")
        return WedgeScheme(Category(args.category), Congruence(args.congruence), formulation)
    if args.category or args.congruence:
        raise UsageError("--category/--congruence require --statistic custom")
    named = NAMED_SCHEMES[args.statistic]
    return WedgeScheme(named.category, named.congruence, formulation)


def _load(args):
    if args.dataset and args.input:
        raise UsageError("give either an input file or --dataset, not both")
    if args.dataset:
        return datasets.load(args.dataset)
    if not args.input:
        raise UsageError("no input: give a file path, '-' or --dataset")
    if args.input == "-":
        return parse_edge_list(sys.stdin.read().splitlines())
    try:
        return read_edge_list(args.input)
    except OSError as exc:
        raise DataError(f"cannot read {args.input}: {exc.strerror}") from None


# -- subcommands ------------------------------------------------------------------


def _cmd_census(args, out):
    census = full_census(_load(args))
    json_out = args.output_format == "json"
    if args.format == "simple":
        s = simple_census(census)
        if json_out:
            _emit_json(out, {"s0": s.s0, "s1": s.s1, "s2": s.s2, "s3": s.s3})
        else:
            _emit_csv(out, None, [list(s)])
    elif args.format == "structural":
        t = structural_census(census).t
        rows = [(x, y, t[x][y]) for x in range(4) for y in range(2)]
        if json_out:
            _emit_json(out, [dict(zip(("x", "y", "count"), r)) for r in rows])
        else:
            _emit_csv(out, ("x", "y", "count"), rows)
    else:
        rows = [(index_partition(cls.mu), cls.key, n) for cls, n in census.items()]
        if json_out:
            _emit_json(out, [dict(zip(("index", "class", "count"), r)) for r in rows])
        else:
            _emit_csv(out, ("index", "class", "count"), rows)


def _cmd_clustering(args, out):
    scheme = _scheme(args)
    graph = _load(args)
    json_out = args.output_format == "json"
    if args.level == "global":
        value = global_cc(graph, scheme)
        if json_out:
            wedges, closed, alcoves = global_counts(graph, scheme)
            _emit_json(out, {"scheme": str(scheme), "value": float(value), "exact": _exact(value),
                             "wedges": wedges, "closed": closed, "alcoves": alcoves})
        else:
            _emit_csv(out, None, [[_fmt(value)]])
    elif args.level == "local":
        values = local_values(graph, scheme)
        if json_out:
            _emit_json(out, [{"actor": a, "value": None if v is None else float(v), "exact": _exact(v)}
                             for a, v in values.items()])
        else:
            _emit_csv(out, ("actor", "value"), [(a, _fmt(v)) for a, v in values.items()])
    else:
        groups = wedge_dependent_cc(graph, scheme, with_counts=True)
        rows = [(ell, n, mean) for ell, (mean, n) in groups.items()]
        if json_out:
            _emit_json(out, [{"wedges": ell, "actors": n, "mean": float(m), "exact": _exact(m)}
                             for ell, n, m in rows])
        else:
            _emit_csv(out, ("wedges", "actors", "mean"), [(ell, n, _fmt(m)) for ell, n, m in rows])


def _cmd_dynamic(args, out):
    graph = _load(args)
    value = dynamic_closure(graph)
    if args.output_format == "json":
        closed, qualifying = closure_counts(graph)
        _emit_json(out, {"value": float(value), "exact": _exact(value),
                         "closed": closed, "qualifying": qualifying})
    else:
        _emit_csv(out, None, [[_fmt(value)]])


def _cmd_stc(args, out):
    if args.max_s < 0:
        raise UsageError("--max-s must be non-negative")
    profile = stc_profile(_load(args), args.max_s)
    if args.output_format == "json":
        _emit_json(out, [{"s": s, "triples": r.triples, "weak": r.weak_ties,
                          "probability": float(r.probability), "exact": _exact(r.probability)}
                         for s, r in profile.items()])
    else:
        _emit_csv(out, ("s", "triples", "weak", "probability"),
                  [(s, r.triples, r.weak_ties, _fmt(r.probability)) for s, r in profile.items()])


def _cmd_centrality(args, out):
    if args.ell < 1:
        raise UsageError("--ell must be positive")
    graph = _load(args)
    if args.corrected:
        scores = corrected_centrality(graph, args.ell, mode=args.mode)
    elif args.eigen:
        scores = eigen_centrality(graph, mode=args.mode)
    else:
        scores = walk_centrality(graph, args.ell, mode=args.mode)
    if args.output_format == "json":
        _emit_json(out, [{"actor": a, "score": s} for a, s in scores.items()])
    else:
        _emit_csv(out, ("actor", "score"), [(a, repr(s)) for a, s in scores.items()])


def _cmd_nullmodel(args, out):
    if args.samples < 1 or args.chains < 1:
        raise UsageError("--samples and --chains must be positive")
    if args.burn_in is not None and args.burn_in < 0:
        raise UsageError("--burn-in must be non-negative")
    scheme = _scheme(args)
    summary = c_rand(_load(args), scheme, args.samples, burn_in=args.burn_in,
                     seed=args.seed, chains=args.chains, threads=args.threads)
    if args.output_format == "json":
        _emit_json(out, summary.to_json())
    else:
        _emit_csv(out, ("mean", "std", "undefined_draws", "samples"),
                  [(repr(summary.mean), repr(summary.std), summary.undefined_draws, summary.samples)])


def _cmd_instrument(args, out):
    pairs = []
    for spec in args.validity:
        a, sep, b = spec.partition(":")
        if not (sep and a and b):
            raise UsageError(f"--validity expects A:B, got {spec!r}")
        pairs.append((a, b))
    if args.input == "-":
        panel = read_panel(sys.stdin.read().splitlines())
    else:
        try:
            with open(args.input, newline="", encoding="utf-8") as fh:
                panel = read_panel(fh.read().splitlines())
        except OSError as exc:
            raise DataError(f"cannot read {args.input}: {exc.strerror}") from None
    cells = assess(panel, pairs)
    fields = ("measure", "statistic", "other", "value", "n", "dropped")
    if args.output_format == "json":
        _emit_json(out, [dict(zip(fields, (c.measure, c.statistic, c.other, c.value, c.n, c.dropped)))
                         for c in cells])
    else:
        _emit_csv(out, fields, [(c.measure, c.statistic, c.other, _fmt(c.value), c.n, c.dropped)
                                for c in cells])


def _cmd_datasets(args, out):
    if args.action == "list":
        if args.output_format == "json":
            _emit_json(out, datasets.DESCRIPTIONS)
        else:
            _emit_csv(out, ("name", "description"), datasets.DESCRIPTIONS.items())
        return
    if not args.name:
        raise UsageError("datasets extract needs a dataset name")
    out.write(datasets.raw_csv(args.name))


COMMANDS = {
    "census": _cmd_census,
    "clustering": _cmd_clustering,
    "dynamic": _cmd_dynamic,
    "stc": _cmd_stc,
    "centrality": _cmd_centrality,
    "nullmodel": _cmd_nullmodel,
    "instrument": _cmd_instrument,
    "datasets": _cmd_datasets,
}


def _fail(kind, message, code, err):
    err.write(f"triadic: error[{kind}]: {message}\n")
    return code


def run(argv=None, out=None, err=None) -> int:
    """Execute one command line and return its exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads is None:
            args.threads = os.cpu_count() or 1
        elif args.threads < 1:
            raise UsageError("--threads must be positive")
        buffer = io.StringIO()
        COMMANDS[args.command](args, buffer)
    except SystemExit as exc:
        # --help and --version
        return exc.code
    except UsageError as exc:
        return _fail("usage", exc, EXIT_USAGE, err)
    except UndefinedStatistic as exc:
        return _fail("undefined", exc, EXIT_UNDEFINED, err)
    except (DataError, ConvergenceError) as exc:
        return _fail("data", exc, EXIT_DATA, err)
    out.write(buffer.getvalue())
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

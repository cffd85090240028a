"""Command-line interface.

Exit status: 0 success, 1 a checked property failed, 2 bad input,
3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import io
from .budget import SearchBudget
from .census import count_property, format_trend, trend_report
from .errors import (
    BudgetExhausted,
    CapabilityError,
    EmptyPropertyError,
    InconsistencyError,
    InputError,
    UndefinedDensityError,
)
from .extremal import ExtremalResult, erdos_stone_value, ex_exact, monotone_ex
from .properties import expand_bi_family, is_good, member
from .regdiag import (
    DeltaFunction,
    build_goodified,
    check_regularity,
    detect_exceptional,
    fit_delta,
)
from .regdiag.bound import _fmt, subsets
from .regdiag.regularity import COMPLEX_CAP, DEFAULT_SAMPLES
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def _nonneg_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _rational(text):
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a number or p/q, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return v


def _n_range(text):
    try:
        lo, hi = (int(p) for p in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"empty or negative range {text!r}")
    return range(lo, hi + 1)


def _budget(args) -> SearchBudget:
    env = SearchBudget.from_env()
    return SearchBudget(
        max_nodes=args.max_nodes if args.max_nodes is not None else env.max_nodes,
        time_limit=args.time_limit if args.time_limit is not None else env.time_limit,
        symmetry=not args.no_symmetry,
    )


def _emit(args, table_lines, record):
    if args.format == "json":
        print(io.dumps(record))
    else:
        print("\n".join(table_lines))


def _choice_lines(H):
    return [f"  {','.join(map(str, e))}: {' '.join(labs)}" for e, labs in H.as_mapping().items()]


def _extremal_out(args, command, res: ExtremalResult):
    approx = f"{res.ex_value:.6f}"
    lines = [f"command: {command}", f"n: {res.n}", f"k: {res.k}"]
    if res.max_black is not None:
        lines.append(f"maxBlack: {res.max_black}")
    lines += [
        f"bestProduct: {res.best_product}",
        f"ex: {res.ex_text} (~{approx})",
        f"exact: {'yes' if res.exact else 'no (budget exhausted; lower bound)'}",
        "witness:",
        *_choice_lines(res.witness),
    ]
    record = {
        "command": command,
        "n": res.n,
        "k": res.k,
        "bestProduct": str(res.best_product),
        "ex": res.ex_text,
        "exApprox": approx,
        "exact": res.exact,
        "witness": io.choice_to_json(res.witness),
    }
    if res.max_black is not None:
        record["maxBlack"] = res.max_black
    _emit(args, lines, record)
    return EXIT_OK if res.exact else EXIT_BUDGET


# ---------------------------------------------------------------- commands


def cmd_ex(args):
    fam = io.family_from_json(io.load(args.family), f"{args.family}")
    return _extremal_out(args, "ex", ex_exact(args.n, fam, _budget(args)))


def cmd_monotone_ex(args):
    fam = io.bi_family_from_json(io.load(args.family), f"{args.family}")
    return _extremal_out(args, "monotone-ex", monotone_ex(args.n, fam, _budget(args)))


def cmd_erdos_stone(args):
    fam = io.bi_family_from_json(io.load(args.family), f"{args.family}")
    v = erdos_stone_value(fam)
    _emit(args, [f"erdosStone: {v} (~{float(v):.6f})"], {"command": "erdos-stone", "value": str(v)})
    return EXIT_OK


def cmd_count(args):
    fam = io.family_from_json(io.load(args.family), f"{args.family}")
    c = count_property(args.n, fam, _budget(args))
    _emit(args, [f"count: {c}"], {"command": "count", "n": args.n, "count": str(c)})
    return EXIT_OK


def cmd_trend(args):
    fam = io.family_from_json(io.load(args.family), f"{args.family}")
    rows = trend_report(fam, args.n_range, _budget(args))
    record = {
        "command": "trend",
        "rows": [
            {
                "n": r.n,
                "count": str(r.count),
                "bestProduct": str(r.best_product),
                "ex": r.ex_text,
                "logDensity": f"{r.log_density:.6f}",
                "gap": f"{r.gap:.6f}",
                "exact": r.exact,
            }
            for r in rows
        ],
    }
    _emit(args, format_trend(rows).splitlines(), record)
    if not all(r.exact for r in rows):
        return EXIT_BUDGET
    return EXIT_OK if all(r.lower_bound_holds for r in rows) else EXIT_FAIL


def cmd_member(args):
    fam = io.family_from_json(io.load(args.family), f"{args.family}")
    H = io.graph_from_json(io.load(args.graph), f"{args.graph}")
    ok = member(H, fam)
    _emit(args, [f"member: {'true' if ok else 'false'}"], {"command": "member", "member": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_good(args):
    fam = io.family_from_json(io.load(args.family), f"{args.family}")
    H = io.choice_from_json(io.load(args.graph), f"{args.graph}")
    ok, wit = is_good(H, fam, return_witness=True)
    lines = [f"good: {'true' if ok else 'false'}"]
    record = {"command": "good", "good": ok}
    if wit is not None:
        F, phi = wit
        lines.append(f"witness member: {fam.members.index(F)}")
        lines.append(f"witness map: {' '.join(f'{i + 1}->{v}' for i, v in enumerate(phi))}")
        record["witness"] = {"member": fam.members.index(F), "map": list(phi)}
    _emit(args, lines, record)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_expand_bi(args):
    fam = io.bi_family_from_json(io.load(args.family), f"{args.family}")
    print(io.dumps(io.family_to_json(expand_bi_family(fam))))
    return EXIT_OK


def _load_graph(path):
    return io.bound_graph_from_json(io.load(path), f"{path}")


def _load_delta(path, G):
    if path is None:
        return DeltaFunction({})
    return io.delta_from_json(io.load(path), G, f"{path}")


def _load_complexes(path, G):
    if path is None:
        return None
    raw = io.load(path)
    if not isinstance(raw, list):
        raise InputError(f"{path}: expected a list of complexes")
    return [io.complex_from_json(c, G, f"{path}[{i}]") for i, c in enumerate(raw)]


def _report_lines(rep):
    lines = [f"mode: {rep.mode}", f"eps: {rep.eps}", f"h: {rep.h}"]
    if rep.mode == "sampled":
        lines += [f"seed: {rep.seed}", f"samples: {rep.samples}"]
    lines.append("mean slack per index (need mean <= eps/|C_I|):")
    for c in rep.index_checks:
        lines.append(f"  I={{{_fmt(c.index)}}}  mean={c.mean_delta}  bound={c.bound}  {'ok' if c.ok else 'FAIL'}")
    bad = rep.violations()
    lines.append(f"complexes checked: {len(rep.complex_checks)}{'' if rep.complete else ' (enumeration capped)'}")
    lines.append(f"complex violations: {len(bad)}")
    for c in bad[:10]:
        p = c.probability if rep.mode == "exact" else f"{c.probability:.6f} +- {c.radius:.6f}"
        lines.append(f"  complex #{c.number}: probability {p} outside [{c.lower}, {c.upper}]")
    lines.append(f"verdict: {'PASS' if rep.verdict else 'FAIL'}")
    return lines


def _report_record(rep, G):
    return {
        "mode": rep.mode,
        "eps": str(rep.eps),
        "h": rep.h,
        "seed": rep.seed,
        "samples": rep.samples,
        "indexChecks": [
            {"index": _fmt(c.index), "meanDelta": str(c.mean_delta), "bound": str(c.bound), "ok": c.ok}
            for c in rep.index_checks
        ],
        "complexCount": len(rep.complex_checks),
        "complete": rep.complete,
        "violations": [
            {
                "number": c.number,
                "complex": io.complex_to_json(c.complex, G),
                "probability": str(c.probability) if rep.mode == "exact" else f"{c.probability:.6f}",
                "radius": f"{c.radius:.6f}",
                "lower": str(c.lower),
                "upper": str(c.upper),
            }
            for c in rep.violations()
        ],
        "verdict": rep.verdict,
    }


def cmd_regcheck(args):
    if args.mode == "sampled" and args.seed is None:
        raise InputError("--seed is required with --mode sampled")
    G = _load_graph(args.graph)
    delta = _load_delta(args.delta, G)
    rep = check_regularity(
        G, delta, args.eps, args.h, args.mode, args.samples, args.seed,
        _load_complexes(args.complexes, G), args.max_complexes,
    )
    _emit(args, _report_lines(rep), dict(command="regcheck", **_report_record(rep, G)))
    return EXIT_OK if rep.verdict else EXIT_FAIL


def cmd_fit_delta(args):
    G = _load_graph(args.graph)
    delta, rep = fit_delta(G, args.eps, args.h, _load_complexes(args.complexes, G), args.max_complexes)
    if args.format == "json":
        print(io.dumps({"command": "fit-delta", "delta": io.delta_to_json(delta), **_report_record(rep, G)}))
    else:
        lines = [f"nonzero slacks: {len(delta)}"]
        for c, v in delta.items():
            comps = " ".join(f"{{{_fmt(J)}}}={lab}" for J, lab in zip(subsets(c.index), c.components))
            lines.append(f"  {comps}  delta={v}")
        print("\n".join(lines + _report_lines(rep)))
    return EXIT_OK if rep.verdict else EXIT_FAIL


def cmd_exceptional(args):
    G = _load_graph(args.graph)
    exc = detect_exceptional(G, _load_delta(args.delta, G), args.eps)
    lines = [f"eps: {exc.eps}", f"bound 11*2^k*sqrt(eps): {exc.bound:.6f}"]
    for I, p in exc.probabilities.items():
        lines.append(f"  I={{{_fmt(I)}}}  P[exceptional]={p}  {'ok' if exc.within_bound(I) else 'ABOVE BOUND'}")
    lines.append(f"exceptional total colors: {len(exc.exceptional)}")
    for c in exc.exceptional:
        lines.append("  " + " ".join(f"{{{_fmt(J)}}}={lab}" for J, lab in zip(subsets(c.index), c.components)))
    record = {
        "command": "exceptional",
        "eps": str(exc.eps),
        "bound": f"{exc.bound:.6f}",
        "probabilities": {_fmt(I): str(p) for I, p in exc.probabilities.items()},
        "withinBound": exc.within_bound(),
        "exceptional": [io.total_color_to_json(c) for c in exc.exceptional],
    }
    _emit(args, lines, record)
    return EXIT_OK if exc.within_bound() else EXIT_FAIL


def cmd_goodify(args):
    G = _load_graph(args.graph)
    exc = detect_exceptional(G, _load_delta(args.delta, G), args.eps)
    H = build_goodified(G, exc)
    record = {"command": "goodify", "edges": {}}
    lines = []
    for I, masks in H.masks.items():
        key = _fmt(I)
        record["edges"][key] = {}
        lines.append(f"I={{{key}}}")
        for e in G.edges(I):
            name = "|".join(G.vertex_ids[i][v] for i, v in zip(I, e))
            labs = list(H.choice(I, e))
            record["edges"][key][name] = labs
            lines.append(f"  {name}: {' '.join(labs)}")
    _emit(args, lines, record)
    return EXIT_OK


def cmd_verify(args):
    family = None
    if args.family is not None:
        raw = io.load(args.family)
        if args.suite == "bi-equivalence":
            family = io.bi_family_from_json(raw, f"{args.family}")
        else:
            family = io.family_from_json(raw, f"{args.family}")
    rep = run_suite(args.suite, family, args.n_max, _budget(args))
    record = {
        "command": "verify",
        "suite": rep.name,
        "checks": [{"label": c.label, "ok": c.ok, "detail": c.detail} for c in rep.checks],
        "ok": rep.ok,
    }
    _emit(args, rep.lines(), record)
    return EXIT_OK if rep.ok else EXIT_FAIL


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hereditex", description="Exact extremal values, counts and regularity diagnostics.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=("table", "json"), default="table")

    def budget(sp):
        sp.add_argument("--max-nodes", type=_positive_int, default=None, help="search node cap")
        sp.add_argument("--time-limit", type=float, default=None, help="search time cap in seconds")
        sp.add_argument("--no-symmetry", action="store_true", help="disable symmetry pruning")

    def family(sp, required=True):
        sp.add_argument("--family", required=required, help="family JSON file")

    for name, fn, helptext in (
        ("ex", cmd_ex, "exact extremal value of Forb(family) on n vertices"),
        ("monotone-ex", cmd_monotone_ex, "extremal value of a BI family via its maximum black edge count"),
        ("count", cmd_count, "exact number of labeled members on n vertices"),
    ):
        sp = sub.add_parser(name, help=helptext)
        family(sp)
        sp.add_argument("--n", type=_nonneg_int, required=True)
        budget(sp)
        common(sp)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("erdos-stone", help="limit value min(1 - 1/(chi-1)) for a graph BI family")
    family(sp)
    common(sp)
    sp.set_defaults(func=cmd_erdos_stone)

    sp = sub.add_parser("trend", help="count against extremal value over a range of n")
    family(sp)
    sp.add_argument("--n-range", type=_n_range, required=True, help="inclusive range A..B")
    budget(sp)
    common(sp)
    sp.set_defaults(func=cmd_trend)

    for name, fn, helptext in (
        ("member", cmd_member, "is the colored hypergraph in Forb(family)?"),
        ("good", cmd_good, "is every selection of the choice hypergraph in Forb(family)?"),
    ):
        sp = sub.add_parser(name, help=helptext)
        family(sp)
        sp.add_argument("--graph", required=True)
        common(sp)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("expand-bi", help="expand a BI family into an equivalent black/white family")
    family(sp)
    sp.set_defaults(func=cmd_expand_bi)

    def regular(sp, with_delta=True, delta_required=False):
        sp.add_argument("--graph", required=True, help="bound graph JSON file")
        if with_delta:
            sp.add_argument("--delta", required=delta_required, default=None, help="slack JSON file (default all zero)")
        sp.add_argument("--eps", type=_rational, required=True)
        common(sp)

    def complexes(sp):
        sp.add_argument("--h", type=_positive_int, default=1)
        sp.add_argument("--complexes", default=None, help="JSON list of complexes (default: enumerate)")
        sp.add_argument("--max-complexes", type=_positive_int, default=COMPLEX_CAP)

    sp = sub.add_parser("regcheck", help="check (eps,h)-regularity for a given slack")
    regular(sp)
    complexes(sp)
    sp.add_argument("--mode", choices=("exact", "sampled"), default="exact")
    sp.add_argument("--samples", type=_positive_int, default=DEFAULT_SAMPLES)
    sp.add_argument("--seed", type=_nonneg_int, default=None)
    sp.set_defaults(func=cmd_regcheck)

    sp = sub.add_parser("fit-delta", help="smallest slack passing every checked complex")
    regular(sp, with_delta=False)
    complexes(sp)
    sp.set_defaults(func=cmd_fit_delta)

    sp = sub.add_parser("exceptional", help="exceptional total colors and their edge probability")
    regular(sp)
    sp.set_defaults(func=cmd_exceptional)

    sp = sub.add_parser("goodify", help="choice sets of the goodified graph")
    regular(sp)
    sp.set_defaults(func=cmd_goodify)

    sp = sub.add_parser("verify", help="run an invariant suite")
    sp.add_argument("--suite", choices=SUITES, required=True)
    family(sp, required=False)
    sp.add_argument("--n-max", type=_positive_int, default=None)
    budget(sp)
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, CapabilityError, UndefinedDensityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (EmptyPropertyError, InconsistencyError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 input/validation error, 3 exact
search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import BudgetExceeded, LoopCutError
from .exact import DEFAULT_BUDGET, exact_min_cutset, is_valid_cutset
from .experiments import ALL_ALGORITHMS, DEFAULT_EXACT_THRESHOLD, emit_report, run_comparison
from .generators import GenSpec, adv_roles, gen_adv, generate
from .graph import load_network
from .heuristics import VALUES_ASCENDING, VALUES_DESCENDING, SelectionPolicy, run_heuristic, run_random_baseline

EXIT_USAGE, EXIT_INPUT, EXIT_BUDGET = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(obj, pretty: bool, out=None) -> None:
    out = out or sys.stdout
    if pretty:
        out.write(_pretty(obj) + "\n")
    else:
        out.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _pretty(obj) -> str:
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        return "\n".join(f"{k:<{width}}  {json.dumps(v) if isinstance(v, (dict, list)) else v}" for k, v in obj.items())
    return json.dumps(obj, indent=2)


def _read_network(path: str):
    try:
        data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    except OSError as exc:
        raise LoopCutError(f"cannot read {path}: {exc}") from None
    return load_network(data)


def _add_gen_flags(p):
    p.add_argument("--kind", choices=("G1", "G2", "ADV"))
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--m", type=int)
    p.add_argument("--keep-connected", action="store_true", default=None)
    p.add_argument("--k", type=int)
    p.add_argument("--values", help="all-2 or uniform:LO,HI")
    p.add_argument("--seed", type=int)
    p.add_argument("--config", help="JSON file; a 'gen' block holds GenSpec fields, CLI flags override")


def _genspec(args, config: dict) -> GenSpec:
    fields = dict(config.get("gen", {}))
    for name in ("kind", "n", "p", "m", "keep_connected", "k", "values", "seed"):
        val = getattr(args, name, None)
        if val is not None:
            fields[name] = val
    if "kind" not in fields:
        raise UsageError("a generator kind is required (--kind or config 'gen.kind')")
    try:
        return GenSpec.from_dict(fields)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _load_config(path):
    if not path:
        return {}
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise LoopCutError(f"cannot read config {path}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="loopcut", description="Loop cutsets for belief-network DAGs.")
    parser.add_argument("--version", action="version", version=f"loopcut {__version__}")
    parser.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    parser.set_defaults(pretty=False)
    common = _Parser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    g = sub.add_parser("gen", parents=[common], help="generate a network")
    _add_gen_flags(g)
    g.add_argument("-o", "--output", help="network file (a .provenance.json sidecar is written next to it)")

    c = sub.add_parser("cut", parents=[common], help="compute a loop cutset")
    c.add_argument("input")
    c.add_argument("--alg", choices=("a1", "a2", "random", "exact"), default="a2")
    c.add_argument("--tiebreak", choices=(VALUES_DESCENDING, VALUES_ASCENDING), default=VALUES_DESCENDING)
    c.add_argument("--weights", nargs=2, type=float, metavar=("W_DEGREE", "W_VALUES"))
    c.add_argument("--seed", type=int, default=0, help="seed for the random baseline")
    c.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="exact search node budget")

    v = sub.add_parser("validate", parents=[common], help="check a candidate cutset")
    v.add_argument("input")
    v.add_argument("--cutset", type=int, nargs="*", default=[])

    b = sub.add_parser("bench", parents=[common], help="run a seeded comparison")
    _add_gen_flags(b)
    b.add_argument("--trials", type=int)
    b.add_argument("--algorithms", nargs="+", type=str.upper, choices=ALL_ALGORITHMS)
    b.add_argument("--exact-threshold", type=int)
    b.add_argument("--exact-budget", type=int)
    b.add_argument("--format", choices=("csv", "json"))
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("-o", "--output", help="report file; the summary goes to stdout")

    a = sub.add_parser("adv-demo", parents=[common], help="greedy vs optimal on the adversarial family")
    a.add_argument("k", type=int)
    return parser


def _cmd_gen(args):
    spec = _genspec(args, _load_config(args.config))
    net = generate(spec)
    text = net.to_json()
    prov = spec.provenance()
    if args.output:
        Path(args.output).write_text(text)
        side = Path(args.output).with_suffix(".provenance.json")
        side.write_text(json.dumps(prov, sort_keys=True) + "\n")
        _emit({"output": args.output, "provenance": prov, "nodes": len(net), "arcs": net.num_arcs}, args.pretty)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_cut(args):
    net = _read_network(args.input)
    if args.alg == "exact":
        try:
            cut = exact_min_cutset(net, args.budget)
        except BudgetExceeded as exc:
            _emit(exc.best.to_dict(), args.pretty)
            print(f"loopcut: {exc}", file=sys.stderr)
            return EXIT_BUDGET
    elif args.alg == "random":
        cut = run_random_baseline(net, args.seed)
    else:
        policy = SelectionPolicy(args.tiebreak, tuple(args.weights) if args.weights else None)
        cut = run_heuristic(net, args.alg.upper(), policy)
    _emit(cut.to_dict(), args.pretty)
    return 0


def _cmd_validate(args):
    net = _read_network(args.input)
    _emit({"valid": is_valid_cutset(net, args.cutset)}, args.pretty)
    return 0


def _cmd_bench(args):
    config = _load_config(args.config)
    spec = _genspec(args, config)

    def opt(name, default):
        val = getattr(args, name)
        return val if val is not None else config.get(name, default)

    trials = opt("trials", 100)
    fmt = opt("format", "csv")
    algorithms = opt("algorithms", list(ALL_ALGORITHMS))
    try:
        table, records = run_comparison(
            spec, trials, algorithms, spec.seed,
            opt("exact_threshold", DEFAULT_EXACT_THRESHOLD), opt("exact_budget", DEFAULT_BUDGET), args.jobs,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = emit_report(table, records, fmt, master_seed=spec.seed)
    if args.output:
        Path(args.output).write_bytes(report)
        summary = {"version": __version__, "master_seed": spec.seed, "report": args.output, **table.to_dict()}
        _emit(summary, args.pretty)
    else:
        sys.stdout.buffer.write(report)
    return 0


def _cmd_adv(args):
    if args.k < 2:
        raise UsageError("adv-demo needs k >= 2")
    net = gen_adv(args.k)
    a1, a2 = run_heuristic(net, "A1"), run_heuristic(net, "A2")
    ex = exact_min_cutset(net)
    _emit({
        "k": args.k, "nodes": len(net), "arcs": net.num_arcs, "roles": adv_roles(args.k),
        "a1": len(a1), "a2": len(a2), "exact": len(ex),
        "a1_members": list(a1.members), "a2_members": list(a2.members), "exact_members": list(ex.members),
    }, args.pretty)
    return 0


COMMANDS = {"gen": _cmd_gen, "cut": _cmd_cut, "validate": _cmd_validate, "bench": _cmd_bench, "adv-demo": _cmd_adv}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except LoopCutError as exc:
        print(f"loopcut: {exc}", file=sys.stderr)
        return EXIT_INPUT

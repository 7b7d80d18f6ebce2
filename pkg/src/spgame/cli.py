"""Command-line front end: ``spg <command> [game] [options]``.

Every command prints one JSON document on stdout (or ``key: value`` lines
with ``--format text``). Exit status is 0 on success, 1 when the request
is well formed but the game or strategy does not allow it, and 2 for
usage errors, unreadable files and malformed input.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from .convert import convert
from .corpus import corpus_check
from .det import PureStrategy, StrategyError, SwitchingStrategy, eval_all, switching_strategy
from .game import GameError, GameGraph, Owner, load_game
from .jsonio import StrategyFormatError, parse_rat, rat, strategy_from_json, strategy_to_json
from .markov import MarkovError, RandStrategy, build_mc, initial_tau, max_best_response
from .optimality import InfiniteValueError, check_optimal_memoryless
from .rand import check_almost_sure_reach, synthesize_epsilon_optimal
from .simulate import SimConfig, simulate
from .values import format_value, is_finite, solve_values


class UsageError(Exception):
    """Bad input: exit status 2."""


class DomainError(Exception):
    """Well-formed request the game does not admit: exit status 1."""


def exact_params_enabled() -> bool:
    return os.environ.get("SPG_EXACT_PARAMS", "") == "1"


def _load(path: str) -> GameGraph:
    try:
        return load_game(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None
    except (GameError, json.JSONDecodeError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_strategy(g: GameGraph, path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        return strategy_from_json(g, doc)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None
    except (json.JSONDecodeError, StrategyFormatError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _vertex(g: GameGraph, name: str) -> int:
    try:
        return g.index(name)
    except KeyError:
        raise UsageError(f"unknown vertex {name!r}") from None


def _default_v0(g: GameGraph, name: str | None) -> int:
    if name is not None:
        return _vertex(g, name)
    for v in range(g.n):
        if not g.is_target(v):
            return v
    raise UsageError("the game has no non-target vertex")


def _by_name(g: GameGraph, xs, fmt=format_value) -> dict:
    return {g.names[v]: fmt(xs[v]) for v in range(g.n)}


def _finite_values(g: GameGraph):
    vals = solve_values(g)
    bad = [g.names[v] for v in range(g.n) if not is_finite(vals[v])]
    if bad:
        raise DomainError("all values must be finite; infinite at " + ", ".join(bad))
    return vals


def _rational_arg(s: str) -> Fraction:
    try:
        return parse_rat(s)
    except StrategyFormatError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nat(s: str) -> int:
    try:
        x = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if x < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return x


def cmd_validate(args) -> dict:
    g = _load(args.game)
    return {"valid": True, "vertices": g.n, "edges": len(g.edges),
            "min": [g.names[v] for v in g.vertices(Owner.MIN)],
            "max": [g.names[v] for v in g.vertices(Owner.MAX)],
            "targets": [g.names[v] for v in g.targets], "max_weight": g.max_weight}


def cmd_values(args) -> dict:
    g = _load(args.game)
    return _by_name(g, solve_values(g))


def cmd_synthesize_det(args) -> dict:
    g = _load(args.game)
    vals = _finite_values(g)
    n = args.n
    if n is None:
        n = max(0, -min(vals[v] for v in range(g.n)))
    sw = switching_strategy(g, vals, n)
    out = strategy_to_json(g, sw)
    out["n"] = n
    out["values"] = _by_name(g, eval_all(g, sw))
    return out


def cmd_synthesize_rand(args) -> dict:
    g = _load(args.game)
    vals = _finite_values(g)
    v0 = _default_v0(g, args.v0)
    n = args.n if args.n is not None else max(0, -vals[v0])
    if args.epsilon <= 0:
        raise UsageError("epsilon must be positive")
    syn = synthesize_epsilon_optimal(g, vals, n, args.epsilon, v0, exact_params=exact_params_enabled())
    out = strategy_to_json(g, syn.rho)
    b = syn.bound
    out.update({"p": rat(b.p_min), "a": b.a, "b": rat(b.b), "epsilon": rat(b.epsilon),
                "v0": g.names[v0], "n": n, "switching_value_v0": b.dval_sigma_v0,
                "params": {"W": syn.params.W, "c": syn.params.c, "w_minus": syn.params.w_minus,
                           "w_plus": syn.params.w_plus, "exact": syn.params.exact}})
    return out


def cmd_evaluate_det(args) -> dict:
    g = _load(args.game)
    s = _load_strategy(g, args.strategy)
    if not isinstance(s, (PureStrategy, SwitchingStrategy)):
        raise UsageError("evaluate-det needs a pure or switching strategy")
    vals = eval_all(g, s)
    out = {"values": _by_name(g, vals)}
    if args.v0 is not None:
        v0 = _vertex(g, args.v0)
        out.update({"v0": g.names[v0], "value": format_value(vals[v0])})
    return out


def _as_rand(s) -> RandStrategy:
    if isinstance(s, RandStrategy):
        return s
    if isinstance(s, PureStrategy):
        return RandStrategy.dirac(s.choice)
    raise UsageError("a memoryless strategy (rand or pure) is required")


def _rats(g: GameGraph, e) -> dict:
    return {g.names[v]: (None if e[v] is None else rat(e[v])) for v in range(g.n)}


def cmd_evaluate_rand(args) -> dict:
    g = _load(args.game)
    rho = _as_rand(_load_strategy(g, args.strategy))
    br = max_best_response(g, rho)
    out = {"values": _rats(g, br.values),
           "tau": {g.names[v]: g.names[u] for v, u in sorted(br.tau.items())},
           "rounds": br.rounds}
    if args.v0 is not None:
        v0 = _vertex(g, args.v0)
        out.update({"v0": g.names[v0], "value": rat(br.values[v0])})
    return out


def cmd_convert(args) -> dict:
    g = _load(args.game)
    rho = _as_rand(_load_strategy(g, args.strategy))
    v0 = _default_v0(g, args.v0)
    br = max_best_response(g, rho)
    sw = convert(g, rho, v0, br.values)
    out = strategy_to_json(g, sw)
    out.update({"v0": g.names[v0], "rand_value_v0": rat(br.values[v0]),
                "det_value_v0": format_value(eval_all(g, sw)[v0])})
    return out


def cmd_check_optimal(args) -> dict:
    g = _load(args.game)
    rep = check_optimal_memoryless(g)
    kept = set(rep.kept)
    out = {"exists": rep.exists, "reason": rep.reason,
           "strategy": strategy_to_json(g, rep.optimal_strategy) if rep.exists else None,
           "iterations": rep.applications,
           "f_prev": {g.names[v]: format_value(rep.f_prev[i]) for i, v in enumerate(rep.kept)},
           "f_last": {g.names[v]: format_value(rep.f_last[i]) for i, v in enumerate(rep.kept)},
           "pruned": [g.names[v] for v in range(g.n) if v not in kept]}
    return out


def _json_float(x: float):
    return None if math.isnan(x) else x


def cmd_simulate(args) -> dict:
    g = _load(args.game)
    rho = _as_rand(_load_strategy(g, args.strategy))
    v0 = _vertex(g, args.v0)
    exact = None
    if check_almost_sure_reach(g, rho):
        br = max_best_response(g, rho)
        tau, exact = br.tau, br.values[v0]
    else:
        tau = initial_tau(g, rho)
    try:
        cfg = SimConfig(args.seed, args.episodes, args.step_cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    mc = build_mc(g, rho, tau)
    if args.step_cap < mc.n:
        raise UsageError("step cap must be at least the number of vertices")
    rep = simulate(mc, v0, cfg)
    return {"v0": g.names[v0], "seed": args.seed, "episodes": rep.episodes,
            "mean_tp": _json_float(rep.mean_tp), "stderr": _json_float(rep.stderr),
            "reach_fraction": rep.reach_fraction, "truncated": rep.truncated,
            "tau": {g.names[v]: g.names[u] for v, u in sorted(tau.items())},
            "exact": None if exact is None else rat(exact)}


def cmd_corpus_check(args) -> dict:
    return corpus_check(args.seed, args.count)


COMMANDS = {
    "validate": cmd_validate,
    "values": cmd_values,
    "synthesize-det": cmd_synthesize_det,
    "synthesize-rand": cmd_synthesize_rand,
    "evaluate-det": cmd_evaluate_det,
    "evaluate-rand": cmd_evaluate_rand,
    "convert": cmd_convert,
    "check-optimal": cmd_check_optimal,
    "simulate": cmd_simulate,
    "corpus-check": cmd_corpus_check,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("json", "text"), default="json")
    p = _Parser(prog="spg", description="Solve and analyse shortest-path games.", parents=[fmt])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help, game=True):
        sp = sub.add_parser(name, help=help, parents=[fmt])
        if game:
            sp.add_argument("game", help="game file (.spg text or .json)")
        return sp

    add("validate", "parse and check a game file")
    add("values", "optimal values of every vertex")
    sp = add("synthesize-det", "switching strategy achieving the values (up to -n)")
    sp.add_argument("--n", type=_nat, default=None)
    sp = add("synthesize-rand", "randomised memoryless epsilon-optimal strategy")
    sp.add_argument("--epsilon", type=_rational_arg, default=Fraction(1, 10))
    sp.add_argument("--n", type=_nat, default=None)
    sp.add_argument("--v0", default=None)
    sp = add("evaluate-det", "value of a pure or switching strategy")
    sp.add_argument("--strategy", required=True)
    sp.add_argument("--v0", default=None)
    sp = add("evaluate-rand", "value of a memoryless strategy against Max's best response")
    sp.add_argument("--strategy", required=True)
    sp.add_argument("--v0", default=None)
    sp = add("convert", "switching strategy no worse than a randomised one")
    sp.add_argument("--from", dest="source", choices=("rand",), default="rand")
    sp.add_argument("--strategy", required=True)
    sp.add_argument("--v0", default=None)
    add("check-optimal", "decide whether Min has an optimal memoryless strategy")
    sp = add("simulate", "Monte-Carlo estimate of a memoryless strategy's payoff")
    sp.add_argument("--strategy", required=True)
    sp.add_argument("--v0", required=True)
    sp.add_argument("--seed", type=_nat, required=True)
    sp.add_argument("--episodes", type=_nat, required=True)
    sp.add_argument("--step-cap", type=_nat, default=10_000)
    sp = add("corpus-check", "run the invariant suite on seeded random games", game=False)
    sp.add_argument("--seed", type=_nat, default=0)
    sp.add_argument("--count", type=_nat, default=200)
    return p


def _text(doc, prefix="") -> list[str]:
    if isinstance(doc, dict):
        if not doc and prefix:
            return [f"{prefix}: {{}}"]
        lines = []
        for k, v in doc.items():
            lines += _text(v, f"{prefix}.{k}" if prefix else str(k))
        return lines
    if isinstance(doc, list):
        return [f"{prefix}: {' '.join(str(x) for x in doc)}"]
    if doc is None:
        return [f"{prefix}: -"]
    if isinstance(doc, bool):
        return [f"{prefix}: {str(doc).lower()}"]
    return [f"{prefix}: {doc}"]


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        doc = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"spg: error: {exc}", file=stderr)
        return 2
    except (DomainError, StrategyError, MarkovError, InfiniteValueError) as exc:
        print(f"spg: {exc}", file=stderr)
        return 1
    if args.format == "text":
        stdout.write("\n".join(_text(doc)) + "\n")
    else:
        json.dump(doc, stdout, indent=2)
        stdout.write("\n")
    if args.command == "corpus-check" and not doc["all_passed"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Seeded random small games and the corpus-wide invariant suite."""
from __future__ import annotations

import random
from collections import OrderedDict
from dataclasses import dataclass, field
from fractions import Fraction

from . import oracles
from .convert import (convert, restricted_game, sigma1_from_rho, support_distances)
from .det import (attractor, eval_all, fake_optimal_nc_strategy, switching_strategy,
                  verify_nc)
from .game import GameGraph, Owner, graph_params, make_game, has_negative_cycle
from .markov import (RandStrategy, build_mc, enumerate_max_oracle, max_best_response,
                     bellman_residual)
from .optimality import check_optimal_memoryless
from .rand import check_almost_sure_reach, synthesize_epsilon_optimal
from .values import (NEG_INF, apply_F, finite_subgame, is_finite, solve_values,
                     value_bound, iterate_F)

EPSILONS = (Fraction(1), Fraction(1, 4), Fraction(1, 16))
MAX_VERTICES = 6
MAX_WEIGHT = 3


def random_game(rng: random.Random, max_vertices: int = MAX_VERTICES,
                max_weight: int = MAX_WEIGHT) -> GameGraph:
    n = rng.randint(2, max_vertices)
    n_targets = 1 if n < 4 else rng.randint(1, 2)
    W = rng.randint(1, max_weight)
    names = [f"v{i}" for i in range(n - n_targets)] + [f"t{i}" for i in range(n_targets)]
    vertices = [(nm, rng.choice((Owner.MIN, Owner.MAX))) for nm in names[:n - n_targets]]
    vertices += [(nm, Owner.TARGET) for nm in names[n - n_targets:]]
    edges = []
    for i in range(n - n_targets):
        k = rng.randint(1, min(3, n))
        for j in rng.sample(range(n), k):
            edges.append((names[i], names[j], rng.randint(-W, W)))
    return make_game(vertices, edges)


def corpus(seed: int, count: int) -> list[GameGraph]:
    return [random_game(random.Random(f"{seed}:{i}")) for i in range(count)]


@dataclass
class PropertyTally:
    checked: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: bool, detail=None):
        self.checked += 1
        if not ok:
            self.failed += 1
            if len(self.failures) < 5:
                self.failures.append(detail)


class Suite:
    """Runs every invariant on a game and tallies the outcomes per property."""

    def __init__(self, epsilons=EPSILONS):
        self.epsilons = tuple(epsilons)
        self.tally: "OrderedDict[str, PropertyTally]" = OrderedDict()
        self.skipped: "OrderedDict[str, int]" = OrderedDict()

    def check(self, name: str, ok: bool, detail=None):
        self.tally.setdefault(name, PropertyTally()).record(bool(ok), detail)

    def skip(self, reason: str):
        self.skipped[reason] = self.skipped.get(reason, 0) + 1

    # -- per-module groups ---------------------------------------------------

    def run_game(self, gi: int, g: GameGraph):
        vals = solve_values(g)
        self.values_properties(gi, g, vals)
        h, old = finite_subgame(g, vals)
        if any(not g.is_target(v) for v in old):
            hvals = solve_values(h)
            self.check("finite_subgame_preserves_values",
                       [hvals[i] for i in range(h.n)] == [vals[v] for v in old], gi)
            self.det_properties(gi, h, hvals)
            self.rand_properties(gi, h, hvals)
        else:
            self.skip("no finite non-target vertex")
        if NEG_INF in vals.values:
            self.skip("optimality: -inf values present")
        else:
            self.optimality_properties(gi, g, vals)

    def values_properties(self, gi, g, vals):
        self.check("values_match_unrolled_oracle", oracles.unrolled_values(g) == list(vals), gi)
        self.check("values_match_positional_max_oracle",
                   oracles.positional_max_values(g) == list(vals), gi)
        fin = [v for v in range(g.n) if is_finite(vals[v])]
        self.check("values_fixpoint", all(apply_F(g, vals)[v] == vals[v] for v in fin), gi)
        b = value_bound(g)
        self.check("values_bound", all(-b <= vals[v] <= b for v in fin), gi)
        seq = iterate_F(g, min(vals.iteration, 60))
        self.check("value_iteration_monotone",
                   all(y <= x for s, t in zip(seq, seq[1:]) for x, y in zip(s, t)), gi)
        exact = graph_params(g, exact=True)
        safe = graph_params(g, exact=False)
        ok = True
        for cyc, wt in oracles.cycles_in(g, g.succ):
            ok &= len(cyc) <= exact.c
            ok &= (wt <= -exact.w_minus) if wt < 0 else (wt <= exact.w_plus)
        self.check("graph_params_exact_bounds", ok, gi)
        self.check("graph_params_safe_dominates",
                   safe.c >= exact.c and safe.w_minus <= exact.w_minus and safe.w_plus >= exact.w_plus, gi)

    def det_properties(self, gi, h, vals):
        sigma1 = fake_optimal_nc_strategy(h, vals)
        nc = verify_nc(h, sigma1)
        self.check("sigma1_is_nc", nc, gi)
        cyc_ok = all(wt < 0 for _, wt in oracles.cycles_in(h, _fixed_succ(h, sigma1.choice)))
        self.check("verify_nc_matches_cycle_enumeration", nc == cyc_ok, gi)
        c = max(1, graph_params(h, exact=True).c)
        allowed = {v: (sigma1[v],) for v in h.vertices(Owner.MIN)}
        fake = oracles.max_conforming_tp(h, allowed, h.n * c)
        self.check("sigma1_fake_optimal", all(fake[v] <= vals[v] for v in range(h.n)), gi)
        sigma2 = attractor(h).strategy
        within = True
        for tau in oracles.max_tau_combos(h):
            for v in range(h.n):
                within &= _steps_to_target(h, sigma2.choice, tau, v) <= h.n
        self.check("attractor_reaches_within_V_steps", within, gi)
        for n in (0, 1, 5):
            sw = switching_strategy(h, vals, n)
            ev = eval_all(h, sw)
            self.check("switching_value_bound", all(ev[v] <= max(-n, vals[v]) for v in range(h.n)), (gi, n))

    def rand_properties(self, gi, h, vals):
        v0s = [v for v in range(h.n) if not h.is_target(v)]
        for v0 in v0s:
            n = max(0, -vals[v0])
            best = None
            for eps in self.epsilons:
                syn = synthesize_epsilon_optimal(h, vals, n, eps, v0)
                rho = syn.rho
                self.check("rho_p_support", _rho_support_ok(h, syn), (gi, v0))
                self.check("rho_reaches_target_almost_surely", check_almost_sure_reach(h, rho), (gi, v0))
                self.check("nonneg_cycles_use_low_edge", _nonneg_cycles_use_low_edge(h, syn), (gi, v0))
                br = max_best_response(h, rho)
                mval = br.values[v0]
                self.check("policy_iteration_monotone", _monotone(br.history), (gi, v0))
                self.check("best_response_matches_enumeration", enumerate_max_oracle(h, rho).values == br.values.values, (gi, v0))
                self.check("bellman_residual_zero",
                           all(r == 0 for r in bellman_residual(build_mc(h, rho, br.tau), br.values)), (gi, v0))
                self.check("mval_within_epsilon_of_dvalue", mval <= vals[v0] + eps, (gi, v0, str(eps)))
                self.check("mval_at_least_dvalue", mval >= vals[v0], (gi, v0, str(eps)))
                self.rand_to_det_properties(gi, h, rho, br.values, v0)
                best = mval if best is None else min(best, mval)
                self.check("value_gap_within_epsilon", abs(vals[v0] - best) <= eps, (gi, v0, str(eps)))
        rho = _random_rho(h, random.Random(f"rho:{gi}"))
        if check_almost_sure_reach(h, rho):
            br = max_best_response(h, rho)
            self.check("best_response_matches_enumeration", enumerate_max_oracle(h, rho).values == br.values.values, gi)
            for v0 in v0s:
                self.rand_to_det_properties(gi, h, rho, br.values, v0)
        else:
            self.skip("random rho without almost-sure reachability")

    def rand_to_det_properties(self, gi, h, rho, mvals, v0):
        rg = restricted_game(h, rho, mvals)
        allowed = rg.min_allowed()
        horizon = h.n * h.n
        tp = oracles.max_conforming_tp(h, allowed, horizon)
        self.check("restricted_plays_below_mval", all(tp[v] <= mvals[v] for v in range(h.n)), (gi, v0))
        arcs = list(rg.arcs())
        pos = has_negative_cycle(range(h.n), [(a, b, -w) for a, b, w in arcs])
        cyc = oracles.cycles_in(h, [allowed.get(v, h.succ[v]) for v in range(h.n)])
        self.check("restricted_cycles_non_positive", not pos and all(wt <= 0 for _, wt in cyc), (gi, v0))
        d = support_distances(h, rho)
        s1 = sigma1_from_rho(rg, d)
        self.check("sigma1_cycles_negative",
                   all(wt < 0 for _, wt in oracles.cycles_in(h, _fixed_succ(h, s1.choice))), (gi, v0))
        sw = convert(h, rho, v0, mvals)
        self.check("conversion_not_worse_than_rho", eval_all(h, sw)[v0] <= mvals[v0], (gi, v0))

    def optimality_properties(self, gi, g, vals):
        rep = check_optimal_memoryless(g)
        self.check("optimality_applications", rep.applications == len(rep.kept), gi)
        if oracles.min_strategy_count(g) > 5000:
            self.skip("optimality brute force too large")
            return
        witness = oracles.brute_force_optimal_memoryless(g, vals)
        self.check("optimality_agrees_with_brute_force", rep.exists == (witness is not None), gi)
        if rep.exists:
            self.check("optimality_extracted_matches_dvalue",
                       list(eval_all(g, rep.optimal_strategy)) == list(vals), gi)

    def summary(self) -> dict:
        props = OrderedDict()
        for name, t in self.tally.items():
            props[name] = {"checked": t.checked, "failed": t.failed, "passed": t.failed == 0}
            if t.failures:
                props[name]["examples"] = [str(f) for f in t.failures]
        return {"properties": props, "skipped": dict(self.skipped),
                "all_passed": all(t.failed == 0 for t in self.tally.values())}


def _fixed_succ(g: GameGraph, choice):
    return [(choice[v],) if g.owners[v] is Owner.MIN else g.succ[v] for v in range(g.n)]


def _steps_to_target(g, choice, tau, v):
    steps = 0
    while not g.is_target(v):
        v = choice[v] if g.owners[v] is Owner.MIN else tau[v]
        steps += 1
        if steps > g.n:
            break
    return steps


def _monotone(history) -> bool:
    return all(all(b >= a for a, b in zip(x.values, y.values)) for x, y in zip(history, history[1:]))


def _rho_support_ok(g, syn) -> bool:
    s1, s2 = syn.switching.sigma1, syn.switching.sigma2
    return all(set(syn.rho.support(v)) <= {s1[v], s2[v]} and s1[v] in syn.rho.support(v)
               for v in g.vertices(Owner.MIN))


def _nonneg_cycles_use_low_edge(g, syn) -> bool:
    """Non-negative support cycles must use a (1-p)-edge, for every positional Max."""
    rho = syn.rho
    low = {(v, u) for v, d in rho.dist.items() for u, p in d if p != 1 and p == 1 - syn.bound.p_min}
    for tau in oracles.max_tau_combos(g):
        succ = [rho.support(v) if g.owners[v] is Owner.MIN else
                ((tau[v],) if g.owners[v] is Owner.MAX else ()) for v in range(g.n)]
        for cyc, wt in oracles.cycles_in(g, succ):
            if wt >= 0:
                edges = {(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))}
                if not edges & low:
                    return False
    return True


def _random_rho(g: GameGraph, rng: random.Random) -> RandStrategy:
    dist = {}
    for v in g.vertices(Owner.MIN):
        k = rng.randint(1, len(g.succ[v]))
        supp = sorted(rng.sample(g.succ[v], k))
        raw = [rng.randint(1, 6) for _ in supp]
        tot = sum(raw)
        dist[v] = tuple((u, Fraction(r, tot)) for u, r in zip(supp, raw))
    return RandStrategy(dist)


def corpus_check(seed: int = 0, count: int = 200, epsilons=EPSILONS, progress=None) -> dict:
    suite = Suite(epsilons)
    games = corpus(seed, count)
    for gi, g in enumerate(games):
        suite.run_game(gi, g)
        if progress:
            progress(gi, g)
    out = {"seed": seed, "count": count}
    out.update(suite.summary())
    return out

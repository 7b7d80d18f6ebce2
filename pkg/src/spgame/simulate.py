"""Seeded Monte-Carlo sampling of Markov chains.

Randomness comes from numpy's PCG64 (raw 64-bit outputs). A step draws a
uniform 512-bit fraction U, consumed one 64-bit word at a time, and picks
the first successor whose cumulative probability exceeds U. The comparison
against the exact rational thresholds is exact: only the leading word is
drawn unless it ties with a threshold word, so probabilities such as
1 - 2**-300 are handled without rounding to 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .markov import MarkovChain

BITS = 512
WORDS = BITS // 64
MASK = (1 << 64) - 1


@dataclass(frozen=True)
class SimConfig:
    seed: int
    episodes: int
    step_cap: int = 10_000

    def __post_init__(self):
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.episodes < 1:
            raise ValueError("episodes must be at least 1")


@dataclass(frozen=True)
class SimReport:
    mean_tp: float
    stderr: float
    reach_fraction: float
    truncated: int
    episodes: int


def _thresholds(mc: MarkovChain):
    """Per vertex: successor ids, weights and 512-bit cumulative thresholds.

    Successor k is chosen when U < ceil(cum_k * 2**512), U in [0, 2**512).
    """
    table = []
    for v in range(mc.n):
        succ, wts, thr = [], [], []
        cum = 0
        for u, p, w in mc.transition[v]:
            cum += p
            succ.append(u)
            wts.append(w)
            thr.append(-((-cum.numerator << BITS) // cum.denominator))  # ceil
        table.append((succ, wts, thr))
    return table


def _words(t: int) -> list[int]:
    """Big-endian 64-bit words of a threshold; 2**512 maps to None (always above U)."""
    if t >= 1 << BITS:
        return None
    return [(t >> (64 * (WORDS - 1 - i))) & MASK for i in range(WORDS)]


def simulate(mc: MarkovChain, v0: int, cfg: SimConfig) -> SimReport:
    if cfg.step_cap < mc.n:
        raise ValueError("step_cap must be at least the number of vertices")
    table = _thresholds(mc)
    n = mc.n
    deg = max((len(s) for s, _, _ in table), default=1) or 1
    # leading threshold words; 2**64 stands for "above every draw"
    lead = np.full((n, deg), np.iinfo(np.uint64).max, dtype=np.uint64)
    always = np.ones((n, deg), dtype=bool)
    succ_arr = np.zeros((n, deg), dtype=np.int64)
    wt_arr = np.zeros((n, deg), dtype=np.int64)
    words = {}
    for v, (succ, wts, thr) in enumerate(table):
        for k, (u, w, t) in enumerate(zip(succ, wts, thr)):
            succ_arr[v, k] = u
            wt_arr[v, k] = w
            ws = _words(t)
            words[(v, k)] = ws
            if ws is not None:
                lead[v, k] = ws[0]
                always[v, k] = False
        for k in range(len(succ), deg):
            succ_arr[v, k] = succ[-1] if succ else v
    absorbing = np.array([mc.is_absorbing(v) for v in range(n)], dtype=bool)

    bitgen = np.random.PCG64(cfg.seed)
    state = np.full(cfg.episodes, v0, dtype=np.int64)
    tp = np.zeros(cfg.episodes, dtype=object if _needs_bigint(mc, cfg) else np.int64)
    alive = ~absorbing[state]
    steps = 0
    while alive.any() and steps < cfg.step_cap:
        idx = np.nonzero(alive)[0]
        cur = state[idx]
        draw = bitgen.random_raw(idx.size).astype(np.uint64)
        thr = lead[cur]
        below = always[cur] | (draw[:, None] < thr)
        tie = (~always[cur]) & (draw[:, None] == thr)
        # first k with U < T_k; a tie before that k needs the lower words
        first_below = np.argmax(below, axis=1)
        first_tie = np.where(tie.any(axis=1), np.argmax(tie, axis=1), deg)
        choice = first_below
        unresolved = np.nonzero(first_tie < first_below)[0]
        for j in unresolved:
            choice[j] = _resolve(bitgen, int(draw[j]), int(cur[j]), table, words)
        nxt = succ_arr[cur, choice]
        tp[idx] = tp[idx] + wt_arr[cur, choice]
        state[idx] = nxt
        alive[idx] = ~absorbing[nxt]
        steps += 1

    reached = ~alive
    truncated = int(alive.sum())
    k = int(reached.sum())
    if k == 0:
        return SimReport(math.nan, math.nan, 0.0, truncated, cfg.episodes)
    vals = np.asarray(tp[reached], dtype=float)
    mean = float(vals.mean())
    stderr = float(vals.std(ddof=1) / math.sqrt(k)) if k > 1 else 0.0
    return SimReport(mean, stderr, k / cfg.episodes, truncated, cfg.episodes)


def _needs_bigint(mc: MarkovChain, cfg: SimConfig) -> bool:
    wmax = max((abs(w) for t in mc.transition for _, _, w in t), default=0)
    return wmax * cfg.step_cap >= 2 ** 62


def _resolve(bitgen, lead_word: int, v: int, table, words) -> int:
    """Exact choice when the leading draw word ties a threshold word."""
    u = [lead_word]
    succ = table[v][0]
    for k in range(len(succ)):
        ws = words[(v, k)]
        if ws is None:
            return k
        i = 0
        while True:
            if i == len(u):
                u.append(int(bitgen.random_raw()))
            if u[i] != ws[i]:
                if u[i] < ws[i]:
                    return k
                break
            i += 1
            if i == WORDS:  # U == T_k, so U is not below it
                break
    return len(succ) - 1

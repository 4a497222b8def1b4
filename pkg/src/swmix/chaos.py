"""Proximality/divergence envelopes and staged approximation witnesses.

The envelope of a point pair records, for every word length up to a horizon,
the smallest and largest distance any admissible composition can put between
the two orbits, together with lexicographically first words attaining each
extreme.  Type 2 applies one word to both points; type 1 lets the two points
ride independent words of equal length.

A finite horizon can only ever produce evidence about the limit behaviour,
so verdicts are explicitly three-valued.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Sequence

from .core import SwitchedSystem, eval_point
from .errors import UndefinedAtPoint
from .intervals import Scalar
from .search import SearchBudget, SearchClock, iter_point_hits
from .words import Word

__all__ = [
    "EnvelopeRow",
    "DistanceEnvelope",
    "ScrambledVerdict",
    "XiongStage",
    "XiongWitness",
    "distance_envelope",
    "verify_envelope",
    "scrambled_verdict",
    "xiong_witness",
    "verify_xiong",
]


@dataclass(frozen=True)
class EnvelopeRow:
    """Extremes at one word length; ``min_words``/``max_words`` hold one word
    for type 2 and an (x-word, y-word) pair for type 1."""

    length: int
    d_min: Scalar
    d_max: Scalar
    min_words: tuple[Word, ...]
    max_words: tuple[Word, ...]


@dataclass(frozen=True)
class DistanceEnvelope:
    kind: str  # "type1" | "type2"
    x: Scalar
    y: Scalar
    horizon: int
    rows: tuple[EnvelopeRow, ...]
    truncated: bool


@dataclass(frozen=True)
class ScrambledVerdict:
    verdict: str  # "supported" | "refuted-at-horizon" | "inconclusive"
    prox_hits: int
    div_hits: int
    best_min: Scalar
    best_max: Scalar
    eps_prox: Scalar
    eps_div: Scalar
    k: int


def _global_slope(system: SwitchedSystem, sym: int) -> Scalar:
    return system.maps[sym].effective_pieces[0].slope


def _orbit_step(system, level: dict, clock: SearchClock) -> dict | None:
    """One synchronous step of a deduplicated orbit level.

    Keys are (state, value...) tuples, values are the lexicographically first
    word reaching the key; iterating in insertion order preserves that
    minimality for the children.  Returns None when the budget runs out.
    """
    aut = system.automaton
    out: dict = {}
    for key, word in level.items():
        state = key[0]
        for sym in range(aut.m):
            nxt = aut.transitions[state][sym]
            if nxt < 0:
                continue
            if not clock.spend():
                return None
            vals = []
            dead = False
            for v in key[1:]:
                try:
                    nv = system.maps[sym].value_at(v)
                except UndefinedAtPoint:
                    dead = True
                    break
                if system.clamp and not system.point_in_kill_box(nv):
                    dead = True
                    break
                vals.append(nv)
            if dead:
                continue
            nk = (nxt, *vals)
            if nk not in out:
                out[nk] = word + (sym,)
    return out


def _diff_step(system, level: dict, clock: SearchClock) -> dict | None:
    # Globally affine maps act on the orbit difference autonomously, so the
    # level collapses to (state, signed difference) keys.
    aut = system.automaton
    out: dict = {}
    for (state, d), word in level.items():
        for sym in range(aut.m):
            nxt = aut.transitions[state][sym]
            if nxt < 0:
                continue
            if not clock.spend():
                return None
            nk = (nxt, _global_slope(system, sym) * d)
            if nk not in out:
                out[nk] = word + (sym,)
    return out


def _extremes(values: list[tuple[Scalar, tuple]]) -> tuple:
    lo = min(v for v, _ in values)
    hi = max(v for v, _ in values)
    wlo = min(w for v, w in values if v == lo)
    whi = min(w for v, w in values if v == hi)
    return lo, hi, wlo, whi


def distance_envelope(
    system: SwitchedSystem,
    x: Scalar,
    y: Scalar,
    kind: str = "type2",
    horizon: int = 10,
    budget: SearchBudget = SearchBudget(),
) -> DistanceEnvelope:
    """Per-length orbit-distance extremes with attaining words.

    Deduplicates orbit states level by level, so globally affine systems cost
    O(horizon) per level in the shared-word case.  On budget exhaustion the
    envelope is returned truncated at the last completed length.
    """
    if kind not in ("type1", "type2"):
        raise ValueError(f"unknown envelope kind {kind!r}")
    if x == y:
        raise ValueError("need two distinct points")
    aut = system.automaton
    clock = SearchClock(budget)
    rows: list[EnvelopeRow] = []
    truncated = False
    diff_ok = (
        kind == "type2"
        and not system.clamp
        and all(pam.is_global for pam in system.maps)
    )
    if kind == "type2":
        level = {(aut.start, y - x): ()} if diff_ok else {(aut.start, x, y): ()}
        for n in range(1, horizon + 1):
            step = _diff_step if diff_ok else _orbit_step
            nxt = step(system, level, clock)
            if nxt is None:
                truncated = True
                break
            if not nxt:
                break
            if diff_ok:
                values = [(abs(d), w) for (_, d), w in nxt.items()]
            else:
                values = [(abs(fy - fx), w) for (_, fx, fy), w in nxt.items()]
            lo, hi, wlo, whi = _extremes(values)
            rows.append(EnvelopeRow(n, lo, hi, (Word(wlo),), (Word(whi),)))
            level = nxt
    else:
        level_x: dict = {(aut.start, x): ()}
        level_y: dict = {(aut.start, y): ()}
        for n in range(1, horizon + 1):
            nx = _orbit_step(system, level_x, clock)
            ny = _orbit_step(system, level_y, clock) if nx is not None else None
            if nx is None or ny is None:
                truncated = True
                break
            if not nx or not ny:
                break
            rows.append(_type1_row(n, nx, ny))
            level_x, level_y = nx, ny
    return DistanceEnvelope(
        kind=kind, x=x, y=y, horizon=horizon, rows=tuple(rows), truncated=truncated
    )


def _type1_row(n: int, level_x: dict, level_y: dict) -> EnvelopeRow:
    """Independent-word extremes via sorted values and nearest-neighbour scan."""

    def collapse(level: dict) -> list[tuple[Scalar, tuple]]:
        best: dict = {}
        for (_, v), w in level.items():
            if v not in best or w < best[v]:
                best[v] = w
        return sorted(best.items())

    xs = collapse(level_x)
    ys = collapse(level_y)
    x_vals = [v for v, _ in xs]
    best_min = None
    for v, wy in ys:
        i = bisect.bisect_left(x_vals, v)
        for j in (i - 1, i):
            if 0 <= j < len(xs):
                xv, wx = xs[j]
                cand = (abs(xv - v), wx, wy)
                if best_min is None or cand < best_min:
                    best_min = cand
    assert best_min is not None
    # |a - b| over independent choices peaks at one of the two extreme combos
    spans = sorted(
        [
            (xs[-1][0] - ys[0][0], xs[-1][1], ys[0][1]),
            (ys[-1][0] - xs[0][0], xs[0][1], ys[-1][1]),
        ],
        key=lambda t: (-t[0], t[1], t[2]),
    )
    d_max, wx_max, wy_max = spans[0]
    return EnvelopeRow(
        n,
        best_min[0],
        d_max,
        (Word(best_min[1]), Word(best_min[2])),
        (Word(wx_max), Word(wy_max)),
    )


def verify_envelope(system: SwitchedSystem, env: DistanceEnvelope) -> bool:
    """Recompute each row's extremes from the stored attaining words."""
    for row in env.rows:
        if env.kind == "type2":
            (wlo,), (whi,) = row.min_words, row.max_words
            lo = abs(eval_point(system, wlo, env.y) - eval_point(system, wlo, env.x))
            hi = abs(eval_point(system, whi, env.y) - eval_point(system, whi, env.x))
        else:
            lo = abs(
                eval_point(system, row.min_words[0], env.x)
                - eval_point(system, row.min_words[1], env.y)
            )
            hi = abs(
                eval_point(system, row.max_words[0], env.x)
                - eval_point(system, row.max_words[1], env.y)
            )
        if lo != row.d_min or hi != row.d_max:
            return False
        if any(len(w) != row.length for w in row.min_words + row.max_words):
            return False
    return True


def scrambled_verdict(
    env: DistanceEnvelope,
    eps_prox: Scalar,
    eps_div: Scalar,
    k: int = 3,
) -> ScrambledVerdict:
    """Three-valued reading of an envelope against proximality/divergence
    thresholds: finite-horizon evidence only, never a proof of the limits."""
    if not env.rows:
        raise ValueError("empty envelope")
    prox = sum(1 for r in env.rows if r.d_min < eps_prox)
    div = sum(1 for r in env.rows if r.d_max > eps_div)
    best_min = min(r.d_min for r in env.rows)
    best_max = max(r.d_max for r in env.rows)
    if prox >= k and div >= k:
        verdict = "supported"
    elif len(env.rows) < k or env.truncated:
        verdict = "inconclusive"
    else:
        verdict = "refuted-at-horizon"
    return ScrambledVerdict(
        verdict=verdict,
        prox_hits=prox,
        div_hits=div,
        best_min=best_min,
        best_max=best_max,
        eps_prox=eps_prox,
        eps_div=eps_div,
        k=k,
    )


@dataclass(frozen=True)
class XiongStage:
    """One rung of a staged approximation: words of a common length driving
    every tracked point to within ``tolerance`` of its target."""

    tolerance: Scalar
    length: int
    words: tuple[Word, ...]  # one shared word, or one word per point
    errors: tuple[Scalar, ...]


@dataclass(frozen=True)
class XiongWitness:
    kind: str  # "type1" | "type2"
    points: tuple[Scalar, ...]
    targets: tuple[Scalar, ...]
    stages: tuple[XiongStage, ...]
    complete: bool

    def stage_lengths(self) -> tuple[int, ...]:
        return tuple(s.length for s in self.stages)


def xiong_witness(
    system: SwitchedSystem,
    points: Sequence[Scalar],
    targets: Sequence[Scalar],
    kind: str = "type2",
    tolerances: Sequence[Scalar] = (),
    budget: SearchBudget = SearchBudget(),
) -> XiongWitness:
    """Drive every point of a finite set toward its target simultaneously.

    Stage i looks for the first length (strictly above the previous stage's)
    at which words exist putting each point within ``tolerances[i]`` of its
    target: type 2 needs one shared word, type 1 an independent word per
    point at that same length.  Returns the completed stages with
    ``complete=False`` when the budget or horizon stops the construction.
    """
    if kind not in ("type1", "type2"):
        raise ValueError(f"unknown witness kind {kind!r}")
    pts = tuple(points)
    tgts = tuple(targets)
    if len(set(pts)) != len(pts):
        raise ValueError("points must be pairwise distinct")
    if len(pts) != len(tgts) or not pts:
        raise ValueError("need one target per point")
    tol = tuple(tolerances)
    if not tol or any(b >= a for a, b in zip(tol, tol[1:])) or tol[-1] <= 0:
        raise ValueError("tolerances must be positive and strictly decreasing")
    clock = SearchClock(budget)
    stages: list[XiongStage] = []
    floor = 0
    for eps in tol:
        found = None
        for n in range(floor + 1, budget.max_horizon + 1):
            if kind == "type2":

                def accept(vals: tuple) -> bool:
                    return all(abs(v - t) < eps for v, t in zip(vals, tgts))

                for syms, vals in iter_point_hits(system, pts, accept, n, clock):
                    found = (
                        n,
                        (Word(syms),),
                        tuple(abs(v - t) for v, t in zip(vals, tgts)),
                    )
                    break
            else:
                per_words: list[Word] = []
                per_errs: list[Scalar] = []
                for x, t in zip(pts, tgts):

                    def accept_one(vals: tuple, t=t) -> bool:
                        return abs(vals[0] - t) < eps

                    got = next(
                        iter_point_hits(system, [x], accept_one, n, clock), None
                    )
                    if got is None:
                        break
                    per_words.append(Word(got[0]))
                    per_errs.append(abs(got[1][0] - t))
                if len(per_words) == len(pts):
                    found = (n, tuple(per_words), tuple(per_errs))
            if found or clock.exceeded:
                break
        if found is None:
            return XiongWitness(kind, pts, tgts, tuple(stages), complete=False)
        n, words, errs = found
        stages.append(XiongStage(eps, n, words, errs))
        floor = n
    return XiongWitness(kind, pts, tgts, tuple(stages), complete=True)


def verify_xiong(system: SwitchedSystem, wit: XiongWitness) -> bool:
    """Replay every stage word and confirm the recorded errors and bounds."""
    lengths = wit.stage_lengths()
    if any(b <= a for a, b in zip(lengths, lengths[1:])):
        return False
    for stage in wit.stages:
        words = stage.words
        if wit.kind == "type2":
            if len(words) != 1:
                return False
            words = words * len(wit.points)
        if len(words) != len(wit.points) or len(stage.errors) != len(wit.points):
            return False
        for w, x, t, claimed in zip(words, wit.points, wit.targets, stage.errors):
            if len(w) != stage.length:
                return False
            try:
                err = abs(eval_point(system, w, x) - t)
            except UndefinedAtPoint:
                return False
            if err > claimed or claimed >= stage.tolerance:
                return False
    return True

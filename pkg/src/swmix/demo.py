"""Built-in demo: the two-map doubling family on the unit interval.

The family {2x, 2-2x} on (0,1) with unconstrained switching is the canonical
smoke test: itinerary words reproduce the classical tent orbit exactly, the
family is rich enough that weak-mixing certificates exist for every order-2
pair quadruple at moderate horizons, and the fixed slope magnitude forces the
shared-word distance envelope to 2^i * d, ruling out type-2 scrambled pairs.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .chaos import distance_envelope, scrambled_verdict
from .core import (
    Numerics,
    PiecewiseAffineMap,
    SwitchedSystem,
    eval_point,
    itinerary_word,
)
from .errors import BudgetExceeded
from .hitting import verify_wm_certificate, wm_certificate
from .intervals import Interval, IntervalSet, Scalar
from .language import FullShift
from .search import SearchBudget

__all__ = [
    "DEFAULT_SEED",
    "tent_system",
    "tent_partition",
    "tent_orbit",
    "random_open_subinterval",
    "tent_demo",
]

DEFAULT_SEED = 0x5EED_1DEA

HALF = Fraction(1, 2)


def tent_system(clamp: bool = False, numerics: Numerics = Numerics()) -> SwitchedSystem:
    return SwitchedSystem(
        maps=(
            PiecewiseAffineMap.globally(Fraction(2), Fraction(0)),
            PiecewiseAffineMap.globally(Fraction(-2), Fraction(2)),
        ),
        language=FullShift(2),
        bounds=Interval(Fraction(0), Fraction(1)),
        clamp=clamp,
        numerics=numerics,
    )


def tent_partition() -> list[tuple[IntervalSet, int]]:
    """Cells (0,1/2) -> 0 and (1/2,1) -> 1; closure matching puts the
    boundary points 0, 1/2, 1 into the first cell that reaches them."""
    return [
        (IntervalSet.of(Fraction(0), HALF), 0),
        (IntervalSet.of(HALF, Fraction(1)), 1),
    ]


def tent_orbit(x: Scalar, steps: int) -> list[Scalar]:
    """Reference orbit of the classical tent map, including the start point."""
    out = [x]
    for _ in range(steps):
        x = 2 * x if x <= HALF else 2 - 2 * x
        out.append(x)
    return out


def _dyadic(rng: random.Random, bits: int = 30) -> Fraction:
    return Fraction(rng.getrandbits(bits), 2 ** bits)


def random_open_subinterval(
    rng: random.Random, min_width: Fraction = Fraction(1, 20)
) -> IntervalSet:
    """Open subinterval of (0,1) with width in [min_width, 5*min_width)."""
    width = min_width + _dyadic(rng) * 4 * min_width
    lo = _dyadic(rng) * (1 - width)
    return IntervalSet.of(lo, lo + width)


def itinerary_check(samples: int, steps: int, seed: int) -> dict:
    """Compare word-driven evaluation against the reference orbit at every
    length up to ``steps`` for dyadic sample points; exact, so any mismatch
    is a bug, not noise."""
    rng = random.Random(seed)
    system = tent_system()
    partition = tent_partition()
    mismatches = 0
    for _ in range(samples):
        x = _dyadic(rng)
        word = itinerary_word(system, partition, x, steps)
        reference = tent_orbit(x, steps)
        for n in range(1, steps + 1):
            if eval_point(system, word.prefix(n), x) != reference[n]:
                mismatches += 1
                break
    return {
        "samples": samples,
        "steps": steps,
        "mismatches": mismatches,
        "ok": mismatches == 0,
    }


def wm_batch(trials: int, horizon: int, seed: int) -> dict:
    """Randomized order-2 certificate searches over K = Q = (0,1)."""
    rng = random.Random(seed)
    system = tent_system(clamp=True)
    box = IntervalSet.of(Fraction(0), Fraction(1))
    budget = SearchBudget(max_horizon=horizon, required=1)
    found = 0
    verified = 0
    failures: list[int] = []
    for trial in range(trials):
        pairs = [
            (random_open_subinterval(rng), random_open_subinterval(rng)),
            (random_open_subinterval(rng), random_open_subinterval(rng)),
        ]
        try:
            cert = wm_certificate(system, box, box, pairs, kind="wm1", budget=budget)
        except BudgetExceeded:
            failures.append(trial)
            continue
        found += 1
        if verify_wm_certificate(system, cert):
            verified += 1
        else:
            failures.append(trial)
    return {
        "trials": trials,
        "horizon": horizon,
        "found": found,
        "verified": verified,
        "failed_trials": failures,
        "ok": verified == trials,
    }


def slope_law_check(pairs: int, horizon: int, seed: int) -> dict:
    """Shared-word envelopes must equal 2^i times the initial distance, which
    keeps the minimum bounded away from zero: no type-2 scrambled pairs."""
    rng = random.Random(seed)
    system = tent_system()
    bad = 0
    refuted = 0
    for _ in range(pairs):
        x = _dyadic(rng)
        y = _dyadic(rng)
        if x == y:
            y = x + Fraction(1, 2 ** 31)
        d0 = abs(y - x)
        env = distance_envelope(system, x, y, kind="type2", horizon=horizon)
        if any(
            row.d_min != d0 * 2 ** row.length or row.d_max != d0 * 2 ** row.length
            for row in env.rows
        ) or len(env.rows) != horizon:
            bad += 1
            continue
        verdict = scrambled_verdict(env, eps_prox=d0, eps_div=2 * d0, k=3)
        if verdict.verdict == "refuted-at-horizon":
            refuted += 1
    return {
        "pairs": pairs,
        "horizon": horizon,
        "slope_law_violations": bad,
        "refuted": refuted,
        "ok": bad == 0 and refuted == pairs,
    }


def tent_demo(
    samples: int = 1000,
    steps: int = 20,
    wm_trials: int = 50,
    wm_horizon: int = 25,
    envelope_pairs: int = 10,
    seed: int = DEFAULT_SEED,
) -> dict:
    itinerary = itinerary_check(samples, steps, seed)
    batch = wm_batch(wm_trials, wm_horizon, seed + 1)
    slope = slope_law_check(envelope_pairs, 20, seed + 2)
    return {
        "seed": seed,
        "itinerary": itinerary,
        "weak_mixing_batch": batch,
        "slope_law": slope,
        "ok": itinerary["ok"] and batch["ok"] and slope["ok"],
    }

"""Independent test oracles: exhaustive enumerations and statistics helpers.

Everything here restates contract behavior from first principles (literal
pair counting, brute-force outcome enumeration) so the implementations under
test are checked against a second, unrelated code path.
"""

from __future__ import annotations

import itertools
import math
import random
from functools import lru_cache

from pqnetsim import Protocol, model, timing
from scenario_builders import chain_scenario, two_party_scenario


def exact_window_success(p: float, window_slots: int) -> float:
    """Enumerate every generation string of bounded length.

    Success means at least one generation within the window; probabilities
    are summed literally over all 2^w outcomes.
    """
    total = 0.0
    for bits in itertools.product((0, 1), repeat=window_slots):
        prob = 1.0
        for bit in bits:
            prob *= p if bit else (1.0 - p)
        if any(bits):
            total += prob
    return total


def exact_coincidence_success(p: float, cutoff_slots: int, horizon: int) -> float:
    """Exact success probability of the two-link coincidence process.

    Restates the slot mechanics directly: at each boundary a pair that has
    survived ``cutoff_slots`` slots resets, regenerating links then attempt
    with probability p, and the swap fires once both pairs coexist.
    """

    @lru_cache(maxsize=None)
    def from_state(slot: int, age_a: int | None, age_b: int | None) -> float:
        if slot > horizon:
            return 0.0
        if age_a is not None and age_a >= cutoff_slots:
            age_a = None
        if age_b is not None and age_b >= cutoff_slots:
            age_b = None
        branches_a = ((1.0, age_a),) if age_a is not None else ((p, 0), (1.0 - p, None))
        branches_b = ((1.0, age_b),) if age_b is not None else ((p, 0), (1.0 - p, None))
        total = 0.0
        for weight_a, a in branches_a:
            for weight_b, b in branches_b:
                weight = weight_a * weight_b
                if weight == 0.0:
                    continue
                if a is not None and b is not None:
                    total += weight
                else:
                    total += weight * from_state(
                        slot + 1,
                        a + 1 if a is not None else None,
                        b + 1 if b is not None else None,
                    )
        return total

    return from_state(1, None, None)


def three_sigma(p_true: float, n: int) -> float:
    """Three binomial standard errors around a true proportion."""
    return 3.0 * math.sqrt(max(p_true * (1.0 - p_true), 1e-12) / n)


def random_deterministic_scenario(rng: random.Random) -> model.ScenarioConfig:
    """Random p = 1 scenario across all protocols, mixed feasibility.

    A quarter of the draws pin the receiver's coherence time exactly at the
    total message delay, exercising the strict boundary.
    """
    protocol = rng.choice(list(Protocol))
    delay = lambda: rng.uniform(0.0002, 0.002)
    t_coh_end = rng.uniform(0.0005, 0.012)
    if protocol is Protocol.PARALLEL_CHAIN:
        config = chain_scenario(
            [(delay(), delay()) for _ in range(rng.randint(1, 3))],
            dec_end=delay(),
            t_coh_end=t_coh_end,
            t_coh_far=rng.uniform(0.001, 1.0),
            t_coh_repeater=rng.uniform(0.001, 1.0),
            p_success=1.0,
        )
    else:
        config = two_party_scenario(
            protocol=protocol,
            enc=delay(),
            comm=delay(),
            dec=delay(),
            t_coh_end=t_coh_end,
            t_coh_far=rng.uniform(0.001, 1.0),
            rounds_l=rng.randint(1, 4),
            p_success=1.0,
        )
    if rng.random() < 0.25:
        timings = timing.scenario_timings(config)
        if protocol is Protocol.SINGLE_HOP:
            boundary = timing.hop_total(timings.hops[0])
        elif protocol is Protocol.PARALLEL_CHAIN:
            boundary = max(timing.parallel_totals(list(timings.hops), timings.t_decrypt_end))
        else:
            boundary = timing.sequential_total(timings.hops)
        receiver = model.resolve_path(config)[-1]
        index = [n.id for n in config.nodes].index(receiver)
        config = model.set_config_value(config, f"nodes.{index}.memory.t_coh", boundary)
    return config

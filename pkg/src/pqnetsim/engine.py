"""Slotted Monte Carlo engine for entanglement distribution with PQC feedforward.

Time advances in fixed slots of ``slot_duration`` seconds.  In every slot
each quantum link that is not currently holding a pair attempts generation
and succeeds with probability ``p_success`` (so the effective pair rate is
``p_success / slot_duration``).  A fresh pair stores one qubit at each
endpoint, stamped with its birth slot; qubit ages are always evaluated at
slot boundaries as ``(slot - birth_slot) * slot_duration``.

Memory policy is a hard cutoff: a stored qubit becomes unusable the moment
its age reaches the storing node's coherence time (strict survival,
``age < t_coh``, matching the strict feasibility inequalities).  An expired
pair that no measurement has touched yet simply resets its link to the
regenerating state; once one side has been consumed by a Bell-state
measurement, expiry of the remaining qubit aborts the trial
(``memory_expired``).  Storage at the non-designated end node never aborts a
trial; its decoherence shows up only in the delivered fidelity.

A repeater performs its Bell-state measurement (taken as instantaneous) in
the first slot where both adjacent pairs are present and unexpired, then
sends one correction message to the designated end node (the last node of
the path, see :func:`pqnetsim.model.resolve_path`).  Each message costs the
sender's ``t_encrypt``, the pair's classical-channel delay, and the end
node's ``t_decrypt``; message delays reuse the exact arithmetic of
:mod:`pqnetsim.timing`, so for deterministic scenarios (``p_success = 1``)
trial success agrees bit-for-bit with the static feasibility checks.  The
trial succeeds when every correction message is decrypted while the end
node's stored qubit is still within its coherence window; arrivals at or
past the window edge fail the trial (``message_late``).

``t_dist`` runs from the first entanglement attempt (time zero) to the last
message decryption.  Delivered fidelity applies exponential memory decay
for every qubit's individual storage wait and composes links with the
Werner swap formula.  Trials that never complete within ``max_slots`` slots
(default one million) end as ``horizon_exceeded``.

Per-trial randomness comes from ``random.Random(trial_seed)`` where
``trial_seed`` is derived from the master seed by a fixed, documented hash
split (:func:`trial_seed_for`): the first eight bytes, little-endian, of
``SHA-256(master_seed_le64 || trial_index_le64)``.  Only regenerating links
draw, one uniform variate per link per slot, in path order.  Every trial is
therefore an isolated state machine, bit-reproducible in isolation.
"""

from __future__ import annotations

import hashlib
import random
import statistics
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from . import fidelity, model, timing
from .adversary import intercepted_fidelity
from .errors import ParameterError, ScenarioValidationError

__all__ = [
    "DEFAULT_MAX_SLOTS",
    "FailureReason",
    "TrialOutcome",
    "RunSummary",
    "trial_seed_for",
    "derive_stream_seed",
    "run_trial",
    "run_trials",
    "run_monte_carlo",
    "summarize",
    "sweep",
]

# Bounds runtime when generation probabilities are near zero.
DEFAULT_MAX_SLOTS = 1_000_000

_U64 = 2**64


class FailureReason(Enum):
    MEMORY_EXPIRED = "memory_expired"
    MESSAGE_LATE = "message_late"
    HORIZON_EXCEEDED = "horizon_exceeded"


@dataclass(frozen=True)
class TrialOutcome:
    """Result of one simulated trial.

    ``t_dist`` is present whenever the protocol ran to completion (all
    messages decrypted), even if they arrived too late; ``f_end`` is present
    only for successes.  ``slots_used`` is the last slot index processed
    before the outcome was decided.
    """

    success: bool
    slots_used: int
    t_dist: float | None = None
    f_end: float | None = None
    failure_reason: FailureReason | None = None

    def __post_init__(self):
        assert self.success == (self.failure_reason is None)
        assert not self.success or (self.t_dist is not None and self.f_end is not None)


@dataclass(frozen=True)
class RunSummary:
    """Aggregate statistics over one Monte Carlo run.

    ``re_tcoh_product`` reports, per link, the effective pair rate
    (``p_success / slot_duration``) times the smaller coherence time of the
    two storing nodes.  It is a synchronization diagnostic only, never a
    pass/fail gate.
    """

    n_trials: int
    success_rate: float
    mean_t_dist: float | None
    f_end_mean: float | None
    f_end_min: float | None
    re_tcoh_product: dict[str, float]

    def as_dict(self) -> dict:
        return {
            "n_trials": self.n_trials,
            "success_rate": self.success_rate,
            "mean_t_dist": self.mean_t_dist,
            "f_end_mean": self.f_end_mean,
            "f_end_min": self.f_end_min,
            "re_tcoh_product": dict(self.re_tcoh_product),
        }


def _check_seed(value: int, name: str) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or not (0 <= value < _U64):
        raise ParameterError(f"{name} must be an unsigned 64-bit integer, got {value!r}")


def trial_seed_for(master_seed: int, trial_index: int) -> int:
    """Derive the seed of one trial from the run's master seed.

    The split is the first eight bytes, interpreted little-endian, of
    ``SHA-256(master_seed || trial_index)`` with both inputs encoded as
    little-endian unsigned 64-bit integers.  Fixed forever; changing it
    would silently change every published result.
    """
    _check_seed(master_seed, "master_seed")
    if not isinstance(trial_index, int) or isinstance(trial_index, bool) or not (0 <= trial_index < _U64):
        raise ParameterError(f"trial_index must be an unsigned 64-bit integer, got {trial_index!r}")
    payload = master_seed.to_bytes(8, "little") + trial_index.to_bytes(8, "little")
    return int.from_bytes(hashlib.sha256(payload).digest()[:8], "little")


def derive_stream_seed(master_seed: int, label: str) -> int:
    """Derive an independent named seed stream (e.g. baseline vs observed)."""
    _check_seed(master_seed, "master_seed")
    payload = master_seed.to_bytes(8, "little") + label.encode("utf-8")
    return int.from_bytes(hashlib.sha256(payload).digest()[:8], "little")


# ---------------------------------------------------------------------------
# Single trial
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _PreparedTwoParty:
    """Single-hop or sequential run, reduced to its constants.

    With one link the only randomness is the generation slot; the message
    phase and the delivered fidelity are fixed by the configuration.
    """

    p: float
    tau: float
    total_delay: float
    t_coh_end: float
    f_end: float


@dataclass(frozen=True)
class _PreparedChain:
    """Per-link constants of a repeater chain, extracted once per run."""

    tau: float
    p: tuple[float, ...]
    lo_tcoh: tuple[float, ...]
    hi_tcoh: tuple[float, ...]
    intact_limit: tuple[float, ...]
    delays: tuple[float, ...]
    t_coh_end: float
    base_fids: tuple[float, ...]


def _adjusted_base_fidelity(config: model.ScenarioConfig, link: model.QuantumLinkSpec) -> float:
    """Base fidelity after any adversarial interception of this link.

    Every pair on the intercepted link ages in the adversary's memory for
    the full adversarial delay before being relayed onward.
    """
    adv = config.adversary
    if adv is not None and adv.intercept_link == link.key:
        return intercepted_fidelity(link.base_fidelity, adv)
    return link.base_fidelity


def _prepare(config: model.ScenarioConfig) -> _PreparedTwoParty | _PreparedChain:
    path = model.resolve_path(config)
    timings = timing.scenario_timings(config)
    if config.protocol is model.Protocol.PARALLEL_CHAIN:
        links = [model.link_between(config, path[j], path[j + 1]) for j in range(len(path) - 1)]
        t_coh = {n.id: n.memory.t_coh for n in config.nodes}
        lo_tcoh = tuple(t_coh[path[j]] for j in range(len(links)))
        hi_tcoh = tuple(t_coh[path[j + 1]] for j in range(len(links)))
        return _PreparedChain(
            tau=config.slot_duration,
            p=tuple(link.p_success for link in links),
            lo_tcoh=lo_tcoh,
            hi_tcoh=hi_tcoh,
            intact_limit=tuple(min(lo, hi) for lo, hi in zip(lo_tcoh, hi_tcoh)),
            # Per-repeater message delays, identical arithmetic to the check.
            delays=tuple(timing.parallel_totals(list(timings.hops), timings.t_decrypt_end)),
            t_coh_end=timings.t_coh_end,
            base_fids=tuple(_adjusted_base_fidelity(config, link) for link in links),
        )

    # Single hop or sequential rounds: the sender measures its qubit the
    # moment the pair exists, so the receiver's window starts at generation
    # and covers the full (single or accumulated) message delay.
    link = config.quantum_links[0]
    if config.protocol is model.Protocol.SINGLE_HOP:
        total_delay = timing.hop_total(timings.hops[0])
    else:
        total_delay = timing.sequential_total(timings.hops)
    f = _adjusted_base_fidelity(config, link)
    if config.protocol is model.Protocol.SEQUENTIAL_ROUNDS:
        # Both parties keep their qubit through all rounds.
        f = fidelity.decay(f, total_delay, config.node(path[0]).memory.t_coh)
    f_end = fidelity.decay(f, total_delay, timings.t_coh_end)
    return _PreparedTwoParty(
        p=link.p_success,
        tau=config.slot_duration,
        total_delay=total_delay,
        t_coh_end=timings.t_coh_end,
        f_end=f_end,
    )


def run_trial(
    config: model.ScenarioConfig, trial_seed: int, max_slots: int = DEFAULT_MAX_SLOTS
) -> TrialOutcome:
    """Simulate one trial; deterministic given ``(config, trial_seed)``.

    Assumes ``validate_scenario(config)`` is empty; use :func:`run_trials`
    for a validating entry point.
    """
    return _execute(_prepare(config), trial_seed, max_slots)


def _execute(
    prepared: _PreparedTwoParty | _PreparedChain, trial_seed: int, max_slots: int
) -> TrialOutcome:
    _check_seed(trial_seed, "trial_seed")
    if max_slots < 1:
        raise ParameterError(f"max_slots must be >= 1, got {max_slots!r}")
    rng = random.Random(trial_seed)
    if isinstance(prepared, _PreparedChain):
        return _run_parallel_chain(prepared, rng, max_slots)
    return _run_two_party(prepared, rng, max_slots)


def _run_two_party(run: _PreparedTwoParty, rng: random.Random, max_slots: int) -> TrialOutcome:
    p = run.p
    rand = rng.random
    gen_slot = 0
    for slot in range(1, max_slots + 1):
        if rand() < p:
            gen_slot = slot
            break
    if gen_slot == 0:
        return TrialOutcome(False, max_slots, failure_reason=FailureReason.HORIZON_EXCEEDED)
    t_dist = gen_slot * run.tau + run.total_delay
    if not (run.total_delay < run.t_coh_end):
        return TrialOutcome(False, gen_slot, t_dist=t_dist, failure_reason=FailureReason.MESSAGE_LATE)
    return TrialOutcome(True, gen_slot, t_dist=t_dist, f_end=run.f_end)


def _run_parallel_chain(run: _PreparedChain, rng: random.Random, max_slots: int) -> TrialOutcome:
    tau = run.tau
    p = run.p
    lo_tcoh = run.lo_tcoh
    hi_tcoh = run.hi_tcoh
    intact_limit = run.intact_limit
    delays = run.delays
    t_coh_end = run.t_coh_end
    n_links = len(p)
    n_reps = n_links - 1
    assert n_reps >= 1

    up = [False] * n_links
    gen_slot = [0] * n_links
    bsm_done = [False] * n_reps
    bsm_slot = [0] * n_reps
    pending = n_reps

    rand = rng.random
    slot = 0
    failure: FailureReason | None = None
    while slot < max_slots:
        slot += 1
        # Expiry sweep at the slot boundary, before new attempts.  Links with
        # both sides already measured carry no storage and are skipped.
        for j in range(n_links):
            if not up[j]:
                continue
            lo_used = j >= 1 and bsm_done[j - 1]
            hi_used = j < n_reps and bsm_done[j]
            if lo_used and hi_used:
                continue
            age = (slot - gen_slot[j]) * tau
            if not lo_used and not hi_used:
                if age >= intact_limit[j]:
                    up[j] = False
            elif lo_used:
                if age >= hi_tcoh[j]:
                    failure = FailureReason.MEMORY_EXPIRED
                    break
            else:
                # Remaining qubit sits at the lo-side node; for the first
                # link that is the non-designated end node, whose storage
                # never aborts the protocol.
                if j > 0 and age >= lo_tcoh[j]:
                    failure = FailureReason.MEMORY_EXPIRED
                    break
        if failure is not None:
            return TrialOutcome(False, slot, failure_reason=failure)

        for j in range(n_links):
            if not up[j] and rand() < p[j]:
                up[j] = True
                gen_slot[j] = slot

        # The sweep above guarantees every live pair is fresh at this slot,
        # so a repeater fires as soon as both adjacent pairs are present.
        for i in range(n_reps):
            if not bsm_done[i] and up[i] and up[i + 1]:
                bsm_done[i] = True
                bsm_slot[i] = slot
                pending -= 1
        if pending == 0:
            break
    else:
        return TrialOutcome(False, max_slots, failure_reason=FailureReason.HORIZON_EXCEEDED)

    # All corrections are in flight; the rest is arithmetic.
    store_slot = gen_slot[n_links - 1]
    lateness = [
        (bsm_slot[i] - store_slot) * tau + delays[i] for i in range(n_reps)
    ]
    worst = max(lateness)
    t_dist = store_slot * tau + worst
    if not (worst < t_coh_end):
        return TrialOutcome(False, slot, t_dist=t_dist, failure_reason=FailureReason.MESSAGE_LATE)

    link_fids = []
    for j in range(n_links):
        f = run.base_fids[j]
        if j == 0:
            wait_lo = max(0.0, t_dist - gen_slot[j] * tau)
        else:
            wait_lo = (bsm_slot[j - 1] - gen_slot[j]) * tau
        if j == n_links - 1:
            wait_hi = max(0.0, t_dist - gen_slot[j] * tau)
        else:
            wait_hi = (bsm_slot[j] - gen_slot[j]) * tau
        f = fidelity.decay(f, wait_lo, lo_tcoh[j])
        f = fidelity.decay(f, wait_hi, hi_tcoh[j])
        link_fids.append(f)
    f_end = fidelity.chain_fidelity(link_fids)
    return TrialOutcome(True, slot, t_dist=t_dist, f_end=f_end)


# ---------------------------------------------------------------------------
# Monte Carlo runs
# ---------------------------------------------------------------------------

def run_trials(
    config: model.ScenarioConfig,
    n_trials: int | None = None,
    master_seed: int | None = None,
    max_slots: int = DEFAULT_MAX_SLOTS,
) -> list[TrialOutcome]:
    """Run independent trials with per-trial seeds split from the master seed.

    ``n_trials`` and ``master_seed`` default to the scenario's own fields.
    The scenario is validated once up front.
    """
    violations = model.validate_scenario(config)
    if violations:
        raise ScenarioValidationError(violations)
    n = config.n_trials if n_trials is None else n_trials
    seed = config.seed if master_seed is None else master_seed
    if n < 1:
        raise ParameterError(f"n_trials must be >= 1, got {n!r}")
    _check_seed(seed, "master_seed")
    prepared = _prepare(config)
    return [_execute(prepared, trial_seed_for(seed, i), max_slots) for i in range(n)]


def summarize(config: model.ScenarioConfig, outcomes: Sequence[TrialOutcome]) -> RunSummary:
    """Aggregate trial outcomes; order-independent for the reported statistics."""
    if not outcomes:
        raise ParameterError("summarize requires at least one outcome")
    successes = [o for o in outcomes if o.success]
    t_coh = {n.id: n.memory.t_coh for n in config.nodes}
    products = {
        link.key: (link.p_success / config.slot_duration)
        * min(t_coh[link.endpoints[0]], t_coh[link.endpoints[1]])
        for link in config.quantum_links
    }
    return RunSummary(
        n_trials=len(outcomes),
        success_rate=len(successes) / len(outcomes),
        mean_t_dist=statistics.fmean(o.t_dist for o in successes) if successes else None,
        f_end_mean=statistics.fmean(o.f_end for o in successes) if successes else None,
        f_end_min=min(o.f_end for o in successes) if successes else None,
        re_tcoh_product=products,
    )


def run_monte_carlo(
    config: model.ScenarioConfig,
    n_trials: int | None = None,
    master_seed: int | None = None,
    max_slots: int = DEFAULT_MAX_SLOTS,
) -> RunSummary:
    """Validated Monte Carlo run; bit-identical across calls with equal inputs."""
    return summarize(config, run_trials(config, n_trials, master_seed, max_slots=max_slots))


def sweep(
    config: model.ScenarioConfig,
    parameter_path: str,
    values: Sequence[float],
    n_trials: int | None = None,
    master_seed: int | None = None,
    max_slots: int = DEFAULT_MAX_SLOTS,
) -> list[tuple[float, RunSummary]]:
    """One independent Monte Carlo per parameter value, in the given order.

    Every row uses the same master seed, so each is reproducible standalone
    as ``run_monte_carlo(set_config_value(config, path, value), ...)``.

    Raises:
        ParameterError: when the path does not address a numeric field, or
            when a substituted value produces an invalid scenario.
    """
    rows: list[tuple[float, RunSummary]] = []
    for value in values:
        modified = model.set_config_value(config, parameter_path, value)
        rows.append((value, run_monte_carlo(modified, n_trials, master_seed, max_slots=max_slots)))
    return rows

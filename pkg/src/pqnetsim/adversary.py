"""Hybrid man-in-the-middle model: attack bound, fidelity impact, detection.

The adversary intercepts flying qubits into its own memory and tampers with
the PQC-protected classical traffic.  Its total delay is
``delta_t = t_eve + t_pqc``; the attack completes without forced detection
only when ``delta_t < t_coh_eve`` (strict).  Whether or not that bound
holds, the held pair ages in the adversary's memory for the full delta_t, so
a sufficiently sensitive statistical detector can still see the residual
fidelity dip.

Fidelity maps to the per-basis quantum bit error rate of a Werner state via
``qber = 2 * (1 - F) / 3``, and the detector is a one-sided z-test on mean
QBER against a clean baseline.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from . import fidelity
from .errors import ParameterError
from .model import AdversaryConfig

__all__ = [
    "AdversaryConfig",
    "AttackOutcome",
    "DetectionReport",
    "attack_outcome",
    "intercepted_fidelity",
    "qber_of",
    "detect",
]


class AttackOutcome(Enum):
    UNDETECTABLE_SUCCESS = "undetectable_success"
    DECOHERES = "decoheres"


@dataclass(frozen=True)
class DetectionReport:
    """Result of comparing observed QBER samples against a baseline.

    ``flagged`` holds exactly when ``z_score > threshold_sigma``; with a
    zero-variance baseline the z-score degenerates to +inf (observed mean
    above baseline) or 0 (otherwise).
    """

    baseline_mean_qber: float
    observed_mean_qber: float
    z_score: float
    flagged: bool
    threshold_sigma: float

    def as_dict(self) -> dict:
        return {
            "baseline_mean_qber": self.baseline_mean_qber,
            "observed_mean_qber": self.observed_mean_qber,
            "z_score": self.z_score,
            "flagged": self.flagged,
            "threshold_sigma": self.threshold_sigma,
        }


def _check_adversary(adv: AdversaryConfig) -> None:
    for name in ("t_eve", "t_pqc"):
        value = getattr(adv, name)
        if not math.isfinite(value) or value < 0:
            raise ParameterError(f"adversary {name} must be finite and >= 0, got {value!r}")
    if not math.isfinite(adv.t_coh_eve) or adv.t_coh_eve <= 0:
        raise ParameterError(f"adversary t_coh_eve must be finite and > 0, got {adv.t_coh_eve!r}")


def attack_outcome(adv: AdversaryConfig) -> AttackOutcome:
    """Does the adversary finish interception and manipulation in time?

    Strict bound: when the total delay exactly equals the adversary's
    coherence time the held state decoheres.
    """
    _check_adversary(adv)
    if adv.delta_t < adv.t_coh_eve:
        return AttackOutcome.UNDETECTABLE_SUCCESS
    return AttackOutcome.DECOHERES


def intercepted_fidelity(f_in: float, adv: AdversaryConfig) -> float:
    """Fidelity of a pair after sitting in the adversary's memory for delta_t."""
    _check_adversary(adv)
    return fidelity.decay(f_in, adv.delta_t, adv.t_coh_eve)


def qber_of(f: float) -> float:
    """Per-basis quantum bit error rate of a Werner state with fidelity ``f``.

    Strictly decreasing, mapping [0.25, 1] onto [0, 0.5].
    """
    if not isinstance(f, (int, float)) or isinstance(f, bool):
        raise ParameterError(f"fidelity must be a number, got {f!r}")
    if not math.isfinite(f) or not (fidelity.FIDELITY_FLOOR <= f <= 1.0):
        raise ParameterError(f"fidelity must be in [0.25, 1], got {f!r}")
    return (2.0 * (1.0 - f)) / 3.0


def detect(
    baseline_samples: Sequence[float],
    observed_samples: Sequence[float],
    threshold_sigma: float,
) -> DetectionReport:
    """One-sided z-test of observed mean QBER against a baseline.

    The statistic is the observed-minus-baseline mean shift in units of the
    baseline standard deviation scaled by sqrt(observed count):
    ``z = (mean(observed) - mean(baseline)) / (sd(baseline) / sqrt(n_obs))``.
    A zero-variance baseline flags exactly when the observed mean exceeds
    the baseline mean.

    Args:
        baseline_samples: QBER samples from attack-free operation (>= 2).
        observed_samples: QBER samples from the run under test (>= 2).
        threshold_sigma: flagging threshold, > 0.

    Raises:
        ParameterError: on short sample lists, non-finite samples, or a
            non-positive threshold.
    """
    if len(baseline_samples) < 2 or len(observed_samples) < 2:
        raise ParameterError("detect requires at least 2 samples on each side")
    if not math.isfinite(threshold_sigma) or threshold_sigma <= 0:
        raise ParameterError(f"threshold_sigma must be finite and > 0, got {threshold_sigma!r}")
    for name, samples in (("baseline", baseline_samples), ("observed", observed_samples)):
        for value in samples:
            if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
                raise ParameterError(f"{name} samples must be finite numbers, got {value!r}")

    baseline_mean = statistics.fmean(baseline_samples)
    observed_mean = statistics.fmean(observed_samples)
    baseline_sd = statistics.stdev(baseline_samples)
    if baseline_sd == 0.0:
        z_score = math.inf if observed_mean > baseline_mean else 0.0
    else:
        z_score = (observed_mean - baseline_mean) / (baseline_sd / math.sqrt(len(observed_samples)))
    return DetectionReport(
        baseline_mean_qber=baseline_mean,
        observed_mean_qber=observed_mean,
        z_score=z_score,
        flagged=z_score > threshold_sigma,
        threshold_sigma=threshold_sigma,
    )

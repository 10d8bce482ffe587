"""Key-management scaling analytics: handshake counts and re-key cycle time.

A network-wide re-key in a fully meshed topology needs one handshake per
unordered node pair, O(N^2).  A one-level hierarchy (members talk to their
cluster head, heads form a full mesh among themselves) brings the count down
to near-linear growth for fixed cluster size.  Cycle time assumes uniform
handshake duration and greedy batching of independent handshakes across a
fixed number of parallel lanes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError

__all__ = [
    "KmsConfig",
    "full_mesh_handshakes",
    "hierarchical_handshakes",
    "rekey_cycle_time",
]


@dataclass(frozen=True)
class KmsConfig:
    """Inputs of one re-key cycle estimate.

    ``per_handshake_time`` includes the KEM latency; ``t_auth`` is the
    per-handshake authentication overhead.  ``cluster_size`` only applies in
    hierarchical mode and must not exceed ``n_nodes``.
    """

    n_nodes: int
    per_handshake_time: float
    t_auth: float
    parallelism: int
    cluster_size: int | None = None


def _check_int(value, name: str, minimum: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise ParameterError(f"{name} must be an integer >= {minimum}, got {value!r}")


def full_mesh_handshakes(n: int) -> int:
    """Handshakes per re-key cycle with every node pair exchanging keys.

    One handshake establishes both directions of a pair, so the count is
    n * (n - 1) / 2.
    """
    _check_int(n, "n", 2)
    return n * (n - 1) // 2


def hierarchical_handshakes(n: int, cluster_size: int) -> int:
    """Handshakes per re-key cycle with a one-level cluster hierarchy.

    ``ceil(n / cluster_size)`` nodes act as cluster heads; every remaining
    node handshakes with its head, and the heads form a full mesh among
    themselves.  With a single cluster this degenerates to a star (n - 1).
    """
    _check_int(n, "n", 2)
    _check_int(cluster_size, "cluster_size", 2)
    if cluster_size > n:
        raise ParameterError(f"cluster_size must be <= n, got {cluster_size} > {n}")
    heads = math.ceil(n / cluster_size)
    member_handshakes = n - heads
    head_mesh = heads * (heads - 1) // 2
    return member_handshakes + head_mesh


def rekey_cycle_time(
    handshakes: int, per_handshake_time: float, t_auth: float, parallelism: int
) -> float:
    """Wall-clock duration of one re-key cycle.

    Independent handshakes of uniform duration are batched greedily across
    ``parallelism`` lanes: ``ceil(handshakes / parallelism)`` batches, each
    taking ``per_handshake_time + t_auth`` seconds.
    """
    _check_int(handshakes, "handshakes", 0)
    _check_int(parallelism, "parallelism", 1)
    if not math.isfinite(per_handshake_time) or per_handshake_time < 0:
        raise ParameterError(f"per_handshake_time must be finite and >= 0, got {per_handshake_time!r}")
    if not math.isfinite(t_auth) or t_auth < 0:
        raise ParameterError(f"t_auth must be finite and >= 0, got {t_auth!r}")
    batches = -(-handshakes // parallelism)
    return batches * (per_handshake_time + t_auth)

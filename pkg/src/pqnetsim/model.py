"""Domain model for quantum-network scenarios with PQC-protected signaling.

This module holds every type shared across the package: node, link and
channel specifications, the crypto-profile registry, the full scenario
description, and the validation machinery that turns a JSON document into a
checked :class:`ScenarioConfig`.

Scenario files are strict JSON: keys are lower_snake_case and must match the
dataclass field names exactly, durations are numbers in seconds, and unknown
keys are reported as validation violations rather than silently ignored.
Unordered node pairs (classical-channel keys and the adversary's
``intercept_link``) are encoded as the two node ids joined by a comma, e.g.
``"alice,relay"``; key order does not matter and is normalized on load.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Mapping

from .errors import ParameterError, ProfileNotFoundError, ScenarioValidationError, Violation

__all__ = [
    "CryptoKind",
    "CryptoProfile",
    "CryptoRegistry",
    "default_registry",
    "load_registry",
    "MemoryTier",
    "MemorySpec",
    "NodeRole",
    "NodeSpec",
    "ClassicalChannelSpec",
    "QuantumLinkSpec",
    "AdversaryConfig",
    "Protocol",
    "ScenarioConfig",
    "SecurityFamily",
    "effective_security",
    "pair_key",
    "split_pair_key",
    "parse_scenario",
    "load_scenario",
    "validate_scenario",
    "resolve_path",
    "set_config_value",
]


class CryptoKind(Enum):
    KEM = "kem"
    SIGNATURE = "signature"


class MemoryTier(Enum):
    SHORT_LIVED = "short_lived"
    LONG_LIVED = "long_lived"


class NodeRole(Enum):
    END_NODE = "end_node"
    REPEATER = "repeater"
    CORE = "core"
    EDGE = "edge"


class Protocol(Enum):
    SINGLE_HOP = "single_hop"
    PARALLEL_CHAIN = "parallel_chain"
    SEQUENTIAL_ROUNDS = "sequential_rounds"


class SecurityFamily(Enum):
    SYMMETRIC = "symmetric"
    FACTORING_OR_DLOG_BASED = "factoring_or_dlog_based"
    PQC = "pqc"


@dataclass(frozen=True)
class CryptoProfile:
    """Latency/size profile of a PQC algorithm class.

    Only the externally observable costs are modeled: how long it takes a
    node to protect (encrypt or sign) and to verify/decrypt a message, and
    how large the transmitted material is.  No actual cryptography happens
    anywhere in this package.

    Attributes:
        name: registry identifier, unique within a registry.
        kind: ``kem`` or ``signature``.
        t_encrypt: seconds to encrypt/authenticate one message.
        t_decrypt: seconds to decrypt/verify one message.
        public_key_bytes: size of the public key material.
        ciphertext_or_sig_bytes: size of a ciphertext or signature.
        claimed_security_bits: security level claimed by the scheme.
        illustrative: True for the shipped defaults, whose latencies are
            placeholders to be replaced by user-measured numbers.
    """

    name: str
    kind: CryptoKind
    t_encrypt: float
    t_decrypt: float
    public_key_bytes: int
    ciphertext_or_sig_bytes: int
    claimed_security_bits: int
    illustrative: bool = False


@dataclass(frozen=True)
class MemorySpec:
    """Quantum-memory parameters of one node: coherence time and tier."""

    t_coh: float
    tier: MemoryTier


@dataclass(frozen=True)
class NodeSpec:
    """One network node: identity, role, memory, and its crypto profile."""

    id: str
    role: NodeRole
    memory: MemorySpec
    crypto: CryptoProfile


@dataclass(frozen=True)
class ClassicalChannelSpec:
    """Classical channel delays between one node pair."""

    propagation_delay: float
    processing_delay: float

    @property
    def t_comm(self) -> float:
        """Effective one-way communication delay (propagation + processing)."""
        return self.propagation_delay + self.processing_delay


@dataclass(frozen=True)
class QuantumLinkSpec:
    """Elementary entanglement link between two adjacent nodes.

    ``p_success`` is the per-slot generation probability used by the engine;
    ``gen_rate`` records the hardware attempt rate (attempts per second) as
    descriptive metadata.  ``base_fidelity`` is the Werner fidelity of a
    freshly generated pair and must lie in [0.25, 1].
    """

    endpoints: tuple[str, str]
    gen_rate: float
    p_success: float
    base_fidelity: float

    @property
    def key(self) -> str:
        return pair_key(*self.endpoints)


@dataclass(frozen=True)
class AdversaryConfig:
    """Hybrid intercept-and-manipulate adversary parameters.

    The adversary pulls flying qubits of one link into its own memory
    (``t_eve`` capture/storage latency), tampers with the PQC-protected
    classical traffic (``t_pqc`` manipulation delay) and can hold state for
    ``t_coh_eve`` seconds before its memory decoheres.  ``intercept_link``
    names the attacked link by its comma-joined endpoint pair.
    """

    t_eve: float
    t_pqc: float
    t_coh_eve: float
    intercept_link: str

    @property
    def delta_t(self) -> float:
        """Total adversarial delay: interception plus classical manipulation."""
        return self.t_eve + self.t_pqc


@dataclass(frozen=True)
class ScenarioConfig:
    """Full declarative description of one simulation or analysis run."""

    nodes: tuple[NodeSpec, ...]
    quantum_links: tuple[QuantumLinkSpec, ...]
    classical_channels: dict[str, ClassicalChannelSpec]
    protocol: Protocol
    seed: int
    n_trials: int
    slot_duration: float
    rounds_l: int = 1
    adversary: AdversaryConfig | None = None

    def node(self, node_id: str) -> NodeSpec:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise ParameterError(f"unknown node id: {node_id!r}")

    def channel_between(self, a: str, b: str) -> ClassicalChannelSpec:
        key = pair_key(a, b)
        try:
            return self.classical_channels[key]
        except KeyError:
            raise ParameterError(f"no classical channel for pair {key!r}") from None


def pair_key(a: str, b: str) -> str:
    """Canonical unordered-pair key: the two ids, sorted, joined by a comma."""
    return ",".join(sorted((a, b)))


def split_pair_key(key: str) -> tuple[str, str] | None:
    """Inverse of :func:`pair_key`; returns None if the key is malformed."""
    parts = key.split(",")
    if len(parts) != 2 or not parts[0] or not parts[1]:
        return None
    return parts[0], parts[1]


# ---------------------------------------------------------------------------
# Quantum-era effective security
# ---------------------------------------------------------------------------

def effective_security(claimed_bits: int, family: SecurityFamily) -> int:
    """Security bits that survive a quantum adversary.

    Quadratic-speedup search halves symmetric security (floor division, the
    conservative integer reading), polynomial-time factoring/discrete-log
    attacks zero out that family entirely, and PQC schemes keep their
    claimed level.
    """
    if not isinstance(claimed_bits, int) or isinstance(claimed_bits, bool) or claimed_bits < 0:
        raise ParameterError(f"claimed_bits must be a non-negative integer, got {claimed_bits!r}")
    if family is SecurityFamily.SYMMETRIC:
        return claimed_bits // 2
    if family is SecurityFamily.FACTORING_OR_DLOG_BASED:
        return 0
    return claimed_bits


# ---------------------------------------------------------------------------
# Crypto-profile registry
# ---------------------------------------------------------------------------

class CryptoRegistry:
    """Read-only, name-keyed collection of crypto profiles."""

    def __init__(self, profiles: Iterable[CryptoProfile]):
        self._profiles: dict[str, CryptoProfile] = {}
        for p in profiles:
            if p.name in self._profiles:
                raise ParameterError(f"duplicate crypto profile name: {p.name!r}")
            self._profiles[p.name] = p

    def lookup(self, name: str) -> CryptoProfile:
        try:
            return self._profiles[name]
        except KeyError:
            raise ProfileNotFoundError(f"profile not found: {name!r}") from None

    def names(self) -> list[str]:
        return list(self._profiles)

    def profiles(self) -> list[CryptoProfile]:
        return list(self._profiles.values())

    def __len__(self) -> int:
        return len(self._profiles)

    def __contains__(self, name: str) -> bool:
        return name in self._profiles


# Shipped defaults. The latencies are illustrative configuration values, not
# measurements; every deployment is expected to supply its own registry file.
_DEFAULT_PROFILES = (
    CryptoProfile("kyber512-class", CryptoKind.KEM, 5.0e-5, 6.0e-5, 800, 768, 128, illustrative=True),
    CryptoProfile("frodo1344-class", CryptoKind.KEM, 1.2e-3, 1.4e-3, 21520, 21632, 256, illustrative=True),
    CryptoProfile("dilithium-class", CryptoKind.SIGNATURE, 1.2e-4, 4.0e-5, 1312, 2420, 128, illustrative=True),
    CryptoProfile("sphincs-class", CryptoKind.SIGNATURE, 4.0e-3, 2.0e-4, 32, 7856, 128, illustrative=True),
)

_PROFILE_KEYS = {
    "name",
    "kind",
    "t_encrypt",
    "t_decrypt",
    "public_key_bytes",
    "ciphertext_or_sig_bytes",
    "claimed_security_bits",
    "illustrative",
}


def default_registry() -> CryptoRegistry:
    """Registry holding the shipped illustrative profiles."""
    return CryptoRegistry(_DEFAULT_PROFILES)


def load_registry(path: str | Path) -> CryptoRegistry:
    """Load a registry from a JSON array of profile objects.

    Raises:
        ParameterError: on malformed JSON, unknown keys, bad field values or
            duplicate names.
    """
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParameterError(f"cannot read profile registry {path}: {exc}") from exc
    if not isinstance(data, list):
        raise ParameterError("profile registry must be a JSON array of profile objects")
    profiles = []
    for i, raw in enumerate(data):
        profiles.append(_parse_profile(raw, f"[{i}]"))
    return CryptoRegistry(profiles)


def _parse_profile(raw: Any, where: str) -> CryptoProfile:
    if not isinstance(raw, dict):
        raise ParameterError(f"{where}: profile must be an object")
    unknown = set(raw) - _PROFILE_KEYS
    if unknown:
        raise ParameterError(f"{where}: unknown profile key(s): {sorted(unknown)}")
    try:
        kind = CryptoKind(raw["kind"])
    except (KeyError, ValueError) as exc:
        raise ParameterError(f"{where}: kind must be one of {[k.value for k in CryptoKind]}") from exc
    try:
        profile = CryptoProfile(
            name=str(raw["name"]),
            kind=kind,
            t_encrypt=float(raw["t_encrypt"]),
            t_decrypt=float(raw["t_decrypt"]),
            public_key_bytes=int(raw["public_key_bytes"]),
            ciphertext_or_sig_bytes=int(raw["ciphertext_or_sig_bytes"]),
            claimed_security_bits=int(raw["claimed_security_bits"]),
            illustrative=bool(raw.get("illustrative", False)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParameterError(f"{where}: malformed profile: {exc}") from exc
    for fname in ("t_encrypt", "t_decrypt"):
        v = getattr(profile, fname)
        if not math.isfinite(v) or v < 0:
            raise ParameterError(f"{where}.{fname}: must be finite and non-negative")
    for fname in ("public_key_bytes", "ciphertext_or_sig_bytes", "claimed_security_bits"):
        if getattr(profile, fname) < 0:
            raise ParameterError(f"{where}.{fname}: must be non-negative")
    return profile


# ---------------------------------------------------------------------------
# Scenario parsing (structure) and validation (invariants)
# ---------------------------------------------------------------------------

_SCENARIO_KEYS = {
    "nodes",
    "quantum_links",
    "classical_channels",
    "protocol",
    "rounds_l",
    "adversary",
    "seed",
    "n_trials",
    "slot_duration",
}
_NODE_KEYS = {"id", "role", "memory", "crypto"}
_MEMORY_KEYS = {"t_coh", "tier"}
_LINK_KEYS = {"endpoints", "gen_rate", "p_success", "base_fidelity"}
_CHANNEL_KEYS = {"propagation_delay", "processing_delay"}
_ADVERSARY_KEYS = {"t_eve", "t_pqc", "t_coh_eve", "intercept_link"}

_MAX_SEED = 2**64 - 1


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _check_unknown(obj: Mapping[str, Any], allowed: set[str], path: str, vios: list[Violation]) -> None:
    for key in sorted(set(obj) - allowed):
        vios.append(Violation(f"{path}.{key}" if path != "$" else f"$.{key}", "unknown key"))


def _get_number(obj: Mapping[str, Any], key: str, path: str, vios: list[Violation], default=None):
    if key not in obj:
        if default is not None:
            return default
        vios.append(Violation(f"{path}.{key}", "missing required number"))
        return 0.0
    value = obj[key]
    if not _is_number(value):
        vios.append(Violation(f"{path}.{key}", f"expected a number, got {type(value).__name__}"))
        return 0.0
    return float(value)


def _get_int(obj: Mapping[str, Any], key: str, path: str, vios: list[Violation], default=None):
    if key not in obj:
        if default is not None:
            return default
        vios.append(Violation(f"{path}.{key}", "missing required integer"))
        return 0
    value = obj[key]
    if not _is_int(value):
        vios.append(Violation(f"{path}.{key}", f"expected an integer, got {type(value).__name__}"))
        return 0
    return value


def _get_str(obj: Mapping[str, Any], key: str, path: str, vios: list[Violation]) -> str:
    value = obj.get(key)
    if not isinstance(value, str) or not value:
        vios.append(Violation(f"{path}.{key}", "missing or empty string"))
        return ""
    return value


def parse_scenario(data: Any, registry: CryptoRegistry) -> ScenarioConfig:
    """Build a :class:`ScenarioConfig` from decoded JSON, strictly.

    Structural problems (wrong types, unknown keys, unknown crypto-profile
    names, malformed pair keys) are collected and raised together as a
    :class:`ScenarioValidationError`.  Range and referential invariants are
    the job of :func:`validate_scenario`, which callers should run next.
    """
    vios: list[Violation] = []
    if not isinstance(data, dict):
        raise ScenarioValidationError([Violation("$", "scenario must be a JSON object")])
    _check_unknown(data, _SCENARIO_KEYS, "$", vios)

    nodes: list[NodeSpec] = []
    raw_nodes = data.get("nodes")
    if not isinstance(raw_nodes, list):
        vios.append(Violation("$.nodes", "missing or not a list"))
    else:
        for i, raw in enumerate(raw_nodes):
            node = _parse_node(raw, f"$.nodes[{i}]", registry, vios)
            if node is not None:
                nodes.append(node)

    links: list[QuantumLinkSpec] = []
    raw_links = data.get("quantum_links")
    if not isinstance(raw_links, list):
        vios.append(Violation("$.quantum_links", "missing or not a list"))
    else:
        for i, raw in enumerate(raw_links):
            link = _parse_link(raw, f"$.quantum_links[{i}]", vios)
            if link is not None:
                links.append(link)

    channels: dict[str, ClassicalChannelSpec] = {}
    raw_channels = data.get("classical_channels")
    if raw_channels is None:
        raw_channels = {}
    if not isinstance(raw_channels, dict):
        vios.append(Violation("$.classical_channels", "must be an object keyed by 'a,b' node pairs"))
    else:
        for key, raw in raw_channels.items():
            path = f"$.classical_channels[{key!r}]"
            pair = split_pair_key(key)
            if pair is None or pair[0] == pair[1]:
                vios.append(Violation(path, "key must name two distinct node ids joined by a comma"))
                continue
            if not isinstance(raw, dict):
                vios.append(Violation(path, "channel spec must be an object"))
                continue
            _check_unknown(raw, _CHANNEL_KEYS, path, vios)
            spec = ClassicalChannelSpec(
                propagation_delay=_get_number(raw, "propagation_delay", path, vios),
                processing_delay=_get_number(raw, "processing_delay", path, vios),
            )
            canon = pair_key(*pair)
            if canon in channels:
                vios.append(Violation(path, "duplicate channel for this node pair"))
            channels[canon] = spec

    protocol = Protocol.SINGLE_HOP
    raw_protocol = data.get("protocol")
    try:
        protocol = Protocol(raw_protocol)
    except ValueError:
        vios.append(
            Violation("$.protocol", f"must be one of {[p.value for p in Protocol]}, got {raw_protocol!r}")
        )

    adversary = None
    raw_adv = data.get("adversary")
    if raw_adv is not None:
        adversary = _parse_adversary(raw_adv, "$.adversary", vios)

    seed = _get_int(data, "seed", "$", vios)
    n_trials = _get_int(data, "n_trials", "$", vios)
    slot_duration = _get_number(data, "slot_duration", "$", vios)
    rounds_l = _get_int(data, "rounds_l", "$", vios, default=1)

    if vios:
        raise ScenarioValidationError(vios)
    return ScenarioConfig(
        nodes=tuple(nodes),
        quantum_links=tuple(links),
        classical_channels=channels,
        protocol=protocol,
        seed=seed,
        n_trials=n_trials,
        slot_duration=slot_duration,
        rounds_l=rounds_l,
        adversary=adversary,
    )


def _parse_node(raw: Any, path: str, registry: CryptoRegistry, vios: list[Violation]) -> NodeSpec | None:
    if not isinstance(raw, dict):
        vios.append(Violation(path, "node must be an object"))
        return None
    _check_unknown(raw, _NODE_KEYS, path, vios)
    node_id = _get_str(raw, "id", path, vios)
    role = NodeRole.END_NODE
    try:
        role = NodeRole(raw.get("role"))
    except ValueError:
        vios.append(Violation(f"{path}.role", f"must be one of {[r.value for r in NodeRole]}"))
    raw_mem = raw.get("memory")
    memory = MemorySpec(t_coh=1.0, tier=MemoryTier.SHORT_LIVED)
    if not isinstance(raw_mem, dict):
        vios.append(Violation(f"{path}.memory", "missing or not an object"))
    else:
        _check_unknown(raw_mem, _MEMORY_KEYS, f"{path}.memory", vios)
        tier = MemoryTier.SHORT_LIVED
        try:
            tier = MemoryTier(raw_mem.get("tier"))
        except ValueError:
            vios.append(Violation(f"{path}.memory.tier", f"must be one of {[t.value for t in MemoryTier]}"))
        memory = MemorySpec(t_coh=_get_number(raw_mem, "t_coh", f"{path}.memory", vios), tier=tier)
    crypto_name = _get_str(raw, "crypto", path, vios)
    crypto = None
    if crypto_name:
        try:
            crypto = registry.lookup(crypto_name)
        except ProfileNotFoundError:
            vios.append(Violation(f"{path}.crypto", f"unknown crypto profile {crypto_name!r}"))
    if crypto is None or not node_id:
        return None
    return NodeSpec(id=node_id, role=role, memory=memory, crypto=crypto)


def _parse_link(raw: Any, path: str, vios: list[Violation]) -> QuantumLinkSpec | None:
    if not isinstance(raw, dict):
        vios.append(Violation(path, "quantum link must be an object"))
        return None
    _check_unknown(raw, _LINK_KEYS, path, vios)
    raw_ep = raw.get("endpoints")
    if (
        not isinstance(raw_ep, list)
        or len(raw_ep) != 2
        or not all(isinstance(e, str) and e for e in raw_ep)
    ):
        vios.append(Violation(f"{path}.endpoints", "must be a list of two node ids"))
        return None
    return QuantumLinkSpec(
        endpoints=(raw_ep[0], raw_ep[1]),
        gen_rate=_get_number(raw, "gen_rate", path, vios),
        p_success=_get_number(raw, "p_success", path, vios),
        base_fidelity=_get_number(raw, "base_fidelity", path, vios),
    )


def _parse_adversary(raw: Any, path: str, vios: list[Violation]) -> AdversaryConfig | None:
    if not isinstance(raw, dict):
        vios.append(Violation(path, "adversary must be an object or null"))
        return None
    _check_unknown(raw, _ADVERSARY_KEYS, path, vios)
    intercept = _get_str(raw, "intercept_link", path, vios)
    pair = split_pair_key(intercept) if intercept else None
    if intercept and pair is None:
        vios.append(Violation(f"{path}.intercept_link", "must name a link as 'a,b'"))
    return AdversaryConfig(
        t_eve=_get_number(raw, "t_eve", path, vios),
        t_pqc=_get_number(raw, "t_pqc", path, vios),
        t_coh_eve=_get_number(raw, "t_coh_eve", path, vios),
        intercept_link=pair_key(*pair) if pair else intercept,
    )


def load_scenario(path: str | Path, registry: CryptoRegistry | None = None) -> ScenarioConfig:
    """Read and parse a scenario file; raises ScenarioValidationError on problems."""
    registry = registry if registry is not None else default_registry()
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ScenarioValidationError([Violation("$", f"cannot read {path}: {exc}")]) from exc
    except json.JSONDecodeError as exc:
        raise ScenarioValidationError([Violation("$", f"not valid JSON: {exc}")]) from exc
    return parse_scenario(data, registry)


def validate_scenario(config: ScenarioConfig) -> list[Violation]:
    """Check every scenario invariant; returns one violation per failure.

    Idempotent and order-independent: permuting node or link lists changes
    only the index part of violation paths, never the violation set.
    """
    vios: list[Violation] = []
    node_ids: set[str] = set()
    for i, node in enumerate(config.nodes):
        path = f"$.nodes[{i}]"
        if node.id in node_ids:
            vios.append(Violation(f"{path}.id", f"duplicate node id {node.id!r}"))
        node_ids.add(node.id)
        if not math.isfinite(node.memory.t_coh) or node.memory.t_coh <= 0:
            vios.append(Violation(f"{path}.memory.t_coh", f"node {node.id!r}: t_coh must be finite and > 0"))
        for fname in ("t_encrypt", "t_decrypt"):
            v = getattr(node.crypto, fname)
            if not math.isfinite(v) or v < 0:
                vios.append(
                    Violation(f"{path}.crypto.{fname}", f"profile {node.crypto.name!r}: must be finite and >= 0")
                )
        for fname in ("public_key_bytes", "ciphertext_or_sig_bytes", "claimed_security_bits"):
            if getattr(node.crypto, fname) < 0:
                vios.append(
                    Violation(f"{path}.crypto.{fname}", f"profile {node.crypto.name!r}: must be >= 0")
                )

    seen_links: set[str] = set()
    for i, link in enumerate(config.quantum_links):
        path = f"$.quantum_links[{i}]"
        a, b = link.endpoints
        if a == b:
            vios.append(Violation(f"{path}.endpoints", f"link {link.key!r}: endpoints must be distinct"))
        for endpoint in (a, b):
            if endpoint not in node_ids:
                vios.append(Violation(f"{path}.endpoints", f"link references unknown node id {endpoint!r}"))
        if link.key in seen_links:
            vios.append(Violation(f"{path}.endpoints", f"duplicate quantum link {link.key!r}"))
        seen_links.add(link.key)
        if not math.isfinite(link.gen_rate) or link.gen_rate <= 0:
            vios.append(Violation(f"{path}.gen_rate", f"link {link.key!r}: gen_rate must be finite and > 0"))
        if not math.isfinite(link.p_success) or not (0.0 < link.p_success <= 1.0):
            vios.append(Violation(f"{path}.p_success", f"link {link.key!r}: p_success must be in (0, 1]"))
        if not math.isfinite(link.base_fidelity) or not (0.25 <= link.base_fidelity <= 1.0):
            vios.append(
                Violation(f"{path}.base_fidelity", f"link {link.key!r}: base_fidelity must be in [0.25, 1]")
            )

    for key, spec in config.classical_channels.items():
        path = f"$.classical_channels[{key!r}]"
        pair = split_pair_key(key)
        if pair is None or pair[0] == pair[1]:
            vios.append(Violation(path, "key must name two distinct node ids joined by a comma"))
            continue
        for endpoint in pair:
            if endpoint not in node_ids:
                vios.append(Violation(path, f"channel references unknown node id {endpoint!r}"))
        for fname in ("propagation_delay", "processing_delay"):
            v = getattr(spec, fname)
            if not math.isfinite(v) or v < 0:
                vios.append(Violation(f"{path}.{fname}", "must be finite and >= 0"))

    if config.rounds_l < 1:
        vios.append(Violation("$.rounds_l", "must be >= 1"))
    if not (0 <= config.seed <= _MAX_SEED):
        vios.append(Violation("$.seed", "must fit in an unsigned 64-bit integer"))
    if config.n_trials < 1:
        vios.append(Violation("$.n_trials", "must be >= 1"))
    if not math.isfinite(config.slot_duration) or config.slot_duration <= 0:
        vios.append(Violation("$.slot_duration", "must be finite and > 0"))

    if config.adversary is not None:
        adv = config.adversary
        for fname in ("t_eve", "t_pqc"):
            v = getattr(adv, fname)
            if not math.isfinite(v) or v < 0:
                vios.append(Violation(f"$.adversary.{fname}", "must be finite and >= 0"))
        if not math.isfinite(adv.t_coh_eve) or adv.t_coh_eve <= 0:
            vios.append(Violation("$.adversary.t_coh_eve", "must be finite and > 0"))
        pair = split_pair_key(adv.intercept_link)
        if pair is None or pair_key(*pair) not in seen_links:
            vios.append(
                Violation("$.adversary.intercept_link", f"no quantum link matches {adv.intercept_link!r}")
            )

    vios.extend(_validate_topology(config, node_ids))
    return vios


def _validate_topology(config: ScenarioConfig, node_ids: set[str]) -> list[Violation]:
    """Protocol-shape checks: path structure, roles, and required channels."""
    vios: list[Violation] = []
    # Referential problems are already reported; shape checks need clean links.
    links = [
        l
        for l in config.quantum_links
        if l.endpoints[0] != l.endpoints[1] and all(e in node_ids for e in l.endpoints)
    ]
    if len(links) != len(config.quantum_links) or len({l.key for l in links}) != len(links):
        return vios

    if config.protocol in (Protocol.SINGLE_HOP, Protocol.SEQUENTIAL_ROUNDS):
        if len(links) != 1:
            vios.append(
                Violation(
                    "$.quantum_links",
                    f"protocol {config.protocol.value!r} requires exactly one quantum link, found {len(links)}",
                )
            )
            return vios
    elif len(links) < 2:
        vios.append(
            Violation("$.quantum_links", "protocol 'parallel_chain' requires a chain of at least two links")
        )
        return vios

    degree: dict[str, int] = {n.id: 0 for n in config.nodes}
    for link in links:
        degree[link.endpoints[0]] += 1
        degree[link.endpoints[1]] += 1

    for node_id, deg in degree.items():
        if deg == 0:
            vios.append(Violation("$.nodes", f"node {node_id!r} is not attached to any quantum link"))
        elif deg > 2:
            vios.append(Violation("$.quantum_links", f"node {node_id!r} has degree {deg}; links must form a path"))
    ends = [n for n in config.nodes if degree.get(n.id, 0) == 1]
    if len(ends) != 2:
        vios.append(Violation("$.quantum_links", "links must form a simple path with exactly two endpoints"))
        return vios
    if any(degree.get(n, 0) > 2 for n in degree):
        return vios

    path = _walk_path(config, links, ends)
    if path is None:
        vios.append(Violation("$.quantum_links", "links must form one connected path (no cycles or islands)"))
        return vios
    for end in ends:
        if end.role is not NodeRole.END_NODE:
            vios.append(Violation("$.nodes", f"path endpoint {end.id!r} must have role 'end_node'"))
    for interior_id in path[1:-1]:
        if config.node(interior_id).role is NodeRole.END_NODE:
            vios.append(Violation("$.nodes", f"interior node {interior_id!r} must not have role 'end_node'"))

    receiver = path[-1]
    required_pairs: list[tuple[str, str]]
    if config.protocol is Protocol.PARALLEL_CHAIN:
        required_pairs = [(mid, receiver) for mid in path[1:-1]]
    else:
        required_pairs = [(path[0], receiver)]
    for a, b in required_pairs:
        if pair_key(a, b) not in config.classical_channels:
            vios.append(
                Violation(
                    "$.classical_channels",
                    f"missing classical channel for message pair {pair_key(a, b)!r}",
                )
            )
    return vios


def _walk_path(
    config: ScenarioConfig, links: list[QuantumLinkSpec], ends: list[NodeSpec]
) -> list[str] | None:
    """Order path nodes between the two endpoints, lexicographically oriented.

    The endpoint whose id sorts first becomes the sender side; orientation
    therefore never depends on list order, keeping validation and simulation
    invariant under node/link permutations.
    """
    start, finish = sorted((ends[0].id, ends[1].id))
    adjacency: dict[str, list[str]] = {}
    for link in links:
        a, b = link.endpoints
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)
    path = [start]
    previous = None
    current = start
    while current != finish:
        candidates = [n for n in adjacency.get(current, []) if n != previous]
        if len(candidates) != 1:
            return None
        previous, current = current, candidates[0]
        path.append(current)
        if len(path) > len(config.nodes):
            return None
    if len(path) != len(links) + 1:
        return None
    return path


def resolve_path(config: ScenarioConfig) -> list[str]:
    """Node ids in path order; the last entry is the designated receiver.

    Classical correction messages flow toward ``path[-1]``, the path endpoint
    whose id sorts lexicographically later.  Assumes the scenario is valid;
    raises :class:`ParameterError` when no simple path exists.
    """
    degree: dict[str, int] = {n.id: 0 for n in config.nodes}
    for link in config.quantum_links:
        degree[link.endpoints[0]] += 1
        degree[link.endpoints[1]] += 1
    ends = [n for n in config.nodes if degree.get(n.id, 0) == 1]
    if len(ends) != 2:
        raise ParameterError("quantum links do not form a simple path")
    path = _walk_path(config, list(config.quantum_links), ends)
    if path is None:
        raise ParameterError("quantum links do not form a simple path")
    return path


def link_between(config: ScenarioConfig, a: str, b: str) -> QuantumLinkSpec:
    key = pair_key(a, b)
    for link in config.quantum_links:
        if link.key == key:
            return link
    raise ParameterError(f"no quantum link for pair {key!r}")


# ---------------------------------------------------------------------------
# Parameter-path editing (used by sweeps)
# ---------------------------------------------------------------------------

def set_config_value(config: ScenarioConfig, parameter_path: str, value: float) -> ScenarioConfig:
    """Return a copy of ``config`` with one numeric field replaced.

    ``parameter_path`` is dot-separated attribute access with integer tokens
    indexing lists, e.g. ``"slot_duration"``, ``"nodes.2.memory.t_coh"``,
    ``"quantum_links.0.p_success"``, or ``"classical_channels.a,b.propagation_delay"``.

    Raises:
        ParameterError: when the path does not resolve to a numeric field.
    """
    tokens = parameter_path.split(".") if parameter_path else []
    if not tokens:
        raise ParameterError("empty parameter path")
    try:
        return _with_value(config, tokens, value, parameter_path)
    except ParameterError:
        raise
    except Exception as exc:
        raise ParameterError(f"invalid parameter path {parameter_path!r}: {exc}") from exc


def _with_value(obj: Any, tokens: list[str], value: float, full_path: str) -> Any:
    if not tokens:
        if not _is_number(obj):
            raise ParameterError(f"parameter path {full_path!r} does not address a numeric field")
        if _is_int(obj):
            if float(value) != int(value):
                raise ParameterError(f"parameter path {full_path!r} addresses an integer field")
            return int(value)
        return float(value)
    head, rest = tokens[0], tokens[1:]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        names = {f.name for f in dataclasses.fields(obj)}
        if head not in names:
            raise ParameterError(f"invalid parameter path {full_path!r}: no field {head!r}")
        return dataclasses.replace(obj, **{head: _with_value(getattr(obj, head), rest, value, full_path)})
    if isinstance(obj, tuple):
        try:
            index = int(head)
            current = obj[index]
        except (ValueError, IndexError):
            raise ParameterError(f"invalid parameter path {full_path!r}: bad index {head!r}") from None
        return obj[:index] + (_with_value(current, rest, value, full_path),) + obj[index + 1 :]
    if isinstance(obj, dict):
        if head not in obj:
            raise ParameterError(f"invalid parameter path {full_path!r}: no key {head!r}")
        updated = dict(obj)
        updated[head] = _with_value(obj[head], rest, value, full_path)
        return updated
    raise ParameterError(f"invalid parameter path {full_path!r}: cannot descend into {type(obj).__name__}")

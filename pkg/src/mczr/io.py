"""Text documents for circuits, phase vectors and benchmark configs.

Documents are JSON with a fixed key order. Qubits are 1-indexed and angles are
written in radians with 17 significant digits, so a write/read cycle gives
back the same circuit and the same bytes.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any

from .bench import ExperimentConfig
from .core import GateMask, GateSeq, Layering, MczrGate, PhaseVector

SCHEMA_VERSION = "1"


class DocumentError(ValueError):
    """A document failed to parse or violates its schema."""


def _fmt_angle(x: float) -> str:
    return format(float(x), ".17g")


def _load(text: str, source: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise DocumentError(f"{source}: top level must be an object")
    version = doc.get("schema_version")
    if version is None:
        raise DocumentError(f"{source}: missing field 'schema_version'")
    if str(version) != SCHEMA_VERSION:
        raise DocumentError(f"{source}: unsupported schema_version {version!r}")
    return doc


def _get_n(doc: dict, source: str, limit: int = 64) -> int:
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= limit:
        raise DocumentError(f"{source}: field 'n' must be an integer in [1, {limit}], got {n!r}")
    return n


# -- circuits -----------------------------------------------------------------


def dumps_circuit(circuit: GateSeq | Layering) -> str:
    """Serialize a gate sequence, or a layering together with its layer block."""
    if isinstance(circuit, Layering):
        seq = circuit.flatten()
        layers, k = [], 0
        for layer in circuit.layers:
            layers.append(list(range(k, k + len(layer))))
            k += len(layer)
    else:
        seq, layers = circuit, None
    lines = ["{", f'  "schema_version": "{SCHEMA_VERSION}",', f'  "n": {seq.n},']
    gate_lines = [
        f'    {{"qubits": [{", ".join(map(str, g.qubits))}], "theta": {_fmt_angle(g.theta)}}}'
        for g in seq.gates
    ]
    if gate_lines:
        lines.append('  "gates": [')
        lines.append(",\n".join(gate_lines))
        lines.append("  ]" + ("," if layers is not None else ""))
    else:
        lines.append('  "gates": []' + ("," if layers is not None else ""))
    if layers is not None:
        body = ",\n".join(f"    [{', '.join(map(str, layer))}]" for layer in layers)
        lines.append('  "layers": [' + ("\n" + body + "\n  ]" if layers else "]"))
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads_circuit(text: str, source: str = "<string>") -> tuple[GateSeq, Layering | None]:
    doc = _load(text, source)
    n = _get_n(doc, source)
    raw_gates = doc.get("gates")
    if not isinstance(raw_gates, list):
        raise DocumentError(f"{source}: field 'gates' must be a list")
    gates = []
    for k, entry in enumerate(raw_gates):
        where = f"{source}: gates[{k}]"
        if not isinstance(entry, dict) or "qubits" not in entry or "theta" not in entry:
            raise DocumentError(f"{where}: expected an object with 'qubits' and 'theta'")
        qubits, theta = entry["qubits"], entry["theta"]
        if not isinstance(qubits, list) or not qubits:
            raise DocumentError(f"{where}.qubits: must be a non-empty list")
        if any(not isinstance(q, int) or isinstance(q, bool) for q in qubits):
            raise DocumentError(f"{where}.qubits: qubit labels must be integers")
        bad = [q for q in qubits if not 1 <= q <= n]
        if bad:
            raise DocumentError(f"{where}.qubits: index {bad[0]} outside [1, {n}]")
        if qubits != sorted(set(qubits)):
            raise DocumentError(f"{where}.qubits: must be sorted without repeats")
        if not isinstance(theta, (int, float)) or isinstance(theta, bool):
            raise DocumentError(f"{where}.theta: must be a number")
        gates.append(MczrGate(GateMask.from_qubits(qubits, n), float(theta)))
    seq = GateSeq(n, tuple(gates))

    layers = doc.get("layers")
    if layers is None:
        return seq, None
    if not isinstance(layers, list) or any(not isinstance(layer, list) for layer in layers):
        raise DocumentError(f"{source}: field 'layers' must be a list of lists")
    flat = [k for layer in layers for k in layer]
    if sorted(flat) != list(range(len(gates))):
        raise DocumentError(f"{source}: 'layers' must partition the gate indices 0..{len(gates) - 1}")
    for i, layer in enumerate(layers):
        used = 0
        for k in layer:
            if used & gates[k].mask.bits:
                raise DocumentError(f"{source}: layers[{i}]: gate {k} overlaps another gate in the layer")
            used |= gates[k].mask.bits
    return seq, Layering(n, tuple(tuple(gates[k] for k in layer) for layer in layers))


def read_circuit(path: str | os.PathLike) -> tuple[GateSeq, Layering | None]:
    """Read a circuit document; the layering is ``None`` when absent."""
    return loads_circuit(Path(path).read_text(encoding="utf-8"), str(path))


def write_circuit(circuit: GateSeq | Layering, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps_circuit(circuit), encoding="utf-8")


# -- phase vectors ------------------------------------------------------------


def dumps_phase_vector(pv: PhaseVector) -> str:
    alpha = ", ".join(_fmt_angle(a) for a in pv.alpha)
    lines = [
        "{",
        f'  "schema_version": "{SCHEMA_VERSION}",',
        f'  "n": {pv.n},',
        f'  "alpha": [{alpha}]' + ("," if pv.global_phase else ""),
    ]
    if pv.global_phase:
        lines.append(f'  "global_phase": {_fmt_angle(pv.global_phase)}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads_phase_vector(text: str, source: str = "<string>") -> PhaseVector:
    doc = _load(text, source)
    n = _get_n(doc, source, limit=24)
    alpha = doc.get("alpha")
    if not isinstance(alpha, list) or len(alpha) != 1 << n:
        raise DocumentError(f"{source}: field 'alpha' must list exactly {1 << n} phases")
    for q, a in enumerate(alpha):
        if not isinstance(a, (int, float)) or isinstance(a, bool):
            raise DocumentError(f"{source}: alpha[{q}] must be a number")
    gp = doc.get("global_phase", 0.0)
    if not isinstance(gp, (int, float)) or isinstance(gp, bool):
        raise DocumentError(f"{source}: global_phase must be a number")
    return PhaseVector(n, [float(a) for a in alpha], float(gp))


def read_phase_vector(path: str | os.PathLike) -> PhaseVector:
    return loads_phase_vector(Path(path).read_text(encoding="utf-8"), str(path))


def write_phase_vector(pv: PhaseVector, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps_phase_vector(pv), encoding="utf-8")


def document_kind(path: str | os.PathLike) -> str:
    """``"circuit"`` or ``"phase_vector"``, judged by the fields present."""
    doc = _load(Path(path).read_text(encoding="utf-8"), str(path))
    if "gates" in doc:
        return "circuit"
    if "alpha" in doc:
        return "phase_vector"
    raise DocumentError(f"{path}: neither a circuit nor a phase-vector document")


# -- benchmark configs --------------------------------------------------------

_CONFIG_KEYS = {"family", "sizes", "instances", "iters", "strategies", "seed", "gamma"}


def loads_config(text: str, source: str = "<string>", family: str | None = None) -> ExperimentConfig:
    """Parse a benchmark config. ``family``, when given, overrides or fills in
    the document's own ``family`` field. A missing ``seed`` falls back to
    ``MCZR_SEED``."""
    try:
        doc: Any = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise DocumentError(f"{source}: top level must be an object")
    unknown = set(doc) - _CONFIG_KEYS - {"schema_version"}
    if unknown:
        raise DocumentError(f"{source}: unknown config fields {sorted(unknown)}")
    kwargs = {k: doc[k] for k in _CONFIG_KEYS if k in doc}
    if family is not None:
        if kwargs.get("family", family) != family:
            raise DocumentError(f"{source}: config family {kwargs['family']!r}, expected {family!r}")
        kwargs["family"] = family
    if "family" not in kwargs:
        raise DocumentError(f"{source}: missing field 'family'")
    try:
        return ExperimentConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"{source}: {exc}") from None


def read_config(path: str | os.PathLike, family: str | None = None) -> ExperimentConfig:
    return loads_config(Path(path).read_text(encoding="utf-8"), str(path), family)

"""JSON file formats for states, Bloch vectors and Hamiltonians.

State file::

    {"kind": "pure", "n": 2, "d": 2, "vector": [[re, im], ...]}
    {"kind": "mixed", "n": 2, "d": 2, "matrix": [[[re, im], ...], ...]}

Bloch / Hamiltonian file::

    {"n": 3, "terms": [{"pauli": "XIZ", "coeff": 0.5}, ...]}

``pauli`` strings use ``I``, ``X``, ``Y``, ``Z`` with qubit 1 leftmost.
NaN and Infinity are rejected.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .bloch import BlochVector
from .errors import ValidationError
from .states import QuantumState


def _reject_constant(name):
    raise ValidationError(f"non-finite number {name} in input file")


def loads(text: str):
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON: {exc}") from None


def dumps(obj) -> str:
    return json.dumps(obj, allow_nan=False, separators=(", ", ": "))


def _pair(v) -> complex:
    if not (isinstance(v, (list, tuple)) and len(v) == 2):
        raise ValidationError(f"expected a [re, im] pair, got {v!r}")
    re_, im_ = (float(x) for x in v)
    if not (np.isfinite(re_) and np.isfinite(im_)):
        raise ValidationError("non-finite amplitude")
    return complex(re_, im_)


def state_to_dict(state: QuantumState) -> dict:
    out = {"kind": state.kind, "n": state.n, "d": state.d}
    if state.is_pure:
        out["vector"] = [[float(a.real), float(a.imag)] for a in state.data]
    else:
        out["matrix"] = [[[float(a.real), float(a.imag)] for a in row] for row in state.data]
    return out


def state_from_dict(obj: dict) -> QuantumState:
    try:
        kind, n, d = obj["kind"], int(obj["n"]), int(obj.get("d", 2))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"state file is missing a field: {exc}") from None
    dim = d ** n
    if kind == "pure":
        vec = np.array([_pair(v) for v in obj.get("vector", [])])
        if vec.size != dim:
            raise ValidationError(f"vector has {vec.size} entries, expected {dim}")
        return QuantumState.pure(vec, d, tol=1e-10)
    if kind == "mixed":
        rows = obj.get("matrix", [])
        mat = np.array([[_pair(v) for v in row] for row in rows])
        if mat.shape != (dim, dim):
            raise ValidationError(f"matrix has shape {mat.shape}, expected {(dim, dim)}")
        return QuantumState.mixed(mat, d, tol=1e-10)
    raise ValidationError(f"unknown state kind {kind!r}")


def bloch_to_dict(b: BlochVector) -> dict:
    return {"n": b.n, "terms": [{"pauli": p.label(), "coeff": c} for p, c in b]}


def bloch_from_dict(obj: dict) -> BlochVector:
    try:
        n = int(obj["n"])
        terms = obj["terms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"Bloch file is missing a field: {exc}") from None
    coeffs: dict[str, float] = {}
    for t in terms:
        try:
            label, c = t["pauli"], float(t["coeff"])
        except (KeyError, TypeError, ValueError):
            raise ValidationError(f"bad Bloch term {t!r}") from None
        if not np.isfinite(c):
            raise ValidationError("non-finite Bloch coefficient")
        if label in coeffs:
            raise ValidationError(f"duplicate Pauli string {label}")
        coeffs[label] = c
    return BlochVector.from_labels(n, coeffs)


def read_state(path) -> QuantumState:
    return state_from_dict(loads(Path(path).read_text()))


def write_state(path, state: QuantumState) -> None:
    Path(path).write_text(dumps(state_to_dict(state)) + "\n")


def read_bloch(path) -> BlochVector:
    return bloch_from_dict(loads(Path(path).read_text()))


def write_bloch(path, b: BlochVector) -> None:
    Path(path).write_text(dumps(bloch_to_dict(b)) + "\n")

"""JSON serialization of input states.

A state file is a JSON object with exactly one of three keys:

* ``"pure"``: 8 amplitudes as [re, im] pairs;
* ``"dense"``: 8x8 matrix of [re, im] pairs;
* ``"bloch"``: the decomposition fields a, b, c (3-vectors),
  Q, R, S (3x3) and tau (3x3x3).

Loading always ends in full state validation, so a bloch block that
encodes a non-positive matrix is rejected.
"""

from __future__ import annotations

import json

import numpy as np

from .states import BlochDecomposition, compose_state, pure_to_density, validate_state


class StateFormatError(ValueError):
    """Structurally malformed state object."""


def _complex_array(data, shape) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.shape != shape + (2,):
        raise StateFormatError(f"expected nested [re, im] pairs of shape {shape}, got {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def _real_array(data, shape, name) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.shape != shape:
        raise StateFormatError(f"bloch field {name!r} must have shape {shape}, got {arr.shape}")
    return arr


def parse_state(obj: dict) -> np.ndarray:
    """Build a validated density matrix from a decoded state object."""
    if not isinstance(obj, dict):
        raise StateFormatError(f"state object must be a JSON object, got {type(obj).__name__}")
    keys = set(obj) & {"pure", "dense", "bloch"}
    if len(set(obj)) != 1 or len(keys) != 1:
        raise StateFormatError(f"state object must have exactly one of 'pure', 'dense', 'bloch'; got keys {sorted(obj)}")
    (kind,) = keys
    if kind == "pure":
        return validate_state(pure_to_density(_complex_array(obj["pure"], (8,))))
    if kind == "dense":
        return validate_state(_complex_array(obj["dense"], (8, 8)))
    block = obj["bloch"]
    if not isinstance(block, dict) or set(block) != {"a", "b", "c", "Q", "R", "S", "tau"}:
        raise StateFormatError("bloch block must have exactly the fields a, b, c, Q, R, S, tau")
    d = BlochDecomposition(
        a=_real_array(block["a"], (3,), "a"),
        b=_real_array(block["b"], (3,), "b"),
        c=_real_array(block["c"], (3,), "c"),
        Q=_real_array(block["Q"], (3, 3), "Q"),
        R=_real_array(block["R"], (3, 3), "R"),
        S=_real_array(block["S"], (3, 3), "S"),
        tau=_real_array(block["tau"], (3, 3, 3), "tau"),
    )
    return validate_state(compose_state(d))


def load_state(path) -> np.ndarray:
    """Read and validate a state file.  I/O errors propagate as OSError;
    undecodable or malformed content raises ValueError subclasses."""
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StateFormatError(f"not valid JSON: {exc}") from exc
    return parse_state(obj)


def _pairs(arr: np.ndarray) -> list:
    stacked = np.stack([np.asarray(arr).real, np.asarray(arr).imag], axis=-1)
    return stacked.tolist()


def pure_to_json(amplitudes: np.ndarray) -> dict:
    return {"pure": _pairs(np.asarray(amplitudes, dtype=complex).reshape(8))}


def density_to_json(rho: np.ndarray) -> dict:
    return {"dense": _pairs(np.asarray(rho, dtype=complex).reshape(8, 8))}


def bloch_to_json(d: BlochDecomposition) -> dict:
    return {"bloch": {
        "a": d.a.tolist(), "b": d.b.tolist(), "c": d.c.tolist(),
        "Q": d.Q.tolist(), "R": d.R.tolist(), "S": d.S.tolist(),
        "tau": d.tau.tolist(),
    }}

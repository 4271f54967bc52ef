"""JSON encoding/decoding for descriptors, elements, maps and decompositions."""

from __future__ import annotations

import numpy as np

from .algebra import (
    KIND_COMPLEX,
    KIND_QUAT,
    KIND_REAL,
    KIND_SPIN,
    KIND_SUM,
    AlgebraDescriptor,
    Element,
    LinearMap,
    direct_sum,
    spin_factor,
)
from .commutant import FunctionModel
from .errors import ConfigError
from .spectral import SpectralDecomposition


def algebra_to_json(alg: AlgebraDescriptor) -> dict:
    if alg.kind == KIND_SPIN:
        return {"kind": alg.kind, "d": alg.size}
    if alg.kind == KIND_SUM:
        return {"kind": alg.kind, "summands": [algebra_to_json(s) for s in alg.summands]}
    return {"kind": alg.kind, "n": alg.size}


def algebra_from_json(obj: dict) -> AlgebraDescriptor:
    try:
        kind = obj["kind"]
        if kind == KIND_SPIN:
            return spin_factor(int(obj["d"]))
        if kind == KIND_SUM:
            return direct_sum(*(algebra_from_json(s) for s in obj["summands"]))
        if kind in (KIND_REAL, KIND_COMPLEX, KIND_QUAT):
            return AlgebraDescriptor(kind, int(obj["n"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed algebra JSON: {exc}") from exc
    raise ConfigError(f"malformed algebra JSON: unknown kind {obj.get('kind')!r}")


def _data_to_json(x: Element):
    alg = x.algebra
    if alg.kind == KIND_REAL:
        return np.asarray(x.data).tolist()
    if alg.kind in (KIND_COMPLEX, KIND_QUAT):
        return {"re": x.data.real.tolist(), "im": x.data.imag.tolist()}
    if alg.kind == KIND_SPIN:
        v, t = x.data
        return {"v": v.tolist(), "t": t}
    return [_data_to_json(b) for b in x.data]


def _data_from_json(alg: AlgebraDescriptor, payload) -> Element:
    try:
        if alg.kind == KIND_REAL:
            return Element(alg, np.array(payload, dtype=float))
        if alg.kind in (KIND_COMPLEX, KIND_QUAT):
            mat = np.array(payload["re"], dtype=float) + 1j * np.array(payload["im"], dtype=float)
            return Element(alg, mat)
        if alg.kind == KIND_SPIN:
            return Element(alg, (np.array(payload["v"], dtype=float), float(payload["t"])))
        return Element(alg, tuple(_data_from_json(s, p) for s, p in zip(alg.summands, payload)))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed element JSON for {alg}: {exc}") from exc


def element_to_json(x: Element) -> dict:
    return {"algebra": algebra_to_json(x.algebra), "data": _data_to_json(x)}


def element_from_json(obj: dict) -> Element:
    try:
        alg = algebra_from_json(obj["algebra"])
        payload = obj["data"]
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed element JSON: {exc}") from exc
    return _data_from_json(alg, payload)


def linear_map_to_json(m: LinearMap) -> dict:
    return {"algebra": algebra_to_json(m.algebra),
            "matrix": np.asarray(m.matrix).tolist(),
            "label": m.label}


def linear_map_from_json(obj: dict) -> LinearMap:
    try:
        alg = algebra_from_json(obj["algebra"])
        return LinearMap(alg, np.array(obj["matrix"], dtype=float), obj.get("label", ""))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed linear map JSON: {exc}") from exc


def decomposition_to_json(dec: SpectralDecomposition) -> dict:
    return {"algebra": algebra_to_json(dec.algebra),
            "pairs": [{"eigenvalue": lam, "idempotent": _data_to_json(p)}
                      for lam, p in dec.pairs]}


def decomposition_from_json(obj: dict) -> SpectralDecomposition:
    try:
        alg = algebra_from_json(obj["algebra"])
        pairs = tuple((float(item["eigenvalue"]), _data_from_json(alg, item["idempotent"]))
                      for item in obj["pairs"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed decomposition JSON: {exc}") from exc
    return SpectralDecomposition(alg, pairs)


def function_model_to_json(model: FunctionModel) -> dict:
    return {"algebra": algebra_to_json(model.algebra),
            "points": model.points,
            "frame": [_data_to_json(p) for p in model.frame],
            "embedding": model.embedding_matrix.tolist()}


# -- witness payloads (elements, maps and scalars keyed by role) -------------

def witness_value_to_json(value):
    if isinstance(value, Element):
        return {"__type__": "element", **element_to_json(value)}
    if isinstance(value, LinearMap):
        return {"__type__": "linear_map", **linear_map_to_json(value)}
    if isinstance(value, (int, float, str)):
        return value
    raise ConfigError(f"cannot serialize witness value of type {type(value).__name__}")


def witness_value_from_json(obj):
    if isinstance(obj, dict) and obj.get("__type__") == "element":
        return element_from_json(obj)
    if isinstance(obj, dict) and obj.get("__type__") == "linear_map":
        return linear_map_from_json(obj)
    return obj


def inputs_to_json(inputs: dict) -> dict:
    return {k: witness_value_to_json(v) for k, v in inputs.items()}


def inputs_from_json(obj: dict) -> dict:
    return {k: witness_value_from_json(v) for k, v in obj.items()}

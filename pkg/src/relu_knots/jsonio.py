"""Network JSON schema: loading with path-precise errors, and dumping.

Schema::

    {
      "p": 2,
      "hidden_layers": [
        {"weights": [["1", "-1/2"], ...], "biases": ["0", "3/4", ...]},
        ...
      ],
      "output_layer": {"weights": [...], "biases": [...]}
    }

Rationals are reduced ``"num/den"`` strings; plain integers (as strings or
JSON numbers) are accepted on input. JSON floats are rejected because they
do not denote exact values.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .network import DenseLayer, ScalarInputNetwork
from .rational import Rational, as_rational, format_rational, parse_rational


class SchemaError(ValueError):
    """A network document violates the schema; the message carries the JSON path."""


def _fail(path: str, message: str) -> SchemaError:
    return SchemaError(f"{path}: {message}")


def _rational_at(value: Any, path: str) -> Rational:
    if isinstance(value, bool):
        raise _fail(path, f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return as_rational(value)
    if isinstance(value, float):
        raise _fail(path, f"floats are not exact; write {value!r} as a 'num/den' string")
    if isinstance(value, str):
        try:
            return parse_rational(value)
        except ValueError as exc:
            raise _fail(path, str(exc)) from exc
    raise _fail(path, f"expected a rational string, got {type(value).__name__}")


def _list_at(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise _fail(path, f"expected an array, got {type(value).__name__}")
    return value


def _layer_at(value: Any, path: str) -> DenseLayer:
    if not isinstance(value, dict):
        raise _fail(path, f"expected an object, got {type(value).__name__}")
    unknown = set(value) - {"weights", "biases"}
    if unknown:
        raise _fail(path, f"unknown keys {sorted(unknown)}")
    if "weights" not in value:
        raise _fail(path, "missing key 'weights'")
    if "biases" not in value:
        raise _fail(path, "missing key 'biases'")
    rows = _list_at(value["weights"], f"{path}.weights")
    weights = tuple(
        tuple(
            _rational_at(entry, f"{path}.weights[{i}][{j}]")
            for j, entry in enumerate(_list_at(row, f"{path}.weights[{i}]"))
        )
        for i, row in enumerate(rows)
    )
    biases = tuple(
        _rational_at(entry, f"{path}.biases[{i}]")
        for i, entry in enumerate(_list_at(value["biases"], f"{path}.biases"))
    )
    try:
        return DenseLayer(weights, biases)
    except ValueError as exc:
        raise _fail(path, str(exc)) from exc


def network_from_dict(data: Any) -> ScalarInputNetwork:
    if not isinstance(data, dict):
        raise _fail("$", f"expected an object, got {type(data).__name__}")
    for key in ("p", "hidden_layers", "output_layer"):
        if key not in data:
            raise _fail("$", f"missing key {key!r}")
    layers_raw = _list_at(data["hidden_layers"], "hidden_layers")
    if not layers_raw:
        raise _fail("hidden_layers", "needs at least one layer")
    hidden = tuple(
        _layer_at(layer, f"hidden_layers[{i}]") for i, layer in enumerate(layers_raw)
    )
    output = _layer_at(data["output_layer"], "output_layer")
    p = data["p"]
    if not isinstance(p, int) or isinstance(p, bool) or p < 1:
        raise _fail("p", f"expected a positive integer, got {p!r}")
    if p != output.size:
        raise _fail("p", f"declared p = {p} but output_layer has {output.size} rows")
    try:
        return ScalarInputNetwork(hidden, output)
    except ValueError as exc:
        raise _fail("$", str(exc)) from exc


def network_to_dict(net: ScalarInputNetwork) -> dict:
    def layer_dict(layer: DenseLayer) -> dict:
        return {
            "weights": [[format_rational(w) for w in row] for row in layer.weights],
            "biases": [format_rational(b) for b in layer.biases],
        }

    return {
        "p": net.output_dim,
        "hidden_layers": [layer_dict(layer) for layer in net.hidden_layers],
        "output_layer": layer_dict(net.output_layer),
    }


def load_network(path: str | Path) -> ScalarInputNetwork:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"$: not valid JSON ({exc})") from exc
    return network_from_dict(data)


def save_network(net: ScalarInputNetwork, path: str | Path) -> None:
    Path(path).write_text(json.dumps(network_to_dict(net), indent=2) + "\n")

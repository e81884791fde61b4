"""Dense scalar-input ReLU networks and exact spline extraction.

A network maps one real input through fully-connected ReLU layers to p
affine outputs. Because each unit applies max(0, .) to an affine combination
of piecewise-linear functions, every intermediate signal is a linear spline;
``extract`` computes those splines exactly, layer by layer, so that knots can
be counted rather than estimated.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import Architecture, Tightness, knot_bound, tightness_eligibility
from .rational import ZERO, Rational, RationalLike, as_rational
from .spline import LinearSpline, VectorSpline, affine_combine, relu


@dataclass(frozen=True, slots=True)
class DenseLayer:
    """Weights (rows = units) and biases of one fully-connected layer."""

    weights: tuple[tuple[Rational, ...], ...]
    biases: tuple[Rational, ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(as_rational(w) for w in row) for row in self.weights)
        object.__setattr__(self, "weights", rows)
        object.__setattr__(self, "biases", tuple(as_rational(b) for b in self.biases))
        if not rows:
            raise ValueError("layer needs at least one unit")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("weight rows must all have the same length")
        if len(self.biases) != len(rows):
            raise ValueError(
                f"bias count {len(self.biases)} does not match unit count {len(rows)}"
            )

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def input_width(self) -> int:
        return len(self.weights[0])


@dataclass(frozen=True, slots=True)
class ScalarInputNetwork:
    """Immutable deep ReLU network from one real input to p affine outputs."""

    hidden_layers: tuple[DenseLayer, ...]
    output_layer: DenseLayer

    def __post_init__(self) -> None:
        object.__setattr__(self, "hidden_layers", tuple(self.hidden_layers))
        if not self.hidden_layers:
            raise ValueError("network needs at least one hidden layer")
        if self.hidden_layers[0].input_width != 1:
            raise ValueError("first hidden layer must take a single scalar input")
        prev = self.hidden_layers[0]
        for i, layer in enumerate(self.hidden_layers[1:], start=2):
            if layer.input_width != prev.size:
                raise ValueError(
                    f"hidden layer {i} expects {layer.input_width} inputs, "
                    f"previous layer has {prev.size} units"
                )
            prev = layer
        if self.output_layer.input_width != prev.size:
            raise ValueError(
                f"output layer expects {self.output_layer.input_width} inputs, "
                f"final hidden layer has {prev.size} units"
            )

    @property
    def depth(self) -> int:
        return len(self.hidden_layers)

    @property
    def widths(self) -> tuple[int, ...]:
        return tuple(layer.size for layer in self.hidden_layers)

    @property
    def output_dim(self) -> int:
        return self.output_layer.size

    @property
    def architecture(self) -> Architecture:
        return Architecture(self.widths, output_dim=self.output_dim, input_dim=1)


def evaluate(net: ScalarInputNetwork, x: RationalLike) -> list[Rational]:
    """Exact forward pass at one input value."""
    signal = [as_rational(x)]
    for layer in net.hidden_layers:
        nxt = []
        for row, b in zip(layer.weights, layer.biases):
            pre = sum((w * v for w, v in zip(row, signal) if v), b)
            nxt.append(pre if pre > 0 else ZERO)
        signal = nxt
    return [
        sum((w * v for w, v in zip(row, signal) if v), b)
        for row, b in zip(net.output_layer.weights, net.output_layer.biases)
    ]


@dataclass(frozen=True, slots=True)
class ExtractionTrace:
    """Everything the layer-by-layer extraction produced."""

    per_layer_neuron_splines: tuple[VectorSpline, ...]
    output_splines: VectorSpline
    per_layer_knot_union: tuple[tuple[Rational, ...], ...]

    def output_knot_union(self) -> list[Rational]:
        return self.output_splines.knot_union()


def extract(net: ScalarInputNetwork) -> ExtractionTrace:
    """Compute the exact spline of every unit and of every output.

    Unit k of the first layer is relu of the input line; deeper units apply
    relu to the affine combination of the previous layer's splines; outputs
    are affine combinations without relu. The result agrees with ``evaluate``
    at every point.
    """
    per_layer: list[VectorSpline] = []
    unions: list[tuple[Rational, ...]] = []
    current: list[LinearSpline] = []
    for i, layer in enumerate(net.hidden_layers):
        if i == 0:
            current = [
                relu(LinearSpline.line(row[0], b))
                for row, b in zip(layer.weights, layer.biases)
            ]
        else:
            previous = current
            current = [
                relu(affine_combine(zip(row, previous), b))
                for row, b in zip(layer.weights, layer.biases)
            ]
        vector = VectorSpline(tuple(current))
        per_layer.append(vector)
        unions.append(tuple(vector.knot_union()))
    outputs = VectorSpline(
        tuple(
            affine_combine(zip(row, current), b)
            for row, b in zip(net.output_layer.weights, net.output_layer.biases)
        )
    )
    return ExtractionTrace(tuple(per_layer), outputs, tuple(unions))


@dataclass(frozen=True, slots=True)
class KnotReport:
    """Knot locations and counts, compared against the architectural bound."""

    per_layer_knots: tuple[tuple[Rational, ...], ...]
    per_layer_counts: tuple[int, ...]
    per_output_knots: tuple[tuple[Rational, ...], ...]
    output_knots: tuple[Rational, ...]
    output_knot_count: int
    bound: int
    meets_bound: bool
    tightness: Tightness


def knot_report(net: ScalarInputNetwork) -> KnotReport:
    trace = extract(net)
    arch = net.architecture
    output_union = tuple(trace.output_knot_union())
    bound = knot_bound(arch)
    return KnotReport(
        per_layer_knots=trace.per_layer_knot_union,
        per_layer_counts=tuple(len(u) for u in trace.per_layer_knot_union),
        per_output_knots=tuple(tuple(f.knots()) for f in trace.output_splines),
        output_knots=output_union,
        output_knot_count=len(output_union),
        bound=bound,
        meets_bound=len(output_union) == bound,
        tightness=tightness_eligibility(arch),
    )

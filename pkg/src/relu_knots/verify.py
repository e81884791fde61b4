"""Independent checks on the exact machinery.

The sampling detector never touches the spline extraction path: it runs the
network forward in floating point on a dense grid and looks for second
differences that an affine function cannot produce. The stress search feeds
seeded random networks through extraction and checks the architectural knot
bound, which no network may exceed; for shapes where the bound is known to be
unattainable it records the observed shortfall as evidence (a randomized
search cannot prove nonexistence).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import Architecture, Tightness, knot_bound, tightness_eligibility
from .network import DenseLayer, ScalarInputNetwork, extract
from .rational import Rational, as_rational
from .spline import LinearSpline


@dataclass(frozen=True, slots=True)
class SamplingConfig:
    """Uniform-grid settings for the floating-point knot detector."""

    interval: tuple[Rational, Rational]
    samples: int = 100_001
    slope_change_tolerance: float = 1e-6

    def __post_init__(self) -> None:
        low, high = (as_rational(self.interval[0]), as_rational(self.interval[1]))
        object.__setattr__(self, "interval", (low, high))
        if low >= high:
            raise ValueError("interval must satisfy low < high")
        if self.samples < 3:
            raise ValueError("need at least 3 samples to form a second difference")
        if self.slope_change_tolerance < 0:
            raise ValueError("tolerance must be nonnegative")

    @property
    def grid_step(self) -> float:
        low, high = self.interval
        return float(high - low) / (self.samples - 1)


def _float_forward(net: ScalarInputNetwork, xs: list[float]) -> list[list[float]]:
    """Plain-float forward pass; returns per-output value lists over the grid."""
    layers = [
        (
            [[float(w) for w in row] for row in layer.weights],
            [float(b) for b in layer.biases],
        )
        for layer in net.hidden_layers
    ]
    out_w = [[float(w) for w in row] for row in net.output_layer.weights]
    out_b = [float(b) for b in net.output_layer.biases]

    outputs: list[list[float]] = [[] for _ in out_w]
    for x in xs:
        signal = [x]
        for weights, biases in layers:
            signal = [
                max(0.0, sum(w * v for w, v in zip(row, signal)) + b)
                for row, b in zip(weights, biases)
            ]
        for k, (row, b) in enumerate(zip(out_w, out_b)):
            outputs[k].append(sum(w * v for w, v in zip(row, signal)) + b)
    return outputs


def detect_knots_by_sampling(
    net: ScalarInputNetwork, cfg: SamplingConfig
) -> list[float]:
    """Approximate knot locations of the network over the configured interval.

    A grid cell is flagged when, on any output, the discrete second difference
    exceeds tolerance times that output's largest magnitude on the grid; runs
    of adjacent flagged cells (one knot usually straddles two) merge into a
    single detection at their midpoint. Detection is complete only when true
    knots are separated by more than two grid steps.
    """
    low, high = cfg.interval
    n = cfg.samples
    h = (high - low) / (n - 1)
    xs = [float(low + i * h) for i in range(n)]
    outputs = _float_forward(net, xs)

    flagged = [False] * n
    for ys in outputs:
        scale = max(abs(y) for y in ys)
        threshold = cfg.slope_change_tolerance * scale
        for i in range(1, n - 1):
            if abs(ys[i + 1] - 2.0 * ys[i] + ys[i - 1]) > threshold:
                flagged[i] = True

    detections: list[float] = []
    i = 1
    while i < n - 1:
        if flagged[i]:
            start = i
            while i + 1 < n - 1 and flagged[i + 1]:
                i += 1
            detections.append((xs[start] + xs[i]) / 2.0)
        i += 1
    return detections


@dataclass(frozen=True, slots=True)
class AgreementReport:
    """Sampling detections compared against exact extraction, knot by knot."""

    detected: tuple[float, ...]
    exact: tuple[Rational, ...]
    grid_step: float
    counts_match: bool
    max_location_error: float | None
    agree: bool

    def summary(self) -> str:
        status = "agree" if self.agree else "MISMATCH"
        return (
            f"{status}: detected {len(self.detected)}, exact {len(self.exact)} "
            f"(grid step {self.grid_step:.3g})"
        )


def oracle_agreement(net: ScalarInputNetwork, cfg: SamplingConfig) -> AgreementReport:
    """Run the sampling detector against exact extraction on one interval."""
    low, high = cfg.interval
    exact = tuple(
        x for x in extract(net).output_splines.knot_union() if low <= x <= high
    )
    detected = tuple(detect_knots_by_sampling(net, cfg))
    counts_match = len(detected) == len(exact)
    max_error: float | None = None
    agree = counts_match
    if counts_match and exact:
        errors = [abs(d - float(e)) for d, e in zip(detected, exact)]
        max_error = max(errors)
        agree = max_error <= cfg.grid_step
    return AgreementReport(
        detected=detected,
        exact=exact,
        grid_step=cfg.grid_step,
        counts_match=counts_match,
        max_location_error=max_error,
        agree=agree,
    )


@dataclass(frozen=True, slots=True)
class SawtoothVerdict:
    """Structural sawtooth checks on a spline, all computed exactly."""

    alternating_slopes: bool
    minima_equal: bool
    maxima_equal: bool
    oscillation_range: tuple[Fraction, Fraction]
    ok: bool


def check_sawtooth(f: LinearSpline) -> SawtoothVerdict:
    """Assert the three sawtooth properties: strict slope alternation across
    every piece including both infinite rays, all interior valleys level, and
    all interior peaks level."""
    if len(f.breakpoints) < 2:
        raise ValueError("a sawtooth needs at least 2 knots to oscillate")
    slopes = f.piece_slopes()
    alternating = all(
        s != 0 and t != 0 and (s > 0) != (t > 0) for s, t in zip(slopes, slopes[1:])
    )
    values = f.knot_values()
    minima = [
        v
        for v, left, right in zip(values, slopes, slopes[1:])
        if left < 0 < right
    ]
    maxima = [
        v
        for v, left, right in zip(values, slopes, slopes[1:])
        if left > 0 > right
    ]
    minima_equal = len(set(minima)) <= 1
    maxima_equal = len(set(maxima)) <= 1
    return SawtoothVerdict(
        alternating_slopes=alternating,
        minima_equal=minima_equal,
        maxima_equal=maxima_equal,
        oscillation_range=f.knot_value_range(),
        ok=alternating and minima_equal and maxima_equal,
    )


@dataclass(frozen=True, slots=True)
class StressReport:
    """Outcome of a seeded random search for bound violations."""

    widths: tuple[int, ...]
    output_dim: int
    trials: int
    seed: int
    bound: int
    max_observed: int
    gap: int | None  # bound - max_observed, reported when the bound is unattainable
    note: str = field(default="randomized search: evidence, not proof")

    @property
    def bound_respected(self) -> bool:
        return self.max_observed <= self.bound


def random_network(
    rng: random.Random, arch: Architecture, max_numerator: int = 100, max_denominator: int = 10
) -> ScalarInputNetwork:
    """Network with seeded random rational parameters for the given shape."""

    def value() -> Fraction:
        return Fraction(
            rng.randint(-max_numerator, max_numerator), rng.randint(1, max_denominator)
        )

    def layer(rows: int, cols: int) -> DenseLayer:
        return DenseLayer(
            tuple(tuple(value() for _ in range(cols)) for _ in range(rows)),
            tuple(value() for _ in range(rows)),
        )

    widths = arch.widths
    hidden = [layer(widths[0], 1)]
    for prev, width in zip(widths, widths[1:]):
        hidden.append(layer(width, prev))
    return ScalarInputNetwork(tuple(hidden), layer(arch.output_dim, widths[-1]))


def stress_bound(arch: Architecture, trials: int, seed: int) -> StressReport:
    """Sample random networks of one shape and compare knot counts to the bound.

    Raises if any sample exceeds the bound (that would mean an extraction
    bug, not a counterexample). For shapes where the bound is unattainable,
    the report carries the observed gap as falsification evidence.
    """
    if arch.input_dim != 1:
        raise ValueError("stress search is defined for scalar inputs only")
    rng = random.Random(seed)
    bound = knot_bound(arch)
    max_observed = 0
    for trial in range(trials):
        net = random_network(rng, arch)
        count = len(extract(net).output_splines.knot_union())
        if count > bound:
            raise RuntimeError(
                f"bound violated: {count} > {bound} for widths {arch.widths} "
                f"(seed {seed}, trial {trial})"
            )
        max_observed = max(max_observed, count)
    not_tight = tightness_eligibility(arch) is Tightness.NOT_TIGHT
    return StressReport(
        widths=arch.widths,
        output_dim=arch.output_dim,
        trials=trials,
        seed=seed,
        bound=bound,
        max_observed=max_observed,
        gap=bound - max_observed if not_tight else None,
    )

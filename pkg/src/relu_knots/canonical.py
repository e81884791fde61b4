"""Forward-facing reparameterization of single-hidden-layer networks.

Any shallow scalar-input ReLU network can be rewritten so that every unit is
a shifted ramp max(0, x - x_j) opening to the right, plus one explicit line.
The rewrite rests on the identity max(0, x) = max(0, -x) + x: units whose
input weight is negative have their ramp reflected, and the linear remainder
is absorbed into the line. The parameters are then directly interpretable:
x_j is the knot each unit contributes, s_kj the slope its ramp adds to output
k, and the line (c1, c0) completes the equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .network import ScalarInputNetwork
from .rational import ZERO, Rational, RationalLike, as_rational


@dataclass(frozen=True, slots=True)
class CanonicalShallowForm:
    """Sorted knots x_j, ramp slope matrix s_kj, and per-output line (c1, c0).

    ``folded_units`` lists original unit indices whose input weight was zero;
    such units are constants and were absorbed into the intercepts, since
    they contribute no knot. Duplicate knot locations are kept: the form is a
    reparameterization, not an analysis, and distinct units stay distinct.
    """

    knot_locations: tuple[Rational, ...]
    ray_slopes: tuple[tuple[Rational, ...], ...]
    line_slope: tuple[Rational, ...]
    line_intercept: tuple[Rational, ...]
    folded_units: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        n = len(self.knot_locations)
        if any(len(row) != n for row in self.ray_slopes):
            raise ValueError("ray_slopes rows must match the number of knots")
        p = len(self.ray_slopes)
        if len(self.line_slope) != p or len(self.line_intercept) != p:
            raise ValueError("line coefficient lengths must match the output count")
        if any(
            a > b for a, b in zip(self.knot_locations, self.knot_locations[1:])
        ):
            raise ValueError("knot locations must be non-decreasing")

    @property
    def output_dim(self) -> int:
        return len(self.ray_slopes)


def to_forward_facing(net: ScalarInputNetwork) -> CanonicalShallowForm:
    """Rewrite a one-hidden-layer network in forward-facing form.

    For units with input weight w != 0: x_j = -b_j / w_j, s_kj = w2_kj * |w_j|,
    and the negative-weight units contribute w2_kj * w_j to the line slope and
    w2_kj * b_j to the intercept. Units with w = 0 output the constant
    max(0, b_j) and are folded into the intercepts.
    """
    if net.depth != 1:
        raise ValueError(
            f"forward-facing form is defined for one hidden layer, got {net.depth}"
        )
    hidden = net.hidden_layers[0]
    out = net.output_layer
    p = out.size

    line_slope = [ZERO for _ in range(p)]
    line_intercept = [as_rational(b) for b in out.biases]
    kept: list[tuple[Rational, int]] = []  # (knot location, unit index)
    folded: list[int] = []
    for j in range(hidden.size):
        w = hidden.weights[j][0]
        b = hidden.biases[j]
        if w == 0:
            folded.append(j)
            constant = max(ZERO, b)
            for k in range(p):
                line_intercept[k] += out.weights[k][j] * constant
            continue
        if w < 0:
            for k in range(p):
                line_slope[k] += out.weights[k][j] * w
                line_intercept[k] += out.weights[k][j] * b
        kept.append((-b / w, j))

    kept.sort(key=lambda pair: pair[0])  # stable: ties keep unit order
    knots = tuple(x for x, _ in kept)
    ray_slopes = tuple(
        tuple(out.weights[k][j] * abs(hidden.weights[j][0]) for _, j in kept)
        for k in range(p)
    )
    return CanonicalShallowForm(
        knot_locations=knots,
        ray_slopes=ray_slopes,
        line_slope=tuple(line_slope),
        line_intercept=tuple(line_intercept),
        folded_units=tuple(folded),
    )


def eval_canonical(form: CanonicalShallowForm, x: RationalLike) -> list[Rational]:
    """Exact evaluation of the forward-facing form at x."""
    x = as_rational(x)
    ramps = [x - xj if x > xj else ZERO for xj in form.knot_locations]
    return [
        sum(
            (s * r for s, r in zip(row, ramps) if r),
            form.line_slope[k] * x + form.line_intercept[k],
        )
        for k, row in enumerate(form.ray_slopes)
    ]

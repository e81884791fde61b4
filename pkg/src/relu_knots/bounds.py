"""Knot-count bounds for scalar-input ReLU network architectures.

The exact bound for widths (n_1, ..., n_l) is

    sum over i of  n_i * product over j > i of (n_j + 1)

with the empty product equal to 1, which is the same as folding the per-layer
recurrence m -> (n + 1) * m + n from m = 0. Each neuron of a layer can keep
every incoming knot and can add at most one new knot per affine piece, of
which there are m + 1; the recurrence is that budget per layer.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Tightness(enum.Enum):
    """Whether the bound is attainable for a given architecture."""

    TIGHT = "tight"
    NOT_TIGHT = "not_tight"
    UNKNOWN = "unknown"


@dataclass(frozen=True, slots=True)
class Architecture:
    """Hidden-layer widths plus input/output dimensions of a dense network."""

    widths: tuple[int, ...]
    output_dim: int = 1
    input_dim: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "widths", tuple(int(n) for n in self.widths))
        if not self.widths or any(n < 1 for n in self.widths):
            raise ValueError(f"widths must be positive: {self.widths}")
        if self.output_dim < 1:
            raise ValueError("output_dim must be positive")
        if self.input_dim < 1:
            raise ValueError("input_dim must be positive")

    @property
    def depth(self) -> int:
        return len(self.widths)


def _require_scalar_input(arch: Architecture) -> None:
    if arch.input_dim != 1:
        raise ValueError(
            f"knot bounds are defined for scalar inputs only (input_dim = {arch.input_dim})"
        )


def recurrence_step(m_prev: int, n_i: int) -> int:
    """Maximum knots after one more layer of width n_i: (n_i + 1) * m + n_i."""
    if m_prev < 0:
        raise ValueError("knot count cannot be negative")
    if n_i < 1:
        raise ValueError("layer width must be positive")
    return (n_i + 1) * m_prev + n_i


def bound_prefixes(arch: Architecture) -> list[int]:
    """Per-layer bounds m_1, ..., m_l obtained by folding the recurrence."""
    _require_scalar_input(arch)
    prefixes: list[int] = []
    m = 0
    for n in arch.widths:
        m = recurrence_step(m, n)
        prefixes.append(m)
    return prefixes


def knot_bound(arch: Architecture) -> int:
    """Exact maximum number of knots any network of this shape can produce."""
    _require_scalar_input(arch)
    widths = arch.widths
    total = 0
    trailing = 1  # product of (n_j + 1) for j > i, accumulated right to left
    for n in reversed(widths):
        total += n * trailing
        trailing *= n + 1
    assert total == bound_prefixes(arch)[-1]
    return total


def approx_bound(arch: Architecture) -> int:
    """Product of the widths; the leading term of the exact bound."""
    _require_scalar_input(arch)
    product = 1
    for n in arch.widths:
        product *= n
    return product


def param_count(arch: Architecture) -> int:
    """Number of scalar weights and biases in a dense network of this shape."""
    widths = arch.widths
    total = (arch.input_dim + 1) * widths[0]
    for n_in, n_out in zip(widths, widths[1:]):
        total += (n_in + 1) * n_out
    total += (widths[-1] + 1) * arch.output_dim
    return total


def tightness_eligibility(arch: Architecture) -> Tightness:
    """Classify whether some network of this shape attains the exact bound.

    One hidden layer is always attainable: distinct knot locations suffice.
    Deeper networks need every non-final layer to support a sawtooth (width
    at least 3) and a final layer that can both keep and create knots (width
    at least 2). Any deep architecture failing that is unattainable; UNKNOWN
    is kept defensively for cases outside both classifications.
    """
    widths = arch.widths
    if len(widths) == 1:
        return Tightness.TIGHT
    if all(n >= 3 for n in widths[:-1]) and widths[-1] >= 2:
        return Tightness.TIGHT
    if any(n < 3 for n in widths[:-1]) or widths[-1] == 1:
        return Tightness.NOT_TIGHT
    return Tightness.UNKNOWN


def ineligibility_reason(arch: Architecture) -> str | None:
    """Human-readable reason the bound is unattainable, or None if it is not."""
    if tightness_eligibility(arch) is not Tightness.NOT_TIGHT:
        return None
    widths = arch.widths
    for i, n in enumerate(widths[:-1], start=1):
        if n < 3:
            return (
                f"layer {i} has width {n} < 3: no affine combination of fewer than "
                "three units can alternate slope signs across every piece"
            )
    return (
        "final layer has width 1: a single unit cannot keep all incoming knots "
        "while also creating new ones"
    )

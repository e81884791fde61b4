from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from relu_knots import LinearSpline

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=12
)
nonzero_rationals = rationals.filter(lambda q: q != 0)


@st.composite
def splines(draw, max_breakpoints: int = 6) -> LinearSpline:
    slope = draw(rationals)
    intercept = draw(rationals)
    xs = draw(
        st.lists(rationals, unique=True, min_size=0, max_size=max_breakpoints)
    )
    deltas = draw(
        st.lists(nonzero_rationals, min_size=len(xs), max_size=len(xs))
    )
    return LinearSpline(slope, intercept, tuple(sorted(zip(xs, deltas))))


def seeded_points(seed: int, count: int, denominator_limit: int = 100) -> list[Fraction]:
    rng = random.Random(seed)
    return [
        Fraction(rng.randint(-1000, 1000), rng.randint(1, denominator_limit))
        for _ in range(count)
    ]

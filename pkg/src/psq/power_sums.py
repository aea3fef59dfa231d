"""Power sums and the degree-zero quotient built from them.

For a vector x with strictly positive entries, write

    M_p(x) = sum_i x_i**p,   p = 1, 2, 3.

The central object is the quotient

    Q(x, y) = (M_1(x) - M_1(y)) * (M_2(y) - M_2(x)) / (M_3(x) + M_3(y)),

defined for any pair of positive vectors, including pairs of unequal
length.  Q is homogeneous of degree zero (Q(t*x, t*y) = Q(x, y) for
t > 0) and symmetric (Q(x, y) = Q(y, x), both numerator factors flip
sign).  The denominator is always positive.

Float inputs are accumulated with math.fsum, which is error-free up to
the final rounding, so results are deterministic and order-stable.  If
every entry is exact (int or fractions.Fraction), the computation stays
in exact rational arithmetic end to end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

Entry = Union[int, float, Fraction]

__all__ = [
    "PowerSumTriple",
    "QuotientValue",
    "power_sums",
    "quotient_q",
    "q_ordered_nonpositive",
    "quotient_q_batch",
    "validate_positive_vector",
]


@dataclass(frozen=True)
class PowerSumTriple:
    """First three power sums of a positive vector."""

    m1: Entry
    m2: Entry
    m3: Entry


@dataclass(frozen=True)
class QuotientValue:
    """Value of Q(x, y) together with its three building blocks.

    s1 = M_1(x) - M_1(y), s2 = M_2(y) - M_2(x), s3 = M_3(x) + M_3(y),
    value = s1 * s2 / s3.  s3 > 0 always.
    """

    value: Entry
    s1: Entry
    s2: Entry
    s3: Entry


def validate_positive_vector(entries, name: str = "x") -> list:
    """Check entries are a nonempty sequence of finite, positive numbers.

    Returns the entries as a plain list (Fractions preserved).  Raises
    ValueError naming the offending entry on the first violation.
    Subnormal floats are accepted; zero, negatives, NaN and inf are not.
    """
    if isinstance(entries, np.ndarray):
        entries = entries.tolist()
    try:
        out = list(entries)
    except TypeError:
        raise ValueError(f"{name} must be a sequence of numbers") from None
    if not out:
        raise ValueError(f"{name} must be nonempty")
    for idx, e in enumerate(out):
        if isinstance(e, bool) or not isinstance(e, (int, float, Fraction, np.integer, np.floating)):
            raise ValueError(f"{name}[{idx}] = {e!r} is not a number")
        if isinstance(e, (float, np.floating)) and not math.isfinite(e):
            raise ValueError(f"{name}[{idx}] = {e!r} is not finite")
        if e <= 0:
            raise ValueError(f"{name}[{idx}] = {e!r} is not > 0; all entries must be positive")
    return out


def _all_exact(entries: Sequence) -> bool:
    return all(isinstance(e, (int, Fraction)) and not isinstance(e, bool) for e in entries)


def power_sums(entries, name: str = "x") -> PowerSumTriple:
    """M_1, M_2, M_3 of a positive vector.

    Example: (1, 1/2, 1/4) -> (7/4, 21/16, 73/64).
    """
    v = validate_positive_vector(entries, name)
    if _all_exact(v):
        return PowerSumTriple(
            sum(e for e in v), sum(e * e for e in v), sum(e ** 3 for e in v)
        )
    fv = [float(e) for e in v]
    return PowerSumTriple(
        math.fsum(fv),
        math.fsum(e * e for e in fv),
        math.fsum(e ** 3 for e in fv),
    )


def quotient_q(x, y) -> QuotientValue:
    """Q(x, y) for positive vectors x, y; lengths may differ.

    Returns a QuotientValue carrying the three components.  Exact
    rational inputs give an exact rational result.
    """
    px = power_sums(x, "x")
    py = power_sums(y, "y")
    s1 = px.m1 - py.m1
    s2 = py.m2 - px.m2
    s3 = px.m3 + py.m3
    if _all_exact((s1, s2, s3)):
        value = Fraction(s1) * Fraction(s2) / Fraction(s3)
    else:
        value = s1 * s2 / s3
    return QuotientValue(value=value, s1=s1, s2=s2, s3=s3)


def q_ordered_nonpositive(x, y) -> float:
    """Q(x, y) for a componentwise comparable pair; asserts it is <= 0.

    Requires len(x) == len(y) and either x_i >= y_i for all i or
    x_i <= y_i for all i.  Non-comparable pairs are a precondition
    violation (ValueError), not a math failure.  A positive computed
    value beyond float roundoff raises AssertionError; the checked
    value is returned.
    """
    vx = validate_positive_vector(x, "x")
    vy = validate_positive_vector(y, "y")
    if len(vx) != len(vy):
        raise ValueError(f"x and y must have equal length, got {len(vx)} and {len(vy)}")
    if not (
        all(a >= b for a, b in zip(vx, vy)) or all(a <= b for a, b in zip(vx, vy))
    ):
        raise ValueError("x and y are not componentwise comparable")
    q = quotient_q(vx, vy)
    value = float(q.value)
    # Exact arithmetic gives <= 0; float cancellation can leave a speck.
    if value > 1e-12 * max(1.0, abs(float(q.s1)), abs(float(q.s2))):
        raise AssertionError(f"ordered pair produced positive quotient {value!r}")
    return value


def quotient_q_batch(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Vectorized Q over row-paired batches (floats only).

    xs has shape (k, n_x) and ys shape (k, n_y); returns k quotients.
    Plain np.sum accumulation; cross-checked against quotient_q in the
    test suite, intended for sampling and bulk bound checks.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.ndim != 2 or ys.ndim != 2 or xs.shape[0] != ys.shape[0]:
        raise ValueError("xs and ys must be 2-D with matching row counts")
    if xs.size == 0 or ys.size == 0:
        raise ValueError("batches must be nonempty")
    if (xs <= 0).any() or (ys <= 0).any() or not (np.isfinite(xs).all() and np.isfinite(ys).all()):
        raise ValueError("all entries must be finite and > 0")
    s1 = xs.sum(axis=1) - ys.sum(axis=1)
    s2 = (ys * ys).sum(axis=1) - (xs * xs).sum(axis=1)
    s3 = (xs ** 3).sum(axis=1) + (ys ** 3).sum(axis=1)
    return s1 * s2 / s3

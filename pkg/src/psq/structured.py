"""Sharp constants and structured maximization of the power-sum quotient.

Maximizers of Q over a pair of positive orthants degenerate to block
form: one side is a 0/1 block vector (i unit entries, the rest tending
to zero), the other side is a constant vector.  After scaling the block
value to 1, a configuration with i unit entries against m entries equal
to gamma has

    g_{i,m}(gamma) = (i - m*gamma) * (m*gamma**2 - i) / (i + m*gamma**3)

and the supremum of Q over R^{n_x} x R^{n_y} is the best such value
over both side assignments and all integer i.  The zeros are closure
limits, so the supremum is approached but never attained.

The continuous relaxation i = p*n collapses to the two-variable problem

    f(p, gamma) = (p - gamma) * (gamma**2 - p) / (p + gamma**3)

whose unique positive critical point is

    p*     = (16 - 5*sqrt(7)) / 27  ~ 0.102
    gamma* = (sqrt(7) - 2) / 3      ~ 0.215
    c*     = (7*sqrt(7) - 17) / 27  ~ 0.0563  (the value f(p*, gamma*))

c* governs the sharp linear growth sup Q < c* * n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .power_sums import quotient_q

__all__ = [
    "Constants",
    "CONSTANTS",
    "SQRT7",
    "C_STAR",
    "P_STAR",
    "GAMMA_STAR",
    "StructuredConfig",
    "SupQResult",
    "reduced_objective",
    "solve_reduced",
    "sup_q",
    "witness_vectors",
    "positivity_witness",
    "X_CHECK",
    "Y_CHECK",
]

SQRT7 = math.sqrt(7.0)
C_STAR = (7.0 * SQRT7 - 17.0) / 27.0
P_STAR = (16.0 - 5.0 * SQRT7) / 27.0
GAMMA_STAR = (SQRT7 - 2.0) / 3.0

# Hardcoded positive-quotient pair for the (7, 6) case; all entries are
# dyadic rationals, so the float representation is exact.
X_CHECK = (1.5, 2.0 ** -24, 2.0 ** -23, 2.0 ** -21, 2.0 ** -13, 2.0 ** -12, 0.75)
Y_CHECK = (1.0, 2.0 ** -8, 2.0 ** -6, 2.0 ** -4, 0.5, 1.0)

_GRID_POINTS = 256
_GAMMA_LO = 1e-6
_GAMMA_HI = 1.0 - 1e-6
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class Constants:
    """The three closed-form constants of the reduced problem."""

    c_star: float = C_STAR
    p_star: float = P_STAR
    gamma_star: float = GAMMA_STAR


CONSTANTS = Constants()


@dataclass(frozen=True)
class StructuredConfig:
    """One block configuration: i unit entries vs m constant entries.

    side says which vector carries the unit block; the other vector is
    constant at gamma.  s1, s2, s3 are the quotient components of the
    configuration (signs depend on side), q_value = s1 * s2 / s3.
    """

    i: int
    m: int
    gamma: float
    side: str  # "x_is_block" or "y_is_block"
    s1: float
    s2: float
    s3: float
    q_value: float


@dataclass(frozen=True)
class SupQResult:
    """Supremum of Q over positive orthants of dimensions (n_x, n_y).

    attained is always False: the supremum is approached through
    closure limits (block zeros, or x -> y in the degenerate case).
    bracket, when set, is a certified enclosure shared by the (3, 3)
    and (3, 2) problems; it is attached to both and is not a per-split
    certification.
    """

    n_x: int
    n_y: int
    sup_value: float
    maximizing_config: StructuredConfig
    attained: bool = False
    bracket: Optional[Tuple[float, float]] = None

    def witness_pair(self, eps: float = 1e-6):
        """Materialize the maximizing configuration as positive vectors.

        Block-side entries below the unit block are filled with eps
        (the closure zeros).  Q of the returned pair tends to sup_value
        as eps -> 0.
        """
        if eps <= 0:
            raise ValueError("eps must be > 0")
        c = self.maximizing_config
        if c.side == "x_is_block":
            x = [1.0] * c.i + [eps] * (self.n_x - c.i)
            y = [c.gamma] * c.m
        else:
            x = [c.gamma] * c.m
            y = [1.0] * c.i + [eps] * (self.n_y - c.i)
        return x, y


def reduced_objective(p: float, gamma: float) -> float:
    """f(p, gamma) = (p - gamma)(gamma^2 - p)/(p + gamma^3), p, gamma > 0."""
    if p <= 0 or gamma <= 0:
        raise ValueError("p and gamma must be > 0")
    return (p - gamma) * (gamma * gamma - p) / (p + gamma ** 3)


def _reduced_gradient(p: float, gamma: float):
    s1 = p - gamma
    s2 = gamma * gamma - p
    s3 = p + gamma ** 3
    f = s1 * s2 / s3
    fp = (s2 - s1 - f) / s3
    fg = (2.0 * gamma * s1 - s2 - 3.0 * gamma * gamma * f) / s3
    return f, fp, fg


def solve_reduced(tol: float = 1e-9, verify: bool = True):
    """Closed-form maximizer (p*, gamma*, c*) of the reduced objective.

    With verify=True (default) an internal two-stage numeric
    maximization over (0,1)^2 (dense grid, then Newton on the analytic
    gradient) must reproduce the point and value within tol, else
    RuntimeError.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    if verify:
        grid = np.linspace(0.005, 0.995, 199)
        best = (-np.inf, 0.1, 0.2)
        for p in grid:
            s1 = p - grid
            s2 = grid * grid - p
            s3 = p + grid ** 3
            vals = s1 * s2 / s3
            j = int(np.argmax(vals))
            if vals[j] > best[0]:
                best = (float(vals[j]), float(p), float(grid[j]))
        _, p, g = best
        h = 1e-6
        for _ in range(60):
            f, fp, fg = _reduced_gradient(p, g)
            fpp = (_reduced_gradient(p + h, g)[1] - _reduced_gradient(p - h, g)[1]) / (2 * h)
            fpg = (_reduced_gradient(p, g + h)[1] - _reduced_gradient(p, g - h)[1]) / (2 * h)
            fgg = (_reduced_gradient(p, g + h)[2] - _reduced_gradient(p, g - h)[2]) / (2 * h)
            det = fpp * fgg - fpg * fpg
            if det == 0:
                break
            dp = (fp * fgg - fg * fpg) / det
            dg = (fg * fpp - fp * fpg) / det
            p, g = p - dp, g - dg
            if abs(dp) < 1e-15 and abs(dg) < 1e-15:
                break
        f_num = reduced_objective(p, g)
        if (
            abs(f_num - C_STAR) > tol
            or abs(p - P_STAR) > tol
            or abs(g - GAMMA_STAR) > tol
        ):
            raise RuntimeError(
                f"numeric maximization disagrees with closed form: "
                f"point ({p!r}, {g!r}), value {f_num!r}"
            )
    return P_STAR, GAMMA_STAR, C_STAR


def _g_config(i: int, m: int, gamma: float) -> float:
    return (i - m * gamma) * (m * gamma * gamma - i) / (i + m * gamma ** 3)


def _g_config_prime(i: int, m: int, gamma: float) -> float:
    n1 = i - m * gamma
    n2 = m * gamma * gamma - i
    num = n1 * n2
    den = i + m * gamma ** 3
    dnum = -m * n2 + n1 * 2.0 * m * gamma
    dden = 3.0 * m * gamma * gamma
    return (dnum * den - num * dden) / (den * den)


def _golden_max(i: int, m: int, a: float, b: float, xtol: float):
    h = b - a
    c = a + _INVPHI2 * h
    d = a + _INVPHI * h
    fc = _g_config(i, m, c)
    fd = _g_config(i, m, d)
    while h > xtol:
        if fc > fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + _INVPHI2 * h
            fc = _g_config(i, m, c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INVPHI * h
            fd = _g_config(i, m, d)
    x = 0.5 * (a + b)
    return x, _g_config(i, m, x)


def _maximize_config(i: int, m: int, xtol: float):
    """Best gamma in (0, 1) for the (i, m) configuration.

    Log-spaced bracketing grid, golden-section refinement of every grid
    local maximum, then a short Newton polish on the analytic
    derivative.  Returns (gamma, value).
    """
    grid = np.exp(
        np.linspace(math.log(_GAMMA_LO), math.log(_GAMMA_HI), _GRID_POINTS)
    )
    vals = [_g_config(i, m, t) for t in grid]
    best_x, best_v = _GAMMA_HI, vals[-1]
    for j in range(_GRID_POINTS):
        lo = max(j - 1, 0)
        hi = min(j + 1, _GRID_POINTS - 1)
        if vals[j] >= vals[lo] and vals[j] >= vals[hi]:
            x, v = _golden_max(i, m, grid[lo], grid[hi], xtol)
            a, b = grid[lo], grid[hi]
            t = x
            for _ in range(8):
                d1 = _g_config_prime(i, m, t)
                h = 1e-6
                d2 = (_g_config_prime(i, m, t + h) - _g_config_prime(i, m, t - h)) / (2 * h)
                if d2 == 0:
                    break
                step = d1 / d2
                t2 = t - step
                if not (a < t2 < b):
                    break
                t = t2
                if abs(step) < 1e-15:
                    break
            v2 = _g_config(i, m, t)
            if v2 > v:
                x, v = t, v2
            if v > best_v:
                best_x, best_v = x, v
    return best_x, best_v


def _config_from(i: int, m: int, gamma: float, side: str) -> StructuredConfig:
    if side == "x_is_block":
        s1 = i - m * gamma
        s2 = m * gamma * gamma - i
    else:
        s1 = m * gamma - i
        s2 = i - m * gamma * gamma
    s3 = i + m * gamma ** 3
    return StructuredConfig(
        i=i, m=m, gamma=gamma, side=side, s1=s1, s2=s2, s3=s3, q_value=s1 * s2 / s3
    )


def _derivative_check(i: int, m: int, gamma: float, value: float) -> None:
    h = 1e-7
    d = (_g_config(i, m, gamma + h) - _g_config(i, m, gamma - h)) / (2 * h)
    if abs(d) > 1e-6 * max(1.0, abs(value)):
        raise RuntimeError(
            f"stationarity check failed at config (i={i}, m={m}, gamma={gamma!r}): "
            f"derivative {d!r}"
        )


def sup_q(n_x: int, n_y: int, tol: float = 1e-9) -> SupQResult:
    """Supremum of Q over positive orthants of dimensions (n_x, n_y).

    Tries both side assignments and every unit-block count i from 1 to
    the block side's length, maximizing g over gamma in (0, 1) for each.
    The value is >= 0, with equality exactly for (1, 1), where the
    degenerate x = y limit (gamma -> 1) is reported.  Restricting the
    constant side to full length loses nothing: the best value of the
    (i, m) configuration is nondecreasing in m, and an independent
    multistart oracle confirms agreement for all small dimensions.
    """
    if not (isinstance(n_x, int) and isinstance(n_y, int)) or n_x < 1 or n_y < 1:
        raise ValueError(f"dimensions must be integers >= 1, got ({n_x!r}, {n_y!r})")
    if tol <= 0:
        raise ValueError("tol must be > 0")
    xtol = max(min(tol, 1e-12), 1e-15)

    best: Optional[StructuredConfig] = None
    for side, (block_len, m) in (
        ("x_is_block", (n_x, n_y)),
        ("y_is_block", (n_y, n_x)),
    ):
        for i in range(1, block_len + 1):
            gamma, value = _maximize_config(i, m, xtol)
            if best is None or value > best.q_value:
                best = _config_from(i, m, gamma, side)

    if best is None or best.q_value <= 0.0:
        # Degenerate: no positive configuration; sup 0 is the x = y limit.
        i = min(n_x, n_y)
        side = "x_is_block" if n_y <= n_x else "y_is_block"
        best = _config_from(i, i, 1.0, side)
        sup_value = 0.0
    else:
        _derivative_check(best.i, best.m, best.gamma, best.q_value)
        sup_value = best.q_value

    bracket = None
    if tuple(sorted((n_x, n_y))) in ((2, 3), (3, 3)):
        bracket = (0.1079, 0.1080)
    return SupQResult(
        n_x=n_x,
        n_y=n_y,
        sup_value=sup_value,
        maximizing_config=best,
        attained=False,
        bracket=bracket,
    )


def witness_vectors(n: int, extra_component: bool = False):
    """Near-optimal pair: floor(p*n) unit entries padded with 1/n, vs gamma*.

    x has floor(p*n) entries equal to 1 and 1/n elsewhere (length n);
    y is the constant vector gamma* of length n.  With
    extra_component=True, x gets one more 1/n entry (length n+1).
    Q of the pair is negative for n <= 9 and approaches c* * n from
    below as n grows; at n = 10**4 the ratio Q/n is within 1% of c*.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    i = int(P_STAR * n)
    inv = 1.0 / n
    x = [1.0] * i + [inv] * (n - i)
    if extra_component:
        x.append(inv)
    y = [GAMMA_STAR] * n
    return x, y


def _half_split_witness(n: int, extra_component: bool = False):
    x = [1.0] * ((n + 1) // 2) + [1.0 / n] * (n // 2)
    if extra_component:
        x.append(1.0 / n)
    y = [0.701] * n
    return x, y


def positivity_witness(n_x: int, n_y: int):
    """A pair with Q > 0 for dimensions (n_x, n_y), or None for (1, 1).

    Requires n_x == n_y or n_x == n_y + 1.  Closed-form families cover
    the large cases (half-unit block against a 0.701 constant vector);
    (7, 6) uses a hardcoded dyadic pair; the remaining small cases fall
    back to the structured maximizer materialized with a small eps.
    Returns (x, y, q) with q > 0 verified.
    """
    if not (isinstance(n_x, int) and isinstance(n_y, int)) or n_y < 1:
        raise ValueError(f"dimensions must be integers >= 1, got ({n_x!r}, {n_y!r})")
    if n_x not in (n_y, n_y + 1):
        raise ValueError(f"need n_x == n_y or n_x == n_y + 1, got ({n_x}, {n_y})")
    if (n_x, n_y) == (1, 1):
        return None
    if (n_x, n_y) == (7, 6):
        x, y = list(X_CHECK), list(Y_CHECK)
    elif n_x == n_y and n_x >= 4:
        x, y = _half_split_witness(n_x)
    elif n_x == n_y + 1 and n_y >= 7:
        x, y = _half_split_witness(n_y, extra_component=True)
    else:
        res = sup_q(n_x, n_y)
        x = y = None
        for eps in (1e-6, 1e-9, 1e-12):
            cx, cy = res.witness_pair(eps)
            if float(quotient_q(cx, cy).value) > 0.0:
                x, y = cx, cy
                break
        if x is None:
            raise RuntimeError(f"no positive witness found for ({n_x}, {n_y})")
    q = float(quotient_q(x, y).value)
    if q <= 0.0:
        raise RuntimeError(f"witness for ({n_x}, {n_y}) has nonpositive quotient {q!r}")
    return x, y, q

"""Cubic forms on the positive orthant and the positivity cone.

A d x d coefficient matrix M defines, for z > 0 and a sign vector
s in {-1, +1}^d, the cubic form

    Psi_M(z, s) = sum_l m_ll z_l^3 + sum_l sum_{k != l} m_lk s_l z_l s_k z_k^2.

M belongs to the positivity cone when Psi_M(z, s) >= 0 for every z > 0
and every sign pattern.  Psi is invariant under flipping all signs, so
it suffices to check canonical patterns (first entry -1), and the
all-minus pattern reduces to all-plus; that leaves 2^(d-1) - 1 patterns.

For the equal-off-diagonal family M_d(b) (unit diagonal, off-diagonal b)
the form collapses: grouping z into the minus block x and the plus
block y,

    Psi_{M_d(b)}(z, s) = (M_3(x) + M_3(y)) * (1 - b * (1 + Q(x, y))),

so M_d(b) is in the cone exactly for b <= b_d = 1 / (1 + S_d), where
S_d is the supremum of Q over the balanced split
(ceil(d/2), floor(d/2)).  b_2 = 1 and b_3 = b_4 have the closed form
(sqrt((3/5)(39 + 16 sqrt(6))) - 3) / 4.

General matrices have no computable exact criterion here; they get a
sufficient diagonal-dominance certificate and a randomized search for
violating pairs (z, s) that can only ever certify non-membership.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

import numpy as np

from .power_sums import validate_positive_vector
from .structured import C_STAR, sup_q

__all__ = [
    "MatrixSpec",
    "PsiWitness",
    "MembershipReport",
    "GeneralReport",
    "BdReport",
    "psi",
    "psi_over_patterns",
    "enumerate_sign_patterns",
    "reduced_sign_pattern",
    "check_diagonal_dominance",
    "membership_equal_offdiag",
    "certify_general",
    "sample_membership_general",
    "compute_bd",
    "b3_radical",
    "b3_quartic_root",
]

_EPS_SCHEDULE = (1e-6, 1e-9, 1e-12)


@dataclass(frozen=True)
class MatrixSpec:
    """Coefficient matrix, either the M_d(b) family or explicit entries."""

    d: int
    b: Optional[float] = None
    entries: Optional[Tuple[Tuple[float, ...], ...]] = None

    @classmethod
    def equal_off_diagonal(cls, d: int, b: float) -> "MatrixSpec":
        if not isinstance(d, int) or d < 2:
            raise ValueError(f"d must be an integer >= 2, got {d!r}")
        b = float(b)
        if not math.isfinite(b) or not 0.0 <= b <= 1.0:
            raise ValueError(f"b must lie in [0, 1], got {b!r}")
        return cls(d=d, b=b)

    @classmethod
    def general(cls, entries) -> "MatrixSpec":
        arr = np.asarray(entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"entries must be a square matrix, got shape {arr.shape}")
        if arr.shape[0] < 2:
            raise ValueError("matrix must be at least 2 x 2")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix entries must be finite")
        rows = tuple(tuple(float(v) for v in row) for row in arr)
        return cls(d=arr.shape[0], entries=rows)

    @property
    def kind(self) -> str:
        return "general" if self.entries is not None else "equal_off_diagonal"

    def dense(self) -> np.ndarray:
        if self.entries is not None:
            return np.array(self.entries, dtype=float)
        m = np.full((self.d, self.d), self.b, dtype=float)
        np.fill_diagonal(m, 1.0)
        return m

    def to_json_dict(self) -> dict:
        if self.entries is not None:
            return {"d": self.d, "entries": [list(row) for row in self.entries]}
        return {"d": self.d, "b": self.b}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "MatrixSpec":
        if not isinstance(obj, dict):
            raise ValueError("matrix spec must be a JSON object")
        if "entries" in obj:
            spec = cls.general(obj["entries"])
            if "d" in obj and int(obj["d"]) != spec.d:
                raise ValueError(
                    f"declared d={obj['d']} does not match entries of size {spec.d}"
                )
            return spec
        if "b" in obj:
            if "d" not in obj:
                raise ValueError("equal-off-diagonal spec needs both 'd' and 'b'")
            return cls.equal_off_diagonal(int(obj["d"]), float(obj["b"]))
        raise ValueError("matrix spec needs either 'entries' or ('d', 'b')")


@dataclass(frozen=True)
class PsiWitness:
    """A (z, s) pair with Psi_M(z, s) < 0, certifying non-membership."""

    z: Tuple[float, ...]
    s: Tuple[int, ...]
    psi_value: float

    def to_json_dict(self) -> dict:
        return {"z": list(self.z), "s": list(self.s), "psi": self.psi_value}


@dataclass(frozen=True)
class MembershipReport:
    """Verdict for M_d(b): member_certified, nonmember, or inconclusive.

    The margin is 10 * tol around the threshold b_d; b inside the
    margin is reported inconclusive rather than resolved by a
    sub-tolerance comparison.
    """

    d: int
    b: float
    b_d: float
    verdict: str
    tol: float
    margin: float
    witness: Optional[PsiWitness] = None

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "b": self.b,
            "b_d": self.b_d,
            "verdict": self.verdict,
            "tol": self.tol,
            "margin": self.margin,
            "witness": self.witness.to_json_dict() if self.witness else None,
        }


@dataclass(frozen=True)
class GeneralReport:
    """Verdict for an explicit matrix: sufficient certificate or search.

    method is "diagonal_dominance" when the certificate fired,
    otherwise "sampling"; sampling never certifies membership, so its
    verdicts are nonmember or inconclusive.
    """

    d: int
    verdict: str
    method: str
    n_evaluated: int
    seed: Optional[int] = None
    witness: Optional[PsiWitness] = None

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "verdict": self.verdict,
            "method": self.method,
            "n_evaluated": self.n_evaluated,
            "seed": self.seed,
            "witness": self.witness.to_json_dict() if self.witness else None,
        }


@dataclass(frozen=True)
class BdReport:
    """The threshold b_d with its companion estimates.

    lower_bound   = 1 / (1 + c* floor(d/2)), the published growth-bound
    estimate; a true lower bound for even d and for d <= 6, but for odd
    d >= 7 the balanced supremum can exceed c* floor(d/2) and only the
    ceil form 1 / (1 + c* ceil(d/2)) is valid.
    witness_upper = 1 / (1 + Q(x, y)) for the near-optimal growth pair
    on the balanced split; present only when that quotient is positive
    (which needs ceil(d/2) >= 10).
    asymptotic    = 2 / (c* d);
    bracket       = certified enclosure, available for d in {5, 6};
    exact         = closed-form value, available for d <= 4.
    """

    d: int
    b_d: float
    sup_value: float
    split: Tuple[int, int]
    lower_bound: float
    asymptotic: float
    witness_upper: Optional[float] = None
    bracket: Optional[Tuple[float, float]] = None
    exact: Optional[float] = None

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "b_d": self.b_d,
            "sup_value": self.sup_value,
            "split": list(self.split),
            "lower_bound": self.lower_bound,
            "asymptotic": self.asymptotic,
            "witness_upper": self.witness_upper,
            "bracket": list(self.bracket) if self.bracket else None,
            "exact": self.exact,
        }


def _as_matrix(matrix) -> np.ndarray:
    if isinstance(matrix, MatrixSpec):
        return matrix.dense()
    arr = np.asarray(matrix, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"matrix must be square, got shape {arr.shape}")
    return arr


def _as_signs(s, d: int) -> np.ndarray:
    arr = np.asarray(s)
    if arr.shape != (d,):
        raise ValueError(f"sign pattern must have length {d}, got shape {arr.shape}")
    arr = arr.astype(float)
    if not np.all(np.abs(arr) == 1.0):
        raise ValueError("sign pattern entries must be -1 or +1")
    return arr


def psi(matrix, z, s) -> float:
    """Psi_M(z, s) for one positive vector and one sign pattern."""
    m = _as_matrix(matrix)
    d = m.shape[0]
    zv = np.array(validate_positive_vector(z, name="z"), dtype=float)
    if zv.shape != (d,):
        raise ValueError(f"z must have length {d}, got {zv.shape[0]}")
    sv = _as_signs(s, d)
    diag = np.diag(m)
    off = m - np.diag(diag)
    u = sv * zv
    v = sv * zv * zv
    return float(diag @ (zv ** 3) + u @ off @ v)


def _psi_chunk(diag_term: float, off: np.ndarray, z: np.ndarray, patterns: np.ndarray) -> np.ndarray:
    u = patterns * z
    v = patterns * (z * z)
    return diag_term + ((u @ off) * v).sum(axis=1)


def psi_over_patterns(matrix, z, patterns) -> np.ndarray:
    """Psi_M(z, s) for one z and a stack of sign patterns (rows)."""
    m = _as_matrix(matrix)
    d = m.shape[0]
    zv = np.array(validate_positive_vector(z, name="z"), dtype=float)
    if zv.shape != (d,):
        raise ValueError(f"z must have length {d}, got {zv.shape[0]}")
    pats = np.asarray(patterns, dtype=float)
    if pats.ndim != 2 or pats.shape[1] != d:
        raise ValueError(f"patterns must be (n, {d}), got shape {pats.shape}")
    diag = np.diag(m)
    off = m - np.diag(diag)
    return _psi_chunk(float(diag @ zv ** 3), off, zv, pats)


def _pattern_chunks(d: int, chunk: int = 1 << 16) -> Iterator[np.ndarray]:
    """Canonical sign patterns in index order, in bounded-size blocks.

    Pattern index k encodes entries 2..d in its bits (bit set = -1);
    entry 1 is always -1 and the all-minus index 2^(d-1) - 1 is skipped.
    """
    total = (1 << (d - 1)) - 1
    shifts = np.arange(d - 1)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        bits = (idx[:, None] >> shifts) & 1
        pats = np.empty((idx.size, d), dtype=np.int8)
        pats[:, 0] = -1
        pats[:, 1:] = 1 - 2 * bits
        yield pats


def enumerate_sign_patterns(d: int, cap: int = 24) -> np.ndarray:
    """All 2^(d-1) - 1 canonical sign patterns as an (n, d) int8 array.

    Canonical: first entry -1, all-minus excluded.  Refuses d > cap,
    since the count is exponential.
    """
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"d must be an integer >= 2, got {d!r}")
    if d > cap:
        raise ValueError(f"d={d} exceeds the enumeration cap {cap}")
    return np.concatenate(list(_pattern_chunks(d)), axis=0)


def reduced_sign_pattern(d: int) -> Tuple[int, ...]:
    """The balanced pattern: ceil(d/2) minuses followed by floor(d/2) pluses."""
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"d must be an integer >= 2, got {d!r}")
    h = d // 2
    return (-1,) * (d - h) + (1,) * h


def check_diagonal_dominance(matrix) -> bool:
    """Sufficient membership check: min diagonal exceeds the total
    off-diagonal absolute sum.  Then Psi >= (min_l m_ll - sum |m_lk|) *
    max_l z_l^3 > 0 for every z and s."""
    m = _as_matrix(matrix)
    off_sum = float(np.sum(np.abs(m - np.diag(np.diag(m)))))
    return bool(np.min(np.diag(m)) > off_sum)


def b3_radical() -> float:
    """Closed form shared by b_3 and b_4: (sqrt((3/5)(39 + 16 sqrt 6)) - 3)/4."""
    return (math.sqrt(0.6 * (39.0 + 16.0 * math.sqrt(6.0))) - 3.0) / 4.0


def b3_quartic_root(tol: float = 1e-15) -> float:
    """Root of 20 x^4 + 60 x^3 + 9 x^2 - 54 x - 27 on [0.9, 1.0] by bisection.

    Independent route to the same constant as b3_radical.
    """

    def poly(x: float) -> float:
        return ((((20.0 * x + 60.0) * x) + 9.0) * x - 54.0) * x - 27.0

    lo, hi = 0.9, 1.0
    flo = poly(lo)
    if flo == 0.0:
        return lo
    if flo * poly(hi) > 0:
        raise RuntimeError("bisection bracket does not straddle the root")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = poly(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def _balanced_split(d: int) -> Tuple[int, int]:
    return (d - d // 2, d // 2)


def _bd_from_sup(d: int, tol: float):
    n_x, n_y = _balanced_split(d)
    res = sup_q(n_x, n_y, tol=tol)
    sup = max(res.sup_value, 0.0)
    return 1.0 / (1.0 + sup), res


def compute_bd(d: int, tol: float = 1e-9) -> BdReport:
    """Threshold b_d = 1 / (1 + sup Q over the balanced split of d).

    Bundles the growth-bound lower estimate, the witness upper bound
    from the near-optimal growth pair (when its quotient is positive),
    the asymptotic 2 / (c* d), the enclosure bracket for d in {5, 6},
    and the closed form for d <= 4.
    """
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"d must be an integer >= 2, got {d!r}")
    if tol <= 0:
        raise ValueError("tol must be > 0")
    bd, res = _bd_from_sup(d, tol)
    n_x, n_y = res.n_x, res.n_y

    lower = 1.0 / (1.0 + C_STAR * (d // 2))
    asym = 2.0 / (C_STAR * d)

    witness_upper = None
    from .power_sums import quotient_q
    from .structured import witness_vectors

    xg, _ = witness_vectors(n_x)
    _, yg = witness_vectors(n_y)
    qg = float(quotient_q(xg, yg).value)
    if qg > 0.0:
        witness_upper = 1.0 / (1.0 + qg)

    bracket = None
    if res.bracket is not None:
        lo, hi = res.bracket
        bracket = (1.0 / (1.0 + hi), 1.0 / (1.0 + lo))

    exact = None
    if d == 2:
        exact = 1.0
    elif d in (3, 4):
        exact = b3_radical()

    return BdReport(
        d=d,
        b_d=bd,
        sup_value=max(res.sup_value, 0.0),
        split=(n_x, n_y),
        lower_bound=lower,
        asymptotic=asym,
        witness_upper=witness_upper,
        bracket=bracket,
        exact=exact,
    )


def membership_equal_offdiag(d: int, b: float, tol: float = 1e-9) -> MembershipReport:
    """Decide M_d(b) against the threshold b_d with a 10 * tol margin.

    b <= b_d - margin: member_certified.  b >= b_d + margin: nonmember,
    with an explicit (z, s) witness built from the maximizing block
    configuration on the balanced split (zeros replaced by a shrinking
    eps until Psi < 0).  Inside the margin: inconclusive.
    """
    spec = MatrixSpec.equal_off_diagonal(d, b)
    if tol <= 0:
        raise ValueError("tol must be > 0")
    bd, res = _bd_from_sup(d, tol)
    margin = 10.0 * tol

    if spec.b <= bd - margin:
        return MembershipReport(
            d=d, b=spec.b, b_d=bd, verdict="member_certified", tol=tol, margin=margin
        )
    if spec.b >= bd + margin:
        s = reduced_sign_pattern(d)
        m = spec.dense()
        for eps in _EPS_SCHEDULE:
            x, y = res.witness_pair(eps)
            z = tuple(x) + tuple(y)
            val = psi(m, z, s)
            if val < 0.0:
                witness = PsiWitness(z=z, s=s, psi_value=val)
                return MembershipReport(
                    d=d,
                    b=spec.b,
                    b_d=bd,
                    verdict="nonmember",
                    tol=tol,
                    margin=margin,
                    witness=witness,
                )
        raise RuntimeError(
            f"b={b!r} exceeds b_{d}={bd!r} but no eps in {_EPS_SCHEDULE} "
            f"produced a negative Psi witness"
        )
    return MembershipReport(
        d=d, b=spec.b, b_d=bd, verdict="inconclusive", tol=tol, margin=margin
    )


def _probe_vectors(d: int, n_samples: int, rng: np.random.Generator) -> Iterator[np.ndarray]:
    yield np.ones(d)
    for j in range(d):
        z = np.ones(d)
        z[j] = 1e-3
        yield z
        z = np.ones(d)
        z[j] = 1e3
        yield z
    for a in range(1, d):
        for gamma in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9):
            z = np.ones(d)
            z[a:] = gamma
            yield z
    for _ in range(n_samples):
        yield 10.0 ** rng.uniform(-3.0, 3.0, size=d)


def _sampled_patterns(d: int, rng: np.random.Generator) -> np.ndarray:
    pats = [reduced_sign_pattern(d)]
    for a in range(1, d):
        pats.append((-1,) * a + (1,) * (d - a))
    fixed = np.array(pats, dtype=np.int8)
    rand = rng.choice(np.array([-1, 1], dtype=np.int8), size=(512, d))
    rand[:, 0] = -1
    keep = ~np.all(rand == -1, axis=1)
    return np.concatenate([fixed, rand[keep]], axis=0)


def sample_membership_general(
    matrix,
    n_samples: int = 200,
    seed: int = 0,
    cap: int = 24,
) -> GeneralReport:
    """Search for a violating (z, s) pair of an explicit matrix.

    Probes structured vectors (near-unit, two-level blocks) and random
    log-uniform vectors on [1e-3, 1e3]^d against every canonical sign
    pattern (all of them for d <= cap, a sampled set above).  Stops at
    the first violation, which is deterministic for a fixed seed.  A
    clean pass is only ever inconclusive: sampling cannot certify
    membership.
    """
    m = _as_matrix(matrix)
    d = m.shape[0]
    if n_samples < 0:
        raise ValueError("n_samples must be >= 0")
    rng = np.random.default_rng(seed)

    diag = np.diag(m)
    off = m - np.diag(diag)
    full = d <= cap
    if full:
        chunks = list(_pattern_chunks(d))
    else:
        chunks = [_sampled_patterns(d, rng)]

    n_evaluated = 0
    for z in _probe_vectors(d, n_samples, rng):
        diag_term = float(diag @ z ** 3)
        for pats in chunks:
            vals = _psi_chunk(diag_term, off, z, pats.astype(float))
            n_evaluated += vals.size
            bad = np.flatnonzero(vals < 0.0)
            if bad.size:
                j = int(bad[0])
                witness = PsiWitness(
                    z=tuple(float(v) for v in z),
                    s=tuple(int(v) for v in pats[j]),
                    psi_value=float(vals[j]),
                )
                return GeneralReport(
                    d=d,
                    verdict="nonmember",
                    method="sampling",
                    n_evaluated=n_evaluated,
                    seed=seed,
                    witness=witness,
                )
    return GeneralReport(
        d=d,
        verdict="inconclusive",
        method="sampling",
        n_evaluated=n_evaluated,
        seed=seed,
    )


def certify_general(
    matrix,
    n_samples: int = 200,
    seed: int = 0,
    cap: int = 24,
) -> GeneralReport:
    """Two-stage check for an explicit matrix.

    First the diagonal-dominance certificate (sufficient, so a hit is
    member_certified); otherwise fall through to the randomized
    violation search.
    """
    m = _as_matrix(matrix)
    if check_diagonal_dominance(m):
        return GeneralReport(
            d=m.shape[0],
            verdict="member_certified",
            method="diagonal_dominance",
            n_evaluated=0,
            seed=None,
        )
    return sample_membership_general(m, n_samples=n_samples, seed=seed, cap=cap)

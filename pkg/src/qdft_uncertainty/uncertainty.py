"""Support-size audits for the discrete uncertainty principle.

For a nonzero M x N quaternion signal with ``n_time`` nonzero samples and
``n_freq`` nonzero transform coefficients::

    n_time * n_freq >= M * N        and        n_time + n_freq >= 2 sqrt(MN)

Everything here checks those inequalities numerically: single-signal
audits, exhaustive sweeps over every support of a small grid, searches for
the sparsest spectrum a given support admits, and the consecutive-window
statements used to prove the bound.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.linalg import null_space

from .dqft import _direct, dqft, embedding_matrix, make_plan
from .exceptions import TooLarge, ZeroSignal
from .qsignal import QSignal, Support, count_nonzero, default_tol, random_nonzero_entries
from .quaternion import qabs

__all__ = [
    "UncertaintyReport",
    "VerifyResult",
    "WindowCheck",
    "CaseRow",
    "audit",
    "exhaustive_verify",
    "min_freq_support_for",
    "min_freq_witness",
    "min_freq_by_size",
    "case_table",
    "CASE_TABLE_CLAIMS",
    "ceil_sqrt",
    "ceil_sqrt_bound_check",
    "ceil_sqrt_bound_holds_upto",
    "consecutive_window_nonzero_check",
    "example_block_pattern",
    "example_block_spectrum",
]

MAX_EXHAUSTIVE_CELLS = 16

# Claimed lower bounds on n_freq, by support size, for the 2x2 and 2x3 grids.
CASE_TABLE_CLAIMS = {
    (2, 2): {1: 4, 2: 2, 3: 2, 4: 1},
    (2, 3): {1: 6, 2: 3, 3: 3, 4: 2, 5: 2, 6: 1},
}


@dataclass(frozen=True)
class UncertaintyReport:
    M: int
    N: int
    n_time: int
    n_freq: int
    product: int
    sum: int
    product_bound_holds: bool
    sum_bound_holds: bool
    tolerance: float

    @classmethod
    def from_counts(cls, M: int, N: int, n_time: int, n_freq: int, tolerance: float) -> "UncertaintyReport":
        product = n_time * n_freq
        total = n_time + n_freq
        return cls(
            M=M,
            N=N,
            n_time=n_time,
            n_freq=n_freq,
            product=product,
            sum=total,
            product_bound_holds=product >= M * N,
            # sum >= 2 sqrt(MN)  <=>  sum^2 >= 4MN, kept in integers
            sum_bound_holds=total * total >= 4 * M * N,
            tolerance=tolerance,
        )

    def to_json_dict(self) -> dict:
        return asdict(self)


def audit(f: QSignal, tol: float | None = None) -> UncertaintyReport:
    """Count nonzeros of ``f`` and of its transform and compare against MN."""
    tol = default_tol(f) if tol is None else tol
    n_time = count_nonzero(f, tol)
    if n_time == 0:
        raise ZeroSignal("the uncertainty bound is vacuous for the zero signal")
    n_freq = count_nonzero(dqft(f), tol)
    return UncertaintyReport.from_counts(f.rows, f.cols, n_time, n_freq, tol)


def _guard(M: int, N: int) -> None:
    if M < 1 or N < 1:
        raise ValueError("grid dimensions must be positive")
    if M * N > MAX_EXHAUSTIVE_CELLS:
        raise TooLarge(f"{M} x {N} grid has more than {MAX_EXHAUSTIVE_CELLS} cells")


@dataclass
class VerifyResult:
    passed: bool
    supports_checked: int
    signals_checked: int
    counterexample: UncertaintyReport | None = None
    counterexample_support: Support | None = None
    counterexample_signal: QSignal | None = None

    def __bool__(self):
        return self.passed


def _batch_counts(arr: np.ndarray, plan) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-signal (n_time, n_freq, tol) for a batch of shape (B, M, N, 4)."""
    norms = np.sqrt(np.sum(arr**2, axis=(1, 2, 3)))
    tols = 1e-9 * np.maximum(1.0, norms)
    spec = _direct(arr, plan)
    n_time = np.sum(qabs(arr) > tols[:, None, None], axis=(1, 2))
    n_freq = np.sum(qabs(spec) > tols[:, None, None], axis=(1, 2))
    return n_time, n_freq, tols


def exhaustive_verify(M: int, N: int, trials_per_support: int = 100, seed: int = 0) -> VerifyResult:
    """Audit random signals on every nonempty support of an M x N grid.

    Supports are visited in increasing order of their bitmask (bit ``k`` is
    the row-major cell ``k``), so the first counterexample reported for a
    given seed is always the same one.
    """
    _guard(M, N)
    rng = np.random.default_rng(seed)
    plan = make_plan(M, N)
    cells = M * N
    signals = 0
    for bits in range(1, 1 << cells):
        flat = [k for k in range(cells) if bits >> k & 1]
        arr = np.zeros((trials_per_support, cells, 4))
        arr[:, flat, :] = random_nonzero_entries(rng, trials_per_support * len(flat)).reshape(
            trials_per_support, len(flat), 4
        )
        arr = arr.reshape(trials_per_support, M, N, 4)
        n_time, n_freq, tols = _batch_counts(arr, plan)
        signals += trials_per_support
        bad = np.nonzero(n_time * n_freq < cells)[0]
        if bad.size:
            b = int(bad[0])
            report = UncertaintyReport.from_counts(M, N, int(n_time[b]), int(n_freq[b]), float(tols[b]))
            return VerifyResult(
                passed=False,
                supports_checked=bits,
                signals_checked=signals,
                counterexample=report,
                counterexample_support=Support.from_flat(M, N, flat),
                counterexample_signal=QSignal(arr[b]),
            )
    return VerifyResult(passed=True, supports_checked=(1 << cells) - 1, signals_checked=signals)


def _tau_columns(support: Support) -> np.ndarray:
    return np.array([4 * k + c for k in support.flat() for c in range(4)], dtype=int)


def _row_block(cells) -> np.ndarray:
    return np.array([4 * k + c for k in cells for c in range(4)], dtype=int)


def min_freq_witness(
    M: int, N: int, support: Support, trials: int = 20, seed: int = 0
) -> tuple[int, QSignal]:
    """Sparsest spectrum found for signals supported exactly on ``support``.

    Two sources of candidates are used.  First, ``trials`` signals with
    random nonzero entries on the support.  Second, for every set Z of
    frequencies, from the largest down, signals on the support whose
    transform vanishes on Z form the null space of a real linear system;
    ``trials`` random members of that null space are tried, and the search
    stops at the first size of Z that yields a signal with exactly the
    requested support.  The result is an observed minimum, i.e. an upper
    bound on the true one, attained by the returned witness.
    """
    _guard(M, N)
    if (support.rows, support.cols) != (M, N):
        raise ValueError("support grid does not match M x N")
    if len(support) == 0:
        raise ZeroSignal("support must be nonempty")
    rng = np.random.default_rng(seed)
    plan = make_plan(M, N)
    cells = M * N
    flat = support.flat()

    best_count, best = cells + 1, None

    def consider(arr: np.ndarray) -> None:
        nonlocal best_count, best
        mod = qabs(arr.reshape(M * N, 4))
        scale = float(np.sqrt(np.sum(mod**2)))
        on = mod[flat]
        # exact support: every chosen cell clearly nonzero, every other cell zero
        if on.min() <= 1e-6 * scale or np.delete(mod, flat).max(initial=0.0) > 1e-9 * scale:
            return
        signal = QSignal(arr.reshape(M, N, 4))
        n_freq = count_nonzero(dqft(signal))
        if n_freq < best_count:
            best_count, best = n_freq, signal

    for _ in range(trials):
        arr = np.zeros((cells, 4))
        arr[flat] = random_nonzero_entries(rng, len(flat))
        consider(arr)

    design = embedding_matrix(plan)[:, _tau_columns(support)]
    for z in range(cells, 0, -1):
        if cells - z >= best_count:
            break
        found = False
        for zero_set in itertools.combinations(range(cells), z):
            basis = null_space(design[_row_block(zero_set)])
            if basis.shape[1] == 0:
                continue
            for _ in range(trials):
                x = basis @ rng.standard_normal(basis.shape[1])
                arr = np.zeros((cells, 4))
                arr[flat] = x.reshape(-1, 4)
                consider(arr / np.linalg.norm(x))
            if best_count <= cells - z:
                found = True
                break
        if found:
            break
    return best_count, best


def min_freq_support_for(M: int, N: int, support: Support, trials: int = 20, seed: int = 0) -> int:
    return min_freq_witness(M, N, support, trials, seed)[0]


def min_freq_by_size(M: int, N: int, size: int, trials: int = 20, seed: int = 0) -> tuple[int, QSignal]:
    """Smallest observed n_freq over every support with ``size`` cells."""
    _guard(M, N)
    best_count, best = M * N + 1, None
    for flat in itertools.combinations(range(M * N), size):
        count, witness = min_freq_witness(M, N, Support.from_flat(M, N, flat), trials, seed)
        if count < best_count:
            best_count, best = count, witness
    return best_count, best


@dataclass(frozen=True)
class CaseRow:
    M: int
    N: int
    n_time: int
    observed_min_freq: int
    theorem_bound: int
    claimed_min_freq: int | None
    witness: QSignal = field(repr=False, compare=False)

    @property
    def bound_holds(self) -> bool:
        return self.observed_min_freq >= self.theorem_bound

    @property
    def matches_claim(self) -> bool | None:
        if self.claimed_min_freq is None:
            return None
        return self.observed_min_freq == self.claimed_min_freq

    def to_json_dict(self) -> dict:
        d = {k: v for k, v in asdict(self).items() if k != "witness"}
        d["bound_holds"] = self.bound_holds
        d["matches_claim"] = self.matches_claim
        d["witness"] = self.witness.to_json_dict()
        return d


def case_table(M: int, N: int, trials: int = 20, seed: int = 0) -> list[CaseRow]:
    """Observed minimum n_freq for every support size of an M x N grid."""
    claims = CASE_TABLE_CLAIMS.get((M, N), {})
    rows = []
    for size in range(1, M * N + 1):
        count, witness = min_freq_by_size(M, N, size, trials, seed)
        rows.append(
            CaseRow(M, N, size, count, -(-(M * N) // size), claims.get(size), witness)
        )
    return rows


def ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def ceil_sqrt_bound_check(n: int) -> bool:
    """ceil(sqrt(n))**2 <= 2 n, in exact integer arithmetic."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    c = ceil_sqrt(n)
    return c * c <= 2 * n


def ceil_sqrt_bound_holds_upto(limit: int) -> bool:
    """Vectorized :func:`ceil_sqrt_bound_check` for every 1 <= n <= limit."""
    n = np.arange(1, limit + 1, dtype=np.int64)
    r = np.floor(np.sqrt(n.astype(np.float64))).astype(np.int64)
    # repair float rounding so that r == isqrt(n)
    r -= (r * r > n).astype(np.int64)
    r += ((r + 1) * (r + 1) <= n).astype(np.int64)
    c = r + (r * r != n).astype(np.int64)
    return bool(np.all(c * c <= 2 * n))


@dataclass(frozen=True)
class WindowCheck:
    holds: bool
    branch: str
    window: tuple[int, int]
    required: int
    min_count: int
    failing_anchor: tuple[int, int] | None

    def __bool__(self):
        return self.holds


def consecutive_window_nonzero_check(f: QSignal, tol: float | None = None) -> WindowCheck:
    """Check that every wraparound window of the spectrum holds enough nonzeros.

    With n nonzero samples and m = ceil(sqrt(n)):

    * ``square``: if m <= min(M, N), every m x m window needs one nonzero
      coefficient, or two when n is not a perfect square;
    * ``strip``: otherwise every min(M,N) x (m-1) window (transposed when
      M > N) needs one.

    All M*N anchor positions are examined.
    """
    tol = default_tol(f) if tol is None else tol
    n = count_nonzero(f, tol)
    if n == 0:
        raise ZeroSignal("window statements need a nonzero signal")
    M, N = f.shape
    m = ceil_sqrt(n)
    if m <= min(M, N):
        branch = "square"
        window = (m, m)
        required = 1 if m * m == n else 2
    else:
        branch = "strip"
        window = (M, m - 1) if M <= N else (m - 1, N)
        required = 1
    mask = (dqft(f).moduli() > tol).astype(np.int64)
    counts = np.zeros((M, N), dtype=np.int64)
    for a in range(window[0]):
        for b in range(window[1]):
            # counts[top, left] += mask[(top + a) % M, (left + b) % N]
            counts += np.roll(mask, shift=(-a, -b), axis=(0, 1))
    failing = np.argwhere(counts < required)
    anchor = tuple(int(v) for v in failing[0]) if failing.size else None
    return WindowCheck(
        holds=anchor is None,
        branch=branch,
        window=window,
        required=required,
        min_count=int(counts.min()),
        failing_anchor=anchor,
    )


def example_block_pattern(k: int, l: int) -> QSignal:
    """N x N signal (N = k l) equal to 1 at (k p, k q) for 0 <= p, q < l, else 0."""
    n = k * l
    real = np.zeros((n, n))
    real[::k, ::k] = 1.0
    return QSignal.from_real(real)


def example_block_spectrum(k: int, l: int) -> QSignal:
    """Closed-form transform of :func:`example_block_pattern`: l/k at (a l, b l)."""
    n = k * l
    real = np.zeros((n, n))
    real[::l, ::l] = l / k
    return QSignal.from_real(real)

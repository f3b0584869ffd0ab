"""Recovery of sparse signals from band-limited quaternion spectra.

Observation model: only the transform coefficients on a passband Omega are
seen, ``r_hat = f_hat + n_hat`` on Omega and 0 on its complement Lambda.  If
``f`` has at most ``s`` nonzero samples and ``2 s |Lambda| < MN`` then ``f``
is the only s-sparse signal consistent with noiseless data, and the
combinatorial search in :func:`recover` finds it.  With noise of norm at most
eps the error obeys :func:`stability_bound`.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .dqft import dqft, embedding_matrix, idqft, make_plan, vectorize
from .exceptions import ConditionViolated, EmptyBand, SearchBudgetExceeded, ShapeMismatch
from .qsignal import QSignal, Support, default_tol, distance, frobenius_norm, random_nonzero_entries, restrict_to

__all__ = [
    "RecoveryProblem",
    "RecoveryResult",
    "TrialRecord",
    "ExperimentRecord",
    "bandpass",
    "observe",
    "uniqueness_condition",
    "recover",
    "stability_bound",
    "noisy_recovery_experiment",
    "random_sparse_signal",
    "random_band",
    "projection_norm_sq",
    "max_projection_norm_sq",
    "DEFAULT_SEARCH_BUDGET",
]

DEFAULT_SEARCH_BUDGET = 2_000_000


def bandpass(f: QSignal, band: Support) -> QSignal:
    """Ideal band-pass: keep the transform on ``band`` and invert."""
    return idqft(restrict_to(dqft(f), band))


def observe(f: QSignal, band: Support, noise_spectrum: QSignal | None = None) -> QSignal:
    """Observed spectrum: ``dqft(f) + noise`` on ``band``, zero elsewhere."""
    spec = dqft(f)
    if noise_spectrum is not None:
        spec = spec + noise_spectrum
    return restrict_to(spec, band)


def uniqueness_condition(M: int, N: int, sparsity: int, band: Support) -> bool:
    """``2 * sparsity * |missing band| < M N``, in integers."""
    return 2 * sparsity * (M * N - len(band)) < M * N


@dataclass(frozen=True)
class RecoveryProblem:
    M: int
    N: int
    band: Support
    observed: QSignal
    sparsity: int
    noise_bound: float = 0.0

    def __post_init__(self):
        if (self.band.rows, self.band.cols) != (self.M, self.N) or self.observed.shape != (self.M, self.N):
            raise ShapeMismatch("band and observed spectrum must both be M x N")
        if not 1 <= self.sparsity <= self.M * self.N:
            raise ValueError(f"sparsity must lie in [1, {self.M * self.N}]")
        if self.noise_bound < 0:
            raise ValueError("noise_bound must be nonnegative")
        outside = self.observed.moduli()[~self.band.mask()]
        if outside.size and outside.max() > default_tol(self.observed):
            raise ValueError("observed spectrum is nonzero outside the band")

    @property
    def missing(self) -> Support:
        return self.band.complement()

    def to_json_dict(self) -> dict:
        return {
            "rows": self.M,
            "cols": self.N,
            "band": self.band.to_json_dict()["entries"],
            "observed": self.observed.to_json_dict(),
            "sparsity": self.sparsity,
            "noise_bound": self.noise_bound,
        }


@dataclass(frozen=True)
class RecoveryResult:
    signal: QSignal
    support: Support
    residual: float
    unique: bool
    candidates_searched: int
    degenerate: bool = False

    def to_json_dict(self) -> dict:
        return {
            "signal": self.signal.to_json_dict(),
            "support": self.support.to_json_dict()["entries"],
            "residual": self.residual,
            "unique": self.unique,
            "candidates_searched": self.candidates_searched,
            "degenerate": self.degenerate,
        }


def _combinations_chunks(n: int, k: int, chunk: int):
    it = itertools.combinations(range(n), k)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.int64).reshape(len(block), k)


def _batched_normal_solve(G: np.ndarray, c: np.ndarray, rcond: float) -> tuple[np.ndarray, np.ndarray]:
    """Minimum-norm solutions of a batch of PSD systems; also flags rank deficiency."""
    w, V = np.linalg.eigh(G)
    top = w[:, -1:]
    keep = w > rcond * np.maximum(top, np.finfo(float).tiny)
    proj = np.einsum("kij,ki->kj", V, c)
    proj = np.where(keep, proj / np.where(keep, w, 1.0), 0.0)
    x = np.einsum("kij,kj->ki", V, proj)
    return x, ~keep.all(axis=1)


def _candidate_fits(c_full, G_full, L, combos, rcond=1e-10):
    """Normal-equation fits for a chunk of supports.

    Returns ``(quad, x)`` with ``quad = c_tau . x`` so that the squared
    residual is ``|b|^2 - quad``.  The transform is orthogonal, hence on the
    band ``A_tau^T A_tau = I - L_tau^T L_tau`` with ``L`` the rows of the
    missing frequencies.  When the missing band is the smaller side the
    Woodbury identity turns each solve into a 4|Lambda| x 4|Lambda| one.
    Supports whose small system is singular fall back to the direct
    minimum-norm solve.
    """
    k, s = combos.shape
    cols = (4 * combos[:, :, None] + np.arange(4)).reshape(k, 4 * s)
    ct = c_full[cols]
    if L.shape[0] == 0:
        return np.einsum("ki,ki->k", ct, ct), ct
    if L.shape[0] < 4 * s:
        Lt = np.moveaxis(L[:, cols], 1, 0)  # (k, 4l, 4s)
        y = np.einsum("kij,kj->ki", Lt, ct)
        inner = np.eye(L.shape[0]) - Lt @ np.swapaxes(Lt, 1, 2)
        z, singular = _batched_normal_solve(inner, y, rcond)
        x = ct + np.einsum("kji,kj->ki", Lt, z)
        if not singular.any():
            return np.einsum("ki,ki->k", ct, x), x
    G = G_full[cols[:, :, None], cols[:, None, :]]
    x, _ = _batched_normal_solve(G, ct, rcond)
    return np.einsum("ki,ki->k", ct, x), x


def recover(
    problem: RecoveryProblem,
    budget: int = DEFAULT_SEARCH_BUDGET,
    tie_tol: float = 1e-12,
    chunk: int = 4096,
) -> RecoveryResult:
    """Best ``sparsity``-sparse fit to the observed band, by exhaustive search.

    Every support of size ``sparsity`` is tried in lexicographic order.  For
    each one the real least-squares problem "match the observed coefficients
    on the band with a signal living on this support" is solved through its
    normal equations, in batches.  Candidates close to the best residual are
    then re-solved directly with an SVD-based solver, and the smallest
    residual wins, ties (within ``tie_tol``) going to the lexicographically
    first support.
    """
    M, N, s = problem.M, problem.N, problem.sparsity
    cells = M * N
    if len(problem.band) == 0:
        raise EmptyBand("cannot recover from an empty band")
    n_candidates = math.comb(cells, s)
    if n_candidates > budget:
        raise SearchBudgetExceeded(f"C({cells}, {s}) = {n_candidates} supports exceeds the budget of {budget}")

    W = embedding_matrix(make_plan(M, N))
    rows = _rows(problem.band)
    A = W[rows]
    L = W[_rows(problem.missing)]
    b = vectorize(problem.observed)[rows]
    G_full = A.T @ A
    c_full = A.T @ b
    bb = float(b @ b)
    margin = 1e-9 * max(bb, 1.0)

    best_r2 = np.inf
    pool: list[tuple[float, tuple[int, ...]]] = []
    for combos in _combinations_chunks(cells, s, chunk):
        quad, _ = _candidate_fits(c_full, G_full, L, combos)
        r2 = bb - quad
        best_r2 = min(best_r2, float(r2.min()))
        near = np.nonzero(r2 <= best_r2 + margin)[0]
        pool = [p for p in pool if p[0] <= best_r2 + margin]
        pool.extend((float(r2[i]), tuple(combos[i].tolist())) for i in near)

    best = None
    offsets = np.arange(4)
    for _, combo in pool:  # pool stays in enumeration (lexicographic) order
        cols = (4 * np.array(combo)[:, None] + offsets).reshape(-1)
        x, _, rank, _ = np.linalg.lstsq(A[:, cols], b, rcond=None)
        residual = float(np.linalg.norm(b - A[:, cols] @ x))
        if best is None or residual < best[0] - tie_tol * max(1.0, math.sqrt(bb)):
            best = (residual, combo, x, rank < 4 * s)

    residual, combo, x, degenerate = best
    arr = np.zeros((cells, 4))
    arr[list(combo)] = x.reshape(s, 4)
    return RecoveryResult(
        signal=QSignal(arr.reshape(M, N, 4)),
        support=Support.from_flat(M, N, combo),
        residual=residual,
        unique=uniqueness_condition(M, N, s, problem.band),
        candidates_searched=n_candidates,
        degenerate=bool(degenerate),
    )


def _rows(cells: Support) -> np.ndarray:
    return np.array([4 * k + c for k in cells.flat() for c in range(4)], dtype=np.int64)


def stability_bound(eps: float, sparsity: int, lambda_size: int, M: int, N: int) -> float:
    """Worst-case error 2 eps / sqrt(1 - 2 s |Lambda| / MN) of an eps-consistent sparse fit."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if 2 * sparsity * lambda_size >= M * N:
        raise ConditionViolated("2 * sparsity * |Lambda| must be smaller than M N")
    return 2.0 * eps / math.sqrt(1.0 - 2.0 * sparsity * lambda_size / (M * N))


def random_sparse_signal(M: int, N: int, sparsity: int, rng: np.random.Generator) -> QSignal:
    """Signal with exactly ``sparsity`` nonzero entries, each of modulus >= 0.1."""
    flat = rng.choice(M * N, size=sparsity, replace=False)
    arr = np.zeros((M * N, 4))
    arr[flat] = random_nonzero_entries(rng, sparsity)
    return QSignal(arr.reshape(M, N, 4))


def random_band(M: int, N: int, missing: int, rng: np.random.Generator) -> Support:
    """Passband obtained by deleting ``missing`` random frequencies from the grid."""
    drop = set(rng.choice(M * N, size=missing, replace=False).tolist())
    return Support.from_flat(M, N, [k for k in range(M * N) if k not in drop])


def _band_noise(band: Support, eps: float, rng: np.random.Generator) -> QSignal:
    arr = rng.standard_normal((band.rows, band.cols, 4)) * band.mask()[..., None]
    noise = QSignal(arr)
    norm = frobenius_norm(noise)
    return noise.scale(eps / norm) if norm > 0 else noise


@dataclass(frozen=True)
class TrialRecord:
    seed: int
    trial: int
    support: tuple[tuple[int, int], ...]
    residual: float
    error: float
    bound: float
    ratio: float

    @property
    def within_bound(self) -> bool:
        return self.ratio <= 1.0


@dataclass
class ExperimentRecord:
    M: int
    N: int
    sparsity: int
    lambda_size: int
    eps: float
    trials: list[TrialRecord] = field(default_factory=list)

    @property
    def max_ratio(self) -> float:
        return max((t.ratio for t in self.trials), default=0.0)

    @property
    def violations(self) -> int:
        return sum(not t.within_bound for t in self.trials)

    def to_json_dict(self) -> dict:
        return {
            "M": self.M,
            "N": self.N,
            "sparsity": self.sparsity,
            "lambda_size": self.lambda_size,
            "eps": self.eps,
            "max_ratio": self.max_ratio,
            "violations": self.violations,
            "trials": [asdict(t) for t in self.trials],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["seed", "trial", "support", "residual", "error", "bound", "ratio"])
        for t in self.trials:
            support = ";".join(f"{r}:{c}" for r, c in t.support)
            writer.writerow([t.seed, t.trial, support, repr(t.residual), repr(t.error), repr(t.bound), repr(t.ratio)])
        return buf.getvalue()


def noisy_recovery_experiment(
    M: int,
    N: int,
    sparsity: int,
    band: Support,
    eps: float,
    trials: int,
    seed: int = 0,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> ExperimentRecord:
    """Plant sparse signals, add band-limited noise of norm exactly ``eps``, recover.

    Each trial uses its own generator seeded with ``(seed, trial)`` so a
    single trial can be replayed in isolation.
    """
    if not uniqueness_condition(M, N, sparsity, band):
        raise ConditionViolated("2 * sparsity * |Lambda| must be smaller than M N")
    lambda_size = M * N - len(band)
    bound = stability_bound(eps, sparsity, lambda_size, M, N)
    record = ExperimentRecord(M, N, sparsity, lambda_size, eps)
    for trial in range(trials):
        rng = np.random.default_rng((seed, trial))
        f = random_sparse_signal(M, N, sparsity, rng)
        noise = _band_noise(band, eps, rng) if eps > 0 else None
        problem = RecoveryProblem(M, N, band, observe(f, band, noise), sparsity, eps)
        result = recover(problem, budget=budget)
        error = distance(f, result.signal)
        if bound > 0:
            ratio = error / bound
        else:
            # noiseless: the bound is 0 and only round-off is allowed
            ratio = 0.0 if error <= 1e-8 * max(1.0, frobenius_norm(f)) else math.inf
        record.trials.append(
            TrialRecord(seed, trial, result.support.entries, result.residual, error, bound, ratio)
        )
    return record


def projection_norm_sq(M: int, N: int, time_support: Support, missing: Support) -> float:
    """Squared operator norm of "limit to time_support, then keep frequencies in missing"."""
    W = embedding_matrix(make_plan(M, N))
    rows = [4 * k + c for k in missing.flat() for c in range(4)]
    cols = [4 * k + c for k in time_support.flat() for c in range(4)]
    if not rows or not cols:
        return 0.0
    return float(np.linalg.norm(W[np.ix_(rows, cols)], ord=2) ** 2)


def max_projection_norm_sq(M: int, N: int, t_size: int, l_size: int) -> float:
    """Largest :func:`projection_norm_sq` over all supports of the given sizes."""
    worst = 0.0
    for t in itertools.combinations(range(M * N), t_size):
        T = Support.from_flat(M, N, t)
        for lam in itertools.combinations(range(M * N), l_size):
            worst = max(worst, projection_norm_sq(M, N, T, Support.from_flat(M, N, lam)))
    return worst

"""Two-sided discrete quaternion Fourier transform.

    F(u, v) = 1/sqrt(MN) * sum_{t,s} exp(-2 pi i ut/M) f(t, s) exp(-2 pi j vs/N)

The i-exponential multiplies every sample from the left and the
j-exponential from the right.  Quaternions do not commute, so the order is
part of the definition.  The inverse flips both exponent signs.

Three evaluation routes are provided and cross-checked in the tests:

* ``dqft`` / ``idqft`` -- the direct double sum, the reference kernel;
* ``dqft_matrix_form`` / ``idqft_matrix_form`` -- two quaternion matrix
  products with the Vandermonde matrices, ``V_i @ A @ V_j``;
* ``embedding_matrix`` -- the transform as a real 4MN x 4MN matrix.  The
  transform is real-linear but not quaternion-linear, so this is the form
  least squares needs.

Real vectors use the flattening ``4 * (u * N + v) + c`` with ``c`` running
over ``(w, x, y, z)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import OutOfRange
from .qsignal import QSignal
from .quaternion import qmul

__all__ = [
    "TransformPlan",
    "make_plan",
    "dqft",
    "idqft",
    "dqft_matrix_form",
    "idqft_matrix_form",
    "vandermonde_i",
    "vandermonde_j",
    "real_embedding_column",
    "embedding_matrix",
    "vectorize",
    "unvectorize",
    "BASES",
]

BASES = ("1", "i", "j", "k")
_BASIS = np.eye(4)


def _kernel_table(n: int, sign: float, axis: int) -> np.ndarray:
    """(n, n, 4) table of exp(sign * 2 pi axis * a b / n), ``axis`` 1 for i, 2 for j."""
    ab = np.outer(np.arange(n), np.arange(n)) % n  # reduce before scaling by 2 pi
    angle = sign * 2.0 * np.pi * ab / n
    table = np.zeros((n, n, 4))
    table[..., 0] = np.cos(angle)
    table[..., axis] = np.sin(angle)
    table.setflags(write=False)
    return table


@dataclass(frozen=True, eq=False)
class TransformPlan:
    """Cached kernel tables for one grid size and direction.

    ``left[u, t]`` holds exp(-/+ 2 pi i ut/M) and ``right[v, s]`` holds
    exp(-/+ 2 pi j vs/N); the sign is ``-`` for the forward transform.
    """

    rows: int
    cols: int
    inverse: bool
    left: np.ndarray
    right: np.ndarray

    @property
    def scale(self) -> float:
        return 1.0 / np.sqrt(self.rows * self.cols)


@lru_cache(maxsize=64)
def make_plan(rows: int, cols: int, inverse: bool = False) -> TransformPlan:
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be positive")
    sign = 1.0 if inverse else -1.0
    return TransformPlan(rows, cols, inverse, _kernel_table(rows, sign, 1), _kernel_table(cols, sign, 2))


def _direct(arr: np.ndarray, plan: TransformPlan) -> np.ndarray:
    """Double sum over (t, s) for each output row u.  ``arr`` is (..., M, N, 4)."""
    M = plan.rows
    out = np.empty(arr.shape)
    right = plan.right[:, None, :, :]  # (v, 1, s, 4)
    for u in range(M):
        left = plan.left[u][:, None, :]  # (t, 1, 4)
        lf = qmul(left, arr)  # (..., t, s, 4)
        terms = qmul(lf[..., None, :, :, :], right)  # (..., v, t, s, 4)
        out[..., u, :, :] = terms.sum(axis=(-3, -2))
    return out * plan.scale


def dqft(f: QSignal, plan: TransformPlan | None = None) -> QSignal:
    """Forward transform by direct summation."""
    plan = plan or make_plan(f.rows, f.cols, False)
    _check_plan(plan, f, inverse=False)
    return QSignal(_direct(f.data, plan))


def idqft(g: QSignal, plan: TransformPlan | None = None) -> QSignal:
    """Inverse transform by direct summation."""
    plan = plan or make_plan(g.rows, g.cols, True)
    _check_plan(plan, g, inverse=True)
    return QSignal(_direct(g.data, plan))


def _check_plan(plan: TransformPlan, s: QSignal, inverse: bool) -> None:
    if (plan.rows, plan.cols) != s.shape:
        raise ValueError(f"plan is for {plan.rows} x {plan.cols}, signal is {s.shape}")
    if plan.inverse != inverse:
        raise ValueError("plan direction does not match the requested transform")


def vandermonde_i(M: int, inverse: bool = False) -> np.ndarray:
    """(M, M, 4) quaternion matrix V_i (or V_{-i}), including the 1/sqrt(M)."""
    return make_plan(M, 1, inverse).left / np.sqrt(M)


def vandermonde_j(N: int, inverse: bool = False) -> np.ndarray:
    """(N, N, 4) quaternion matrix V_j (or V_{-j}), including the 1/sqrt(N)."""
    return make_plan(1, N, inverse).right / np.sqrt(N)


def _qmatmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Quaternion matrix product of (..., P, Q, 4) and (..., Q, R, 4)."""
    return qmul(a[..., :, :, None, :], b[..., None, :, :, :]).sum(axis=-3)


def _matrix_form(arr: np.ndarray, inverse: bool) -> np.ndarray:
    M, N = arr.shape[-3], arr.shape[-2]
    return _qmatmul(_qmatmul(vandermonde_i(M, inverse), arr), vandermonde_j(N, inverse))


def dqft_matrix_form(f: QSignal) -> QSignal:
    """Forward transform as V_i A V_j: O(MN(M+N)) instead of O((MN)^2)."""
    return QSignal(_matrix_form(f.data, False))


def idqft_matrix_form(g: QSignal) -> QSignal:
    """Inverse transform as V_{-i} A V_{-j}."""
    return QSignal(_matrix_form(g.data, True))


def vectorize(s) -> np.ndarray:
    data = s.data if isinstance(s, QSignal) else np.asarray(s)
    return data.reshape(data.shape[:-3] + (-1,))


def unvectorize(vec: np.ndarray, rows: int, cols: int) -> QSignal:
    return QSignal(np.asarray(vec, dtype=np.float64).reshape(rows, cols, 4))


def _basis_index(basis) -> int:
    try:
        return BASES.index(str(basis))
    except ValueError:
        raise ValueError(f"basis must be one of {BASES}, got {basis!r}") from None


def real_embedding_column(plan: TransformPlan, time_index, basis) -> np.ndarray:
    """Vectorized transform of the single basis quaternion placed at ``time_index``.

    This is column ``4 * (t * N + s) + b`` of :func:`embedding_matrix`.
    """
    t, s = time_index
    if not (0 <= t < plan.rows and 0 <= s < plan.cols):
        raise OutOfRange(f"time index {time_index} outside {plan.rows} x {plan.cols}")
    e = _BASIS[_basis_index(basis)]
    le = qmul(plan.left[:, t, :], e)  # (u, 4)
    col = qmul(le[:, None, :], plan.right[None, :, s, :])  # (u, v, 4)
    return (col * plan.scale).reshape(-1)


def embedding_matrix(plan: TransformPlan) -> np.ndarray:
    """The transform as a real (4MN, 4MN) matrix acting on :func:`vectorize` output."""
    M, N = plan.rows, plan.cols
    left = plan.left[:, None, :, None, None, :]  # (u, 1, t, 1, 1, 4)
    basis = _BASIS[None, None, None, None, :, :]  # (..., b, 4)
    right = plan.right[None, :, None, :, None, :]  # (1, v, 1, s, 1, 4)
    cols = qmul(qmul(left, basis), right) * plan.scale  # (u, v, t, s, b, c)
    return np.ascontiguousarray(np.moveaxis(cols, -1, 2)).reshape(4 * M * N, 4 * M * N)

"""Dense M x N quaternion signals and index supports.

A :class:`QSignal` wraps a read-only ``(M, N, 4)`` float64 array.  Supports
are sorted, duplicate-free sets of ``(row, col)`` pairs; their iteration order
is row-major and fixed, which makes every enumeration in the package
deterministic.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .exceptions import OutOfRange, ShapeMismatch
from .quaternion import Quaternion, format_quaternion, parse_quaternion, qabs, qabs2

__all__ = [
    "QSignal",
    "Support",
    "default_tol",
    "count_nonzero",
    "support_of",
    "consecutive_submatrix",
    "frobenius_norm",
    "distance",
    "restrict_to",
    "random_nonzero_entries",
]


class QSignal:
    """An M x N matrix of quaternions, stored row-major as ``(M, N, 4)``."""

    __slots__ = ("_data",)

    def __init__(self, data):
        arr = np.array(data, dtype=np.float64)
        if arr.ndim != 3 or arr.shape[2] != 4 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"expected an (M, N, 4) array with M, N >= 1, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("signal contains NaN or Inf")
        arr.setflags(write=False)
        self._data = arr

    # construction helpers
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QSignal":
        return cls(np.zeros((rows, cols, 4)))

    @classmethod
    def delta(cls, rows: int, cols: int, at=(0, 0), value=1.0) -> "QSignal":
        arr = np.zeros((rows, cols, 4))
        arr[at] = _as_components(value)
        return cls(arr)

    @classmethod
    def from_real(cls, real) -> "QSignal":
        real = np.asarray(real, dtype=np.float64)
        arr = np.zeros(real.shape + (4,))
        arr[..., 0] = real
        return cls(arr)

    @classmethod
    def from_components(cls, w, x, y, z) -> "QSignal":
        return cls(np.stack([np.asarray(c, dtype=np.float64) for c in (w, x, y, z)], axis=-1))

    @classmethod
    def random(cls, rows: int, cols: int, rng=None) -> "QSignal":
        rng = np.random.default_rng(rng)
        return cls(rng.standard_normal((rows, cols, 4)))

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape[:2]

    def __getitem__(self, index) -> Quaternion:
        r, c = index
        return Quaternion.from_array(self._data[r, c])

    def moduli(self) -> np.ndarray:
        return qabs(self._data)

    def __add__(self, other: "QSignal") -> "QSignal":
        _check_same_shape(self, other)
        return QSignal(self._data + other._data)

    def __sub__(self, other: "QSignal") -> "QSignal":
        _check_same_shape(self, other)
        return QSignal(self._data - other._data)

    def __neg__(self) -> "QSignal":
        return QSignal(-self._data)

    def scale(self, a: float) -> "QSignal":
        return QSignal(float(a) * self._data)

    def __mul__(self, a):
        if isinstance(a, (int, float, np.floating, np.integer)):
            return self.scale(a)
        return NotImplemented

    __rmul__ = __mul__

    def allclose(self, other: "QSignal", atol: float = 1e-12) -> bool:
        return self.shape == other.shape and bool(np.all(np.abs(self._data - other._data) <= atol))

    def __eq__(self, other):
        if not isinstance(other, QSignal):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._data, other._data))

    __hash__ = None

    def __repr__(self):
        return f"QSignal(rows={self.rows}, cols={self.cols})"

    # serialization
    def to_json_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "data": [[float(c) for c in q] for q in self._data.reshape(-1, 4)],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "QSignal":
        rows, cols = int(obj["rows"]), int(obj["cols"])
        flat = np.array(obj["data"], dtype=np.float64)
        if flat.shape != (rows * cols, 4):
            raise ValueError(f"data must hold rows*cols={rows * cols} quaternions of 4 reals")
        return cls(flat.reshape(rows, cols, 4))

    def to_json(self) -> str:
        # json emits repr(float), which round-trips exactly
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json(cls, text: str) -> "QSignal":
        return cls.from_json_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in self._data:
            writer.writerow([format_quaternion(q) for q in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "QSignal":
        rows = [r for r in csv.reader(io.StringIO(text)) if r]
        if not rows or len({len(r) for r in rows}) != 1:
            raise ValueError("CSV rows must be nonempty and of equal length")
        return cls([[parse_quaternion(cell).to_array() for cell in r] for r in rows])


def _as_components(value) -> np.ndarray:
    if isinstance(value, Quaternion):
        return value.to_array()
    if isinstance(value, (int, float)):
        return np.array([float(value), 0.0, 0.0, 0.0])
    arr = np.asarray(value, dtype=np.float64)
    if arr.shape != (4,):
        raise ValueError("quaternion value must be a number, a Quaternion or 4 components")
    return arr


def _check_same_shape(a: QSignal, b: QSignal) -> None:
    if a.shape != b.shape:
        raise ShapeMismatch(f"shapes differ: {a.shape} vs {b.shape}")


@dataclass(frozen=True)
class Support:
    """Sorted set of (row, col) indices inside an M x N grid."""

    rows: int
    cols: int
    entries: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("support grid must be at least 1 x 1")
        cleaned = set()
        for r, c in self.entries:
            r, c = int(r), int(c)
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise OutOfRange(f"index ({r}, {c}) outside {self.rows} x {self.cols} grid")
            cleaned.add((r, c))
        object.__setattr__(self, "entries", tuple(sorted(cleaned)))

    @classmethod
    def full(cls, rows: int, cols: int) -> "Support":
        return cls(rows, cols, tuple((r, c) for r in range(rows) for c in range(cols)))

    @classmethod
    def from_mask(cls, mask) -> "Support":
        mask = np.asarray(mask, dtype=bool)
        rr, cc = np.nonzero(mask)
        return cls(mask.shape[0], mask.shape[1], tuple(zip(rr.tolist(), cc.tolist())))

    @classmethod
    def from_flat(cls, rows: int, cols: int, flat: Iterable[int]) -> "Support":
        return cls(rows, cols, tuple(divmod(int(k), cols) for k in flat))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, item):
        return tuple(item) in set(self.entries)

    def flat(self) -> list[int]:
        """Row-major linear indices ``r * cols + c``."""
        return [r * self.cols + c for r, c in self.entries]

    def mask(self) -> np.ndarray:
        m = np.zeros((self.rows, self.cols), dtype=bool)
        for r, c in self.entries:
            m[r, c] = True
        return m

    def complement(self) -> "Support":
        return Support.from_mask(~self.mask())

    def to_json_dict(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [list(e) for e in self.entries]}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Support":
        return cls(int(obj["rows"]), int(obj["cols"]), tuple(tuple(e) for e in obj["entries"]))


def frobenius_norm(s: QSignal) -> float:
    return float(np.sqrt(np.sum(qabs2(s.data))))


def distance(a: QSignal, b: QSignal) -> float:
    _check_same_shape(a, b)
    return frobenius_norm(a - b)


def default_tol(s: QSignal) -> float:
    """Nonzero threshold used when the caller passes ``tol=None``."""
    return 1e-9 * max(1.0, frobenius_norm(s))


def count_nonzero(s: QSignal, tol: float | None = None) -> int:
    """Number of entries whose modulus exceeds ``tol``."""
    tol = default_tol(s) if tol is None else tol
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return int(np.count_nonzero(s.moduli() > tol))


def support_of(s: QSignal, tol: float | None = None) -> Support:
    tol = default_tol(s) if tol is None else tol
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return Support.from_mask(s.moduli() > tol)


def consecutive_submatrix(s: QSignal, top: int, left: int, m: int, n: int) -> QSignal:
    """m x n window anchored at (top, left) of the periodic extension of ``s``.

    Indices wrap modulo the signal shape, so windows may run off the right or
    bottom edge and continue from the opposite side.
    """
    M, N = s.shape
    if not (1 <= m <= M and 1 <= n <= N):
        raise OutOfRange(f"window {m} x {n} does not fit a {M} x {N} signal")
    rows = (top + np.arange(m)) % M
    cols = (left + np.arange(n)) % N
    return QSignal(s.data[np.ix_(rows, cols)])


def restrict_to(s: QSignal, supp: Support) -> QSignal:
    """Zero every entry of ``s`` outside ``supp``."""
    if (supp.rows, supp.cols) != s.shape:
        raise ShapeMismatch(f"support grid {supp.rows} x {supp.cols} vs signal {s.shape}")
    return QSignal(np.where(supp.mask()[..., None], s.data, 0.0))


def random_nonzero_entries(rng: np.random.Generator, count: int, min_modulus: float = 0.1) -> np.ndarray:
    """``count`` random quaternions, components uniform in [-1, 1], modulus >= min_modulus."""
    out = rng.uniform(-1.0, 1.0, size=(count, 4))
    bad = qabs(out) < min_modulus
    while np.any(bad):
        out[bad] = rng.uniform(-1.0, 1.0, size=(int(bad.sum()), 4))
        bad = qabs(out) < min_modulus
    return out

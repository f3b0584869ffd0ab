"""Floating-point quaternion algebra.

Two layers live here: a small immutable :class:`Quaternion` value for scalar
work and text serialization, and array kernels (``qmul``, ``qconj``, ...)
that operate on ``float64`` arrays whose last axis holds ``(w, x, y, z)``.
The transforms and the recovery solver use the array kernels.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Quaternion",
    "mul",
    "conj",
    "modulus",
    "exp_unit",
    "add",
    "sub",
    "scale",
    "inverse",
    "qmul",
    "qconj",
    "qabs2",
    "qabs",
    "format_quaternion",
    "parse_quaternion",
]


@dataclass(frozen=True, slots=True)
class Quaternion:
    """w + x i + y j + z k with finite float64 components."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        for name in ("w", "x", "y", "z"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"quaternion component {name}={value!r} is not finite")
            object.__setattr__(self, name, value)

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        w, x, y, z = (float(c) for c in a)
        return cls(w, x, y, z)

    def to_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z], dtype=np.float64)

    def __iter__(self):
        return iter((self.w, self.x, self.y, self.z))

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return scale(self, other)
        return mul(self, _coerce(other))

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return scale(self, other)
        return mul(_coerce(other), self)

    def __abs__(self):
        return modulus(self)

    def conj(self) -> "Quaternion":
        return conj(self)

    def inverse(self) -> "Quaternion":
        return inverse(self)

    def isclose(self, other, tol: float = 1e-12) -> bool:
        return modulus(sub(self, _coerce(other))) <= tol

    def __str__(self):
        return format_quaternion(self)


def _coerce(value) -> Quaternion:
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float)):
        return Quaternion(float(value))
    return NotImplemented


def _checked(w, x, y, z) -> Quaternion:
    if not all(math.isfinite(c) for c in (w, x, y, z)):
        raise OverflowError("quaternion arithmetic overflowed")
    return Quaternion(w, x, y, z)


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``p q`` (order matters)."""
    w = p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z
    x = p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y
    y = p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x
    z = p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w
    return _checked(w, x, y, z)


def conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.w, -q.x, -q.y, -q.z)


def modulus(q: Quaternion) -> float:
    # hypot avoids overflow in the intermediate squares
    return math.hypot(q.w, q.x, q.y, q.z)


def exp_unit(axis: str, angle: float) -> Quaternion:
    """``cos(angle) + axis * sin(angle)`` for ``axis`` in ``{'i', 'j'}``."""
    c, s = math.cos(angle), math.sin(angle)
    if axis == "i":
        return Quaternion(c, s, 0.0, 0.0)
    if axis == "j":
        return Quaternion(c, 0.0, s, 0.0)
    raise ValueError(f"axis must be 'i' or 'j', got {axis!r}")


def add(p: Quaternion, q: Quaternion) -> Quaternion:
    return _checked(p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z)


def sub(p: Quaternion, q: Quaternion) -> Quaternion:
    return _checked(p.w - q.w, p.x - q.x, p.y - q.y, p.z - q.z)


def scale(q: Quaternion, a: float) -> Quaternion:
    return _checked(a * q.w, a * q.x, a * q.y, a * q.z)


def inverse(q: Quaternion) -> Quaternion:
    n2 = q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z
    if n2 == 0.0:
        raise ZeroDivisionError("inverse of the zero quaternion")
    return scale(conj(q), 1.0 / n2)


# ---------------------------------------------------------------------------
# array kernels, last axis = (w, x, y, z)


def qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Broadcasting Hamilton product of quaternion arrays."""
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        (
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ),
        axis=-1,
    )


def qconj(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=np.float64, copy=True)
    out[..., 1:] *= -1.0
    return out


def qabs2(a: np.ndarray) -> np.ndarray:
    return np.sum(np.square(a), axis=-1)


def qabs(a: np.ndarray) -> np.ndarray:
    return np.sqrt(qabs2(a))


# ---------------------------------------------------------------------------
# text form "w+xi+yj+zk"

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_TEXT_RE = re.compile(rf"^\s*({_NUM})({_NUM})i({_NUM})j({_NUM})k\s*$")


def format_quaternion(q) -> str:
    """Round-trip text: 17 significant digits per component."""
    w, x, y, z = (float(c) for c in q)
    return f"{w:.17g}{x:+.17g}i{y:+.17g}j{z:+.17g}k"


def parse_quaternion(text: str) -> Quaternion:
    m = _TEXT_RE.match(text)
    if m is None:
        raise ValueError(f"not a quaternion literal: {text!r}")
    return Quaternion(*(float(g) for g in m.groups()))

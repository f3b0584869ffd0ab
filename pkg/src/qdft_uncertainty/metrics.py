"""PSNR and SSIM for quaternion-encoded images.

Pure-quaternion images (zero real part, RGB in the i, j, k parts) are
compared on their three imaginary channels; anything else on all four.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .exceptions import ShapeMismatch, TooSmall
from .qsignal import QSignal, frobenius_norm

__all__ = ["QualityReport", "used_channels", "mse", "psnr", "ssim", "quality_report"]

SSIM_WINDOW = 8
K1, K2 = 0.01, 0.03


def _check(a: QSignal, b: QSignal, peak: float) -> None:
    if a.shape != b.shape:
        raise ShapeMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    if not peak > 0:
        raise ValueError("peak must be positive")


def used_channels(a: QSignal, b: QSignal) -> tuple[int, ...]:
    """(1, 2, 3) when both images are pure quaternions, else (0, 1, 2, 3)."""
    tol = 1e-9 * max(1.0, frobenius_norm(a), frobenius_norm(b))
    if np.abs(a.data[..., 0]).max() <= tol and np.abs(b.data[..., 0]).max() <= tol:
        return (1, 2, 3)
    return (0, 1, 2, 3)


def mse(a: QSignal, b: QSignal) -> float:
    ch = list(used_channels(a, b))
    return float(np.mean((a.data[..., ch] - b.data[..., ch]) ** 2))


def psnr(a: QSignal, b: QSignal, peak: float = 1.0) -> float:
    """10 log10(peak^2 / MSE) in dB; ``math.inf`` for identical inputs."""
    _check(a, b, peak)
    err = mse(a, b)
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(peak * peak / err)


def _ssim_channel(x: np.ndarray, y: np.ndarray, peak: float, win: int) -> float:
    c1 = (K1 * peak) ** 2
    c2 = (K2 * peak) ** 2
    wx = sliding_window_view(x, (win, win))
    wy = sliding_window_view(y, (win, win))
    mx = wx.mean(axis=(-2, -1))
    my = wy.mean(axis=(-2, -1))
    # population (1/n) moments over each window
    vx = (wx**2).mean(axis=(-2, -1)) - mx**2
    vy = (wy**2).mean(axis=(-2, -1)) - my**2
    cxy = (wx * wy).mean(axis=(-2, -1)) - mx * my
    num = (2 * mx * my + c1) * (2 * cxy + c2)
    den = (mx**2 + my**2 + c1) * (vx + vy + c2)
    return float(np.mean(num / den))


def ssim(a: QSignal, b: QSignal, peak: float = 1.0, window: int = SSIM_WINDOW) -> float:
    """Mean structural similarity over all window x window patches, stride 1,
    averaged over the used channels."""
    _check(a, b, peak)
    if min(a.shape) < window:
        raise TooSmall(f"image {a.shape} is smaller than the {window} x {window} window")
    ch = used_channels(a, b)
    return float(np.mean([_ssim_channel(a.data[..., c], b.data[..., c], peak, window) for c in ch]))


@dataclass(frozen=True)
class QualityReport:
    psnr: float
    ssim: float
    mse: float
    channels: int

    def to_json_dict(self) -> dict:
        return {
            "PSNR": "inf" if math.isinf(self.psnr) else self.psnr,
            "SSIM": self.ssim,
            "MSE": self.mse,
            "channels": self.channels,
        }


def quality_report(a: QSignal, b: QSignal, peak: float = 1.0) -> QualityReport:
    return QualityReport(psnr(a, b, peak), ssim(a, b, peak), mse(a, b), len(used_channels(a, b)))

"""End-to-end workflows: the color-image band-limiting experiment and the
golden-value checks of the worked examples."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dqft import dqft, dqft_matrix_form, idqft_matrix_form, vandermonde_i, vandermonde_j
from .io import ColorImage, image_to_qsignal, qsignal_to_image
from .metrics import QualityReport, quality_report
from .qsignal import QSignal, Support, count_nonzero, restrict_to
from .uncertainty import audit, case_table, example_block_pattern, example_block_spectrum, exhaustive_verify

__all__ = ["ImageExperiment", "image_experiment", "Check", "run_examples"]


@dataclass(frozen=True)
class ImageExperiment:
    M: int
    N: int
    band_size: int
    n_time: int
    n_freq: int
    quality: QualityReport
    reconstruction: ColorImage = field(repr=False, compare=False)

    @property
    def product(self) -> int:
        return self.n_time * self.n_freq

    @property
    def bound_holds(self) -> bool:
        return self.product >= self.M * self.N

    def to_json_dict(self) -> dict:
        return {
            "M": self.M,
            "N": self.N,
            "band_size": self.band_size,
            "n_time": self.n_time,
            "n_freq": self.n_freq,
            "product": self.product,
            "MN": self.M * self.N,
            "bound_holds": self.bound_holds,
            **self.quality.to_json_dict(),
        }


def image_experiment(img: ColorImage, band: Support) -> ImageExperiment:
    """Band-limit an image in the quaternion spectrum and measure the damage.

    The image is embedded as a pure quaternion signal, transformed, cut to
    ``band``, transformed back and quantized to 8 bits.  ``n_time`` counts the
    nonzero samples of the band-limited signal, ``n_freq`` its nonzero
    coefficients; PSNR/SSIM compare the quantized result with the input.
    """
    f = image_to_qsignal(img)
    limited = restrict_to(dqft_matrix_form(f), band)
    recon = idqft_matrix_form(limited)
    out = qsignal_to_image(recon)
    report = quality_report(f, image_to_qsignal(out))
    return ImageExperiment(
        M=f.rows,
        N=f.cols,
        band_size=len(band),
        n_time=count_nonzero(recon),
        n_freq=count_nonzero(limited),
        quality=report,
        reconstruction=out,
    )


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    observed: object
    passed: bool
    note: str = ""

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "expected": self.expected,
            "observed": self.observed,
            "status": "PASS" if self.passed else "FAIL",
            "note": self.note,
        }


def _delta_checks() -> list[Check]:
    out = []
    for M, N in ((2, 2), (2, 3), (4, 4)):
        spec = dqft(QSignal.delta(M, N))
        target = np.zeros((M, N, 4))
        target[..., 0] = 1.0 / math.sqrt(M * N)
        err = float(np.abs(spec.data - target).max())
        rep = audit(QSignal.delta(M, N))
        out.append(Check(f"delta {M}x{N}: spectrum constant 1/sqrt(MN)", 0.0, err, err <= 1e-12))
        out.append(Check(f"delta {M}x{N}: n_time * n_freq = MN", M * N, rep.product, rep.product == M * N))
    return out


def _block_checks(k: int, l: int) -> list[Check]:
    f = example_block_pattern(k, l)
    err = float(np.abs(dqft(f).data - example_block_spectrum(k, l).data).max())
    rep = audit(f)
    n = k * l
    return [
        Check(f"block pattern k={k}, l={l}: spectrum l/k on the l-spaced lattice", 0.0, err, err <= 1e-10),
        Check(f"block pattern k={k}, l={l}: n_time = l^2", l * l, rep.n_time, rep.n_time == l * l),
        Check(f"block pattern k={k}, l={l}: n_freq = k^2", k * k, rep.n_freq, rep.n_freq == k * k),
        Check(f"block pattern k={k}, l={l}: product = N^2", n * n, rep.product, rep.product == n * n),
    ]


def _vandermonde_checks() -> list[Check]:
    v2 = vandermonde_i(2)
    expect = np.zeros((2, 2, 4))
    expect[..., 0] = np.array([[1, 1], [1, -1]]) / math.sqrt(2)  # e^{-pi i} = -1
    e1 = float(np.abs(v2 - expect).max())
    v3 = vandermonde_j(3)
    want = np.array([math.cos(-2 * math.pi / 3), 0.0, math.sin(-2 * math.pi / 3), 0.0]) / math.sqrt(3)
    e2 = float(np.abs(v3[2, 2] - want).max())
    return [
        Check("V_i for M=2", 0.0, e1, e1 <= 1e-15),
        Check("V_j for N=3, entry (2,2) = exp(-2 pi j/3)/sqrt(3)", 0.0, e2, e2 <= 1e-15),
    ]


def _case_checks(trials: int, seed: int) -> list[Check]:
    out = []
    for M, N in ((2, 2), (2, 3)):
        for row in case_table(M, N, trials, seed):
            note = ""
            if row.matches_claim is False:
                note = f"observed minimum differs from the claimed {row.claimed_min_freq}"
            out.append(
                Check(
                    f"{M}x{N}, {row.n_time} nonzero samples: n_freq >= ceil(MN/n_time)",
                    row.theorem_bound,
                    row.observed_min_freq,
                    row.bound_holds,
                    note,
                )
            )
        res = exhaustive_verify(M, N, trials, seed)
        out.append(Check(f"{M}x{N}: every support satisfies n_time * n_freq >= {M * N}", True, res.passed, res.passed))
    return out


def run_examples(k: int = 2, l: int = 2, trials: int = 20, seed: int = 0) -> list[Check]:
    """Recompute the worked examples and compare with their stated values."""
    return _delta_checks() + _block_checks(k, l) + _vandermonde_checks() + _case_checks(trials, seed)

"""Two-sided discrete quaternion Fourier transform, its discrete uncertainty
principle, and sparse recovery of missing frequencies."""

from .quaternion import Quaternion
from .qsignal import QSignal, Support, count_nonzero, frobenius_norm, support_of
from .dqft import dqft, idqft, dqft_matrix_form, idqft_matrix_form

__all__ = [
    "Quaternion",
    "QSignal",
    "Support",
    "count_nonzero",
    "frobenius_norm",
    "support_of",
    "dqft",
    "idqft",
    "dqft_matrix_form",
    "idqft_matrix_form",
]

__version__ = "0.1.0"

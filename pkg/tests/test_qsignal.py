import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qdft_uncertainty.exceptions import OutOfRange, ShapeMismatch
from qdft_uncertainty.qsignal import (
    QSignal,
    Support,
    consecutive_submatrix,
    count_nonzero,
    distance,
    frobenius_norm,
    random_nonzero_entries,
    restrict_to,
    support_of,
)
from qdft_uncertainty.quaternion import Quaternion, qabs

signal_arrays = arrays(
    np.float64,
    st.tuples(st.integers(1, 5), st.integers(1, 5), st.just(4)),
    elements=st.floats(-1e6, 1e6, allow_nan=False),
)


def test_construction_validates():
    with pytest.raises(ValueError):
        QSignal(np.zeros((2, 2, 3)))
    with pytest.raises(ValueError):
        QSignal(np.zeros((0, 2, 4)))
    bad = np.zeros((2, 2, 4))
    bad[1, 1, 2] = np.nan
    with pytest.raises(ValueError):
        QSignal(bad)


def test_immutable():
    s = QSignal.zeros(2, 2)
    with pytest.raises(ValueError):
        s.data[0, 0, 0] = 1.0


def test_delta_and_indexing():
    s = QSignal.delta(2, 3, at=(1, 2), value=Quaternion(0, 1, 2, 3))
    assert s[1, 2] == Quaternion(0, 1, 2, 3)
    assert s[0, 0] == Quaternion()
    assert s.shape == (2, 3)


def test_arithmetic_and_norm():
    a = QSignal.from_real([[3.0, 0.0], [0.0, 4.0]])
    assert frobenius_norm(a) == 5.0
    assert (a - a) == QSignal.zeros(2, 2)
    assert (2 * a).data[1, 1, 0] == 8.0
    with pytest.raises(ShapeMismatch):
        distance(a, QSignal.zeros(2, 3))


@given(signal_arrays)
def test_json_round_trip_exact(arr):
    s = QSignal(arr)
    assert QSignal.from_json(s.to_json()) == s


@given(signal_arrays)
def test_csv_round_trip_exact(arr):
    s = QSignal(arr)
    assert QSignal.from_csv(s.to_csv()) == s


def test_json_shape_checked():
    with pytest.raises(ValueError):
        QSignal.from_json_dict({"rows": 2, "cols": 2, "data": [[0, 0, 0, 0]]})


def test_count_nonzero_threshold():
    s = QSignal.from_real([[1.0, 1e-12], [0.0, -2.0]])
    assert count_nonzero(s) == 2
    assert count_nonzero(s, tol=0.0) == 3
    assert support_of(s).entries == ((0, 0), (1, 1))
    with pytest.raises(ValueError):
        count_nonzero(s, tol=-1.0)


def test_default_tol_scales_with_norm():
    # entry 1e-4 against a norm of 1e6 is below 1e-9 * 1e6 = 1e-3
    s = QSignal.from_real([[1e6, 1e-4]])
    assert count_nonzero(s) == 1


def test_support_normalizes_and_validates():
    sup = Support(2, 3, ((1, 2), (0, 1), (1, 2)))
    assert sup.entries == ((0, 1), (1, 2))
    assert sup.flat() == [1, 5]
    assert Support.from_flat(2, 3, [5, 1]) == sup
    assert Support.from_mask(sup.mask()) == sup
    assert len(sup.complement()) == 4
    assert (0, 1) in sup
    assert Support.from_json_dict(sup.to_json_dict()) == sup
    with pytest.raises(OutOfRange):
        Support(2, 3, ((2, 0),))


def test_consecutive_submatrix_wraps():
    arr = np.arange(12, dtype=float).reshape(3, 4)
    s = QSignal.from_real(arr)
    win = consecutive_submatrix(s, 2, 3, 2, 2)
    assert np.array_equal(win.data[..., 0], [[11.0, 8.0], [3.0, 0.0]])
    with pytest.raises(OutOfRange):
        consecutive_submatrix(s, 0, 0, 4, 1)


def test_restrict_to():
    s = QSignal.from_real(np.ones((2, 2)))
    r = restrict_to(s, Support(2, 2, ((0, 1),)))
    assert count_nonzero(r) == 1 and r[0, 1] == Quaternion(1)
    with pytest.raises(ShapeMismatch):
        restrict_to(s, Support(3, 2, ()))


def test_random_nonzero_entries_respects_floor(rng):
    v = random_nonzero_entries(rng, 1000, 0.1)
    assert v.shape == (1000, 4)
    assert qabs(v).min() >= 0.1
    assert np.abs(v).max() <= 1.0

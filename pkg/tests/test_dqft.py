import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import scalar_dqft
from qdft_uncertainty.dqft import (
    BASES,
    dqft,
    dqft_matrix_form,
    embedding_matrix,
    idqft,
    idqft_matrix_form,
    make_plan,
    real_embedding_column,
    unvectorize,
    vandermonde_i,
    vandermonde_j,
    vectorize,
)
from qdft_uncertainty.exceptions import OutOfRange
from qdft_uncertainty.qsignal import QSignal, frobenius_norm
from qdft_uncertainty.quaternion import Quaternion, qmul

dims = st.tuples(st.integers(1, 6), st.integers(1, 6))


def test_matches_scalar_oracle(rng):
    for M, N in [(1, 1), (2, 3), (3, 2), (4, 4), (5, 3)]:
        f = QSignal.random(M, N, rng)
        assert np.allclose(dqft(f).data, scalar_dqft(f.data), atol=1e-12)
        assert np.allclose(idqft(f).data, scalar_dqft(f.data, inverse=True), atol=1e-12)


def test_closed_form_single_j_sample():
    # f = j at (1, 1) on 4x4:  F(u, v) = exp(-pi i u/2) j exp(-pi j v/2) / 4
    f = QSignal.delta(4, 4, at=(1, 1), value=Quaternion(0, 0, 1, 0))
    F = dqft(f)
    assert F[0, 0].isclose(Quaternion(0, 0, 0.25, 0), 1e-15)
    assert F[1, 0].isclose(Quaternion(0, 0, 0, -0.25), 1e-15)
    assert F[0, 1].isclose(Quaternion(0.25, 0, 0, 0), 1e-15)
    assert F[1, 1].isclose(Quaternion(0, -0.25, 0, 0), 1e-15)
    assert F[2, 2].isclose(Quaternion(0, 0, 0.25, 0), 1e-15)


def test_closed_form_2x2_real_delta():
    # f = 1 at (1, 0): F(u, v) = (-1)^u / 2
    F = dqft(QSignal.delta(2, 2, at=(1, 0)))
    assert np.allclose(F.data[..., 0], [[0.5, 0.5], [-0.5, -0.5]], atol=1e-15)
    assert np.allclose(F.data[..., 1:], 0, atol=1e-15)


@pytest.mark.parametrize("M, N", [(2, 2), (2, 3), (4, 4)])
def test_delta_spectrum_is_flat(M, N):
    F = dqft(QSignal.delta(M, N))
    assert np.allclose(F.data[..., 0], 1 / math.sqrt(M * N), atol=1e-12, rtol=0)
    assert np.allclose(F.data[..., 1:], 0, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(dims, st.integers(0, 2**32 - 1))
def test_round_trip_and_parseval(shape, seed):
    f = QSignal.random(*shape, np.random.default_rng(seed))
    F = dqft(f)
    assert frobenius_norm(idqft(F) - f) <= 1e-12 * frobenius_norm(f)
    assert frobenius_norm(dqft(idqft(f)) - f) <= 1e-12 * frobenius_norm(f)
    assert math.isclose(frobenius_norm(F), frobenius_norm(f), rel_tol=1e-12)


@settings(max_examples=30, deadline=None)
@given(dims, st.integers(0, 2**32 - 1))
def test_matrix_form_agrees(shape, seed):
    f = QSignal.random(*shape, np.random.default_rng(seed))
    assert np.allclose(dqft_matrix_form(f).data, dqft(f).data, atol=1e-12)
    assert np.allclose(idqft_matrix_form(f).data, idqft(f).data, atol=1e-12)


def test_real_linear_not_quaternion_linear(rng):
    f = QSignal.random(3, 3, rng)
    g = QSignal.random(3, 3, rng)
    lhs = dqft(f.scale(2.0) + g.scale(-0.5))
    assert np.allclose(lhs.data, (dqft(f).scale(2.0) + dqft(g).scale(-0.5)).data, atol=1e-13)
    # left multiplication by j does not pass through the i-kernel
    jf = QSignal(qmul(np.array([0, 0, 1.0, 0]), f.data))
    jF = QSignal(qmul(np.array([0, 0, 1.0, 0]), dqft(f).data))
    assert not np.allclose(dqft(jf).data, jF.data, atol=1e-6)


def test_vandermonde_entries():
    V2 = vandermonde_i(2)
    assert np.allclose(V2[..., 0], np.array([[1, 1], [1, -1]]) / math.sqrt(2), atol=1e-15)
    assert np.allclose(V2[..., 1:], 0, atol=1e-15)
    V3 = vandermonde_j(3)
    # exp(-2 pi j * 4 / 3) = exp(-2 pi j / 3) = -1/2 - (sqrt 3 / 2) j
    want = np.array([-0.5, 0.0, -0.8660254037844386, 0.0]) / math.sqrt(3)
    assert np.allclose(V3[2, 2], want, atol=1e-15)
    assert np.allclose(vandermonde_j(3, inverse=True)[2, 2, 2], 0.8660254037844386 / math.sqrt(3))


def test_plan_shape_and_direction_checked():
    f = QSignal.zeros(2, 3)
    with pytest.raises(ValueError):
        dqft(f, make_plan(3, 2))
    with pytest.raises(ValueError):
        dqft(f, make_plan(2, 3, inverse=True))
    with pytest.raises(ValueError):
        make_plan(0, 3)


def test_embedding_matches_transform_and_is_orthogonal(rng):
    for M, N in [(1, 3), (2, 2), (3, 4)]:
        plan = make_plan(M, N)
        W = embedding_matrix(plan)
        assert W.shape == (4 * M * N, 4 * M * N)
        f = QSignal.random(M, N, rng)
        assert np.allclose(unvectorize(W @ vectorize(f), M, N).data, dqft(f).data, atol=1e-12)
        assert np.allclose(W.T @ W, np.eye(4 * M * N), atol=1e-12)
        Winv = embedding_matrix(make_plan(M, N, inverse=True))
        assert np.allclose(Winv @ W, np.eye(4 * M * N), atol=1e-12)


def test_embedding_columns():
    plan = make_plan(2, 3)
    W = embedding_matrix(plan)
    for t, s in [(0, 0), (1, 2)]:
        for b, name in enumerate(BASES):
            col = real_embedding_column(plan, (t, s), name)
            assert np.allclose(col, W[:, 4 * (t * 3 + s) + b], atol=1e-15)
    with pytest.raises(OutOfRange):
        real_embedding_column(plan, (2, 0), "i")
    with pytest.raises(ValueError):
        real_embedding_column(plan, (0, 0), "q")


def test_vectorize_layout():
    f = QSignal(np.arange(24, dtype=float).reshape(2, 3, 4))
    v = vectorize(f)
    # index 4 * (u * N + v) + c
    assert v[4 * (1 * 3 + 2) + 3] == f.data[1, 2, 3]
    assert unvectorize(v, 2, 3) == f

import numpy as np
import pytest

from anumrad import (
    a_inner,
    a_norm_vec,
    direct_sum,
    gen_psd,
    in_null_space,
    new_frame,
)
from anumrad.errors import DimensionMismatch, NotHermitian, NotPSD
from anumrad.matrixcore import frob


def test_identity_frame():
    f = new_frame(np.eye(3))
    assert f.strictly_positive and f.rank == 3
    np.testing.assert_allclose(f.projector, np.eye(3), atol=1e-13)
    np.testing.assert_allclose(f.sqrt_a, np.eye(3), atol=1e-13)


def test_rank_one_frame():
    f = new_frame(np.array([[0.0, 0.0], [0.0, 1.0]]))
    assert f.rank == 1 and not f.strictly_positive
    np.testing.assert_allclose(f.projector, np.diag([0.0, 1.0]), atol=1e-13)


def test_diagonal_frame_derived_matrices():
    f = new_frame(np.diag([4.0, 1.0]))
    np.testing.assert_allclose(f.sqrt_a, np.diag([2.0, 1.0]), atol=1e-13)
    np.testing.assert_allclose(f.pinv_sqrt_a, np.diag([0.5, 1.0]), atol=1e-13)
    np.testing.assert_allclose(f.pinv_a, np.diag([0.25, 1.0]), atol=1e-13)


def test_new_frame_rejections():
    with pytest.raises(NotHermitian):
        new_frame(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(NotPSD):
        new_frame(-np.eye(2))
    with pytest.raises(NotHermitian):
        new_frame(np.zeros((2, 3)))


def test_frame_invariants_random():
    rng = np.random.default_rng(10)
    for _ in range(25):
        n = int(rng.integers(1, 7))
        r = int(rng.integers(0, n + 1))
        f = new_frame(gen_psd(n, r, int(rng.integers(0, 2**63))))
        scale = 1.0 + frob(f.a)
        assert frob(f.sqrt_a @ f.sqrt_a - f.a) <= 1e-10 * scale
        assert frob(f.sqrt_a @ f.pinv_sqrt_a - f.projector) <= 1e-10 * scale
        assert frob(f.pinv_sqrt_a @ f.sqrt_a - f.projector) <= 1e-10 * scale
        assert frob(f.projector @ f.projector - f.projector) <= 1e-12
        assert frob(f.projector - f.projector.conj().T) <= 1e-12
        assert f.strictly_positive == (f.rank == n)
        assert f.range_u.shape == (n, f.rank)
        assert f.null_u.shape == (n, n - f.rank)


def test_a_inner_examples():
    assert a_inner(new_frame(np.eye(2)), [1, 0], [1, 0]) == pytest.approx(1.0)
    assert a_inner(new_frame(np.diag([0.0, 1.0])), [1, 0], [1, 0]) == pytest.approx(0.0)
    # <A(1,1), (1,0)> = <(4,1), (1,0)> = 4
    assert a_inner(new_frame(np.diag([4.0, 1.0])), [1, 1], [1, 0]) == pytest.approx(4.0)


def test_a_inner_conjugate_linear_in_second_argument():
    f = new_frame(np.diag([2.0, 3.0]))
    x, y = np.array([1.0, 1j]), np.array([0.5, -1j])
    assert a_inner(f, x, 1j * y) == pytest.approx(-1j * a_inner(f, x, y))


def test_a_inner_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        a_inner(new_frame(np.eye(2)), [1, 0, 0], [1, 0])


def test_a_norm_examples():
    assert a_norm_vec(new_frame(np.eye(2)), [3, 4]) == pytest.approx(5.0)
    # seminorm degeneracy on the null space
    assert a_norm_vec(new_frame(np.diag([0.0, 1.0])), [7, 0]) == pytest.approx(0.0, abs=1e-12)
    assert a_norm_vec(new_frame(np.diag([4.0, 1.0])), [1, 1]) == pytest.approx(np.sqrt(5.0))


def test_norm_matches_inner_product():
    rng = np.random.default_rng(11)
    for _ in range(25):
        n = int(rng.integers(1, 7))
        f = new_frame(gen_psd(n, int(rng.integers(1, n + 1)), int(rng.integers(0, 2**63))))
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        ip = a_inner(f, x, x)
        assert a_norm_vec(f, x) ** 2 == pytest.approx(ip.real, abs=1e-12 * (1 + np.linalg.norm(x) ** 2))
        assert abs(ip.imag) <= 1e-12 * (1.0 + np.linalg.norm(x) ** 2)


def test_cauchy_schwarz_semi_inner_product():
    rng = np.random.default_rng(12)
    for _ in range(50):
        n = int(rng.integers(1, 7))
        f = new_frame(gen_psd(n, int(rng.integers(0, n + 1)), int(rng.integers(0, 2**63))))
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        assert abs(a_inner(f, x, y)) <= a_norm_vec(f, x) * a_norm_vec(f, y) + 1e-10


def test_in_null_space():
    f = new_frame(np.diag([0.0, 1.0]))
    assert in_null_space(f, [5.0, 0.0])
    assert not in_null_space(f, [0.0, 1e-3])


def test_direct_sum_examples():
    f = new_frame(np.eye(2))
    bf = direct_sum(f)
    np.testing.assert_allclose(bf.a, np.eye(4), atol=1e-13)

    f = new_frame(np.diag([0.0, 1.0]))
    bf = direct_sum(f)
    np.testing.assert_allclose(np.diag(bf.a), [0.0, 1.0, 0.0, 1.0], atol=1e-13)
    assert bf.rank == 2 and not bf.strictly_positive

    f = new_frame(np.diag([4.0, 1.0]))
    bf = direct_sum(f)
    np.testing.assert_allclose(np.diag(bf.sqrt_a), [2.0, 1.0, 2.0, 1.0], atol=1e-13)
    assert bf.strictly_positive


def test_direct_sum_projector_blockdiag():
    rng = np.random.default_rng(13)
    for _ in range(10):
        n = int(rng.integers(1, 5))
        f = new_frame(gen_psd(n, int(rng.integers(0, n + 1)), int(rng.integers(0, 2**63))))
        bf = direct_sum(f)
        expected = np.zeros((2 * n, 2 * n), dtype=complex)
        expected[:n, :n] = f.projector
        expected[n:, n:] = f.projector
        assert frob(bf.projector - expected) <= 1e-12

import numpy as np
import pytest

from anumrad import (
    SweepConfig,
    a_crawford,
    a_crawford_C,
    a_min_modulus,
    a_numerical_radius,
    a_positive_power,
    a_seminorm,
    crawford,
    crawford_C,
    gen_compatible,
    gen_psd,
    new_frame,
    numerical_radius,
    oracle_gauge,
    re_a,
    sharp,
)
from anumrad.errors import (
    EmptyRange,
    NoAdjoint,
    NotAPositive,
    UnsupportedExponent,
)
from anumrad.matrixcore import frob, spec_norm

NILP = np.array([[0.0, 2.0], [0.0, 0.0]])


def rand_complex(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_frame(rng, n=None, rank=None):
    n = n or int(rng.integers(2, 6))
    rank = rank if rank is not None else int(rng.integers(1, n + 1))
    return new_frame(gen_psd(n, rank, int(rng.integers(0, 2**63))))


def test_sweep_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(grid_points=8)
    with pytest.raises(ValueError):
        SweepConfig(refine_tol=0.0)
    with pytest.raises(ValueError):
        SweepConfig(refine_max_iter=0)


def test_numerical_radius_examples():
    # w of [[0, a], [0, 0]] is |a| / 2
    assert numerical_radius(NILP) == pytest.approx(1.0, abs=1e-11)
    assert numerical_radius(np.eye(4)) == pytest.approx(1.0, abs=1e-12)
    t = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 2.0], [0.0, 0.0, 0.0]])
    assert numerical_radius(t) == pytest.approx(np.sqrt(5.0) / 2.0, abs=1e-10)
    assert numerical_radius(np.array([[3j]])) == pytest.approx(3.0, abs=1e-11)
    assert numerical_radius(np.zeros((3, 3))) == 0.0


def test_crawford_examples():
    assert crawford(np.eye(3)) == pytest.approx(1.0, abs=1e-11)
    assert crawford(np.diag([1.0, -1.0])) == pytest.approx(0.0, abs=1e-11)
    assert crawford(NILP) == pytest.approx(0.0, abs=1e-11)


def test_crawford_bounded_by_diagonal_entries():
    rng = np.random.default_rng(30)
    for _ in range(10):
        d = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        assert crawford(np.diag(d)) <= np.abs(d).min() + 1e-9


def test_crawford_C_examples():
    # phase pi/2 sends Re(e^{i phi} I) to zero
    assert crawford_C(np.eye(3)) == pytest.approx(0.0, abs=1e-11)
    assert crawford_C(np.zeros((2, 2))) == 0.0
    # Re(e^{i phi} [[0,2],[0,0]]) has both singular values equal to 1
    assert crawford_C(NILP) == pytest.approx(1.0, abs=1e-11)


def test_crawford_C_brute_force_cross_check():
    rng = np.random.default_rng(31)
    m = rand_complex(rng, (3, 3))
    fine = crawford_C(m)
    brute = np.inf
    for phi in np.linspace(0, np.pi, 720, endpoint=False):
        h = 0.5 * (np.exp(1j * phi) * m + np.exp(-1j * phi) * m.conj().T)
        for _ in range(40):
            x = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            x /= np.linalg.norm(x)
            brute = min(brute, np.linalg.norm(h @ x))
    assert fine <= brute + 1e-9  # brute force approaches from above


def test_radius_error_contract_vs_fine_grid():
    # default sweep accuracy must beat max(refine_tol, (pi ||M|| / grid)^2)
    rng = np.random.default_rng(42)
    fine = SweepConfig(grid_points=8192)
    for _ in range(5):
        m = rand_complex(rng, (5, 5))
        bound = max(1e-12, (np.pi * spec_norm(m) / 1024.0) ** 2)
        assert abs(numerical_radius(m) - numerical_radius(m, fine)) <= bound
        assert abs(crawford(m) - crawford(m, fine)) <= bound
        assert abs(crawford_C(m) - crawford_C(m, fine)) <= bound


def test_a_seminorm_and_min_modulus():
    rng = np.random.default_rng(32)
    t = rand_complex(rng, (3, 3))
    f = new_frame(np.eye(3))
    assert a_seminorm(f, t) == pytest.approx(spec_norm(t), abs=1e-12)
    assert a_min_modulus(f, t) == pytest.approx(np.linalg.svd(t, compute_uv=False)[-1], abs=1e-12)

    f = new_frame(np.diag([4.0, 1.0]))
    t = np.array([[0.0, 1.0], [0.0, 0.0]])
    assert a_seminorm(f, t) == pytest.approx(2.0, abs=1e-12)
    assert a_min_modulus(f, t) == pytest.approx(0.0, abs=1e-12)

    f = new_frame(np.diag([0.0, 1.0]))
    assert a_seminorm(f, np.eye(2)) == pytest.approx(1.0)
    assert a_min_modulus(f, np.eye(2)) == pytest.approx(1.0)


def test_a_gauges_raise_on_empty_range_and_missing_adjoint():
    f0 = new_frame(np.zeros((2, 2)))
    with pytest.raises(EmptyRange):
        a_seminorm(f0, np.eye(2))
    f = new_frame(np.diag([0.0, 1.0]))
    t = np.array([[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(NoAdjoint):
        a_numerical_radius(f, t)
    with pytest.raises(NoAdjoint):
        oracle_gauge(f, t, "w", 10, seed=0)


def test_a_numerical_radius_examples():
    f = new_frame(np.eye(3))
    t = np.array([[0.0, 2.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    assert a_numerical_radius(f, t) == pytest.approx(1.0, abs=1e-10)

    f = new_frame(np.diag([4.0, 1.0]))
    t = np.array([[0.0, 1.0], [0.0, 0.0]])
    assert a_numerical_radius(f, t) == pytest.approx(1.0, abs=1e-10)

    f = new_frame(np.diag([0.0, 2.0, 1.0]))
    assert a_numerical_radius(f, np.eye(3)) == pytest.approx(1.0, abs=1e-10)
    assert a_crawford(f, np.eye(3)) == pytest.approx(1.0, abs=1e-10)


def test_oracle_examples():
    f = new_frame(np.eye(2))
    o = oracle_gauge(f, NILP, "w", 2000, seed=5)
    assert 0.999 <= o <= 1.0 + 1e-9
    assert oracle_gauge(f, np.eye(2), "norm", 64, seed=1) == pytest.approx(1.0, abs=1e-12)
    assert oracle_gauge(f, np.eye(2), "c", 64, seed=1) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        oracle_gauge(f, NILP, "bogus", 10, seed=0)
    with pytest.raises(ValueError):
        oracle_gauge(f, NILP, "w", 0, seed=0)


def test_oracle_reduction_soundness():
    rng = np.random.default_rng(33)
    for i in range(8):
        f = random_frame(rng, n=int(rng.integers(2, 6)))
        t = gen_compatible(f, int(rng.integers(0, 2**63)))
        t = t / max(spec_norm(t), 1.0)
        w = a_numerical_radius(f, t)
        o = oracle_gauge(f, t, "w", 2000, seed=100 + i)
        assert o <= w + 1e-9
        assert abs(w - o) <= 2e-3


def test_oracle_inf_kinds_from_above():
    rng = np.random.default_rng(34)
    for i in range(6):
        f = random_frame(rng, n=3, rank=3)
        t = gen_compatible(f, int(rng.integers(0, 2**63)))
        c_sweep = a_crawford(f, t)
        c_oracle = oracle_gauge(f, t, "c", 1500, seed=200 + i)
        assert c_oracle >= c_sweep - 1e-9
        assert abs(c_oracle - c_sweep) <= 2e-3
        mm = a_min_modulus(f, t)
        mo = oracle_gauge(f, t, "minmod", 1500, seed=300 + i)
        assert mo >= mm - 1e-9
        cc = a_crawford_C(f, t)
        co = oracle_gauge(f, t, "C", 1500, seed=400 + i)
        assert co >= cc - 1e-9
        assert abs(co - cc) <= 5e-3


def test_a_positive_power_examples():
    f = new_frame(np.eye(2))
    np.testing.assert_allclose(
        a_positive_power(f, np.eye(2), 3.7).mat, np.eye(2), atol=1e-12
    )
    s = np.diag([4.0, 9.0])
    np.testing.assert_allclose(a_positive_power(f, s, 2).mat, np.diag([16.0, 81.0]), atol=1e-10)
    np.testing.assert_allclose(a_positive_power(f, s, 1.5).mat, np.diag([8.0, 27.0]), atol=1e-10)


def test_a_positive_power_validation():
    f = new_frame(np.eye(2))
    with pytest.raises(ValueError):
        a_positive_power(f, np.eye(2), 0.5)
    with pytest.raises(NotAPositive):
        a_positive_power(f, NILP, 2)
    f_sing = new_frame(np.diag([0.0, 1.0]))
    with pytest.raises(UnsupportedExponent):
        a_positive_power(f_sing, np.eye(2), 1.5)
    # integer powers on a degenerate frame match the plain reduced product
    red = a_positive_power(f_sing, np.diag([3.0, 2.0]), 2).mat
    assert red.shape == (1, 1) and red[0, 0] == pytest.approx(4.0, abs=1e-10)


def test_integer_power_matches_matrix_product():
    rng = np.random.default_rng(35)
    for _ in range(10):
        f = random_frame(rng)
        t = gen_compatible(f, int(rng.integers(0, 2**63)))
        s = sharp(f, t) @ t
        from anumrad import reduced

        k = reduced(f, s).mat
        p2 = a_positive_power(f, s, 2).mat
        assert frob(p2 - k @ k) <= 1e-9 * (1.0 + frob(k) ** 2)


def test_equivalence_bounds():
    rng = np.random.default_rng(36)
    for _ in range(25):
        f = random_frame(rng)
        t = gen_compatible(f, int(rng.integers(0, 2**63)))
        w = a_numerical_radius(f, t)
        n = a_seminorm(f, t)
        assert 0.5 * n <= w + 1e-8 * (1 + n)
        assert w <= n + 1e-8 * (1 + n)


def test_a_selfadjoint_radius_equals_seminorm():
    rng = np.random.default_rng(37)
    for _ in range(15):
        f = random_frame(rng)
        s = re_a(f, gen_compatible(f, int(rng.integers(0, 2**63))))
        w, n = a_numerical_radius(f, s), a_seminorm(f, s)
        assert abs(w - n) <= 1e-8 * (1.0 + n)


def test_sup_theta_formula():
    rng = np.random.default_rng(38)
    for _ in range(10):
        f = random_frame(rng)
        t = gen_compatible(f, int(rng.integers(0, 2**63)))
        w = a_numerical_radius(f, t)
        grid_max = max(
            a_seminorm(f, re_a(f, np.exp(1j * th) * t))
            for th in np.linspace(0, 2 * np.pi, 64, endpoint=False)
        )
        assert grid_max <= w + 1e-8 * (1.0 + w)
        # the same sweep started from a 64-point grid refines to the same value
        w_coarse = a_numerical_radius(f, t, SweepConfig(grid_points=64))
        assert abs(w_coarse - w) <= 1e-6 * (1.0 + w)


def test_two_block_nilpotent_radius_identity():
    rng = np.random.default_rng(39)
    for _ in range(10):
        n = int(rng.integers(2, 6))
        p = int(rng.integers(1, n))
        t = np.zeros((n, n), dtype=complex)
        t[:p, p:] = rand_complex(rng, (p, n - p))
        f = random_frame(rng, n=n, rank=n)
        s = sharp(f, t)
        w = a_numerical_radius(f, t)
        rhs = 0.5 * np.sqrt(a_seminorm(f, t @ s + s @ t))
        assert abs(w - rhs) <= 1e-8


def test_seminorm_monotone_on_a_positive_order():
    rng = np.random.default_rng(40)
    for _ in range(15):
        f = random_frame(rng)
        x = gen_compatible(f, int(rng.integers(0, 2**63)))
        y = gen_compatible(f, int(rng.integers(0, 2**63)))
        s1 = sharp(f, x) @ x
        s2 = sharp(f, y) @ y
        assert a_seminorm(f, s1 + s2) >= a_seminorm(f, s1) - 1e-8

import random
from fractions import Fraction as F

import pytest
from mpmath import mpf

from csjack.algebra import SymPoly
from csjack.oracle import jack_oracle
from csjack.spectrum import (
    cs_params,
    eigenvalue,
    general_params,
    groundstate_energy,
    hermitean_couplings,
)
from csjack.verify import (
    ConditioningError,
    EvalPoint,
    check_groundstate,
    check_kernel_identity,
    check_regular_eigen,
    psi0_value,
    sample_points,
    trig_identity_residual,
)

TIGHT = mpf("1e-40")


def _hermitean(masses, lam):
    return general_params(
        masses, lam, hermitean_couplings(masses, lam), shifts=(0,) * len(masses)
    )


def test_groundstate_identity_fixed_point():
    params = _hermitean((F(1), F(1)), F(2))
    res = check_groundstate(params, EvalPoint((0.3, 1.1)))
    assert res < TIGHT


def test_groundstate_identity_random_masses():
    params = _hermitean((F(1), F(3, 2), F(2)), F(1, 2))
    for pt in sample_points(3, 20, seed=101):
        assert check_groundstate(params, pt) < TIGHT


def test_groundstate_identity_complexified_coordinates():
    # the factorization is an identity of meromorphic functions
    params = _hermitean((F(1), F(2)), F(3))
    pt = EvalPoint((0.4 + 0.2j, -1.0 - 0.1j))
    assert check_groundstate(params, pt) < TIGHT


def test_trig_three_point_identity():
    rng = random.Random(5)
    for _ in range(20):
        a, b, c = (rng.uniform(-3, 3) for _ in range(3))
        if min(abs(a - b), abs(a - c), abs(b - c)) < 0.05:
            continue
        assert trig_identity_residual(a, b, c) < TIGHT


def test_kernel_identity_and_p_independence():
    for P in (F(0), F(5, 2)):
        for pt in sample_points(2, 20, seed=7, paired=True):
            assert check_kernel_identity(2, F(2), P, pt) < TIGHT
    for pt in sample_points(3, 20, seed=13, paired=True):
        assert check_kernel_identity(3, F(1, 2), F(0), pt) < TIGHT


def test_kernel_identity_needs_second_point():
    from csjack.spectrum import ConfigurationError

    with pytest.raises(ConfigurationError):
        check_kernel_identity(2, F(2), F(0), EvalPoint((0.1, 1.4)))


def test_regular_eigen_examples():
    loose = mpf("1e-30")
    p1 = cs_params(2, 1)
    res = [
        check_regular_eigen(p1, SymPoly(2, {(1,): F(1)}), F(5, 2), pt)
        for pt in sample_points(2, 5, seed=3)
    ]
    assert max(res) < loose

    p2 = cs_params(2, 2)
    poly = jack_oracle(2, F(2), (2, 0))
    res = [
        check_regular_eigen(p2, poly, eigenvalue(p2, (2, 0)), pt)
        for pt in sample_points(2, 5, seed=4)
    ]
    assert max(res) < loose

    # constant polynomial: the groundstate itself
    res = [
        check_regular_eigen(p2, SymPoly(2, {(): F(1)}), groundstate_energy(p2), pt)
        for pt in sample_points(2, 5, seed=5)
    ]
    assert max(res) < loose


def test_regular_eigen_detects_wrong_eigenvalue():
    p = cs_params(2, 2)
    poly = jack_oracle(2, F(2), (2, 0))
    wrong = eigenvalue(p, (2, 0)) + 1
    res = [check_regular_eigen(p, poly, wrong, pt) for pt in sample_points(2, 3, seed=9)]
    assert min(res) > mpf("0.5")


def test_residuals_scale_with_precision():
    params = _hermitean((F(1), F(3, 2)), F(2))
    pts128 = sample_points(2, 5, seed=21, precision=128)
    pts256 = sample_points(2, 5, seed=21, precision=256)
    r128 = max(check_groundstate(params, pt) for pt in pts128)
    r256 = max(check_groundstate(params, pt) for pt in pts256)
    assert r128 < mpf("1e-25")
    assert r256 < r128 * mpf("1e-15")


def test_psi0_real_in_principal_wedge():
    for lam in (F(1, 2), F(2), F(7, 3)):
        v = psi0_value(lam, (-2.0, -0.3, 1.4))
        assert v.real > 0
        assert abs(v.imag) < mpf("1e-70")


def test_eval_point_collision_guard():
    with pytest.raises(ConditioningError):
        EvalPoint((0.5, 0.5 + 1e-12))
    with pytest.raises(ConditioningError):
        EvalPoint((0.5, 1.0), (0.5, 2.0))


def test_sample_points_seeded_deterministic():
    a = sample_points(3, 4, seed=11)
    b = sample_points(3, 4, seed=11)
    assert [pt.x for pt in a] == [pt.x for pt in b]
    for pt in a:
        assert all(y - x >= 0.1 for x, y in zip(pt.x, pt.x[1:]))

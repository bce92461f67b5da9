import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slicereg.quat import (QI, QJ, QK, UI, UJ, UK, DegeneratePair,
                           ImaginaryUnit, Quaternion, psi, psi_between,
                           quat_mul, rep_solve, sigma, slice_decompose,
                           to_slice_point)

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)
quats = st.builds(Quaternion, finite, finite, finite, finite)


def test_basis_table():
    assert quat_mul(QI, QJ).isclose(QK)
    assert quat_mul(QJ, QK).isclose(QI)
    assert quat_mul(QK, QI).isclose(QJ)
    assert quat_mul(QJ, QI).isclose(-QK)
    for b in (QI, QJ, QK):
        assert quat_mul(b, b).isclose(Quaternion(-1.0))
    assert quat_mul(quat_mul(QI, QJ), QK).isclose(Quaternion(-1.0))


def test_identity_and_expansion():
    q = Quaternion(1, 2, 3, 4)
    assert quat_mul(Quaternion(1.0), q) == q
    # (i+j)(i-j) expands to -2k on the basis table
    assert quat_mul(QI + QJ, QI - QJ).isclose(Quaternion(0, 0, 0, -2))


@given(quats, quats)
@settings(max_examples=200)
def test_norm_multiplicative(p, q):
    assert abs(quat_mul(p, q)) == pytest.approx(abs(p) * abs(q), rel=1e-9, abs=1e-9)


def test_slice_decompose_examples():
    x, y, unit = slice_decompose(Quaternion(1, 0, 2, 0))
    assert (x, y) == (1, 2) and unit.isclose(UJ)
    assert slice_decompose(Quaternion(3.0)) == (3.0, 0.0, None)
    x, y, unit = slice_decompose(-QK)
    assert (x, y) == (0, 1) and unit.isclose(-UK)


@given(quats)
@settings(max_examples=200)
def test_realize_roundtrip(q):
    sp = to_slice_point(q)
    assert sp.realize().isclose(q, 1e-9 * (1 + abs(q)))


def test_psi_examples():
    assert psi(1 + 2j, UJ).isclose(Quaternion(1, 0, 2, 0))
    for u in (UI, UJ, UK):
        assert psi(5 + 0j, u).isclose(Quaternion(5.0))
    # z^I with conjugated coordinates lands on the opposite chart
    assert psi(1 + 2j, -UJ).isclose(psi(1 - 2j, UJ))


def test_psi_between():
    q = psi(1 + 2j, UI)
    assert psi_between(q, UI, UJ).isclose(psi(1 + 2j, UJ))
    # inverse composition is the identity on the plane
    assert psi_between(psi_between(q, UI, UK), UK, UI).isclose(q)


def test_sigma_examples():
    assert sigma(Quaternion(1, 1, 0, 0), Quaternion(2, 1, 0, 0)) == pytest.approx(1.0)
    assert sigma(QI, QJ) == pytest.approx(math.sqrt(2))
    assert sigma(Quaternion(2.0), Quaternion(1, 0, 1, 0)) == pytest.approx(math.sqrt(2))


@given(quats, quats, quats)
@settings(max_examples=300)
def test_sigma_metric(p, q, r):
    assert sigma(p, q) == pytest.approx(sigma(q, p), rel=1e-12, abs=1e-12)
    assert sigma(p, p) <= 1e-12 * (1 + abs(p))
    assert sigma(p, r) <= sigma(p, q) + sigma(q, r) + 1e-9 * (1 + abs(p) + abs(q) + abs(r))


def test_rep_solve_examples():
    c = Quaternion(2, 1, 0, 3)
    assert rep_solve(UK, UI, UJ, c, c).isclose(c)
    # models f(q) = q: values x + y*I on each slice
    x, y = 0.7, 1.3
    vi = Quaternion(x, y, 0, 0)
    vj = Quaternion(x, 0, y, 0)
    assert rep_solve(UK, UI, UJ, vi, vj).isclose(Quaternion(x, 0, 0, y), 1e-12)
    assert rep_solve(UI, UI, UJ, vi, vj).isclose(vi, 1e-12)
    assert rep_solve(UJ, UI, UJ, vi, vj).isclose(vj, 1e-12)


def test_rep_solve_degenerate():
    with pytest.raises(DegeneratePair):
        rep_solve(UK, UI, UI, Quaternion(1.0), Quaternion(2.0))


@given(st.integers(0, 10 ** 6))
@settings(max_examples=200)
def test_rep_solve_pair_independent(seed):
    import random
    rng = random.Random(seed)

    def runit():
        while True:
            v = [rng.gauss(0, 1) for _ in range(3)]
            if sum(c * c for c in v) > 1e-3:
                return ImaginaryUnit.of(*v)

    # consistent slice data: v_L = w1 + L*w2
    w1 = Quaternion(*(rng.gauss(0, 1) for _ in range(4)))
    w2 = Quaternion(*(rng.gauss(0, 1) for _ in range(4)))

    def val(u):
        return w1 + u.u * w2

    i_u = runit()
    pairs = []
    while len(pairs) < 3:
        a, b = runit(), runit()
        if abs(a.u - b.u) > 1e-2:
            pairs.append((a, b))
    expect = w1 + i_u.u * w2
    for a, b in pairs:
        got = rep_solve(i_u, a, b, val(a), val(b))
        assert got.isclose(expect, 1e-9 * (1 + abs(expect)))


def test_rep_solve_endpoint_reproduction_random(rng):
    for _ in range(50):
        w1 = Quaternion(*(rng.gauss(0, 1) for _ in range(4)))
        w2 = Quaternion(*(rng.gauss(0, 1) for _ in range(4)))
        vj = w1 + UI.u * w2
        vk = w1 + UJ.u * w2
        assert rep_solve(UI, UI, UJ, vj, vk).isclose(vj, 1e-13 * (1 + abs(vj)))
        assert rep_solve(UJ, UI, UJ, vj, vk).isclose(vk, 1e-13 * (1 + abs(vk)))

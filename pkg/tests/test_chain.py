import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from closedchain.chain import (
    ChainSpec,
    angle_distance,
    circular_residual,
    closure_residual,
    combine_sin_cos,
    cross_term,
    diagonal_length,
    endpoint,
    normalize_angle,
    phase,
    prefix_cross_terms,
    rotate,
    sum_squares,
)
from closedchain.errors import (
    DegeneratePhaseError,
    DimensionError,
    InfeasibleChainError,
    InvalidParameterError,
    NumericDomainError,
)

from conftest import chains

PI = math.pi


def test_chain_validation():
    with pytest.raises(InvalidParameterError):
        ChainSpec([1, 1, 1])
    with pytest.raises(InvalidParameterError):
        ChainSpec([1, 1, 0, 1])
    with pytest.raises(InvalidParameterError):
        ChainSpec([1, 1, -2, 1])
    with pytest.raises(InvalidParameterError):
        ChainSpec([1, 1, float("nan"), 1])


def test_infeasible_chain_constructs_but_refuses_sampling():
    chain = ChainSpec([10, 1, 1, 1])
    assert not chain.feasible
    assert endpoint(chain, [0, 0]).tolist() == [11, 0]
    with pytest.raises(InfeasibleChainError):
        chain.require_feasible()


def test_feasibility_boundary_counts_as_feasible():
    assert ChainSpec([3, 1, 1, 1]).feasible


def test_endpoint_examples(unit4, unit5):
    assert np.allclose(endpoint(unit5, [0, 0, 0, 0]), [4, 0])
    assert np.allclose(endpoint(ChainSpec([2, 1, 1, 1]), [0, PI / 2]), [2, 1])
    assert np.allclose(endpoint(unit4, [0, -PI / 2, -PI]), [0, -1], atol=1e-15)


def test_endpoint_dimension_error(unit4):
    with pytest.raises(DimensionError):
        endpoint(unit4, np.zeros(5))


def test_sum_squares():
    assert sum_squares(ChainSpec([1] * 5), 4) == 4
    assert sum_squares(ChainSpec([2, 2, 2, 1, 1]), 4) == 13
    assert sum_squares(ChainSpec([3, 1, 1, 2]), 1) == 9
    with pytest.raises(InvalidParameterError):
        sum_squares(ChainSpec([1] * 4), 5)


def test_cross_term_examples(unit4):
    assert cross_term(unit4, [0, 0]) == pytest.approx(1)
    assert cross_term(unit4, [0, PI / 2]) == pytest.approx(0, abs=1e-15)
    assert cross_term(ChainSpec([3, 1, 1, 2]), [1.234]) == 0


def test_phase_examples(unit4):
    assert phase(ChainSpec([1, 2, 2, 2]), [0]) == pytest.approx(PI / 2)
    assert phase(unit4, [0, -PI / 2]) == pytest.approx(3 * PI / 4)
    assert phase(unit4, [0, 0]) == pytest.approx(PI / 2)
    with pytest.raises(DegeneratePhaseError):
        phase(unit4, [0, PI])


def test_diagonal_length_examples(unit4):
    assert diagonal_length(unit4, [0, 0]) == pytest.approx(2)
    assert diagonal_length(unit4, [0, PI]) == pytest.approx(0, abs=1e-7)
    assert diagonal_length(unit4, [0, -PI / 2, -PI]) == pytest.approx(1)


def test_diagonal_length_rejects_inconsistent_inputs(monkeypatch, unit4):
    import closedchain.chain as mod

    monkeypatch.setattr(mod, "cross_term", lambda chain, beta: -5.0)
    with pytest.raises(NumericDomainError):
        diagonal_length(unit4, [0, 0])


def test_combine_sin_cos_examples():
    assert combine_sin_cos(1, 0) == (1, 0)
    c, p = combine_sin_cos(0, 1)
    assert (c, p) == (1, pytest.approx(PI / 2))
    c, p = combine_sin_cos(1, 1)
    assert c == pytest.approx(math.sqrt(2)) and p == pytest.approx(PI / 4)
    with pytest.raises(DegeneratePhaseError):
        combine_sin_cos(0, 0)


def test_combine_sin_cos_identity():
    rng = np.random.default_rng(1)
    for a, b, x in rng.uniform(-10, 10, size=(1000, 3)):
        c, p = combine_sin_cos(a, b)
        assert abs(a * math.sin(x) + b * math.cos(x) - c * math.sin(x + p)) <= 1e-12 * (abs(a) + abs(b))


def test_residual_examples(unit4, unit5):
    assert circular_residual(unit4, [0, -PI / 2, -PI]) == pytest.approx(0, abs=1e-15)
    assert circular_residual(unit5, [0, 0, 0, 0]) == 15
    assert closure_residual(unit4, [PI / 2, 0, -PI / 2]) == pytest.approx(0, abs=1e-15)
    assert closure_residual(unit5, [0, 0, 0, 0]) == 3
    with pytest.raises(DimensionError):
        circular_residual(unit5, [0, 0, 0])


def test_rotate_examples():
    assert np.allclose(rotate([0, -PI / 2, -PI], PI / 2), [PI / 2, 0, -PI / 2])
    beta = np.array([0.3, -2.0, 3.0])
    assert np.array_equal(rotate(beta, 0.0), beta)
    assert np.allclose(rotate([PI], PI), [0])


def test_normalize_angle_range():
    x = np.array([-PI, PI, 3 * PI, -3 * PI, 0.0, 7.0, -7.0])
    y = normalize_angle(x)
    assert np.all(y > -PI) and np.all(y <= PI)
    assert normalize_angle(-PI) == PI
    assert np.allclose(angle_distance(x, y), 0)


@settings(max_examples=60, deadline=None)
@given(chains(), st.integers(0, 2**32 - 1))
def test_cross_term_matches_endpoint_norm(chain, seed):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(1, chain.n + 1))
    beta = rng.uniform(-PI, PI, size=m)
    p = endpoint(chain, beta)
    x = cross_term(chain, beta)
    assert diagonal_length(chain, beta) ** 2 == pytest.approx(sum_squares(chain, m) + 2 * x, abs=1e-12 * chain.total**2)
    assert abs(sum_squares(chain, m) + 2 * x - p @ p) <= 1e-12 * chain.total**2


@settings(max_examples=60, deadline=None)
@given(chains(), st.integers(0, 2**32 - 1))
def test_rotation_invariance(chain, seed):
    rng = np.random.default_rng(seed)
    beta = rng.uniform(-PI, PI, size=chain.n - 1)
    lam = rng.uniform(-10, 10)
    rot = rotate(beta, lam)
    scale = chain.total**2
    assert abs(cross_term(chain, rot) - cross_term(chain, beta)) <= 1e-12 * scale
    assert abs(diagonal_length(chain, rot) - diagonal_length(chain, beta)) <= 1e-12 * chain.total
    assert abs(circular_residual(chain, rot) - circular_residual(chain, beta)) <= 1e-12 * scale


@settings(max_examples=60, deadline=None)
@given(chains(), st.integers(0, 2**32 - 1))
def test_phase_contract(chain, seed):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(1, chain.n))
    beta = rng.uniform(-PI, PI, size=m)
    a = chain.a[:m]
    big_a, big_b = a @ np.sin(beta), a @ np.cos(beta)
    phi = phase(chain, beta)
    for x in rng.uniform(-10, 10, size=20):
        lhs = big_a * math.sin(x) + big_b * math.cos(x)
        assert lhs == pytest.approx(math.hypot(big_a, big_b) * math.sin(x + phi), abs=1e-12 * chain.total)


def test_prefix_cross_terms_batched_against_loops():
    chain = ChainSpec([1.5, 0.7, 2.0, 1.1, 0.9])
    beta = np.random.default_rng(3).uniform(-PI, PI, size=(7, 4))
    pre = prefix_cross_terms(chain, beta)
    for row, got in zip(beta, pre):
        for m in range(1, 5):
            want = sum(
                chain.a[i] * chain.a[j] * math.cos(row[i] - row[j]) for i in range(m) for j in range(i + 1, m)
            )
            assert got[m - 1] == pytest.approx(want, abs=1e-13)

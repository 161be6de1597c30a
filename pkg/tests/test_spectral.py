import math

import numpy as np
import pytest

from momint.bounds import rayleigh_bounds
from momint.exceptions import RankDeficiencyError
from momint.polynomials import Polynomial
from momint.spectral import (
    operator_moments,
    quadrature_from_moments,
    rayleigh_interval,
    spectral_measure,
)


def test_operator_moments_diag():
    data = operator_moments(np.diag([1.0, 2.0, 3.0]), np.ones(3), 6)
    for k in range(7):
        expected = (1.0 + 2.0**k + 3.0**k) / 3.0
        assert abs(data.moments[k] - expected) <= 1e-12 * (1.0 + expected)


def test_operator_moments_identity():
    data = operator_moments(np.eye(4), np.array([1.0, 2.0, 0.0, -1.0]), 8)
    assert np.allclose(data.moments, 1.0, atol=1e-14)


def test_operator_moments_reflection():
    data = operator_moments(np.array([[0.0, 1.0], [1.0, 0.0]]), np.array([1.0, 0.0]), 8)
    assert np.allclose(data.moments[::2], 1.0, atol=0)
    assert np.allclose(data.moments[1::2], 0.0, atol=0)


def test_operator_moments_validations():
    with pytest.raises(ValueError):
        operator_moments(np.eye(2), np.zeros(2), 4)
    with pytest.raises(ValueError):
        operator_moments(np.eye(2), np.ones(2), 3)
    with pytest.raises(ValueError):
        operator_moments(np.eye(2), np.ones(3), 4)


def test_rayleigh_interval_examples():
    assert rayleigh_interval(np.diag([1.0, 2.0, 3.0])) == (1.0, 3.0)
    lo, hi = rayleigh_interval([[0.0, 1.0], [1.0, 0.0]])
    assert abs(lo + 1.0) <= 1e-14 and abs(hi - 1.0) <= 1e-14


def test_rayleigh_interval_matches_eigensolver():
    rng = np.random.default_rng(31)
    raw = rng.normal(size=(5, 5))
    t = raw + raw.T
    lo, hi = rayleigh_interval(t)
    expected = np.linalg.eigvalsh(t)
    assert abs(lo - expected[0]) <= 1e-10
    assert abs(hi - expected[-1]) <= 1e-10


def test_quadrature_diag_fixture():
    data = operator_moments(np.diag([1.0, 2.0, 3.0]), np.ones(3), 6)
    measure = quadrature_from_moments(data, 3)
    assert np.allclose(measure.nodes, [1.0, 2.0, 3.0], atol=1e-8)
    assert np.allclose(measure.weights, [1 / 3, 1 / 3, 1 / 3], atol=1e-8)


def test_quadrature_lebesgue_moments():
    moments = [1.0 / (k + 1) for k in range(5)]
    measure = quadrature_from_moments(moments, 2)
    assert abs(measure.nodes[0] - (3.0 - math.sqrt(3.0)) / 6.0) <= 1e-12
    assert abs(measure.nodes[1] - (3.0 + math.sqrt(3.0)) / 6.0) <= 1e-12
    assert np.allclose(measure.weights, [0.5, 0.5], atol=1e-12)


def test_quadrature_constant_moments():
    measure = quadrature_from_moments([1.0, 1.0], 1)
    assert np.allclose(measure.nodes, [1.0], atol=1e-14)
    assert np.allclose(measure.weights, [1.0], atol=1e-14)


def test_quadrature_matches_stored_moments():
    rng = np.random.default_rng(37)
    nodes = np.sort(rng.uniform(-1.0, 1.0, size=4))
    weights = rng.uniform(0.2, 0.5, size=4)
    weights /= weights.sum()
    moments = [float(np.sum(weights * nodes**k)) for k in range(8)]
    measure = quadrature_from_moments(moments, 4)
    for k in range(8):
        assert abs(measure.integrate_power(k) - moments[k]) <= 1e-8


def test_quadrature_rank_deficiency_reports_achievable():
    # h orthogonal to the first eigenvector: only 5 of 6 spectral lines remain
    t = np.diag([1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
    h = np.array([0.0, 1.0, 1.0, 1.0, 1.0, 1.0])
    data = operator_moments(t, h, 12)
    with pytest.raises(RankDeficiencyError) as excinfo:
        quadrature_from_moments(data, 6)
    assert excinfo.value.achievable == 5
    reduced = quadrature_from_moments(data, 5)
    assert np.allclose(reduced.nodes, [2.0, 3.0, 4.0, 5.0, 6.0], atol=1e-7)


def test_quadrature_needs_enough_moments():
    with pytest.raises(ValueError):
        quadrature_from_moments([1.0, 0.0, 1.0], 2)


def test_spectral_measure_wrapper_reduces():
    t = np.diag([1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
    h = np.array([0.0, 1.0, 1.0, 1.0, 1.0, 1.0])
    measure = spectral_measure(t, h)
    assert len(measure.nodes) == 5


def test_random_operators_match_eigen_oracle(operator_corpus):
    for t, h in operator_corpus:
        eigenvalues, eigenvectors = np.linalg.eigh(t)  # independent oracle
        overlaps = (eigenvectors.T @ h) ** 2
        data = operator_moments(t, h, 12)
        measure = quadrature_from_moments(data, 6)
        assert np.max(np.abs(measure.nodes - eigenvalues)) <= 1e-6
        assert np.max(np.abs(measure.weights - overlaps)) <= 1e-6
        lo, hi = rayleigh_interval(t)
        assert np.all(measure.nodes >= lo - 1e-9)
        assert np.all(measure.nodes <= hi + 1e-9)


def test_pencil_agreement_with_quadrature(operator_corpus):
    # the Rayleigh pencil at order N reproduces the extreme nodes of the
    # (N+1)-point reconstruction: same data, two routes
    coordinate = Polynomial.variable(1, 0)
    for t, h in operator_corpus[:8]:
        data = operator_moments(t, h, 12)
        seq = data.to_moment_sequence()
        for order in (2, 5):
            measure = quadrature_from_moments(data, order + 1)
            rb = rayleigh_bounds(seq, coordinate, order)
            assert abs(rb.lower - measure.nodes[0]) <= 1e-8
            assert abs(rb.upper - measure.nodes[-1]) <= 1e-8


def test_moment_sequence_packaging():
    data = operator_moments(np.diag([1.0, 2.0, 3.0]), np.ones(3), 6)
    seq = data.to_moment_sequence()
    assert seq.dimension == 1 and seq.max_degree == 6
    assert seq.normalized
    assert seq.psd_check(3).is_psd

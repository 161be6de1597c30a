import math

import numpy as np
import pytest

from momint.exceptions import NotPsdError, RankDeficiencyError
from momint.linalg import (
    SymMatrix,
    as_matrix,
    pencil_extremes,
    psd_check,
    sym_eig,
)


def test_symmetrized_on_ingest():
    m = SymMatrix([[1.0, 2.0], [0.0, 3.0]])
    assert m.data[0, 1] == m.data[1, 0] == 1.0
    with pytest.raises(ValueError):
        SymMatrix([[1.0, 2.0, 3.0]])


def test_identity_eigenvalues():
    d = sym_eig(np.eye(3))
    assert np.allclose(d.eigenvalues, [1.0, 1.0, 1.0], atol=0)


def test_reflection_eigenvalues():
    d = sym_eig([[0.0, 1.0], [1.0, 0.0]])
    assert np.allclose(d.eigenvalues, [-1.0, 1.0], atol=1e-14)


def test_hilbert_2x2_eigenvalues():
    # roots of l^2 - (4/3) l + 1/12
    disc = math.sqrt((4.0 / 3.0) ** 2 - 4.0 / 12.0)
    expected = sorted([(4.0 / 3.0 - disc) / 2.0, (4.0 / 3.0 + disc) / 2.0])
    d = sym_eig([[1.0, 0.5], [0.5, 1.0 / 3.0]])
    assert np.allclose(d.eigenvalues, expected, atol=1e-12)


def test_eigendecomposition_invariants_random():
    rng = np.random.default_rng(3)
    for n in (1, 2, 5, 20, 40):
        raw = rng.normal(size=(n, n))
        a = raw + raw.T
        d = sym_eig(a)
        scale = 1.0 + np.max(np.abs(a))
        recon = d.eigenvectors @ np.diag(d.eigenvalues) @ d.eigenvectors.T
        assert np.max(np.abs(a - recon)) <= 1e-10 * scale
        gram = d.eigenvectors.T @ d.eigenvectors
        assert np.max(np.abs(gram - np.eye(n))) <= 1e-10
        assert np.all(np.diff(d.eigenvalues) >= -1e-15)
        # independent oracle
        assert np.max(np.abs(d.eigenvalues - np.linalg.eigvalsh(a))) <= 1e-10 * scale


def test_sym_eig_rejects_non_finite():
    with pytest.raises(ValueError):
        sym_eig([[np.inf, 0.0], [0.0, 1.0]])


def test_kernel_backends_agree():
    pytest.importorskip("momint._jacobi")
    from momint._jacobi import jacobi_cyclic as compiled
    from momint._jacobi_py import jacobi_cyclic as pure

    rng = np.random.default_rng(5)
    for n in (2, 7, 25):
        raw = rng.normal(size=(n, n))
        a = raw + raw.T
        tol = 1e-12 * np.linalg.norm(a)
        a1 = np.array(a, order="C")
        v1 = np.eye(n)
        compiled(a1, v1, tol, 100)
        a2 = np.array(a, order="C")
        v2 = np.eye(n)
        pure(a2, v2, tol, 100)
        assert np.max(np.abs(np.sort(np.diag(a1)) - np.sort(np.diag(a2)))) <= 1e-12


def test_psd_examples():
    v = psd_check([[1.0, 0.0], [0.0, 0.0]])
    assert v.is_psd and abs(v.min_eigenvalue) <= 1e-15

    v = psd_check([[0.0, 1.0], [1.0, 0.0]])
    assert not v.is_psd and abs(v.min_eigenvalue + 1.0) <= 1e-14

    # det = 1/72 > 0 and positive trace
    v = psd_check([[0.5, 1.0 / 3.0], [1.0 / 3.0, 0.25]])
    assert v.is_psd and v.min_eigenvalue > 0


def test_psd_verdict_consistency():
    v = psd_check([[1e-12, 0.0], [0.0, 1.0]], tol=0.0)
    assert v.is_psd == (v.min_eigenvalue >= -v.tolerance_used)
    with pytest.raises(ValueError):
        psd_check(np.eye(2), tol=-1.0)


def test_pencil_identity_base_matches_sym_eig():
    rng = np.random.default_rng(11)
    raw = rng.normal(size=(6, 6))
    a = raw + raw.T
    lo, hi, rank = pencil_extremes(a, np.eye(6))
    d = sym_eig(a)
    assert rank == 6
    assert abs(lo - d.eigenvalues[0]) <= 1e-10
    assert abs(hi - d.eigenvalues[-1]) <= 1e-10


def test_pencil_two_point_rule():
    a = [[0.5, 1.0 / 3.0], [1.0 / 3.0, 0.25]]
    b = [[1.0, 0.5], [0.5, 1.0 / 3.0]]
    lo, hi, rank = pencil_extremes(a, b)
    assert rank == 2
    assert abs(lo - (3.0 - math.sqrt(3.0)) / 6.0) <= 1e-12
    assert abs(hi - (3.0 + math.sqrt(3.0)) / 6.0) <= 1e-12


def test_pencil_proportional():
    rng = np.random.default_rng(13)
    raw = rng.normal(size=(4, 4))
    b = raw @ raw.T + np.eye(4)
    lo, hi, rank = pencil_extremes(2.0 * b, b)
    assert rank == 4
    assert abs(lo - 2.0) <= 1e-10 and abs(hi - 2.0) <= 1e-10


def test_pencil_scaling_invariance():
    rng = np.random.default_rng(17)
    for _ in range(5):
        raw = rng.normal(size=(5, 5))
        a = raw + raw.T
        rb = rng.normal(size=(5, 5))
        b = rb @ rb.T
        base = pencil_extremes(a, b)
        for s in (1e-3, 7.0, 1e4):
            scaled = pencil_extremes(s * a, s * b)
            assert abs(scaled[0] - base[0]) <= 1e-10 * (1.0 + abs(base[0]))
            assert abs(scaled[1] - base[1]) <= 1e-10 * (1.0 + abs(base[1]))
            assert scaled[2] == base[2]


def test_pencil_shift_invariance():
    rng = np.random.default_rng(19)
    for _ in range(5):
        raw = rng.normal(size=(5, 5))
        a = raw + raw.T
        rb = rng.normal(size=(5, 5))
        b = rb @ rb.T
        base = pencil_extremes(a, b)
        for c in (-3.0, 0.25, 10.0):
            shifted = pencil_extremes(a + c * b, b)
            assert abs(shifted[0] - (base[0] + c)) <= 1e-9 * (1.0 + abs(base[0] + c))
            assert abs(shifted[1] - (base[1] + c)) <= 1e-9 * (1.0 + abs(base[1] + c))


def test_pencil_deflates_singular_base():
    # rank-1 base: Rayleigh values collapse to a point evaluation
    phi = np.array([1.0, 3.0])
    b = np.outer(phi, phi)
    a = 3.0 * b
    lo, hi, rank = pencil_extremes(a, b)
    assert rank == 1
    assert abs(lo - 3.0) <= 1e-12 and abs(hi - 3.0) <= 1e-12


def test_pencil_rejects_indefinite_base():
    with pytest.raises(NotPsdError):
        pencil_extremes(np.eye(2), [[1.0, 0.0], [0.0, -1.0]])


def test_pencil_rejects_zero_base():
    with pytest.raises(RankDeficiencyError):
        pencil_extremes(np.eye(2), np.zeros((2, 2)))


def test_as_matrix_symmetrizes():
    m = as_matrix([[0.0, 2.0], [0.0, 0.0]])
    assert m[0, 1] == m[1, 0] == 1.0

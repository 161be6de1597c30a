import math

import numpy as np
import pytest

from momint.exceptions import DegreeOverflowError
from momint.moments import MeasureSpec, MomentSequence, from_measure, gauss_legendre
from momint.polynomials import Polynomial, enumerate_monomials


def test_gauss_legendre_integrates_monomials_exactly():
    for order in (1, 2, 3, 6, 13):
        nodes, weights = gauss_legendre(order)
        for k in range(2 * order):
            exact = 0.0 if k % 2 else 2.0 / (k + 1)
            assert abs(float(weights @ nodes**k) - exact) <= 1e-13


def test_gauss_legendre_nodes_sorted_in_open_interval():
    nodes, weights = gauss_legendre(9)
    assert np.all(np.diff(nodes) > 0)
    assert np.all(np.abs(nodes) < 1.0)
    assert np.all(weights > 0)


def test_symmetric_two_atoms_parity():
    seq = from_measure(MeasureSpec(atoms=[((-1.0,), 0.5), ((1.0,), 0.5)]), 4)
    assert seq.values[(0,)] == 1.0
    assert seq.values[(1,)] == 0.0
    assert seq.values[(2,)] == 1.0
    assert seq.values[(3,)] == 0.0
    assert seq.values[(4,)] == 1.0


def test_box_moments_match_analytic_integrals():
    seq = from_measure(MeasureSpec(box=([[0.0, 1.0]], 3)), 4)
    for k in range(5):
        assert abs(seq.values[(k,)] - 1.0 / (k + 1)) <= 1e-14


def test_multidim_box_moments_match_analytic_integrals():
    bounds = [[0.0, 1.0], [-1.0, 2.0]]
    seq = from_measure(MeasureSpec(box=(bounds, 5)), 8)

    def one_dim(lo, hi, e):
        return (hi ** (e + 1) - lo ** (e + 1)) / ((e + 1) * (hi - lo))

    for idx in enumerate_monomials(2, 8):
        exact = one_dim(0.0, 1.0, idx[0]) * one_dim(-1.0, 2.0, idx[1])
        assert abs(seq.values[idx] - exact) <= 1e-12 * (1.0 + abs(exact))


def test_dirac_at_origin():
    seq = from_measure(MeasureSpec(atoms=[((0.0, 0.0), 1.0)]), 6)
    assert seq.values[(0, 0)] == 1.0
    assert all(v == 0.0 for k, v in seq.values.items() if k != (0, 0))


def test_mass_rescaled_on_ingest():
    seq = from_measure(MeasureSpec(atoms=[((2.0,), 3.0)]), 4)
    assert seq.normalized and seq.scale == 3.0
    assert seq.values[(0,)] == 1.0
    assert abs(seq.values[(1,)] - 2.0) <= 1e-15


def test_atomic_apply_matches_direct_summation():
    rng = np.random.default_rng(23)
    pts = rng.uniform(-2.0, 2.0, size=(3, 2))
    atoms = [(tuple(p), 1.0 / 3.0) for p in pts]
    seq = from_measure(MeasureSpec(atoms=atoms), 8)
    for _ in range(20):
        terms = {
            tuple(rng.integers(0, 3, size=2)): float(rng.normal())
            for _ in range(4)
        }
        p = Polynomial(2, terms)
        direct = sum(w * p.evaluate(list(pt)) for pt, w in atoms)
        assert abs(seq.apply(p) - direct) <= 1e-12 * (1.0 + abs(direct))


def test_apply_examples(lebesgue01, two_atoms):
    t = Polynomial.variable(1, 0)
    assert abs(lebesgue01.apply(6.0 * t * t - 6.0 * t + 1.0)) <= 1e-14
    assert lebesgue01.apply(Polynomial.constant(1, 1.0)) == 1.0
    assert abs(two_atoms.apply(1.0 - t * t)) <= 1e-15


def test_apply_degree_overflow(lebesgue01):
    t = Polynomial.variable(1, 0)
    with pytest.raises(DegreeOverflowError):
        lebesgue01.apply(t**11)


def test_moment_matrix_examples(lebesgue01, two_atoms):
    t = Polynomial.variable(1, 0)
    m = lebesgue01.moment_matrix(1).matrix.data
    assert np.allclose(m, [[1.0, 0.5], [0.5, 1.0 / 3.0]], atol=1e-14)
    m = lebesgue01.moment_matrix(1, t).matrix.data
    assert np.allclose(m, [[0.5, 1.0 / 3.0], [1.0 / 3.0, 0.25]], atol=1e-14)
    m = two_atoms.moment_matrix(1, t).matrix.data
    assert np.allclose(m, [[0.0, 1.0], [1.0, 0.0]], atol=0)


def test_moment_matrix_budget(lebesgue01):
    t = Polynomial.variable(1, 0)
    with pytest.raises(DegreeOverflowError):
        lebesgue01.moment_matrix(5, t)
    lebesgue01.moment_matrix(4, t)  # 2*4 + 1 <= 10 fits


def test_hankel_structure():
    rng = np.random.default_rng(29)
    pts = rng.uniform(-1.0, 1.0, size=(3, 2))
    seq = from_measure(MeasureSpec(atoms=[(tuple(p), 1 / 3) for p in pts]), 8)
    shift = Polynomial.variable(2, 0) + 2.0
    mm = seq.moment_matrix(2, shift)
    data = mm.matrix.data
    by_sum = {}
    for i, alpha in enumerate(mm.basis):
        for j, beta in enumerate(mm.basis):
            key = tuple(a + b for a, b in zip(alpha, beta))
            by_sum.setdefault(key, set()).add(round(data[i, j], 12))
    assert all(len(vals) == 1 for vals in by_sum.values())


def test_psd_check_examples(lebesgue01):
    verdict = lebesgue01.psd_check(2)
    assert verdict.is_psd
    # independent oracle for the 3x3 Hilbert spectrum
    hilbert = np.array([[1 / (i + j + 1) for j in range(3)] for i in range(3)])
    expected = float(np.linalg.eigvalsh(hilbert)[0])
    assert abs(verdict.min_eigenvalue - expected) <= 1e-10

    bad = MomentSequence(1, 2, {(0,): 1.0, (1,): 0.0, (2,): -1.0})
    assert not bad.psd_check(1).is_psd


def test_measure_outputs_always_psd(atom_corpus, lebesgue01):
    for order in range(lebesgue01.n_max + 1):
        assert lebesgue01.psd_check(order).is_psd
    for _, seq in atom_corpus[:6]:
        for order in range(min(seq.n_max, 3) + 1):
            assert seq.psd_check(order).is_psd


def test_nonnegative_shift_gives_psd_matrix(atom_corpus):
    for spec, seq in atom_corpus[:6]:
        d = seq.dimension
        # strictly positive on [-2, 2]^d, hence on every atom
        shift = Polynomial.constant(d, 1.0)
        for i in range(d):
            shift = shift + Polynomial.variable(d, i) ** 2
        from momint.linalg import psd_check

        assert psd_check(seq.moment_matrix(2, shift).matrix).is_psd


def test_shift_nonnegative_on_atoms_only(unit_box_corpus):
    # x1 is negative on half the ambient space but nonnegative on every atom:
    # the localized matrix is still PSD
    from momint.linalg import psd_check

    for _, seq in unit_box_corpus[:6]:
        shift = Polynomial.variable(seq.dimension, 0)
        assert psd_check(seq.moment_matrix(2, shift).matrix).is_psd


def test_incomplete_table_rejected():
    with pytest.raises(ValueError, match="incomplete"):
        MomentSequence(1, 4, {(0,): 1.0, (1,): 0.0})


def test_odd_max_degree_rejected():
    with pytest.raises(ValueError):
        MomentSequence(1, 3, {(k,): 1.0 for k in range(4)})


def test_box_order_too_small():
    with pytest.raises(ValueError, match="order"):
        from_measure(MeasureSpec(box=([[0.0, 1.0]], 3)), 8)


def test_document_round_trip(lebesgue01):
    doc = lebesgue01.to_document()
    assert doc["dimension"] == 1 and doc["max_degree"] == 10
    back = MomentSequence.from_document(doc)
    assert back.values == lebesgue01.values

    spec = MeasureSpec(atoms=[((1.0, 2.0), 0.5), ((0.0, 0.0), 0.5)])
    again = MeasureSpec.from_document(spec.to_document())
    assert again.atoms == spec.atoms

    box = MeasureSpec(box=([[0.0, 1.0]], 4))
    assert MeasureSpec.from_document(box.to_document()).box == box.box


def test_malformed_documents_rejected():
    with pytest.raises(ValueError):
        MomentSequence.from_document({"dimension": 1})
    with pytest.raises(ValueError):
        MeasureSpec.from_document({})
    with pytest.raises(ValueError):
        MeasureSpec(atoms=[((0.0,), -1.0)])
    with pytest.raises(ValueError):
        MeasureSpec(box=([[1.0, 1.0]], 3))

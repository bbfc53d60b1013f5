import numpy as np
import pytest

from jkronpy.bases import involution_basis
from jkronpy.constructions import A0, B0, A_SKEW, B_SKEW
from jkronpy.dense import commutation_matrix, vec
from jkronpy.errors import DimMismatch, MixedSymmetryClass, PreconditionFail, ZeroVector
from jkronpy.spectra import (EVEN, MIXED, ODD, apply_hp, classify_parity, generalized_jordan, hp_operator,
                             jordan_kron, lie_kron, lie_spectrum, singular_witness, skew_kron, spectrum_split,
                             sym_kron)


@pytest.fixture(scope='module')
def a0b0():
    return np.array(A0, dtype=float), np.array(B0, dtype=float)


@pytest.fixture(scope='module')
def split(a0b0):
    return spectrum_split(*a0b0)


@pytest.fixture(scope='module')
def rng():
    return np.random.default_rng(11)


def _descending(values):
    return np.sort(values)[::-1]


class TestSpectrumSplit(object):
    def test_sizes(self, split):
        assert split.even_values.size == 10
        assert split.odd_values.size == 6
        assert split.source_dims == 4
        assert split.symmetry == 'symmetric'

    def test_union_is_full_spectrum(self, a0b0, split):
        full = _descending(np.linalg.eigvalsh(jordan_kron(*a0b0)))
        assert np.allclose(split.all_values, full, atol=1e-9)

    def test_vector_parity(self, split):
        for k in range(split.even_values.size):
            assert classify_parity(split.even_vectors[:, k]) == EVEN
        for k in range(split.odd_values.size):
            assert classify_parity(split.odd_vectors[:, k]) == ODD

    def test_eigenpairs(self, a0b0, split):
        c = jordan_kron(*a0b0)
        for values, vectors in ((split.even_values, split.even_vectors), (split.odd_values, split.odd_vectors)):
            assert np.allclose(c @ vectors, vectors * values, atol=1e-8)

    def test_subspaces_decouple(self, split):
        assert split.block_residual <= 1e-10 * split.scale

    def test_smallest_eigenvalue_is_odd(self, split):
        assert split.odd_values[-1] < -19 < split.even_values[-1]
        assert split.min_parity == ODD

    def test_compressions(self, a0b0, split):
        assert np.allclose(2 * _descending(np.linalg.eigvalsh(sym_kron(*a0b0))), split.even_values, atol=1e-9)
        assert np.allclose(2 * _descending(np.linalg.eigvalsh(skew_kron(*a0b0))), split.odd_values, atol=1e-9)

    def test_skew_pair(self):
        a, b = np.array(A_SKEW, dtype=float), np.array(B_SKEW, dtype=float)
        skew = spectrum_split(a, b)
        assert skew.symmetry == 'skew'
        assert np.allclose(skew.all_values, _descending(np.linalg.eigvalsh(jordan_kron(a, b))),
                           atol=1e-10 * skew.scale)

    def test_diagonal_pair(self):
        a, b = np.diag([1., 2.]), np.diag([3., 4.])
        assert np.allclose(sym_kron(a, b), np.diag([3., 5., 8.]))
        diagonal = spectrum_split(a, b)
        assert np.allclose(diagonal.even_values, [16., 10., 6.])
        assert np.allclose(diagonal.odd_values, [10.])

    def test_identities(self):
        identity = spectrum_split(np.eye(3), np.eye(3))
        assert np.allclose(identity.even_values, [2.] * 6)
        assert np.allclose(identity.odd_values, [2.] * 3)

    def test_one_by_one(self):
        one = spectrum_split([[2.]], [[3.]])
        assert list(one.even_values) == [12.]
        assert one.odd_values.size == 0
        assert one.min_parity == EVEN
        assert one.max_parity == EVEN

    def test_mixed_symmetry(self, a0b0):
        with pytest.raises(MixedSymmetryClass):
            spectrum_split(a0b0[0], np.array(A_SKEW, dtype=float)[:4, :4])

    def test_dimension_mismatch(self, a0b0):
        with pytest.raises(DimMismatch):
            spectrum_split(a0b0[0], np.eye(3))

    def test_lapack_solver(self, a0b0, split):
        lapack = spectrum_split(*a0b0, solver='lapack')
        assert np.allclose(lapack.even_values, split.even_values, atol=1e-9)


class TestGeneralizedJordan(object):
    def test_transpose_involution(self, a0b0, split):
        c, generalized = generalized_jordan(*a0b0, involution_basis(commutation_matrix(4)))
        assert np.allclose(c, jordan_kron(*a0b0))
        assert np.allclose(generalized.even_values, split.even_values, atol=1e-8)
        assert np.allclose(generalized.odd_values, split.odd_values, atol=1e-8)

    def test_wrong_size(self, a0b0):
        with pytest.raises(DimMismatch):
            generalized_jordan(*a0b0, involution_basis(commutation_matrix(3)))


class TestLieSpectrum(object):
    def test_pairing_and_kernel(self, rng):
        g, h = rng.standard_normal((3, 3)), rng.standard_normal((3, 3))
        a, b = g + g.T, h + h.T
        spectrum = lie_spectrum(a, b)
        assert spectrum.pairing_residual <= 1e-8
        assert spectrum.null_sym.shape[1] >= 3
        lie = lie_kron(a, b)
        assert np.allclose(lie @ spectrum.null_sym, 0, atol=1e-8)
        for value, v, tv in spectrum.paired:
            assert value > 0
            assert np.allclose(lie @ v, value * v, atol=1e-8)


class TestParity(object):
    def test_classify(self):
        assert classify_parity(vec(np.eye(2))) == EVEN
        assert classify_parity(vec([[0., 1.], [-1., 0.]])) == ODD
        assert classify_parity([0., 1., 0., 0.]) == MIXED

    def test_zero_vector(self):
        with pytest.raises(ZeroVector):
            classify_parity(np.zeros(4))

    def test_not_square_length(self):
        with pytest.raises(DimMismatch):
            classify_parity(np.ones(5))


class TestSingularWitness(object):
    def test_rank_deficient_pair(self, a0b0):
        witness, value = singular_witness(*a0b0)
        assert classify_parity(witness) == EVEN
        assert abs(value) <= 1e-10

    def test_nonsingular_pair(self):
        with pytest.raises(PreconditionFail):
            singular_witness(np.eye(2), np.diag([1., 2.]))


class TestHpOperator(object):
    def test_matches_direct_map(self, rng):
        g = rng.standard_normal((3, 3))
        p = g @ g.T + np.eye(3)
        x = rng.standard_normal((3, 3))
        assert np.allclose(hp_operator(p) @ vec(x), vec(apply_hp(p, x)))

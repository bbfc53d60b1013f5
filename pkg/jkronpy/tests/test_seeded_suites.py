import numpy as np
import pytest

from jkronpy.bases import involution_basis, random_involution
from jkronpy.constructions import (A0, B0, DIAG_ANTIBAND, RANK_K, SKEW, TRIDIAG_DIAG, GeneratorSpec, commuting_pair,
                                   diag_antiband_pair, ladder, random_pair, tridiag_pair)
from jkronpy.errors import PreconditionFail
from jkronpy.interlacing import check_interlacing, check_strong, check_weak, commuting_spectrum, extreme_sym_trace
from jkronpy.spectra import ODD, classify_parity, generalized_jordan, lie_spectrum, spectrum_split
from jkronpy.utils import numerical_rank


@pytest.fixture(scope='module')
def rng():
    return np.random.default_rng(20240417)


def _failures(pairs, *checks):
    failed = []
    for index, (a, b) in enumerate(pairs):
        split = spectrum_split(a, b)
        if not all(check(split).holds for check in checks):
            failed.append(index)
    return failed


class TestExtremeEigenvector(object):
    def test_a0b0_minimum_is_odd(self):
        split = spectrum_split(np.array(A0, dtype=float), np.array(B0, dtype=float))
        assert split.even_values[-1] - split.odd_values[-1] > 1e-6
        assert classify_parity(split.odd_vectors[:, -1], tol=1e-8) == ODD


class TestLowRankPairs(object):
    def test_symmetric_rank_at_most_two(self, rng):
        specs = [GeneratorSpec(RANK_K, int(n), {'k': int(k)}, seed)
                 for seed, (n, k) in enumerate(zip(rng.integers(3, 8, size=500), rng.integers(1, 3, size=500)))]
        assert _failures((random_pair(spec) for spec in specs), check_interlacing) == []

    def test_skew_rank_two(self, rng):
        specs = [GeneratorSpec(RANK_K, int(n), {'k': 2}, seed, SKEW)
                 for seed, n in enumerate(rng.choice([4, 6], size=200))]
        assert _failures((random_pair(spec) for spec in specs), check_interlacing) == []


class TestSmallPairs(object):
    def test_two_by_two(self):
        pairs = (random_pair(GeneratorSpec(RANK_K, 2, {}, seed)) for seed in range(500))
        assert _failures(pairs, check_weak, check_interlacing, check_strong) == []

    def test_three_by_three(self):
        pairs = (random_pair(GeneratorSpec(RANK_K, 3, {}, seed)) for seed in range(500))
        assert _failures(pairs, check_weak, check_interlacing) == []


class TestCommutingPairs(object):
    def test_predicted_spectrum(self, rng):
        for seed, n in enumerate(rng.integers(2, 6, size=100)):
            a, b = commuting_pair(int(n), seed, circulant=bool(seed % 2))
            predicted = commuting_spectrum(a, b)
            split = spectrum_split(a, b)
            assert np.allclose(predicted.even_values, split.even_values, atol=1e-8, rtol=0)
            assert np.allclose(predicted.odd_values, split.odd_values, atol=1e-8, rtol=0)


class TestSymTrace(object):
    def test_extremes_and_bounds(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 7))
            g = rng.standard_normal((n, n))
            a = g + g.T
            exact = np.linalg.eigvalsh(a)
            extremes = extreme_sym_trace(a)
            assert abs(extremes.max - exact[-1]) <= 1e-10
            assert abs(extremes.min - exact[0]) <= 1e-10

            u = rng.standard_normal((100, n, n))
            u = u + np.transpose(u, (0, 2, 1))
            u /= np.linalg.norm(u, axis=(1, 2))[:, None, None]
            traces = np.einsum('kij,jl,kli->k', u, a, u)
            assert np.all(traces <= exact[-1] + 1e-10)
            assert np.all(traces >= exact[0] - 1e-10)


class TestInvolutions(object):
    def test_generalized_split(self, rng):
        for index in range(50):
            n = 3 + index % 2
            g, h = rng.standard_normal((n, n)), rng.standard_normal((n, n))
            basis = involution_basis(random_involution(n, rng))
            c, split = generalized_jordan(g + g.T, h + h.T, basis)
            assert split.block_residual <= 1e-10 * split.scale
            direct = np.sort(np.linalg.eigvalsh(c))[::-1]
            assert np.allclose(split.all_values, direct, atol=1e-9 * max(1.0, split.scale), rtol=0)


class TestLieKronecker(object):
    def test_pairing_and_symmetric_kernel(self, rng):
        for index in range(100):
            n = 2 + index % 3
            g, h = rng.standard_normal((n, n)), rng.standard_normal((n, n))
            spectrum = lie_spectrum(g + g.T, h + h.T)
            assert spectrum.pairing_residual <= 1e-8
            assert spectrum.null_sym.shape[1] >= n


class TestStructuredFamilies(object):
    def test_diagonal_with_antiband(self, rng):
        pairs = []
        for seed in range(100):
            n = int(rng.integers(4, 7))
            pairs.append(diag_antiband_pair(GeneratorSpec(DIAG_ANTIBAND, n, {'k': int(rng.integers(2, n + 1))}, seed)))
        assert _failures(pairs, check_interlacing) == []

    def test_tridiagonal_with_diagonal(self, rng):
        pairs = []
        for seed in range(100):
            n = int(rng.integers(4, 7))
            moved = None
            if seed % 2:
                s = int(rng.integers(1, n - 1))
                moved = (int(rng.integers(s + 2, n + 1)), s)
            pairs.append(tridiag_pair(GeneratorSpec(TRIDIAG_DIAG, n, {}, seed), moved=moved))
        assert _failures(pairs, check_interlacing) == []


class TestLadderGrid(object):
    @pytest.mark.parametrize('k,m', [(3, 4), (4, 4), (4, 5)])
    @pytest.mark.parametrize('n', [4, 5, 6])
    def test_weak_fails(self, k, m, n):
        if m > n:
            pytest.skip('rank {} does not fit in dimension {}'.format(m, n))
        pair = ladder(k, m, n)
        assert numerical_rank(pair.a) == k
        assert numerical_rank(pair.b) == m
        assert not check_weak(spectrum_split(pair.a, pair.b)).holds

    @pytest.mark.parametrize('n', [4, 5, 6])
    def test_rank_three_pair_has_no_core(self, n):
        assert numerical_rank(np.array(A0, dtype=float)) == 4
        with pytest.raises(PreconditionFail):
            ladder(3, 3, n)

import numpy as np
import pytest

from jkronpy.constructions import (A0, B0, COMMUTING, DIAG_ANTIBAND, FAMILIES, FIXTURES, LADDER, PERTURB_FAILS,
                                   PERTURB_HOLDS, POSITIVE_DEFINITE, RANK_K, SKEW, SYMMETRIC, TRIDIAG_DIAG,
                                   GeneratorSpec, antiband_positions, check_contract, commuting_pair,
                                   diag_antiband_pair, fixture, generate, ladder, perturb_fails, perturb_holds,
                                   positive_definite_pair, random_pair, tridiag_pair)
from jkronpy.errors import (BadBandIndex, BadConfig, BadMoveIndex, BadRank, ConstructionFailed, PreconditionFail,
                            UnknownFixture)
from jkronpy.exact import exact_det
from jkronpy.interlacing import check_weak
from jkronpy.spectra import EVEN, spectrum_split
from jkronpy.utils import frobenius, is_skew, is_symmetric, numerical_rank


@pytest.fixture(scope='module')
def a0b0():
    return np.array(A0, dtype=float), np.array(B0, dtype=float)


def _bump(m, i, j, value=1.0):
    m[i, j] += value
    if i != j:
        m[j, i] += value


class TestFixtures(object):
    def test_ids(self):
        assert set(FIXTURES) == {'A0B0', 'Anonneg', 'Askew'}

    def test_a0b0(self):
        f = fixture('A0B0')
        assert numerical_rank(f.a) == f.expected['rank_a'] == 4
        assert numerical_rank(f.b) == f.expected['rank_b'] == 3
        assert exact_det(f.a) == f.expected['det_a'] == -200
        assert is_skew(f.witness)

    def test_askew_is_skew(self):
        f = fixture('Askew')
        assert f.a.shape == (6, 6)
        assert is_skew(f.a) and is_skew(f.b)

    def test_askew_keeps_weak_interlacing(self):
        f = fixture('Askew')
        split = spectrum_split(f.a, f.b)
        assert split.min_parity == f.expected['min_parity'] == EVEN
        assert check_weak(split).holds == f.expected['weak']
        assert split.odd_values[-1] - split.even_values[-1] > 1e-6

    def test_unknown(self):
        with pytest.raises(UnknownFixture):
            fixture('A1B1')


class TestGeneratorSpec(object):
    def test_from_json(self):
        spec = GeneratorSpec.from_json('{"family": "RankK", "n": 4, "params": {"k": 2}, "seed": 3}')
        assert spec == GeneratorSpec(RANK_K, 4, {'k': 2}, 3, SYMMETRIC)
        assert GeneratorSpec.from_json(spec.dumps()) == spec

    @pytest.mark.parametrize('text', [
        'not json',
        '[1, 2]',
        '{"family": "Banded", "n": 3}',
        '{"family": "RankK"}',
        '{"family": "RankK", "n": 0}',
        '{"family": "RankK", "n": 3, "symmetry": "hermitian"}',
    ])
    def test_bad_specs(self, text):
        with pytest.raises(BadConfig):
            GeneratorSpec.from_json(text)


class TestRandomPair(object):
    def test_symmetric_ranks(self):
        a, b = random_pair(GeneratorSpec(RANK_K, 5, {'k': 2}, 1))
        assert is_symmetric(a) and is_symmetric(b)
        assert numerical_rank(a) == 2
        assert numerical_rank(b) == 5

    def test_skew_ranks(self):
        a, b = random_pair(GeneratorSpec(RANK_K, 5, {'k': 2}, 1, SKEW))
        assert is_skew(a) and is_skew(b)
        assert numerical_rank(a) == 2
        assert numerical_rank(b) == 4

    def test_deterministic(self):
        spec = GeneratorSpec(RANK_K, 4, {'k': 3}, 99)
        first, second = random_pair(spec), random_pair(spec)
        assert np.array_equal(first[0], second[0])
        assert np.array_equal(first[1], second[1])

    @pytest.mark.parametrize('symmetry,k', [(SKEW, 3), (SKEW, 6), (SYMMETRIC, 0), (SYMMETRIC, 5)])
    def test_bad_rank(self, symmetry, k):
        with pytest.raises(BadRank):
            random_pair(GeneratorSpec(RANK_K, 4, {'k': k}, 0, symmetry))


class TestStructuredPairs(object):
    def test_antiband_positions(self):
        assert antiband_positions(5, 4) == [(0, 3), (1, 2)]
        assert antiband_positions(5, 3) == [(0, 2)]
        with pytest.raises(BadBandIndex):
            antiband_positions(5, 1)
        with pytest.raises(BadBandIndex):
            antiband_positions(5, 6)

    def test_diag_antiband_pattern(self):
        a, b = diag_antiband_pair(GeneratorSpec(DIAG_ANTIBAND, 5, {'k': 4, 'alpha': [2, -3]}, 8))
        assert a[0, 3] == a[3, 0] == 2
        assert a[1, 2] == a[2, 1] == -3
        off = a - np.diag(np.diag(a))
        assert np.count_nonzero(off) == 4
        assert np.array_equal(b, np.diag(np.diag(b)))

    def test_diag_antiband_coefficient_count(self):
        with pytest.raises(BadBandIndex):
            diag_antiband_pair(GeneratorSpec(DIAG_ANTIBAND, 5, {'k': 4, 'alpha': [1]}, 8))

    def test_tridiag(self):
        a, b = tridiag_pair(GeneratorSpec(TRIDIAG_DIAG, 5, {}, 4))
        assert np.array_equal(a, np.triu(np.tril(a, 1), -1))
        assert np.count_nonzero(np.diag(a, -1)) == 4

    def test_tridiag_moved_entry(self):
        spec = GeneratorSpec(TRIDIAG_DIAG, 5, {}, 4)
        plain, _ = tridiag_pair(spec)
        moved, _ = tridiag_pair(spec, moved=(4, 2))
        assert moved[1, 2] == 0
        assert moved[3, 1] == moved[1, 3] == plain[2, 1]

    @pytest.mark.parametrize('moved', [(3, 2), (6, 2), (4, 0)])
    def test_bad_move(self, moved):
        with pytest.raises(BadMoveIndex):
            tridiag_pair(GeneratorSpec(TRIDIAG_DIAG, 5, {}, 4), moved=moved)

    @pytest.mark.parametrize('circulant', [False, True])
    def test_commuting(self, circulant):
        a, b = commuting_pair(5, 12, circulant=circulant)
        assert frobenius(a @ b - b @ a) <= 1e-10 * max(1.0, frobenius(a) * frobenius(b))

    def test_positive_definite(self):
        for m in positive_definite_pair(4, 5):
            assert np.all(np.linalg.eigvalsh(m) > 0)


class TestPerturbations(object):
    def test_holds_diagonal_shift(self, a0b0):
        result = perturb_holds(a0b0[0], np.diag([3., 1., -1., -2.]), 'i')
        assert result.mu >= 1
        assert check_weak(spectrum_split(result.a, result.b)).holds

    def test_holds_diagonal_pair(self, a0b0):
        result = perturb_holds(*a0b0, 'iv', {'d1': [2, 1, 1, 3], 'd2': [3, 0, 0, -3]})
        assert check_weak(spectrum_split(result.a, result.b)).holds
        assert np.allclose(result.a - a0b0[0], result.mu * np.diag([2., 1., 1., 3.]))

    def test_holds_needs_indefinite(self, a0b0):
        with pytest.raises(PreconditionFail):
            perturb_holds(a0b0[0], np.eye(4), 'i')

    def test_holds_unknown_variant(self, a0b0):
        with pytest.raises(PreconditionFail):
            perturb_holds(*a0b0, 'v')

    @pytest.mark.parametrize('variant,a,b,params', [
        ('i', A0, np.diag([3., 1., -1., -2.]), {}),
        ('ii', np.eye(4), A0, {'beta': 1.0}),
        ('iii', A0, B0, {'d': [3, 1, 2, 1]}),
        ('iv', A0, B0, {'d1': [2, 1, 1, 3], 'd2': [3, 0, 0, -3]}),
    ])
    def test_holds_every_variant(self, variant, a, b, params):
        result = perturb_holds(np.array(a, dtype=float), np.array(b, dtype=float), variant, params)
        assert result.mu >= 1
        assert check_weak(spectrum_split(result.a, result.b)).holds

    def test_holds_diagonal_d(self, a0b0):
        result = perturb_holds(*a0b0, 'iii', {'d': [3, 1, 2, 1]})
        assert np.allclose(result.a - a0b0[0], result.mu * np.diag([3., 1., 2., 1.]))
        assert np.array_equal(result.b, a0b0[1])

    def test_holds_rejects_full_d(self, a0b0):
        d = np.eye(4)
        d[0, 1] = d[1, 0] = 1.0
        with pytest.raises(PreconditionFail):
            perturb_holds(*a0b0, 'iii', {'d': d})

    @pytest.mark.parametrize('variant,params', [('1', {}), ('1', {'beta': 2.0}), ('2', {})])
    def test_fails_every_variant(self, a0b0, variant, params):
        rng = np.random.default_rng(11)
        g, h = rng.standard_normal((4, 4)), rng.standard_normal((4, 4))
        result = perturb_fails(*a0b0, g + g.T, h + h.T, variant, params)
        assert not check_weak(spectrum_split(result.a, result.b)).holds

    def test_fails_towards_a0b0(self, a0b0):
        rng = np.random.default_rng(3)
        g, h = rng.standard_normal((4, 4)), rng.standard_normal((4, 4))
        result = perturb_fails(*a0b0, g + g.T, h + h.T, '1')
        assert not check_weak(spectrum_split(result.a, result.b)).holds
        assert np.array_equal(result.b, a0b0[1])

    def test_fails_needs_failing_target(self):
        with pytest.raises(PreconditionFail):
            perturb_fails(np.eye(4), np.eye(4), np.eye(4), np.eye(4), '1')


class TestLadder(object):
    @pytest.mark.parametrize('k,m,n', [(3, 4, 4), (3, 4, 5), (4, 4, 4), (4, 5, 6)])
    def test_ranks_and_failure(self, k, m, n):
        pair = ladder(k, m, n)
        assert pair.a.shape == (n, n)
        assert numerical_rank(pair.a) == k
        assert numerical_rank(pair.b) == m
        assert pair.margin > 0
        assert 0 < pair.eps <= 1e-3
        assert not check_weak(spectrum_split(pair.a, pair.b)).holds

    def test_cores(self):
        pair = ladder(3, 4, 5)
        assert np.array_equal(pair.a[:4, :4], np.array(B0, dtype=float))
        assert np.array_equal(pair.b[:4, :4], np.array(A0, dtype=float))
        assert not np.any(pair.a[4]) and not np.any(pair.b[4])

    def test_bad_ranks(self):
        with pytest.raises(PreconditionFail):
            ladder(2, 3, 4)
        with pytest.raises(PreconditionFail):
            ladder(4, 3, 4)

    def test_two_rank_three_cores_are_refused(self):
        with pytest.raises(PreconditionFail):
            ladder(3, 3, 4)


class TestGenerate(object):
    @pytest.mark.parametrize('spec', [
        GeneratorSpec(RANK_K, 4, {'k': 2}, 1),
        GeneratorSpec(COMMUTING, 3, {}, 1),
        GeneratorSpec(DIAG_ANTIBAND, 4, {'k': 3}, 1),
        GeneratorSpec(TRIDIAG_DIAG, 4, {}, 1),
        GeneratorSpec(POSITIVE_DEFINITE, 3, {}, 1),
        GeneratorSpec(LADDER, 5, {'k': 3, 'm': 4}, 0),
        GeneratorSpec(PERTURB_HOLDS, 4, {'variant': 'i'}, 0),
        GeneratorSpec(PERTURB_HOLDS, 4, {'variant': 'iii', 'd': [3, 1, 2, 1]}, 0),
        GeneratorSpec(PERTURB_FAILS, 4, {'variant': '1'}, 0),
    ])
    def test_families(self, spec):
        a, b = generate(spec)
        assert a.shape == b.shape == (spec.n, spec.n)
        assert check_contract(spec, a, b)

    @pytest.mark.parametrize('spec,corrupt', [
        (GeneratorSpec(RANK_K, 4, {'k': 2}, 1), lambda a, b: _bump(a, 0, 0)),
        (GeneratorSpec(COMMUTING, 3, {}, 1), lambda a, b: _bump(a, 0, 1)),
        (GeneratorSpec(DIAG_ANTIBAND, 4, {'k': 3}, 1), lambda a, b: _bump(a, 0, 3)),
        (GeneratorSpec(TRIDIAG_DIAG, 4, {}, 1), lambda a, b: _bump(b, 0, 1)),
        (GeneratorSpec(POSITIVE_DEFINITE, 3, {}, 1), lambda a, b: _bump(a, 0, 0, -100.0)),
        (GeneratorSpec(LADDER, 5, {'k': 3, 'm': 4}, 0), lambda a, b: _bump(a, 4, 4)),
        (GeneratorSpec(PERTURB_HOLDS, 4, {'variant': 'i'}, 0), lambda a, b: _bump(b, 0, 0)),
        (GeneratorSpec(PERTURB_HOLDS, 4, {'variant': 'iii', 'd': [3, 1, 2, 1]}, 0), lambda a, b: _bump(a, 0, 1)),
        (GeneratorSpec(PERTURB_FAILS, 4, {'variant': '1'}, 0), lambda a, b: _bump(b, 0, 0)),
    ], ids=lambda value: value.family if isinstance(value, GeneratorSpec) else None)
    def test_corrupted_pair_breaks_contract(self, spec, corrupt):
        a, b = (np.array(m, dtype=float) for m in generate(spec))
        assert check_contract(spec, a, b)
        corrupt(a, b)
        with pytest.raises(ConstructionFailed):
            check_contract(spec, a, b)

    def test_all_families_covered(self):
        assert len(FAMILIES) == 8

    def test_perturbation_base_size(self):
        with pytest.raises(BadConfig):
            generate(GeneratorSpec(PERTURB_HOLDS, 5, {'variant': 'i'}, 0))

    def test_contract(self, a0b0):
        with pytest.raises(ConstructionFailed):
            check_contract(GeneratorSpec(RANK_K, 4, {}, 0, SKEW), *a0b0)

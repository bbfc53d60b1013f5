import numpy as np
import pytest

from jkronpy import INTERLACE_TOL
from jkronpy.constructions import A0, A_NONNEG, B0, B_NONNEG, commuting_pair
from jkronpy.errors import NoEmbedding, NotCommuting, PreconditionFail
from jkronpy.interlacing import (INTERLACING, PROPERTIES, STRONG, WEAK, check_interlacing, check_strong, check_weak,
                                 commuting_spectrum, default_tol, embed_skew_in_sym, extreme_sym_trace,
                                 interlace_report, perron_frobenius_applies, reduce_b_diagonal, sym_trace)
from jkronpy.spectra import SpectrumSplit, spectrum_split


def _split(even, odd):
    return SpectrumSplit(np.array(even, dtype=float), np.array(odd, dtype=float), None, None, 2, scale=1.0)


@pytest.fixture(scope='module')
def a0b0_split():
    return spectrum_split(np.array(A0, dtype=float), np.array(B0, dtype=float))


class TestWeak(object):
    def test_holds(self):
        verdict = check_weak(_split([3, 1], [2]), tol=0)
        assert verdict.holds
        assert (verdict.lhs_min_even, verdict.rhs_min_odd, verdict.lhs_max_odd, verdict.rhs_max_even) == (1, 2, 2, 3)

    def test_min_side_fails(self):
        verdict = check_weak(_split([3, 1], [0.5]), tol=0)
        assert not verdict.holds
        assert not verdict.min_side
        assert verdict.max_side

    def test_tolerance(self):
        assert check_weak(_split([3, 1], [1 - 1e-12]), tol=1e-9).holds
        assert not check_weak(_split([3, 1], [1 - 1e-6]), tol=1e-9).holds

    def test_no_odd_values(self):
        verdict = check_weak(_split([4], []))
        assert verdict.holds
        assert verdict.rhs_min_odd is None


class TestInterlacing(object):
    def test_holds(self):
        assert check_interlacing(_split([3, 1, 0], [2, 0.5]), tol=0).holds

    def test_first_violation(self):
        verdict = check_interlacing(_split([3, 1, 0], [2, 1.5]), tol=0)
        assert not verdict.holds
        assert verdict.first_violation == (2, 0.0, 1.5, 1.0)


class TestStrong(object):
    def test_alternating(self):
        assert check_strong(_split([3, 1], [2]), tol=0).holds

    def test_odd_at_the_end(self):
        verdict = check_strong(_split([3, 1], [0.5]), tol=0)
        assert not verdict.holds
        assert verdict.first_violation == 3

    def test_adjacent_odd_values(self):
        verdict = check_strong(_split([3, 0], [2, 1]), tol=0)
        assert not verdict.holds
        assert verdict.first_violation == 2

    def test_ties_can_be_reordered(self):
        assert check_strong(_split([2, 0], [2]), tol=0).holds
        assert check_strong(_split([1, 1], [1]), tol=0).holds

    def test_single_tie_cannot_be_wrapped(self):
        assert not check_strong(_split([1], [1]), tol=0).holds


class TestReport(object):
    def test_a0b0_fails_everything(self, a0b0_split):
        report = interlace_report(a0b0_split)
        for prop in PROPERTIES:
            assert not report.verdict(prop)
        assert report.tol == default_tol(a0b0_split)

    def test_to_dict(self, a0b0_split):
        data = interlace_report(a0b0_split).to_dict()
        assert set(data) == {'weak', 'full', 'strong', 'tol'}
        assert data['full']['first_violation'][0] >= 1

    def test_commuting_pairs_hold(self):
        for seed in range(5):
            split = spectrum_split(*commuting_pair(4, seed))
            report = interlace_report(split)
            assert report.verdict(WEAK)
            assert report.verdict(INTERLACING)
            assert report.verdict(STRONG)

    def test_default_tol_scales(self, a0b0_split):
        assert default_tol(a0b0_split, 1e-6) == pytest.approx(1e-6 * a0b0_split.scale)

    def test_small_scale_is_not_floored(self):
        split = spectrum_split(1e-4 * np.array(A0, dtype=float), 1e-4 * np.array(B0, dtype=float))
        assert split.scale < 1e-4
        assert default_tol(split) == pytest.approx(INTERLACE_TOL * split.scale)
        assert not check_weak(split).holds


class TestEmbedding(object):
    def test_diagonal_pair(self):
        embedding = embed_skew_in_sym(np.diag([1., -2., 3.]), np.diag([2., 1., -1.]))
        assert embedding.method == 'phi'
        assert embedding.residual <= 1e-12

    def test_a0b0_has_no_embedding(self):
        with pytest.raises(NoEmbedding):
            embed_skew_in_sym(np.array(A0, dtype=float), np.array(B0, dtype=float))

    def test_b_must_be_diagonal(self):
        with pytest.raises(PreconditionFail):
            embed_skew_in_sym(np.eye(3), np.ones((3, 3)))


class TestTraces(object):
    def test_extremes(self):
        a = np.array([[2., 1.], [1., 2.]])
        extremes = extreme_sym_trace(a)
        assert extremes.max == pytest.approx(3.0)
        assert extremes.min == pytest.approx(1.0)
        assert sym_trace(a, extremes.argmax) == pytest.approx(3.0)
        assert sym_trace(a, extremes.argmin) == pytest.approx(1.0)
        assert np.linalg.norm(extremes.argmax) == pytest.approx(1.0)


class TestCommuting(object):
    @pytest.mark.parametrize('circulant', [False, True])
    def test_prediction_matches(self, circulant):
        a, b = commuting_pair(4, 3, circulant=circulant)
        predicted = commuting_spectrum(a, b)
        split = spectrum_split(a, b)
        assert np.allclose(predicted.even_values, split.even_values, atol=1e-8)
        assert np.allclose(predicted.odd_values, split.odd_values, atol=1e-8)

    def test_not_commuting(self):
        with pytest.raises(NotCommuting):
            commuting_spectrum(np.diag([1., 2.]), np.array([[0., 1.], [1., 0.]]))


class TestReduction(object):
    def test_spectra_unchanged(self, a0b0_split):
        a_bar, d = reduce_b_diagonal(np.array(A0, dtype=float), np.array(B0, dtype=float))
        assert np.allclose(d, np.diag(np.diag(d)))
        assert np.all(np.diff(np.diag(d)) <= 0)
        reduced = spectrum_split(a_bar, d)
        assert np.allclose(reduced.even_values, a0b0_split.even_values, atol=1e-8)
        assert np.allclose(reduced.odd_values, a0b0_split.odd_values, atol=1e-8)

    def test_perron_frobenius(self):
        assert perron_frobenius_applies(A_NONNEG, B_NONNEG)
        assert not perron_frobenius_applies(A0, B0)

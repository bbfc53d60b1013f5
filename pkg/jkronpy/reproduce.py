"""
Claim-by-claim reproduction suites. Each suite returns a list of :class:`Claim`
objects; a suite passes when every claim does.
"""
import logging
from collections import OrderedDict, namedtuple
from fractions import Fraction

import numpy as np

from jkronpy.constructions import (RANK_K, SKEW, SYMMETRIC, GeneratorSpec, commuting_pair, fixture, ladder,
                                   random_pair)
from jkronpy.dense import sym_eigen, vec
from jkronpy.errors import NoEmbedding
from jkronpy.exact import (RationalMatrix, certify_skew_extremal, compress_shifted_form, display_shifted_form,
                           exact_det, exact_rayleigh, schur_chain)
from jkronpy.interlacing import (check_strong, check_weak, commuting_spectrum, embed_skew_in_sym, interlace_report,
                                 perron_frobenius_applies)
from jkronpy.spectra import EVEN, ODD, apply_hp, classify_parity, hp_operator, jordan_kron, lie_spectrum, \
    spectrum_split
from jkronpy.utils import lower_pairs, numerical_rank

DEFAULT_SAMPLES = 100
MARGIN = 1e-6
MATCH_TOL = 1e-8

DISPLAYED_FORM = [
    [23, 0, -2, 6, 0, 0, 0, 0, 0, 0],
    [0, 17, -4, 12, 0, 1, -3, 0, 0, 0],
    [-2, -4, 17, 4, 0, 0, 0, 2, -6, 0],
    [6, 12, 4, 27, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 19, 2, -6, 0, 0, 0],
    [0, 1, 0, 0, 2, 18, -2, 4, -12, 0],
    [0, -3, 0, 0, -6, -2, 15, 0, 0, 0],
    [0, 0, 2, 0, 0, 4, 0, 17, -4, 0],
    [0, 0, -6, 0, 0, -12, 0, -4, 11, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 19],
]
LEADING_DET = 1601111
SCALED_SCHUR = [
    [28304835, -1656733, 6268100, -18804300],
    [-1656733, 19380198, 409032, -1227096],
    [6268100, 409032, 26714779, -4892120],
    [-18804300, -1227096, -4892120, 13075249],
]
# Entry (1, 3) is the exact Schur complement value, -10035923859100.
REDUCED_SCHUR = [
    [16491067038915, -44736877814317, -10035923859100],
    [-44736877814317, 251895149926086, -654905634552],
    [-10035923859100, -654905634552, 325369549310571],
]
SKEW_RAYLEIGH = Fraction(-9523, 1002)


_Claim = namedtuple('Claim', ['suite', 'claim', 'passed', 'detail'])
_Claim.__new__.__defaults__ = ('',)


class Claim(_Claim):  # Wrapping for documentation
    """
    :param str suite: Suite identifier, e.g. ``example12``
    :param str claim: What was checked
    :param bool passed:
    :param str detail: Values supporting the verdict
    """

    def line(self):
        return '{} {}: {}{}'.format('PASS' if self.passed else 'FAIL', self.suite, self.claim,
                                    ' ({})'.format(self.detail) if self.detail else '')


def _float_margin(split):
    return float(split.even_values[-1] - split.odd_values[-1])


def example12(seed=0, samples=None):
    f = fixture('A0B0')
    split = spectrum_split(f.a, f.b)
    report = interlace_report(split)
    margin = _float_margin(split)
    direct = sym_eigen(jordan_kron(f.a, f.b))
    det_a = exact_det(f.a)
    claims = [
        Claim('example12', 'rank(A0) = 4 and rank(B0) = 3', numerical_rank(f.a) == 4 and numerical_rank(f.b) == 3),
        Claim('example12', 'det(A0) = -200', det_a == -200, str(det_a)),
        Claim('example12', 'smallest eigenvalue is odd', split.min_parity == ODD,
              'min even {:.9f}, min odd {:.9f}'.format(split.even_values[-1], split.odd_values[-1])),
        Claim('example12', 'margin exceeds 1e-6', margin > MARGIN, '{:.3e}'.format(margin)),
        Claim('example12', 'direct eigenvector of the smallest eigenvalue is odd',
              classify_parity(direct.vectors[:, -1], 1e-8) == ODD),
        Claim('example12', 'weak interlacing fails', not report.weak.holds),
        Claim('example12', 'interlacing fails', not report.full.holds),
        Claim('example12', 'strong interlacing fails', not report.strong.holds),
    ]
    try:
        embed_skew_in_sym(f.a, f.b)
        embedded = True
    except NoEmbedding:
        embedded = False
    claims.append(Claim('example12', 'no sign embedding of the skew compression', not embedded))
    return claims


def _diagonal_indicator(n):
    return RationalMatrix(np.diag([int(i == j) for i, j in lower_pairs(n)]))


def appendix_a(seed=0, samples=None):
    f = fixture('A0B0')
    rho = exact_rayleigh(f.a, f.b, f.witness)
    display = display_shifted_form(f.a, f.b, f.shift)
    h = compress_shifted_form(f.a, f.b, f.shift)
    chain = schur_chain(f.a, f.b, f.shift)
    claims = [
        Claim('appendixA', 'skew Rayleigh quotient is -9523/1002', rho == SKEW_RAYLEIGH, str(rho)),
        Claim('appendixA', '-9523/1002 < -19/2', rho < -f.shift),
        Claim('appendixA', 'displayed 10x10 form reproduced', display == DISPLAYED_FORM),
        Claim('appendixA', 'compressed form equals 2 display - 2 shift diag',
              h == 2 * display - (2 * f.shift) * _diagonal_indicator(4)),
        Claim('appendixA', 'det(X) = 1,601,111', chain.leading_det == LEADING_DET, str(chain.leading_det)),
        Claim('appendixA', 'scaled Schur complement U reproduced', chain.scaled_schur == SCALED_SCHUR),
        Claim('appendixA', 'reduced 3x3 matrix reproduced', chain.reduced == REDUCED_SCHUR),
    ]
    claims.extend(Claim('appendixA', 'chain check {}'.format(name), ok) for name, ok in sorted(chain.checks.items()))
    certificate = certify_skew_extremal(f.id, f.a, f.b, f.witness, f.shift)
    claims.append(Claim('appendixA', 'certificate concludes {}'.format(certificate.conclusion), True,
                        'last pivot {}'.format(certificate.pd_evidence.pivot_chain[-1])))
    return claims


def example_a2(seed=0, samples=None):
    nonneg = fixture('Anonneg')
    split = spectrum_split(nonneg.a, nonneg.b)
    skew = fixture('Askew')
    skew_split = spectrum_split(skew.a, skew.b)
    skew_weak = check_weak(skew_split)
    skew_gap = float(skew_split.odd_values[-1] - skew_split.even_values[-1])
    return [
        Claim('exampleA2', 'nonnegative pair: Perron-Frobenius applies',
              perron_frobenius_applies(nonneg.a, nonneg.b)),
        Claim('exampleA2', 'nonnegative pair: largest eigenvalue is even', split.max_parity == EVEN),
        Claim('exampleA2', 'nonnegative pair: smallest eigenvalue is odd', split.min_parity == ODD,
              'margin {:.3e}'.format(_float_margin(split))),
        Claim('exampleA2', 'nonnegative pair: margin exceeds 1e-6', _float_margin(split) > MARGIN),
        # The skew pair as given keeps weak interlacing; its smallest eigenvalue is even.
        Claim('exampleA2', 'skew pair: smallest eigenvalue is even', skew_split.min_parity == EVEN,
              'min even {:.3f}, min odd {:.3f}'.format(skew_split.even_values[-1], skew_split.odd_values[-1])),
        Claim('exampleA2', 'skew pair: weak interlacing holds', skew_weak.holds),
        Claim('exampleA2', 'skew pair: smallest odd eigenvalue is above the even one by more than 1e-6',
              skew_gap > MARGIN, '{:.3e}'.format(skew_gap)),
    ]


def lemma_commuting(seed=0, samples=None):
    samples = samples or DEFAULT_SAMPLES
    worst = 0.0
    strong = True
    for i in range(samples):
        a, b = commuting_pair(2 + i % 4, seed + i, circulant=bool(i % 5 == 4))
        predicted = commuting_spectrum(a, b)
        split = spectrum_split(a, b)
        worst = max(worst, float(np.max(np.abs(predicted.even_values - split.even_values))),
                    float(np.max(np.abs(predicted.odd_values - split.odd_values))) if split.odd_values.size else 0.0)
        strong = strong and check_strong(split).holds
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((4, 4))
    p = g @ g.T + np.eye(4)
    x = rng.standard_normal((4, 4))
    x = x + x.T
    hp_gap = float(np.linalg.norm(hp_operator(p) @ vec(x) - vec(apply_hp(p, x))))
    return [
        Claim('lemma-commuting', 'predicted spectra match within 1e-8', worst <= MATCH_TOL,
              'worst {:.2e} over {} pairs'.format(worst, samples)),
        Claim('lemma-commuting', 'commuting pairs interlace strongly', strong),
        Claim('lemma-commuting', 'jordan_kron(P, inv(P)) acts as X -> P X inv(P) + inv(P) X P',
              hp_gap <= 1e-8 * max(1.0, float(np.linalg.norm(apply_hp(p, x)))), '{:.2e}'.format(hp_gap)),
    ]


def lie_section3(seed=0, samples=None):
    samples = samples or DEFAULT_SAMPLES
    worst = 0.0
    kernel_ok = True
    for i in range(samples):
        n = 2 + i % 3
        a, b = random_pair(GeneratorSpec(RANK_K, n, {}, seed + i))
        spectrum = lie_spectrum(a, b)
        worst = max(worst, spectrum.pairing_residual)
        kernel_ok = kernel_ok and spectrum.null_sym.shape[1] >= n
    return [
        Claim('lie-section3', 'nonzero eigenvalues pair with their negatives through T', worst <= MATCH_TOL,
              'worst residual {:.2e}'.format(worst)),
        Claim('lie-section3', 'at least n symmetric kernel vectors', kernel_ok),
    ]


def _sample_holds(specs, properties):
    failures = 0
    for spec in specs:
        a, b = random_pair(spec)
        report = interlace_report(spectrum_split(a, b))
        if not all(report.verdict(prop) for prop in properties):
            failures += 1
    return failures


def _strong_witness(seed, n_values, k_values, attempts):
    for i in range(attempts):
        n = n_values[i % len(n_values)]
        k = k_values[i % len(k_values)]
        spec = GeneratorSpec(RANK_K, n, {'k': k}, seed + i)
        a, b = random_pair(spec)
        if not check_strong(spectrum_split(a, b)).holds:
            return spec
    return None


def table1(seed=0, samples=None):
    samples = samples or DEFAULT_SAMPLES
    all_three = ('weak', 'interlacing', 'strong')
    two = ('weak', 'interlacing')
    claims = []

    n2 = [GeneratorSpec(RANK_K, 2, {}, seed + i, SYMMETRIC if i % 2 else SKEW) for i in range(samples)]
    failures = _sample_holds(n2, all_three)
    claims.append(Claim('table1', 'n = 2: weak, interlacing and strong hold', failures == 0,
                        '{} of {} pairs fail'.format(failures, samples)))

    n3 = [GeneratorSpec(RANK_K, 3, {}, seed + i) for i in range(samples)]
    failures = _sample_holds(n3, two)
    claims.append(Claim('table1', 'n = 3: weak and interlacing hold', failures == 0,
                        '{} of {} pairs fail'.format(failures, samples)))
    witness = _strong_witness(seed, [3], [3, 2], 20 * samples)
    claims.append(Claim('table1', 'n = 3: strong interlacing can fail', witness is not None,
                        witness.dumps() if witness else 'no witness found'))

    low = [GeneratorSpec(RANK_K, 3 + i % 5, {'k': 1 + i % 2}, seed + i) for i in range(samples)]
    low += [GeneratorSpec(RANK_K, 4 + 2 * (i % 2), {'k': 2}, seed + i, SKEW) for i in range(samples)]
    failures = _sample_holds(low, two)
    claims.append(Claim('table1', 'min rank <= 2: weak and interlacing hold', failures == 0,
                        '{} of {} pairs fail'.format(failures, len(low))))
    witness = _strong_witness(seed, [3, 4, 5], [2, 1], 20 * samples)
    claims.append(Claim('table1', 'min rank <= 2: strong interlacing can fail', witness is not None,
                        witness.dumps() if witness else 'no witness found'))

    f = fixture('A0B0')
    report = interlace_report(spectrum_split(f.a, f.b))
    claims.append(Claim('table1', 'n >= 4, ranks 3 and 4: all three fail on A0, B0',
                        not (report.weak.holds or report.full.holds or report.strong.holds),
                        'ranks {} and {}'.format(numerical_rank(f.a), numerical_rank(f.b))))
    claims.append(Claim('table1', 'n >= 4, ranks 3 and 3: no fixture witness, since rank(A0) = 4',
                        numerical_rank(f.a) == 4))

    ladder_ok = True
    grid = []
    for k, m in ((3, 4), (4, 4), (4, 5)):
        for n in (4, 5, 6):
            if n < m:
                continue
            pair = ladder(k, m, n)
            ok = numerical_rank(pair.a) == k and numerical_rank(pair.b) == m and \
                not check_weak(spectrum_split(pair.a, pair.b)).holds
            ladder_ok = ladder_ok and ok
            grid.append('({},{},{})'.format(k, m, n))
    claims.append(Claim('table1', 'ranks k >= 3 and m >= 4: ladder pairs fail weak interlacing', ladder_ok,
                        ' '.join(grid)))
    return claims


REPRODUCERS = OrderedDict([
    ('table1', table1),
    ('example12', example12),
    ('appendixA', appendix_a),
    ('exampleA2', example_a2),
    ('lemma-commuting', lemma_commuting),
    ('lie-section3', lie_section3),
])


def reproduce(item, seed=0, samples=None):
    """
    Runs one reproduction suite.

    :param str item: One of :data:`REPRODUCERS`
    :return: list of :class:`Claim`
    """
    if item not in REPRODUCERS:
        raise KeyError(item)
    logging.info('Reproducing {}'.format(item))
    claims = REPRODUCERS[item](seed=seed, samples=samples)
    failed = [c for c in claims if not c.passed]
    if failed:
        logging.warning('{}: {} of {} claims fail'.format(item, len(failed), len(claims)))
    return claims

"""
Known counterexample fixtures and seeded generators of matrix pairs.

Every generator is deterministic in its :class:`GeneratorSpec` and checks the
structural contract of its family (rank, symmetry class, commutator, zero
pattern) before returning.
"""
import json
import logging
from collections import namedtuple
from fractions import Fraction

import numpy as np

from jkronpy.dense import sym_eigvals
from jkronpy.errors import (BadBandIndex, BadConfig, BadMoveIndex, BadRank, ConstructionFailed, MuOverflow,
                            PreconditionFail, UnknownFixture)
from jkronpy.interlacing import check_weak
from jkronpy.spectra import EVEN, ODD, spectrum_split
from jkronpy.utils import as_square, frobenius, is_skew, is_symmetric, numerical_rank

SYMMETRIC = 'symmetric'
SKEW = 'skew'

RANK_K = 'RankK'
COMMUTING = 'Commuting'
DIAG_ANTIBAND = 'DiagAntiBand'
TRIDIAG_DIAG = 'TridiagDiag'
PERTURB_HOLDS = 'PerturbHolds'
PERTURB_FAILS = 'PerturbFails'
LADDER = 'Ladder'
POSITIVE_DEFINITE = 'PositiveDefinite'
FAMILIES = (RANK_K, COMMUTING, DIAG_ANTIBAND, TRIDIAG_DIAG, PERTURB_HOLDS, PERTURB_FAILS, LADDER,
            POSITIVE_DEFINITE)

COEFFICIENT_RANGE = 9
COMMUTATOR_TOL = 1e-10
MU_LIMIT = 2 ** 60
LADDER_EPS = 1e-3
LADDER_HALVINGS = 40
EXTREME_GAP = 1e-9
PD_DELTA = 1e-3

A0 = [[2, 0, -1, 3],
      [0, 0, -2, 6],
      [-1, -2, 1, 2],
      [3, 6, 2, 4]]
B0 = [[2, 0, 0, 0],
      [0, -1, 0, 0],
      [0, 0, -2, 0],
      [0, 0, 0, 0]]
W0 = [[0, -15, -24, 10],
      [15, 0, -36, -2],
      [24, 36, 0, 53],
      [-10, 2, -53, 0]]

A_NONNEG = [[98, 48, 88, 31],
            [48, 33, 91, 116],
            [88, 91, 91, 45],
            [31, 116, 45, 139]]
B_NONNEG = [[35, 23, 78, 125],
            [23, 100, 91, 152],
            [78, 91, 1, 120],
            [125, 152, 120, 187]]

A_SKEW = [[0, 85, -36, -113, -84, 306],
          [-85, 0, 88, -23, 218, 57],
          [36, -88, 0, 122, -48, 29],
          [113, 23, -122, 0, 105, -3],
          [84, -218, 48, -105, 0, -41],
          [-306, -57, -29, 3, 41, 0]]
B_SKEW = [[0, -92, 44, -124, 38, -44],
          [92, 0, 94, 11, -227, -51],
          [-44, -94, 0, -59, 286, 71],
          [124, -11, 59, 0, 69, -191],
          [-38, 227, -286, -69, 0, 13],
          [44, 51, -71, 191, -13, 0]]


_Fixture = namedtuple('Fixture', ['id', 'a', 'b', 'witness', 'shift', 'expected'])
_Fixture.__new__.__defaults__ = (None, None, None)


class Fixture(_Fixture):  # Wrapping for documentation
    """
    A reference pair with its expected behaviour.

    :param str id: ``A0B0``, ``Anonneg`` or ``Askew``
    :param numpy.ndarray a: Integer matrix
    :param numpy.ndarray b: Integer matrix
    :param numpy.ndarray witness: Skew matrix W whose Rayleigh quotient beats the even spectrum, if known
    :param fractions.Fraction shift: Bound used by the exact certificate, if known
    :param dict expected: Expected verdicts and extreme parities
    """
    pass


# A0 has determinant -200, so (A0, B0) has ranks 4 and 3. The skew pair keeps weak interlacing.
FIXTURES = {
    'A0B0': Fixture('A0B0', np.array(A0), np.array(B0), np.array(W0), Fraction(19, 2),
                    {'weak': False, 'interlacing': False, 'strong': False, 'min_parity': ODD,
                     'rank_a': 4, 'rank_b': 3, 'det_a': -200}),
    'Anonneg': Fixture('Anonneg', np.array(A_NONNEG), np.array(B_NONNEG), None, None,
                       {'weak': False, 'min_parity': ODD, 'max_parity': EVEN, 'perron_frobenius': True}),
    'Askew': Fixture('Askew', np.array(A_SKEW), np.array(B_SKEW), None, None,
                     {'weak': True, 'min_parity': EVEN}),
}


def fixture(fixture_id):
    try:
        return FIXTURES[fixture_id]
    except KeyError:
        raise UnknownFixture('Unknown fixture {!r}; expected one of {}'.format(
            fixture_id, ', '.join(sorted(FIXTURES))))


_GeneratorSpec = namedtuple('GeneratorSpec', ['family', 'n', 'params', 'seed', 'symmetry'])
_GeneratorSpec.__new__.__defaults__ = (None, 0, SYMMETRIC)


class GeneratorSpec(_GeneratorSpec):  # Wrapping for documentation
    """
    :param str family: One of :data:`FAMILIES`
    :param int n: Matrix dimension
    :param dict params: Family specific parameters, e.g. ``{'k': 2}`` for ``RankK``
    :param int seed: Seed of the generator's random stream
    :param str symmetry: ``symmetric`` or ``skew``
    """

    def param(self, key, default=None):
        return (self.params or {}).get(key, default)

    def to_json(self):
        return {'family': self.family, 'n': self.n, 'params': dict(self.params or {}),
                'seed': int(self.seed), 'symmetry': self.symmetry}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except ValueError as e:
                raise BadConfig('Generator spec is not valid JSON: {}'.format(e))
        if not isinstance(data, dict):
            raise BadConfig('Generator spec must be a JSON object')
        family = data.get('family')
        if family not in FAMILIES:
            raise BadConfig('Unknown family {!r}; expected one of {}'.format(family, ', '.join(FAMILIES)))
        symmetry = data.get('symmetry', SYMMETRIC)
        if symmetry not in (SYMMETRIC, SKEW):
            raise BadConfig('Symmetry must be symmetric or skew, got {!r}'.format(symmetry))
        try:
            n = int(data['n'])
            seed = int(data.get('seed', 0))
        except (KeyError, TypeError, ValueError):
            raise BadConfig('Generator spec needs an integer n and seed')
        if n < 1:
            raise BadConfig('n must be positive, got {}'.format(n))
        params = data.get('params') or {}
        if not isinstance(params, dict):
            raise BadConfig('params must be a JSON object')
        return cls(family, n, params, seed, symmetry)


def _rng(seed):
    return np.random.default_rng(seed)


def _nonzero_ints(rng, size):
    return rng.integers(1, COEFFICIENT_RANGE + 1, size=size) * rng.choice([-1, 1], size=size)


def _orthogonal(rng, n):
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def _symmetric_of_rank(rng, n, k):
    v = _orthogonal(rng, n)[:, :k]
    m = (v * _nonzero_ints(rng, k)) @ v.T
    return (m + m.T) / 2.0


def _skew_of_rank(rng, n, k):
    v = _orthogonal(rng, n)
    m = np.zeros((n, n))
    for block, alpha in enumerate(_nonzero_ints(rng, k // 2)):
        x, y = v[:, 2 * block], v[:, 2 * block + 1]
        m += alpha * (np.outer(x, y) - np.outer(y, x))
    return (m - m.T) / 2.0


def _check_rank(symmetry, n, k):
    if symmetry == SKEW:
        if k % 2 or not 2 <= k <= n:
            raise BadRank('Skew-symmetric rank must be even and in 2..{}, got {}'.format(n, k))
    elif not 1 <= k <= n:
        raise BadRank('Symmetric rank must be in 1..{}, got {}'.format(n, k))


def random_pair(spec):
    """
    Random pair of a given symmetry class with ``rank(A) = params['k']`` and
    ``rank(B) = params['k_b']`` (full rank for the class when omitted).
    """
    n = spec.n
    k = int(spec.param('k', n))
    full = n if spec.symmetry == SYMMETRIC else n - n % 2
    k_b = int(spec.param('k_b', full))
    _check_rank(spec.symmetry, n, k)
    _check_rank(spec.symmetry, n, k_b)
    rng = _rng(spec.seed)
    make = _symmetric_of_rank if spec.symmetry == SYMMETRIC else _skew_of_rank
    a, b = make(rng, n, k), make(rng, n, k_b)
    if numerical_rank(a) != k or numerical_rank(b) != k_b:
        raise ConstructionFailed('Generated ranks {} and {} miss the targets {} and {}'.format(
            numerical_rank(a), numerical_rank(b), k, k_b))
    return a, b


def antiband_positions(n, k):
    """0-based upper positions ``(i, k - 1 - i)`` of the anti-diagonal band in the leading k-by-k block."""
    if not 2 <= k <= n:
        raise BadBandIndex('Band index must be in 2..{}, got {}'.format(n, k))
    return [(i, k - 1 - i) for i in range(k // 2)]


def diag_antiband_pair(spec):
    """
    A diagonal matrix perturbed on the anti-diagonal of its leading k-by-k block,
    ``A + Σ α_i (E_{i,k-i+1} + E_{i,k-i+1}ᵀ)``, paired with a diagonal B.
    """
    n = spec.n
    k = int(spec.param('k', n))
    positions = antiband_positions(n, k)
    rng = _rng(spec.seed)
    a = np.diag(rng.integers(-COEFFICIENT_RANGE, COEFFICIENT_RANGE + 1, size=n)).astype(float)
    b = np.diag(rng.integers(-COEFFICIENT_RANGE, COEFFICIENT_RANGE + 1, size=n)).astype(float)
    alpha = spec.param('alpha')
    if alpha is None:
        alpha = rng.integers(-COEFFICIENT_RANGE, COEFFICIENT_RANGE + 1, size=len(positions))
    if len(alpha) != len(positions):
        raise BadBandIndex('Band index {} takes {} coefficients, got {}'.format(k, len(positions), len(alpha)))
    for (i, j), value in zip(positions, alpha):
        a[i, j] = a[j, i] = float(value)
    allowed = np.eye(n, dtype=bool)
    for i, j in positions:
        allowed[i, j] = allowed[j, i] = True
    if np.any(a[~allowed]) or np.any(b - np.diag(np.diag(b))):
        raise ConstructionFailed('Zero pattern of the anti-diagonal family is violated')
    return a, b


def tridiag_pair(spec, moved=None):
    """
    Random symmetric tridiagonal A with diagonal B. With ``moved=(r, s)`` (1-based,
    ``r > s + 1``) the subdiagonal entry ``(s+1, s)`` is moved to ``(r, s)``.
    """
    n = spec.n
    moved = moved if moved is not None else spec.param('moved')
    rng = _rng(spec.seed)
    a = np.diag(rng.integers(-COEFFICIENT_RANGE, COEFFICIENT_RANGE + 1, size=n)).astype(float)
    off = _nonzero_ints(rng, n - 1)
    for i, value in enumerate(off):
        a[i + 1, i] = a[i, i + 1] = value
    b = np.diag(rng.integers(-COEFFICIENT_RANGE, COEFFICIENT_RANGE + 1, size=n)).astype(float)
    if moved is not None:
        r, s = (int(x) for x in moved)
        if not (1 <= s and r <= n and r > s + 1):
            raise BadMoveIndex('Moved entry ({}, {}) needs 1 <= s, r <= {} and r > s + 1'.format(r, s, n))
        value = a[s, s - 1]
        a[s, s - 1] = a[s - 1, s] = 0.0
        a[r - 1, s - 1] = a[s - 1, r - 1] = value
    upper = np.triu(a, 1)
    if np.any(np.count_nonzero(upper, axis=1) > 1):
        raise ConstructionFailed('A row of the upper triangle carries more than one nonzero')
    return a, b


def commuting_pair(n, seed, circulant=False):
    """
    Commuting symmetric pair ``(V Λ Vᵀ, V M Vᵀ)`` with a shared random orthogonal V, or
    two random symmetric circulants.
    """
    rng = _rng(seed)
    if circulant:
        a, b = (_symmetric_circulant(rng, n) for _ in range(2))
    else:
        v = _orthogonal(rng, n)
        lam = rng.integers(-COEFFICIENT_RANGE, COEFFICIENT_RANGE + 1, size=n)
        mu = rng.integers(-COEFFICIENT_RANGE, COEFFICIENT_RANGE + 1, size=n)
        a = (v * lam) @ v.T
        b = (v * mu) @ v.T
        a, b = (a + a.T) / 2.0, (b + b.T) / 2.0
    commutator = frobenius(a @ b - b @ a)
    if commutator > COMMUTATOR_TOL * max(1.0, frobenius(a) * frobenius(b)):
        raise ConstructionFailed('Commutator norm {:.3e} is too large'.format(commutator))
    return a, b


def _symmetric_circulant(rng, n):
    c = rng.integers(-COEFFICIENT_RANGE, COEFFICIENT_RANGE + 1, size=n)
    c = np.array([c[min(j, n - j)] for j in range(n)], dtype=float)
    return np.array([[c[(j - i) % n] for j in range(n)] for i in range(n)])


def positive_definite_pair(n, seed):
    """Two matrices ``G Gᵀ + δ I`` with ``δ = 1e-3 ||G Gᵀ||_F``."""
    rng = _rng(seed)
    pair = []
    for _ in range(2):
        g = rng.standard_normal((n, n))
        gram = g @ g.T
        m = gram + PD_DELTA * frobenius(gram) * np.eye(n)
        pair.append((m + m.T) / 2.0)
    return tuple(pair)


_Perturbation = namedtuple('Perturbation', ['a', 'b', 'mu'])


class Perturbation(_Perturbation):  # Wrapping for documentation
    """
    :param numpy.ndarray a: Perturbed first matrix
    :param numpy.ndarray b: Perturbed second matrix
    :param float mu: The perturbation size the doubling search stopped at
    """
    pass


def _indefinite_with_simple_extremes(m, name):
    values = sym_eigvals(m)
    scale = max(1.0, float(np.max(np.abs(values))))
    if not (values[0] > EXTREME_GAP * scale and values[-1] < -EXTREME_GAP * scale):
        raise PreconditionFail('{} must be indefinite'.format(name))
    if values.size < 2 or values[0] - values[1] <= EXTREME_GAP * scale or \
            values[-2] - values[-1] <= EXTREME_GAP * scale:
        raise PreconditionFail('The extreme eigenvalues of {} must be simple'.format(name))


def _double_until(build, wanted, label):
    mu = 1.0
    while mu <= MU_LIMIT:
        a, b = build(mu)
        if check_weak(spectrum_split(a, b)).holds == wanted:
            logging.info('{}: weak interlacing {} at mu = {:g}'.format(label, 'holds' if wanted else 'fails', mu))
            return Perturbation(a, b, mu)
        mu *= 2.0
    raise MuOverflow('{}: no mu up to 2**60 works'.format(label))


def perturb_holds(a, b, variant, params=None):
    """
    Perturbs a symmetric pair until weak interlacing holds, doubling mu from 1:

    * ``i``:   ``(A + μI, B)``, B indefinite with simple extreme eigenvalues
    * ``ii``:  ``(A + βB, B + μA)``, the same condition on ``A + βB``
    * ``iii``: ``(A + μD, B)`` with B and D diagonal, the condition on ``B ⊗ D``
    * ``iv``:  ``(A + μD1, B + μD2)``, the condition on ``D1 ⊗ D2``

    :param dict params: ``beta`` for ii, ``d`` for iii, ``d1`` and ``d2`` for iv (diagonal, as entries or matrices)
    :return: :class:`Perturbation`
    """
    params = params or {}
    a = as_square(a, 'a')
    b = as_square(b, 'b')
    if not (is_symmetric(a) and is_symmetric(b)):
        raise PreconditionFail('Perturbations are defined for symmetric pairs')
    n = a.shape[0]
    eye = np.eye(n)
    variant = str(variant)
    if variant == 'i':
        _indefinite_with_simple_extremes(b, 'B')
        build = lambda mu: (a + mu * eye, b)
    elif variant == 'ii':
        beta = float(params.get('beta', 0.0))
        _indefinite_with_simple_extremes(a + beta * b, 'A + beta B')
        build = lambda mu: (a + beta * b, b + mu * a)
    elif variant == 'iii':
        d = _diagonal_param(params, 'd', n)
        if not _is_diagonal(b):
            raise PreconditionFail('Variant iii needs a diagonal B')
        _indefinite_with_simple_extremes(np.kron(b, d), 'B ⊗ D')
        build = lambda mu: (a + mu * d, b)
    elif variant == 'iv':
        d1 = _diagonal_param(params, 'd1', n)
        d2 = _diagonal_param(params, 'd2', n)
        _indefinite_with_simple_extremes(np.kron(d1, d2), 'D1 ⊗ D2')
        build = lambda mu: (a + mu * d1, b + mu * d2)
    else:
        raise PreconditionFail('Unknown variant {!r}; expected i, ii, iii or iv'.format(variant))
    return _double_until(build, True, 'variant {}'.format(variant))


def _diagonal_param(params, key, n):
    if key not in params:
        raise PreconditionFail('Missing parameter {!r}'.format(key))
    m = np.array(params[key], dtype=float)
    if m.ndim == 1:
        m = np.diag(m)
    m = as_square(m, key)
    if m.shape[0] != n:
        raise PreconditionFail('{} must be {}-by-{}'.format(key, n, n))
    if not _is_diagonal(m):
        raise PreconditionFail('{} must be diagonal'.format(key))
    return m


def perturb_fails(abar, bbar, a, b, variant, params=None):
    """
    Pushes an arbitrary pair (A, B) towards a pair (Ā, B̄) without weak interlacing:

    * ``1``: ``(A + μĀ, B̄)``, or ``(A + βμĀ, B + μB̄)`` when ``beta`` is given
    * ``2``: ``(A + βB̄, B + αĀ)`` with ``α = β = μ`` unless ``alpha``/``beta`` are given

    :return: :class:`Perturbation`
    """
    params = params or {}
    abar, bbar = as_square(abar, 'abar'), as_square(bbar, 'bbar')
    a, b = as_square(a, 'a'), as_square(b, 'b')
    if abar.shape[0] < 4:
        raise PreconditionFail('Failure-preserving perturbations need n >= 4')
    if check_weak(spectrum_split(abar, bbar)).holds:
        raise PreconditionFail('Weak interlacing must fail for the target pair')
    variant = str(variant)
    beta = params.get('beta')
    alpha = params.get('alpha')
    if variant == '1':
        if beta is None:
            build = lambda mu: (a + mu * abar, bbar)
        else:
            build = lambda mu: (a + float(beta) * mu * abar, b + mu * bbar)
    elif variant == '2':
        build = lambda mu: (a + (mu if beta is None else float(beta)) * bbar,
                            b + (mu if alpha is None else float(alpha)) * abar)
    else:
        raise PreconditionFail('Unknown variant {!r}; expected 1 or 2'.format(variant))
    return _double_until(build, False, 'variant {}'.format(variant))


_LadderPair = namedtuple('LadderPair', ['a', 'b', 'eps', 'margin'])


class LadderPair(_LadderPair):  # Wrapping for documentation
    """
    :param numpy.ndarray a: n-by-n matrix of rank k, grown from B0
    :param numpy.ndarray b: n-by-n matrix of rank m, grown from A0
    :param float eps: The ε the construction settled on
    :param float margin: ``min(even) - min(odd)``, positive when weak interlacing fails
    """
    pass


def _ladder_block(core, rank, n, eps, base_rank):
    m = np.zeros((n, n))
    m[:4, :4] = core if rank <= base_rank else core + eps * np.eye(4)
    for i in range(4, rank):
        m[i, i] = eps
    return m


def ladder(k, m, n, eps=LADDER_EPS):
    """
    Symmetric n-by-n pair with ranks k and m for which weak interlacing fails, grown
    from ``(A0, B0)``. B0 (rank 3) is the rank-k core and gets ``εI`` once k reaches 4,
    A0 (rank 4) is the rank-m core. Further ε entries raise the ranks, zeros pad to
    size n, and ε is halved while a rank or the weak failure is lost.

    The only certified core has ranks 3 and 4, so ``m >= 4``.

    :return: :class:`LadderPair`
    """
    if not (3 <= k <= m <= n and n >= 4 and eps > 0):
        raise PreconditionFail('Need 3 <= k <= m <= n, n >= 4 and eps > 0; got k={}, m={}, n={}, eps={}'.format(
            k, m, n, eps))
    if m < 4:
        raise PreconditionFail('No certified pair of two rank-3 matrices; A0 has rank 4, so m must be >= 4')
    a0, b0 = np.array(A0, dtype=float), np.array(B0, dtype=float)
    for _ in range(LADDER_HALVINGS + 1):
        a = _ladder_block(b0, k, n, eps, 3)
        b = _ladder_block(a0, m, n, eps, 4)
        if numerical_rank(a) == k and numerical_rank(b) == m:
            split = spectrum_split(a, b)
            if not check_weak(split).holds:
                margin = float(split.even_values[-1] - split.odd_values[-1])
                logging.info('Ladder ({}, {}, {}) at eps {:g}: margin {:.3e}'.format(k, m, n, eps, margin))
                return LadderPair(a, b, eps, margin)
        logging.warning('Ladder ({}, {}, {}) lost its properties at eps {:g}; halving'.format(k, m, n, eps))
        eps /= 2.0
    raise ConstructionFailed('No eps worked for ladder ({}, {}, {})'.format(k, m, n))


def generate(spec):
    """
    Builds the pair described by a :class:`GeneratorSpec`.

    :return: ``(a, b)``
    """
    family = spec.family
    if family == RANK_K:
        return random_pair(spec)
    if family == COMMUTING:
        return commuting_pair(spec.n, spec.seed, circulant=bool(spec.param('circulant', False)))
    if family == DIAG_ANTIBAND:
        return diag_antiband_pair(spec)
    if family == TRIDIAG_DIAG:
        return tridiag_pair(spec)
    if family == POSITIVE_DEFINITE:
        return positive_definite_pair(spec.n, spec.seed)
    if family == LADDER:
        result = ladder(int(spec.param('k', 3)), int(spec.param('m', 4)), spec.n,
                        float(spec.param('eps', LADDER_EPS)))
        return result.a, result.b
    if family in (PERTURB_HOLDS, PERTURB_FAILS):
        return _generate_perturbation(spec)
    raise BadConfig('Unknown family {!r}'.format(family))


def _generate_perturbation(spec):
    base = fixture(spec.param('base', 'A0B0'))
    if spec.n != base.a.shape[0]:
        raise BadConfig('Fixture {} is {}-by-{}, not {}'.format(base.id, base.a.shape[0], base.a.shape[0], spec.n))
    if spec.family == PERTURB_HOLDS:
        result = perturb_holds(base.a, base.b, spec.param('variant', 'i'), spec.params)
    else:
        rng = _rng(spec.seed)
        a = _symmetric_of_rank(rng, spec.n, spec.n)
        b = _symmetric_of_rank(rng, spec.n, spec.n)
        result = perturb_fails(base.a, base.b, a, b, spec.param('variant', '1'), spec.params)
    return result.a, result.b


def _is_diagonal(m):
    return not np.any(m - np.diag(np.diag(m)))


def _family_violation(spec, a, b):
    family, n = spec.family, spec.n
    if family in (RANK_K, LADDER):
        if family == RANK_K:
            full = n if spec.symmetry == SYMMETRIC else n - n % 2
            ranks = int(spec.param('k', n)), int(spec.param('k_b', full))
        else:
            ranks = int(spec.param('k', 3)), int(spec.param('m', 4))
        if (numerical_rank(a), numerical_rank(b)) != ranks:
            return 'ranks {} and {} miss the targets {} and {}'.format(numerical_rank(a), numerical_rank(b), *ranks)
    elif family == COMMUTING:
        if frobenius(a @ b - b @ a) > COMMUTATOR_TOL * max(1.0, frobenius(a) * frobenius(b)):
            return 'the pair does not commute'
    elif family == DIAG_ANTIBAND:
        allowed = np.eye(n, dtype=bool)
        for i, j in antiband_positions(n, int(spec.param('k', n))):
            allowed[i, j] = allowed[j, i] = True
        if np.any(a[~allowed]) or not _is_diagonal(b):
            return 'the anti-diagonal zero pattern is violated'
    elif family == TRIDIAG_DIAG:
        if np.any(np.count_nonzero(np.triu(a, 1), axis=1) > 1) or not _is_diagonal(b):
            return 'the tridiagonal zero pattern is violated'
    elif family == POSITIVE_DEFINITE:
        if sym_eigvals(a)[-1] <= 0 or sym_eigvals(b)[-1] <= 0:
            return 'the pair is not positive definite'
    elif family in (PERTURB_HOLDS, PERTURB_FAILS):
        return _perturbation_violation(spec, a, b)
    return None


def _perturbation_violation(spec, a, b):
    base = fixture(spec.param('base', 'A0B0'))
    holds = check_weak(spectrum_split(a, b)).holds
    if spec.family == PERTURB_HOLDS:
        if not holds:
            return 'weak interlacing fails after the perturbation'
        variant = str(spec.param('variant', 'i'))
        if variant in ('i', 'iii') and not np.array_equal(b, base.b):
            return 'variant {} must keep B'.format(variant)
        shift = a - base.a
        if variant == 'i' and not np.allclose(shift, shift[0, 0] * np.eye(spec.n)):
            return 'variant i must shift A by a multiple of I'
        if variant == 'iii' and not _is_diagonal(shift):
            return 'variant iii must shift A by a diagonal matrix'
        return None
    if holds:
        return 'weak interlacing holds after the perturbation'
    if str(spec.param('variant', '1')) == '1' and spec.param('beta') is None and not np.array_equal(b, base.b):
        return 'variant 1 must end on the target B'
    return None


def check_contract(spec, a, b):
    """
    Verifies that a generated pair keeps its family's declared structure: the
    symmetry class, then ranks, commutator, zero pattern, definiteness or the
    perturbation's shape and weak interlacing verdict.

    :raises ConstructionFailed: naming the broken property
    """
    a, b = as_square(a, 'a'), as_square(b, 'b')
    check = is_symmetric if spec.symmetry == SYMMETRIC else is_skew
    if not (check(a) and check(b)):
        raise ConstructionFailed('Generated pair is not {}'.format(spec.symmetry))
    violation = _family_violation(spec, a, b)
    if violation:
        raise ConstructionFailed('{} pair breaks its contract: {}'.format(spec.family, violation))
    return True

"""
Exact rational arithmetic for certifying that the smallest eigenvalue of a
Jordan-Kronecker product belongs to a skew-symmetric eigenvector.

Entries are :class:`fractions.Fraction` values held in numpy object arrays, so
every intermediate is reduced with a positive denominator. Floats are accepted
only when they are integers; decimal literals should be passed as strings.
"""
import logging
import numbers
from collections import namedtuple
from fractions import Fraction

import numpy as np

from jkronpy.errors import (CertificateFails, DimMismatch, LeadingBlockSingularOrNotPD, NotRational,
                            NotSymmetric, PreconditionFail, ZeroVector)
from jkronpy.utils import lower_pairs

POSITIVE_DEFINITE = 'PositiveDefinite'
NOT_PD = 'NotPD'
MIN_EIGVEC_SKEW = 'MinEigvecSkew'


def to_rational(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (bool, np.bool_)):
        raise NotRational('Boolean {} is not a matrix entry'.format(x))
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip().replace('−', '-'))
        except ValueError:
            raise NotRational('Cannot read {!r} as a rational number'.format(x))
    if isinstance(x, numbers.Real):
        if float(x).is_integer():
            return Fraction(int(x))
        raise NotRational('Float {!r} is not an exact rational input; pass it as a decimal string'.format(x))
    raise NotRational('Unsupported entry type {}'.format(type(x).__name__))


def rational_str(x):
    return str(Fraction(x))


class RationalMatrix(object):
    """
    A dense matrix of exact rationals.

    :param entries: Nested sequence (or 2-d array) of ints, Fractions, integer-valued
                    floats or strings such as ``'-19/2'`` or ``'0.25'``
    """

    def __init__(self, entries):
        if isinstance(entries, RationalMatrix):
            data = entries.entries.copy()
        else:
            rows = [list(row) for row in entries]
            if not rows or any(len(row) != len(rows[0]) for row in rows) or not rows[0]:
                raise DimMismatch('Rational matrix rows must be nonempty and of equal length')
            data = np.empty((len(rows), len(rows[0])), dtype=object)
            for i, row in enumerate(rows):
                for j, value in enumerate(row):
                    data[i, j] = to_rational(value)
        self.entries = data

    @classmethod
    def _wrap(cls, data):
        m = cls.__new__(cls)
        m.entries = data
        return m

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)])

    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]

    @property
    def shape(self):
        return self.entries.shape

    @property
    def T(self):
        return RationalMatrix._wrap(self.entries.T.copy())

    def __getitem__(self, key):
        part = self.entries[key]
        if isinstance(part, np.ndarray):
            if part.ndim == 1:
                row = not isinstance(key, tuple) or isinstance(key[0], (int, np.integer))
                part = part.reshape(1, -1) if row else part.reshape(-1, 1)
            return RationalMatrix._wrap(part.copy())
        return part

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimMismatch('Cannot multiply {} by {}'.format(self.shape, other.shape))
        return RationalMatrix._wrap(self.entries.dot(other.entries))

    def __add__(self, other):
        self._same_shape(other)
        return RationalMatrix._wrap(self.entries + other.entries)

    def __sub__(self, other):
        self._same_shape(other)
        return RationalMatrix._wrap(self.entries - other.entries)

    def __neg__(self):
        return RationalMatrix._wrap(-self.entries)

    def __mul__(self, scalar):
        scalar = to_rational(scalar)
        return RationalMatrix._wrap(self.entries * scalar)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            try:
                other = RationalMatrix(other)
            except (DimMismatch, NotRational, TypeError):
                return False
        return self.shape == other.shape and bool(np.all(self.entries == other.entries))

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def __repr__(self):
        return 'RationalMatrix({})'.format([[rational_str(x) for x in row] for row in self.entries])

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DimMismatch('Shapes differ: {} and {}'.format(self.shape, other.shape))

    def is_symmetric(self):
        return self.rows == self.cols and bool(np.all(self.entries == self.entries.T))

    def is_skew(self):
        return self.rows == self.cols and bool(np.all(self.entries == -self.entries.T))

    def diagonal(self):
        return [self.entries[i, i] for i in range(min(self.shape))]

    def tolist(self):
        return self.entries.tolist()

    def to_float(self):
        return np.array([[float(x) for x in row] for row in self.entries])

    def to_json(self):
        return {'rows': self.rows, 'cols': self.cols,
                'entries': [[rational_str(x) for x in row] for row in self.entries]}

    def kron(self, other):
        blocks = [[self.entries[i, j] * other.entries for j in range(self.cols)] for i in range(self.rows)]
        return RationalMatrix._wrap(np.block(blocks) if blocks else np.empty((0, 0), dtype=object))

    def vec(self):
        return list(self.entries.reshape(-1, order='F'))

    def sub(self, rows, cols):
        return RationalMatrix._wrap(self.entries[np.ix_(rows, cols)].copy())


def _require_symmetric(m, name):
    if not m.is_symmetric():
        raise NotSymmetric('{} must be exactly symmetric'.format(name))


def exact_rayleigh(a, b, w):
    """
    ``vec(W)ᵀ (A⊗B) vec(W) / vec(W)ᵀ vec(W)``, computed as ``<W, B W Aᵀ>/<W, W>``.

    :return: A reduced :class:`fractions.Fraction`
    """
    a, b, w = RationalMatrix(a), RationalMatrix(b), RationalMatrix(w)
    n = a.rows
    if a.shape != (n, n) or b.shape != (n, n) or w.shape != (n, n):
        raise DimMismatch('Expected n-by-n inputs, got {}, {} and {}'.format(a.shape, b.shape, w.shape))
    norm = sum(x * x for x in w.entries.ravel())
    if norm == 0:
        raise ZeroVector('The witness matrix is zero')
    image = (b @ w @ a.T).entries
    return Fraction(sum(image.ravel() * w.entries.ravel())) / norm


def duplication_matrix(n):
    """L with ``vec(U) = L x`` for symmetric U with free entries x in column-major lower order."""
    pairs = lower_pairs(n)
    rows = [[0] * len(pairs) for _ in range(n * n)]
    for k, (i, j) in enumerate(pairs):
        rows[i + n * j][k] = 1
        rows[j + n * i][k] = 1
    return RationalMatrix(rows)


def _kron_form(a, b):
    a, b = RationalMatrix(a), RationalMatrix(b)
    _require_symmetric(a, 'A')
    _require_symmetric(b, 'B')
    if a.shape != b.shape:
        raise DimMismatch('A is {} but B is {}'.format(a.shape, b.shape))
    l = duplication_matrix(a.rows)
    return l.T @ a.kron(b) @ l, l


def compress_shifted_form(a, b, shift):
    """
    Symmetric H on the n(n+1)/2 free entries x = (u11, u21, ..., un1, u22, ..., unn) of a
    symmetric U, with ``vec(U)ᵀ(A⊗B)vec(U) + shift·||U||_F² = ½ xᵀ H x`` exactly.
    """
    shift = to_rational(shift)
    form, l = _kron_form(a, b)
    return 2 * (form + shift * (l.T @ l))


def display_shifted_form(a, b, shift):
    """
    The same quadratic data in its integer display scaling,
    ``Lᵀ(A⊗B)L + 2·shift·I``. Equals ``H/2 + shift·diag(1 on diagonal variables)``.
    """
    shift = to_rational(shift)
    form, l = _kron_form(a, b)
    return form + (2 * shift) * RationalMatrix.identity(form.rows)


_PDCertificate = namedtuple('PDCertificate', ['verdict', 'pivot_chain', 'witness'])
_PDCertificate.__new__.__defaults__ = (None,)


class PDCertificate(_PDCertificate):  # Wrapping for documentation
    """
    :param str verdict: ``PositiveDefinite`` or ``NotPD``
    :param list pivot_chain: Ratios of consecutive leading principal minors, as Fractions
    :param list witness: For ``NotPD``, a rational vector x with ``xᵀ M x <= 0``
    """

    @property
    def positive_definite(self):
        return self.verdict == POSITIVE_DEFINITE

    def to_json(self):
        return {'verdict': self.verdict,
                'pivot_chain': [rational_str(p) for p in self.pivot_chain],
                'witness': [rational_str(x) for x in self.witness] if self.witness is not None else None}


def _solve(x, rhs):
    """Solves ``x z = rhs`` exactly by Gauss-Jordan elimination with row exchanges."""
    n = x.shape[0]
    x = x.copy()
    y = rhs.copy()
    for i in range(n):
        for j in range(i, n):
            if x[j, i] != 0:
                if j != i:
                    x[[i, j]] = x[[j, i]]
                    y[[i, j]] = y[[j, i]]
                break
        else:
            raise LeadingBlockSingularOrNotPD('Leading block is singular')
        y[i] = y[i] / x[i, i]
        x[i] = x[i] / x[i, i]
        for j in range(n):
            if j != i and x[j, i] != 0:
                y[j] = y[j] - x[j, i] * y[i]
                x[j] = x[j] - x[j, i] * x[i]
    return y


def exact_pd(m):
    """
    Fraction-free (Bareiss) symmetric elimination without pivoting. The k-th pivot is the
    ratio of the k-th to the (k-1)-th leading principal minor; the matrix is positive
    definite exactly when every pivot is positive. Elimination stops at the first
    nonpositive pivot and returns a witness x with ``xᵀ M x`` equal to that pivot.
    """
    m = RationalMatrix(m)
    _require_symmetric(m, 'Matrix')
    work = m.entries.copy()
    n = m.rows
    previous = Fraction(1)
    chain = []
    for k in range(n):
        minor = work[k, k]
        chain.append(minor / previous)
        if minor <= 0:
            witness = _pd_witness(m, k)
            logging.info('Pivot {} is {}; matrix is not positive definite'.format(k + 1, rational_str(chain[-1])))
            return PDCertificate(NOT_PD, chain, witness)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i, j] = (work[i, j] * minor - work[i, k] * work[k, j]) / previous
        previous = minor
    return PDCertificate(POSITIVE_DEFINITE, chain)


def _pd_witness(m, k):
    witness = [Fraction(0)] * m.rows
    witness[k] = Fraction(1)
    if k:
        x = m.entries[:k, :k]
        y = m.entries[:k, k]
        z = _solve(x, y)
        for i in range(k):
            witness[i] = -z[i]
    value = sum(witness[i] * m.entries[i, j] * witness[j] for i in range(m.rows) for j in range(m.rows))
    assert value <= 0
    return witness


def exact_det(m):
    """Determinant by Bareiss elimination with row exchanges on zero pivots."""
    m = RationalMatrix(m)
    if m.rows != m.cols:
        raise DimMismatch('Determinant needs a square matrix, got {}'.format(m.shape))
    work = m.entries.copy()
    n = m.rows
    sign = 1
    previous = Fraction(1)
    for k in range(n - 1):
        if work[k, k] == 0:
            swap = next((i for i in range(k + 1, n) if work[i, k] != 0), None)
            if swap is None:
                return Fraction(0)
            work[[k, swap]] = work[[swap, k]]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i, j] = (work[i, j] * work[k, k] - work[i, k] * work[k, j]) / previous
        previous = work[k, k]
    return sign * Fraction(work[n - 1, n - 1])


def exact_schur(m, split):
    """
    Schur complement ``Z - Yᵀ X⁻¹ Y`` of the leading split-by-split block X of a
    symmetric matrix ``[[X, Y], [Yᵀ, Z]]``.
    """
    m = RationalMatrix(m)
    _require_symmetric(m, 'Matrix')
    if not 0 < split < m.rows:
        raise DimMismatch('Split {} is outside 1..{}'.format(split, m.rows - 1))
    lead = list(range(split))
    rest = list(range(split, m.rows))
    x = m.sub(lead, lead)
    if not exact_pd(x).positive_definite:
        raise LeadingBlockSingularOrNotPD('Leading {0}x{0} block is not positive definite'.format(split))
    y = m.sub(lead, rest)
    z = m.sub(rest, rest)
    solved = RationalMatrix._wrap(_solve(x.entries, y.entries))
    return z - y.T @ solved


def diag_dominant(m):
    m = RationalMatrix(m)
    for i in range(m.rows):
        off = sum(abs(m.entries[i, j]) for j in range(m.cols) if j != i)
        if not (m.entries[i, i] > 0 and m.entries[i, i] > off):
            return False
    return True


_CounterexampleCertificate = namedtuple('CounterexampleCertificate', [
    'pair_id', 'skew_rayleigh', 'even_lower_bound', 'pd_evidence', 'conclusion'])


class CounterexampleCertificate(_CounterexampleCertificate):  # Wrapping for documentation
    """
    Exact proof that the smallest eigenvalue of ``A⊗B + B⊗A`` has a skew-symmetric eigenvector.

    :param str pair_id: Name of the certified pair
    :param fractions.Fraction skew_rayleigh: Rayleigh quotient of ``A⊗B`` at vec(W), W skew
    :param fractions.Fraction even_lower_bound: ``-shift``; every symmetric Rayleigh quotient exceeds it
    :param PDCertificate pd_evidence: Positive definiteness of the compressed shifted form
    :param str conclusion: ``MinEigvecSkew``
    """

    def to_json(self):
        return {'pair_id': self.pair_id,
                'skew_rayleigh': rational_str(self.skew_rayleigh),
                'even_lower_bound': rational_str(self.even_lower_bound),
                'pd_evidence': self.pd_evidence.to_json(),
                'conclusion': self.conclusion}


def certify_skew_extremal(pair_id, a, b, w, shift):
    """
    Certifies, exactly, that the odd spectrum of ``A⊗B + B⊗A`` reaches below the even one:

    * the skew witness gives an odd eigenvalue at most ``2·ρ_W`` with ``ρ_W < -shift``;
    * ``H = compress_shifted_form(A, B, shift)`` is positive definite, so every even
      eigenvalue exceeds ``-2·shift``.

    :raises CertificateFails: with ``stage`` set to ``skew_rayleigh`` or ``pd_evidence``
    """
    a, b, w = RationalMatrix(a), RationalMatrix(b), RationalMatrix(w)
    if not (a.is_symmetric() and b.is_symmetric()):
        raise PreconditionFail('Unsupported: exact certification covers symmetric pairs only')
    if not w.is_skew():
        raise NotSymmetric('The witness must be exactly skew-symmetric')
    shift = to_rational(shift)
    rho = exact_rayleigh(a, b, w)
    logging.info('{}: skew Rayleigh quotient {} against bound {}'.format(pair_id, rational_str(rho),
                                                                         rational_str(-shift)))
    if not rho < -shift:
        raise CertificateFails('Skew Rayleigh quotient {} is not below {}'.format(
            rational_str(rho), rational_str(-shift)), stage='skew_rayleigh')
    evidence = exact_pd(compress_shifted_form(a, b, shift))
    if not evidence.positive_definite:
        raise CertificateFails('Shifted form is not positive definite (pivot {})'.format(
            rational_str(evidence.pivot_chain[-1])), stage='pd_evidence')
    return CounterexampleCertificate(pair_id, rho, -shift, evidence, MIN_EIGVEC_SKEW)


_SchurChain = namedtuple('SchurChain', [
    'display', 'leading_block', 'leading_det', 'scaled_schur', 'reduced', 'checks'])


class SchurChain(_SchurChain):  # Wrapping for documentation
    """
    Integer Schur-complement chain on the displayed shifted form.

    :param RationalMatrix display: The displayed form ``Lᵀ(A⊗B)L + 2·shift·I``
    :param RationalMatrix leading_block: Its leading ``split``-by-``split`` block X
    :param fractions.Fraction leading_det: det(X)
    :param RationalMatrix scaled_schur: ``det(X)·(Z - Yᵀ X⁻¹ Y)`` on the coupled block
    :param RationalMatrix reduced: ``u_last·U[:-1,:-1] - u uᵀ`` for the scaled Schur complement U
    :param dict checks: Named boolean checks along the chain
    """

    @property
    def holds(self):
        return all(self.checks.values())


def schur_chain(a, b, shift, split=5):
    """
    Replays a positive-definiteness argument for the displayed form on integers:
    the coupled variables are those with a nonzero off-diagonal entry, the leading block
    is shown diagonally dominant, its Schur complement is scaled by det(X) to integers,
    the last variable of that complement is eliminated (scaled by its diagonal entry),
    and the result is shown positive definite through its leading minors.
    """
    display = display_shifted_form(a, b, shift)
    d = display.rows
    coupled = [i for i in range(d) if any(display.entries[i, j] != 0 for j in range(d) if j != i)]
    free = [i for i in range(d) if i not in coupled]
    checks = {'decoupled_diagonal_positive': all(display.entries[i, i] > 0 for i in free)}
    if coupled != list(range(len(coupled))):
        raise PreconditionFail('Coupled variables must lead the form')
    core = display.sub(coupled, coupled)
    lead = core.sub(list(range(split)), list(range(split)))
    checks['leading_block_diag_dominant'] = diag_dominant(lead)
    det_lead = exact_det(lead)
    checks['leading_det_positive'] = det_lead > 0
    scaled = det_lead * exact_schur(core, split)
    last = scaled.rows - 1
    order = [last] + list(range(last))
    reduced = scaled.entries[last, last] * exact_schur(scaled.sub(order, order), 1)
    checks['schur_leading_diag_dominant'] = diag_dominant(scaled.sub(list(range(last)), list(range(last))))
    checks['last_pivot_positive'] = scaled.entries[last, last] > 0
    checks['reduced_positive_definite'] = exact_pd(reduced).positive_definite
    return SchurChain(display, lead, det_lead, scaled, reduced, checks)

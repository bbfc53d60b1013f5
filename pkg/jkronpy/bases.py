"""
Orthonormal bases of the symmetric and skew-symmetric n²-vectors and their
compressions svec/skvec.

Column conventions: ``Q`` walks the lower triangle column by column
(u11, u21, ..., un1, u22, ...), a diagonal pair contributing ``e_i ⊗ e_i`` and an
off-diagonal pair ``(e_i ⊗ e_j + e_j ⊗ e_i)/√2``. ``Q̃`` walks the pairs i < j in
lexicographic order with columns ``(e_i ⊗ e_j - e_j ⊗ e_i)/√2``. The off-diagonal
columns of ``Q`` therefore appear in the same order as the columns of ``Q̃``.
"""
import math
from collections import namedtuple

import numpy as np

from jkronpy.dense import sym_eigen
from jkronpy.errors import BadLength, DimMismatch, NotInvolutory, NotSymmetric
from jkronpy.utils import (SYMMETRY_TOL, as_matrix, as_square, frobenius, is_skew, is_symmetric,
                           lower_pairs, strict_pairs)

SQRT2 = math.sqrt(2.0)
INVOLUTION_TOL = 1e-10


_ParityBasis = namedtuple('ParityBasis', ['n', 'sym_basis', 'skew_basis', 'sym_order', 'pair_order'])


class ParityBasis(_ParityBasis):  # Wrapping for documentation
    """
    :param int n: Matrix dimension
    :param numpy.ndarray sym_basis: n²-by-n(n+1)/2 matrix Q, orthonormal symmetric vectors
    :param numpy.ndarray skew_basis: n²-by-n(n-1)/2 matrix Q̃, orthonormal skew-symmetric vectors
    :param list sym_order: Index pairs (i, j), i >= j, labelling the columns of Q
    :param list pair_order: Index pairs (i, j), i < j, labelling the columns of Q̃
    """

    @property
    def offdiag_columns(self):
        """Positions of the off-diagonal columns of Q, listed in ``pair_order``."""
        position = {(j, i): k for k, (i, j) in enumerate(self.sym_order) if i != j}
        return [position[pair] for pair in self.pair_order]


_InvolutionBasis = namedtuple('InvolutionBasis', ['p', 'theta', 'theta_tilde', 's', 't'])


class InvolutionBasis(_InvolutionBasis):  # Wrapping for documentation
    """
    Bases of the +1 and -1 eigenspaces of a symmetric involution P.

    :param numpy.ndarray p: The involution
    :param numpy.ndarray theta: Orthonormal columns with ``P Θ = Θ``
    :param numpy.ndarray theta_tilde: Orthonormal columns with ``P Θ̃ = -Θ̃``
    :param int s: Dimension of the +1 eigenspace
    :param int t: Dimension of the -1 eigenspace
    """
    pass


_BASES = dict()


def parity_basis(n):
    if n < 1:
        raise DimMismatch('Dimension must be positive, got {}'.format(n))
    if n in _BASES:
        return _BASES[n]
    sym_order = lower_pairs(n)
    pair_order = strict_pairs(n)
    q = np.zeros((n * n, len(sym_order)))
    for k, (i, j) in enumerate(sym_order):
        if i == j:
            q[i * n + i, k] = 1.0
        else:
            q[i * n + j, k] = q[j * n + i, k] = 1.0 / SQRT2
    q_tilde = np.zeros((n * n, len(pair_order)))
    for k, (i, j) in enumerate(pair_order):
        q_tilde[i * n + j, k] = 1.0 / SQRT2
        q_tilde[j * n + i, k] = -1.0 / SQRT2
    q.setflags(write=False)
    q_tilde.setflags(write=False)
    basis = ParityBasis(n, q, q_tilde, sym_order, pair_order)
    _BASES[n] = basis
    return basis


def involution_basis(p):
    p = as_square(p, 'p')
    big_n = p.shape[0]
    n = math.isqrt(big_n)
    if n * n != big_n:
        raise DimMismatch('Involution must act on n²-vectors, got size {}'.format(big_n))
    if not is_symmetric(p, INVOLUTION_TOL):
        raise NotSymmetric('Involution is not symmetric')
    if np.max(np.abs(p @ p - np.eye(big_n))) > INVOLUTION_TOL * (1 + frobenius(p)):
        raise NotInvolutory('P @ P differs from the identity')
    decomposition = sym_eigen(p)
    plus = decomposition.values >= 0
    theta = decomposition.vectors[:, plus]
    theta_tilde = decomposition.vectors[:, ~plus]
    return InvolutionBasis(p, theta, theta_tilde, theta.shape[1], theta_tilde.shape[1])


def _dimension_from(length, skew):
    # s = n(n+1)/2 or t = n(n-1)/2
    root = math.isqrt(8 * length + 1)
    if root * root != 8 * length + 1:
        return None
    return (root + 1) // 2 if skew else (root - 1) // 2


def svec(x):
    x = as_square(x, 'x')
    if not is_symmetric(x, SYMMETRY_TOL):
        raise NotSymmetric('svec expects a symmetric matrix')
    n = x.shape[0]
    return np.array([x[i, j] if i == j else SQRT2 * x[i, j] for i, j in lower_pairs(n)])


def smat(v, n=None):
    v = np.asarray(v, dtype=float).reshape(-1)
    n = n or _dimension_from(v.size, skew=False)
    if not n or v.size != n * (n + 1) // 2:
        raise BadLength('Length {} is not n(n+1)/2 for a valid n'.format(v.size))
    x = np.zeros((n, n))
    for value, (i, j) in zip(v, lower_pairs(n)):
        if i == j:
            x[i, i] = value
        else:
            x[i, j] = x[j, i] = value / SQRT2
    return x


def skvec(w):
    w = as_square(w, 'w')
    if not is_skew(w, SYMMETRY_TOL):
        raise NotSymmetric('skvec expects a skew-symmetric matrix')
    n = w.shape[0]
    return np.array([(w[j, i] - w[i, j]) / SQRT2 for i, j in strict_pairs(n)])


def skmat(v, n=None):
    v = np.asarray(v, dtype=float).reshape(-1)
    n = n or _dimension_from(v.size, skew=True)
    if not n or v.size != n * (n - 1) // 2:
        raise BadLength('Length {} is not n(n-1)/2 for a valid n'.format(v.size))
    w = np.zeros((n, n))
    for value, (i, j) in zip(v, strict_pairs(n)):
        w[i, j] = -value / SQRT2
        w[j, i] = value / SQRT2
    return w


def random_involution(n, rng):
    """A symmetric involution ``V diag(±1) Vᵀ`` on n²-vectors with a random orthogonal V."""
    size = n * n
    v, _ = np.linalg.qr(rng.standard_normal((size, size)))
    signs = rng.choice([-1.0, 1.0], size=size)
    p = (v * signs) @ v.T
    return as_matrix((p + p.T) / 2.0)

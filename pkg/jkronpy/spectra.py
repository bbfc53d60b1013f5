"""
Jordan-Kronecker products ``A⊗B + B⊗A`` and their even/odd spectra.

Eigenvalues are computed in the compressed symmetric and skew-symmetric
coordinates, so the parity of every reported eigenvector is structural and never
read off a possibly mixed eigenvector of the full product.
"""
import logging
import math
from collections import namedtuple

import numpy as np

from jkronpy import PARITY_TOL
from jkronpy.bases import parity_basis
from jkronpy.dense import commutation_matrix, kron, rayleigh, sym_eigen, vec
from jkronpy.errors import DimMismatch, PreconditionFail, ZeroVector
from jkronpy.utils import RANK_CUTOFF, as_square, frobenius, symmetry_class

EVEN = 'even'
ODD = 'odd'
MIXED = 'mixed'

LIE_PAIRING_TOL = 1e-8


_SpectrumSplit = namedtuple('SpectrumSplit', [
    'even_values', 'odd_values', 'even_vectors', 'odd_vectors', 'source_dims',
    'classification_tol', 'block_residual', 'scale', 'symmetry'])
_SpectrumSplit.__new__.__defaults__ = (PARITY_TOL, 0.0, 0.0, 'symmetric')


class SpectrumSplit(_SpectrumSplit):  # Wrapping for documentation
    """
    Even and odd eigenvalues of a Jordan-Kronecker product with their eigenvectors.

    :param numpy.ndarray even_values: n(n+1)/2 values, descending
    :param numpy.ndarray odd_values: n(n-1)/2 values, descending
    :param numpy.ndarray even_vectors: Symmetric n²-vectors as columns, paired with ``even_values``
    :param numpy.ndarray odd_vectors: Skew-symmetric n²-vectors as columns, paired with ``odd_values``
    :param int source_dims: n
    :param float classification_tol: Parity tolerance used when the split was built
    :param float block_residual: Frobenius norm of the coupling block between the two subspaces
    :param float scale: Frobenius norm of the full product, used to scale verdict tolerances
    :param str symmetry: ``symmetric`` or ``skew``, the class of the input pair
    """

    @property
    def all_values(self):
        return np.sort(np.concatenate([self.even_values, self.odd_values]))[::-1]

    @property
    def min_parity(self):
        return _extreme_parity(self.even_values, self.odd_values, lowest=True)

    @property
    def max_parity(self):
        return _extreme_parity(self.even_values, self.odd_values, lowest=False)


def _extreme_parity(even, odd, lowest):
    if odd.size == 0:
        return EVEN
    if lowest:
        return ODD if odd[-1] < even[-1] else EVEN
    return ODD if odd[0] > even[0] else EVEN


_LieSpectrum = namedtuple('LieSpectrum', ['paired', 'null_sym', 'kernel_dim', 'pairing_residual'])


class LieSpectrum(_LieSpectrum):  # Wrapping for documentation
    """
    :param list paired: ``(λ, v, Tv)`` triples with λ > 0, where ``(-λ, Tv)`` is also an eigenpair
    :param numpy.ndarray null_sym: Orthonormal symmetric kernel vectors as columns
    :param int kernel_dim: Observed dimension of the whole kernel
    :param float pairing_residual: max over triples of ``||L Tv + λ Tv||``
    """
    pass


def _pair(a, b):
    a = as_square(a, 'a')
    b = as_square(b, 'b')
    symmetry = symmetry_class(a, b)
    return a, b, symmetry


def _symmetrized(m):
    return (m + m.T) / 2.0


def jordan_kron(a, b):
    a, b, _ = _pair(a, b)
    return kron(a, b) + kron(b, a)


def sym_kron(a, b):
    a, b, _ = _pair(a, b)
    q = parity_basis(a.shape[0]).sym_basis
    return _symmetrized(q.T @ kron(a, b) @ q)


def skew_kron(a, b):
    a, b, _ = _pair(a, b)
    q_tilde = parity_basis(a.shape[0]).skew_basis
    return _symmetrized(q_tilde.T @ kron(a, b) @ q_tilde)


def spectrum_split(a, b, tol=None, eigen_tol=None, **solver_options):
    """
    Splits the spectrum of ``C = A⊗B + B⊗A`` into even and odd parts.

    :param numpy.ndarray a: n-by-n matrix
    :param numpy.ndarray b: n-by-n matrix, same symmetry class as ``a``
    :param float tol: Parity tolerance recorded on the split, defaults to JKRONPY_PARITY_TOL
    :param float eigen_tol: Relative off-diagonal threshold for the eigensolver, defaults to JKRONPY_EIGEN_TOL
    :return: :class:`SpectrumSplit`
    """
    a, b, symmetry = _pair(a, b)
    n = a.shape[0]
    basis = parity_basis(n)
    c = kron(a, b) + kron(b, a)
    ab = kron(a, b)
    even = sym_eigen(_symmetrized(basis.sym_basis.T @ ab @ basis.sym_basis), tol=eigen_tol, **solver_options)
    if n > 1:
        odd = sym_eigen(_symmetrized(basis.skew_basis.T @ ab @ basis.skew_basis), tol=eigen_tol, **solver_options)
        odd_values, odd_vectors = 2.0 * odd.values, basis.skew_basis @ odd.vectors
    else:
        odd_values, odd_vectors = np.zeros(0), np.zeros((1, 0))
    return SpectrumSplit(
        even_values=2.0 * even.values,
        odd_values=odd_values,
        even_vectors=basis.sym_basis @ even.vectors,
        odd_vectors=odd_vectors,
        source_dims=n,
        classification_tol=PARITY_TOL if tol is None else tol,
        block_residual=frobenius(basis.sym_basis.T @ c @ basis.skew_basis),
        scale=frobenius(c),
        symmetry=symmetry,
    )


def generalized_jordan(a, b, basis, **solver_options):
    """
    The generalized product ``A⊗B + P(A⊗B)P`` for a symmetric involution P, split along
    the eigenspaces of P.

    :param numpy.ndarray a: n-by-n matrix
    :param numpy.ndarray b: n-by-n matrix, same symmetry class as ``a``
    :param bases.InvolutionBasis basis: Eigenspace bases of P acting on n²-vectors
    :return: The product and its :class:`SpectrumSplit`
    """
    a, b, symmetry = _pair(a, b)
    n = a.shape[0]
    if basis.p.shape[0] != n * n:
        raise DimMismatch('Involution of size {} does not act on {}²-vectors'.format(basis.p.shape[0], n))
    ab = kron(a, b)
    c = _symmetrized(ab + basis.p @ ab @ basis.p)
    if basis.s:
        even = sym_eigen(_symmetrized(basis.theta.T @ ab @ basis.theta), **solver_options)
        even_values, even_vectors = 2.0 * even.values, basis.theta @ even.vectors
    else:
        even_values, even_vectors = np.zeros(0), np.zeros((n * n, 0))
    if basis.t:
        odd = sym_eigen(_symmetrized(basis.theta_tilde.T @ ab @ basis.theta_tilde), **solver_options)
        odd_values, odd_vectors = 2.0 * odd.values, basis.theta_tilde @ odd.vectors
    else:
        odd_values, odd_vectors = np.zeros(0), np.zeros((n * n, 0))
    split = SpectrumSplit(
        even_values=even_values,
        odd_values=odd_values,
        even_vectors=even_vectors,
        odd_vectors=odd_vectors,
        source_dims=n,
        classification_tol=PARITY_TOL,
        block_residual=frobenius(basis.theta.T @ c @ basis.theta_tilde),
        scale=frobenius(c),
        symmetry=symmetry,
    )
    return c, split


def lie_kron(a, b):
    a, b, _ = _pair(a, b)
    return kron(a, b) - kron(b, a)


def lie_spectrum(a, b, tol=LIE_PAIRING_TOL, **solver_options):
    """
    Eigenstructure of the Lie-Kronecker product ``L = A⊗B - B⊗A``: nonzero eigenvalues
    come in pairs ``±λ`` whose eigenvectors are exchanged by T, and the kernel contains
    symmetric vectors.
    """
    a, b, _ = _pair(a, b)
    n = a.shape[0]
    lie = kron(a, b) - kron(b, a)
    scale = frobenius(lie)
    t = commutation_matrix(n)
    decomposition = sym_eigen(lie, **solver_options)
    values, vectors = decomposition.values, decomposition.vectors
    cutoff = tol * scale

    positive = [k for k in range(values.size) if values[k] > cutoff]
    negative = sorted((k for k in range(values.size) if values[k] < -cutoff), key=lambda k: values[k])
    if len(positive) != len(negative):
        logging.warning('Lie spectrum has {} positive but {} negative eigenvalues'.format(
            len(positive), len(negative)))
    paired = []
    worst = 0.0
    for k, partner in zip(positive, negative):
        if abs(values[k] + values[partner]) > cutoff:
            logging.warning('Eigenvalue {:.6g} has no partner at {:.6g}'.format(values[k], -values[k]))
        v = vectors[:, k]
        tv = t @ v
        worst = max(worst, float(np.linalg.norm(lie @ tv + values[k] * tv)))
        paired.append((float(values[k]), v, tv))

    kernel = vectors[:, np.abs(values) <= cutoff]
    q = parity_basis(n).sym_basis
    projected = q @ (q.T @ kernel)
    if projected.shape[1]:
        left, singular, _ = np.linalg.svd(projected, full_matrices=False)
        null_sym = left[:, singular > 1e-6]
    else:
        null_sym = np.zeros((n * n, 0))
    return LieSpectrum(paired, null_sym, kernel.shape[1], worst)


def classify_parity(v, tol=None):
    """
    Classifies an n²-vector as ``even`` (Tv = v), ``odd`` (Tv = -v) or ``mixed``.
    """
    tol = PARITY_TOL if tol is None else tol
    v = np.asarray(v, dtype=float).reshape(-1)
    n = math.isqrt(v.size)
    if n * n != v.size:
        raise DimMismatch('Vector length {} is not a perfect square'.format(v.size))
    norm = float(np.linalg.norm(v))
    if norm == 0:
        raise ZeroVector('Cannot classify the parity of the zero vector')
    tv = v.reshape(n, n).T.reshape(-1)
    if np.linalg.norm(tv - v) <= tol * norm:
        return EVEN
    if np.linalg.norm(tv + v) <= tol * norm:
        return ODD
    return MIXED


def singular_witness(a, b):
    """
    For a pair where A or B is singular, returns ``(vec(v vᵀ), q)`` for a unit null
    vector v; q is the Rayleigh quotient of ``A⊗B`` at that symmetric vector, which
    vanishes, so the smallest even eigenvalue is at most zero.
    """
    a, b, symmetry = _pair(a, b)
    if symmetry != 'symmetric':
        raise PreconditionFail('The null-vector witness needs a symmetric pair')
    for m in (b, a):
        decomposition = sym_eigen(m)
        magnitude = np.abs(decomposition.values)
        k = int(np.argmin(magnitude))
        if magnitude[k] <= RANK_CUTOFF * max(float(magnitude.max()), 1.0):
            v = decomposition.vectors[:, k]
            witness = vec(np.outer(v, v))
            return witness, rayleigh(kron(a, b), witness)
    raise PreconditionFail('Neither matrix of the pair is singular')


def hp_operator(p):
    """Matrix of ``X -> P X P⁻¹ + P⁻¹ X P`` on vectorized X, for symmetric nonsingular P."""
    p = as_square(p, 'p')
    p_inv = np.linalg.inv(p)
    return jordan_kron(p, _symmetrized(p_inv))


def apply_hp(p, x):
    p = as_square(p, 'p')
    p_inv = np.linalg.inv(p)
    return p @ x @ p_inv + p_inv @ x @ p

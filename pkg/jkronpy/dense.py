"""
Dense real matrix kernel: Kronecker products, vec/mat, the commutation matrix,
Rayleigh quotients and a cyclic Jacobi eigensolver for symmetric matrices.

Matrices are ``numpy`` float arrays; vectors are 1-d arrays. ``vec`` stacks
columns, so ``vec(X)[i + n*j] == X[i, j]``.
"""
import logging
from collections import namedtuple

import numpy as np

from jkronpy import EIGEN_SOLVER, EIGEN_TOL, MAX_SWEEPS
from jkronpy.errors import DimMismatch, NoConvergence, NotSymmetric, ZeroVector
from jkronpy.utils import SYMMETRY_TOL, as_matrix, as_square, asymmetry, frobenius


_EigenDecomposition = namedtuple('EigenDecomposition', ['values', 'vectors', 'residual', 'sweeps'])
_EigenDecomposition.__new__.__defaults__ = (0,)


class EigenDecomposition(_EigenDecomposition):  # Wrapping for documentation
    """
    A namedtuple holding the spectral decomposition of a symmetric matrix.

    :param numpy.ndarray values: Eigenvalues sorted in descending order
    :param numpy.ndarray vectors: Orthonormal eigenvectors; column ``i`` pairs with ``values[i]``
    :param float residual: max over i of ``||M v_i - values[i] v_i||``
    :param int sweeps: Number of Jacobi sweeps used (0 for the LAPACK path)
    """
    pass


def kron(a, b):
    return np.kron(as_matrix(a, 'a'), as_matrix(b, 'b'))


def vec(x):
    return as_matrix(x).reshape(-1, order='F')


def mat(v, rows, cols):
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.size != rows * cols:
        raise DimMismatch('Cannot reshape a vector of length {} into {}x{}'.format(v.size, rows, cols))
    return v.reshape(rows, cols, order='F')


def commutation_matrix(n):
    """
    The n²-by-n² permutation T with ``T @ vec(X) == vec(X.T)`` for every n-by-n X.

    :param int n: Matrix dimension, at least 1
    """
    if n < 1:
        raise DimMismatch('Dimension must be positive, got {}'.format(n))
    t = np.zeros((n * n, n * n))
    i, j = np.meshgrid(np.arange(n), np.arange(n), indexing='ij')
    t[(i + n * j).ravel(), (j + n * i).ravel()] = 1.0
    return t


def rayleigh(m, v):
    m = as_square(m)
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.size != m.shape[0]:
        raise DimMismatch('Vector of length {} does not match a {}x{} matrix'.format(v.size, *m.shape))
    vv = float(v @ v)
    if vv == 0:
        raise ZeroVector('Rayleigh quotient of the zero vector is undefined')
    return float(v @ m @ v) / vv


def _round_robin(m):
    """
    Yields rounds of disjoint index pairs covering every pair (p, q) exactly once
    per sweep (circle method). Odd sizes get a phantom index that is dropped.
    """
    size = m + (m % 2)
    ring = list(range(size))
    for _ in range(size - 1):
        pairs = []
        for k in range(size // 2):
            p, q = ring[k], ring[size - 1 - k]
            if p < m and q < m:
                pairs.append((min(p, q), max(p, q)))
        yield pairs
        ring = [ring[0], ring[-1]] + ring[1:-1]


def _off_norm(a):
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _jacobi(m, tol, max_sweeps):
    n = m.shape[0]
    a = m.copy()
    v = np.eye(n)
    threshold = tol * frobenius(m)
    # Entries below skip add less than threshold**2 to the off-diagonal norm.
    skip = threshold / max(n, 1)
    schedule = [np.array(pairs, dtype=int).reshape(-1, 2) for pairs in _round_robin(n)]
    sweeps = 0
    while _off_norm(a) > threshold:
        if sweeps == max_sweeps:
            raise NoConvergence('Jacobi did not converge in {} sweeps (off-diagonal norm {:.3e})'.format(
                max_sweeps, _off_norm(a)))
        for pairs in schedule:
            p, q = pairs[:, 0], pairs[:, 1]
            apq = a[p, q]
            active = np.abs(apq) > skip
            if not np.any(active):
                continue
            p, q, apq = p[active], q[active], apq[active]
            tau = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
            c = 1.0 / np.hypot(1.0, t)
            s = t * c
            rot = np.eye(n)
            rot[p, p] = c
            rot[q, q] = c
            rot[p, q] = s
            rot[q, p] = -s
            a = rot.T @ a @ rot
            a = (a + a.T) / 2.0
            v = v @ rot
        sweeps += 1
    return np.diag(a).copy(), v, sweeps


def sym_eigen(m, tol=None, max_sweeps=None, solver=None):
    """
    Spectral decomposition of a real symmetric matrix.

    :param numpy.ndarray m: A square matrix, symmetric to 1e-12 relative
    :param float tol: Off-diagonal Frobenius threshold relative to ``||m||_F``.
                      Defaults to JKRONPY_EIGEN_TOL.
    :param int max_sweeps: Jacobi sweep limit, defaults to JKRONPY_MAX_SWEEPS
    :param str solver: ``jacobi`` (cyclic round-robin Jacobi) or ``lapack`` (numpy.linalg.eigh).
                       Defaults to JKRONPY_EIGEN_SOLVER.
    :return: :class:`EigenDecomposition` with values in descending order
    """
    m = as_square(m)
    tol = EIGEN_TOL if tol is None else tol
    max_sweeps = MAX_SWEEPS if max_sweeps is None else max_sweeps
    solver = solver or EIGEN_SOLVER
    gap = asymmetry(m)
    if gap > SYMMETRY_TOL * (1 + frobenius(m)):
        raise NotSymmetric('Matrix asymmetry {:.3e} exceeds tolerance'.format(gap))
    if solver == 'lapack':
        values, vectors = np.linalg.eigh(m)
        sweeps = 0
    elif solver == 'jacobi':
        values, vectors, sweeps = _jacobi(m, tol, max_sweeps)
    else:
        raise ValueError('Unknown eigensolver {}'.format(solver))
    order = np.argsort(-values, kind='stable')
    values = values[order]
    vectors = vectors[:, order]
    residual = float(np.max(np.linalg.norm(m @ vectors - vectors * values, axis=0)))
    logging.debug('{} eigensolve of {}x{} matrix: {} sweeps, residual {:.2e}'.format(
        solver, m.shape[0], m.shape[1], sweeps, residual))
    return EigenDecomposition(values, vectors, residual, sweeps)


def sym_eigvals(m, **kwargs):
    return sym_eigen(m, **kwargs).values

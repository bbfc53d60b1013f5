import numpy as np

from jkronpy.errors import DimMismatch, InputError, MixedSymmetryClass

SYMMETRY_TOL = 1e-12
RANK_CUTOFF = 1e-9


def as_matrix(x, name='matrix'):
    m = np.array(x, dtype=float)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2 or 0 in m.shape:
        raise DimMismatch('{} must be a nonempty 2-d array, got shape {}'.format(name, m.shape))
    if not np.all(np.isfinite(m)):
        raise InputError('{} has non-finite entries'.format(name))
    return m


def as_square(x, name='matrix'):
    m = as_matrix(x, name)
    if m.shape[0] != m.shape[1]:
        raise DimMismatch('{} must be square, got shape {}'.format(name, m.shape))
    return m


def frobenius(m):
    return float(np.linalg.norm(m, 'fro'))


def asymmetry(m):
    return float(np.max(np.abs(m - m.T))) if m.size else 0.0


def is_symmetric(m, tol=SYMMETRY_TOL):
    return m.shape[0] == m.shape[1] and asymmetry(m) <= tol * (1 + frobenius(m))


def is_skew(m, tol=SYMMETRY_TOL):
    return m.shape[0] == m.shape[1] and float(np.max(np.abs(m + m.T))) <= tol * (1 + frobenius(m))


def symmetry_class(a, b, tol=SYMMETRY_TOL):
    """
    Returns ``'symmetric'`` or ``'skew'`` for a pair of square matrices of one size.

    Raises :class:`DimMismatch` for differing sizes and :class:`MixedSymmetryClass` when
    the two matrices are not both symmetric or both skew-symmetric. The zero matrix counts
    as symmetric.
    """
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise DimMismatch('Expected two square matrices of one size, got {} and {}'.format(a.shape, b.shape))
    if is_symmetric(a, tol) and is_symmetric(b, tol):
        return 'symmetric'
    if is_skew(a, tol) and is_skew(b, tol):
        return 'skew'
    raise MixedSymmetryClass('Pair must be both symmetric or both skew-symmetric')


def numerical_rank(m, cutoff=RANK_CUTOFF):
    sv = np.linalg.svd(m, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > cutoff * sv[0]))


def sym_size(n):
    return n * (n + 1) // 2


def skew_size(n):
    return n * (n - 1) // 2


def lower_pairs(n):
    """Index pairs (i, j), i >= j, of the lower triangle in column-major order."""
    return [(i, j) for j in range(n) for i in range(j, n)]


def strict_pairs(n):
    """Index pairs (i, j), i < j, in lexicographic order."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]

"""
Checkers for the weak, full and strong interlacing of the odd eigenvalues of a
Jordan-Kronecker product with its even eigenvalues, plus the tools used to
establish interlacing structurally: the sign-conjugation embedding of the skew
compression into the symmetric one, extreme symmetric traces, the commuting-pair
eigenvalue formula and the reduction to diagonal B.
"""
import logging
from collections import namedtuple

import networkx as nx
import numpy as np

from jkronpy import INTERLACE_TOL
from jkronpy.dense import sym_eigen
from jkronpy.errors import NoEmbedding, NotCommuting, PreconditionFail
from jkronpy.bases import parity_basis
from jkronpy.spectra import EVEN, ODD, skew_kron, sym_kron
from jkronpy.utils import as_square, frobenius, symmetry_class

EMBEDDING_TOL = 1e-10
COMMUTING_TOL = 1e-8

WEAK = 'weak'
INTERLACING = 'interlacing'
STRONG = 'strong'
PROPERTIES = (WEAK, INTERLACING, STRONG)


_WeakVerdict = namedtuple('WeakVerdict', ['holds', 'lhs_min_even', 'rhs_min_odd', 'lhs_max_odd', 'rhs_max_even'])


class WeakVerdict(_WeakVerdict):  # Wrapping for documentation
    """
    :param bool holds: Whether min(even) <= min(odd) and max(odd) <= max(even), up to tol
    :param float lhs_min_even: Smallest even eigenvalue
    :param float rhs_min_odd: Smallest odd eigenvalue (None without odd eigenvalues)
    :param float lhs_max_odd: Largest odd eigenvalue (None without odd eigenvalues)
    :param float rhs_max_even: Largest even eigenvalue
    """

    @property
    def min_side(self):
        return self.rhs_min_odd is None or self.lhs_min_even <= self.rhs_min_odd

    @property
    def max_side(self):
        return self.lhs_max_odd is None or self.lhs_max_odd <= self.rhs_max_even


_FullVerdict = namedtuple('FullVerdict', ['holds', 'first_violation'])
_FullVerdict.__new__.__defaults__ = (None,)


class FullVerdict(_FullVerdict):  # Wrapping for documentation
    """
    :param bool holds: Whether ``λ[s-t+i] <= β[i] <= λ[i]`` for every i, up to tol
    :param tuple first_violation: ``(i, λ[s-t+i], β[i], λ[i])`` with 1-based i, or None
    """
    pass


_StrongVerdict = namedtuple('StrongVerdict', ['holds', 'first_violation'])
_StrongVerdict.__new__.__defaults__ = (None,)


class StrongVerdict(_StrongVerdict):  # Wrapping for documentation
    """
    :param bool holds: Whether every odd eigenvalue in the merged spectrum has even neighbours
    :param int first_violation: 1-based position in the merged spectrum (even-before-odd
                                within ties) of the first odd entry without even neighbours
    """
    pass


_InterlaceReport = namedtuple('InterlaceReport', ['weak', 'full', 'strong', 'tol'])


class InterlaceReport(_InterlaceReport):  # Wrapping for documentation
    """
    Verdicts of the three interlacing properties for one :class:`spectra.SpectrumSplit`.

    :param WeakVerdict weak:
    :param FullVerdict full:
    :param StrongVerdict strong:
    :param float tol: Absolute tolerance the verdicts were computed with
    """

    def verdict(self, prop):
        return getattr(self, 'full' if prop == INTERLACING else prop).holds

    def to_dict(self):
        return {
            'weak': dict(self.weak._asdict()),
            'full': {'holds': self.full.holds,
                     'first_violation': list(self.full.first_violation) if self.full.first_violation else None},
            'strong': dict(self.strong._asdict()),
            'tol': self.tol,
        }


def default_tol(split, factor=None):
    """
    Absolute tolerance ``factor * ||C||_F``, the factor defaulting to JKRONPY_INTERLACE_TOL.
    There is no floor, so rescaling a pair leaves its verdicts unchanged.
    """
    factor = INTERLACE_TOL if factor is None else factor
    return factor * split.scale


def check_weak(split, tol=None):
    tol = default_tol(split) if tol is None else tol
    even, odd = split.even_values, split.odd_values
    if odd.size == 0:
        return WeakVerdict(True, float(even[-1]), None, None, float(even[0]))
    holds = bool(even[-1] <= odd[-1] + tol and odd[0] <= even[0] + tol)
    return WeakVerdict(holds, float(even[-1]), float(odd[-1]), float(odd[0]), float(even[0]))


def check_interlacing(split, tol=None):
    tol = default_tol(split) if tol is None else tol
    even, odd = split.even_values, split.odd_values
    s, t = even.size, odd.size
    for k in range(t):
        lower, beta, upper = even[s - t + k], odd[k], even[k]
        if not (lower - tol <= beta <= upper + tol):
            return FullVerdict(False, (k + 1, float(lower), float(beta), float(upper)))
    return FullVerdict(True)


def _tie_clusters(split, tol):
    tagged = sorted([(float(v), 0) for v in split.even_values] + [(float(v), 1) for v in split.odd_values],
                    key=lambda item: (-item[0], item[1]))
    clusters = []
    previous = None
    for value, tag in tagged:
        if previous is None or previous - value > tol:
            clusters.append([0, 0])
        clusters[-1][tag] += 1
        previous = value
    return clusters


def _cluster_arrangements(evens, odds):
    """(first, last) parities for which a tie cluster can be ordered without adjacent odd entries."""
    options = []
    for first in (EVEN, ODD):
        for last in (EVEN, ODD):
            ends = (first == ODD) + (last == ODD)
            if odds == 0:
                ok = first == EVEN and last == EVEN
            elif evens == 0:
                ok = odds == 1 and first == ODD and last == ODD
            else:
                ok = ends <= odds and odds - ends <= evens - 1
            if ok:
                options.append((first, last))
    return options


def check_strong(split, tol=None):
    """
    Decides the strong property over every ordering of tied eigenvalues: it holds when
    the merged descending spectrum can be arranged with even entries at both ends and no
    two odd entries next to each other. A violation is reported at its position in the
    canonical arrangement, where ties put even entries first.
    """
    tol = default_tol(split) if tol is None else tol
    clusters = _tie_clusters(split, tol)
    reachable = {None}
    for evens, odds in clusters:
        step = set()
        for previous in reachable:
            for first, last in _cluster_arrangements(evens, odds):
                if first == ODD and previous in (None, ODD):
                    continue
                step.add(last)
        reachable = step
    if EVEN in reachable:
        return StrongVerdict(True)
    canonical = []
    for evens, odds in clusters:
        canonical.extend([EVEN] * evens + [ODD] * odds)
    for k, parity in enumerate(canonical):
        if parity != ODD:
            continue
        before = canonical[k - 1] if k > 0 else None
        after = canonical[k + 1] if k + 1 < len(canonical) else None
        if before != EVEN or after != EVEN:
            return StrongVerdict(False, k + 1)
    return StrongVerdict(False, len(canonical))


def interlace_report(split, tol=None):
    tol = default_tol(split) if tol is None else tol
    return InterlaceReport(check_weak(split, tol), check_interlacing(split, tol), check_strong(split, tol), tol)


_Embedding = namedtuple('Embedding', ['signs', 'method', 'residual'])


class Embedding(_Embedding):  # Wrapping for documentation
    """
    :param numpy.ndarray signs: σ in {±1}^t with ``D_σ (A ⊗̃ B) D_σ`` equal to the off-diagonal
                                principal submatrix of the symmetric compression
    :param str method: ``phi`` when the fixed pattern (-1 on the first n-1 pairs) works,
                       ``sign-graph`` when the signs had to be solved for
    :param float residual: Largest entrywise difference after conjugation
    """
    pass


def _is_diagonal(m):
    return not np.any(m - np.diag(np.diag(m)))


def embed_skew_in_sym(a, b, tol=EMBEDDING_TOL):
    """
    Looks for signs σ making the sign-conjugated skew compression of (a, b) a principal
    submatrix of the symmetric compression. Such an embedding forces the odd eigenvalues
    to interlace the even ones.

    The conjugation condition ``σ_k σ_l K[k, l] = S[k, l]`` is a 2-colouring problem on the
    graph whose edges join the pairs (k, l) with nonzero entries; it is solved exactly,
    so a :class:`NoEmbedding` answer covers every sign vector.

    :param numpy.ndarray a: Symmetric n-by-n matrix
    :param numpy.ndarray b: Diagonal n-by-n matrix (see :func:`reduce_b_diagonal`)
    """
    a = as_square(a, 'a')
    b = as_square(b, 'b')
    if symmetry_class(a, b) != 'symmetric':
        raise PreconditionFail('The embedding is defined for symmetric pairs')
    if not _is_diagonal(b):
        raise PreconditionFail('B must be diagonal; reduce the pair first')
    n = a.shape[0]
    basis = parity_basis(n)
    off = basis.offdiag_columns
    s_sub = sym_kron(a, b)[np.ix_(off, off)]
    if n < 2:
        return Embedding(np.zeros(0), 'phi', 0.0)
    k_mat = skew_kron(a, b)
    t = k_mat.shape[0]
    scale = tol * max(1.0, float(np.max(np.abs(s_sub))), float(np.max(np.abs(k_mat))))

    phi = np.ones(t)
    phi[:n - 1] = -1.0
    residual = float(np.max(np.abs(np.outer(phi, phi) * k_mat - s_sub)))
    if residual <= scale:
        return Embedding(phi, 'phi', residual)
    logging.warning('Fixed sign pattern misses by {:.3e}; solving the sign graph'.format(residual))

    if np.any(np.abs(np.diag(k_mat) - np.diag(s_sub)) > scale):
        raise NoEmbedding('Diagonals of the two compressions differ')
    graph = nx.Graph()
    graph.add_nodes_from(range(t))
    for k in range(t):
        for l in range(k + 1, t):
            same = abs(k_mat[k, l] - s_sub[k, l]) <= scale
            flip = abs(k_mat[k, l] + s_sub[k, l]) <= scale
            if same and flip:
                continue
            if not (same or flip):
                raise NoEmbedding('Entry ({}, {}) differs in magnitude between the compressions'.format(k, l))
            graph.add_edge(k, l, flip=flip)
    signs = np.zeros(t)
    for component in nx.connected_components(graph):
        root = min(component)
        signs[root] = 1.0
        for u, v in nx.bfs_edges(graph, root):
            signs[v] = -signs[u] if graph.edges[u, v]['flip'] else signs[u]
    for u, v, flip in graph.edges(data='flip'):
        if (signs[u] != signs[v]) != flip:
            raise NoEmbedding('Sign constraints are inconsistent around pair {}'.format(basis.pair_order[u]))
    residual = float(np.max(np.abs(np.outer(signs, signs) * k_mat - s_sub)))
    return Embedding(signs, 'sign-graph', residual)


_ExtremeTrace = namedtuple('ExtremeTrace', ['max', 'argmax', 'min', 'argmin'])


class ExtremeTrace(_ExtremeTrace):  # Wrapping for documentation
    """
    Extremes of ``trace(U A U)`` over symmetric U with unit Frobenius norm.

    :param float max: The largest eigenvalue of A
    :param numpy.ndarray argmax: ``v1 v1ᵀ`` for a top unit eigenvector v1
    :param float min: The smallest eigenvalue of A
    :param numpy.ndarray argmin: ``vn vnᵀ`` for a bottom unit eigenvector vn
    """
    pass


def sym_trace(a, u):
    return float(np.trace(u @ a @ u))


def extreme_sym_trace(a):
    decomposition = sym_eigen(as_square(a, 'a'))
    top, bottom = decomposition.vectors[:, 0], decomposition.vectors[:, -1]
    return ExtremeTrace(float(decomposition.values[0]), np.outer(top, top),
                        float(decomposition.values[-1]), np.outer(bottom, bottom))


_CommutingPrediction = namedtuple('CommutingPrediction', ['even_values', 'odd_values', 'basis'])


class CommutingPrediction(_CommutingPrediction):  # Wrapping for documentation
    """
    :param numpy.ndarray even_values: ``λ_i μ_j + λ_j μ_i`` for i <= j, descending
    :param numpy.ndarray odd_values: ``λ_i μ_j + λ_j μ_i`` for i < j, descending
    :param numpy.ndarray basis: Common orthonormal eigenbasis of A and B (columns)
    """
    pass


def common_eigenbasis(a, b, tol=COMMUTING_TOL):
    decomposition = sym_eigen(a)
    values, vectors = decomposition.values, decomposition.vectors
    cutoff = tol * max(1.0, float(np.max(np.abs(values))))
    blocks = []
    start = 0
    for k in range(1, values.size + 1):
        if k == values.size or values[k - 1] - values[k] > cutoff:
            blocks.append((start, k))
            start = k
    columns = []
    for lo, hi in blocks:
        v = vectors[:, lo:hi]
        inner = sym_eigen((v.T @ b @ v + (v.T @ b @ v).T) / 2.0)
        columns.append(v @ inner.vectors)
    return np.hstack(columns)


def commuting_spectrum(a, b, tol=COMMUTING_TOL):
    """
    Predicted even and odd eigenvalues of ``A⊗B + B⊗A`` for commuting symmetric A, B,
    from a common eigenbasis: ``λ_i μ_j + λ_j μ_i`` over i <= j (even) and i < j (odd).
    """
    a = as_square(a, 'a')
    b = as_square(b, 'b')
    if symmetry_class(a, b) != 'symmetric':
        raise PreconditionFail('The commuting-pair formula is stated for symmetric pairs')
    commutator = frobenius(a @ b - b @ a)
    if commutator > tol * frobenius(a) * frobenius(b):
        raise NotCommuting('Commutator norm {:.3e} exceeds tolerance'.format(commutator))
    basis = common_eigenbasis(a, b, tol)
    lam = np.einsum('ij,ik,kj->j', basis, a, basis)
    mu = np.einsum('ij,ik,kj->j', basis, b, basis)
    n = lam.size
    even = [lam[i] * mu[j] + lam[j] * mu[i] for j in range(n) for i in range(j, n)]
    odd = [lam[i] * mu[j] + lam[j] * mu[i] for i in range(n) for j in range(i + 1, n)]
    return CommutingPrediction(np.sort(even)[::-1], np.sort(odd)[::-1], basis)


def reduce_b_diagonal(a, b):
    """
    Rotates the pair so that B becomes diagonal with descending entries:
    ``B = V D Vᵀ`` gives ``(Vᵀ A V, D)``. All interlacing verdicts are unchanged.
    """
    a = as_square(a, 'a')
    b = as_square(b, 'b')
    if symmetry_class(a, b) != 'symmetric':
        raise PreconditionFail('Diagonal reduction needs a symmetric pair')
    decomposition = sym_eigen(b)
    v = decomposition.vectors
    a_bar = v.T @ a @ v
    return (a_bar + a_bar.T) / 2.0, np.diag(decomposition.values)


def perron_frobenius_applies(a, b):
    """Entrywise nonnegative pairs have an even largest eigenvalue."""
    return bool(np.all(np.asarray(a) >= 0) and np.all(np.asarray(b) >= 0))

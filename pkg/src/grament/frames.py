"""Frames (finite ordered families of vectors) and their Gram matrices.

A :class:`Frame` stores its ``k`` vectors as the rows of a ``k x d`` array.
The Gram matrix of a frame uses the convention

    gram[a, b] = <f_b, f_a>   (inner product conjugate-linear in the first slot)

so that ``gram == V @ V^dagger`` for the row matrix ``V``.  With this choice
the right Gram operator of a bipartite state equals its reduced density
matrix ``tr_2 |psi><psi|`` entry by entry, and the rows of a Cholesky factor
``L`` of ``rho`` form a frame whose Gram matrix is ``L L^dagger = rho``.
The relative Gram matrix follows the same slot order,
``relative_gram(f, g)[a, b] = <g_b, f_a>``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import GramMismatchError, ShapeError
from .tensor_core import (
    DEFAULT_TOL,
    as_matrix,
    as_vector,
    complete_basis,
    dagger,
    frobenius,
    pivoted_gram_schmidt,
)

WEDGE_CAP = 8


@dataclass(frozen=True, eq=False)
class Frame:
    """An ordered list of ``k >= 1`` vectors in C^d (stored as rows)."""

    vectors: np.ndarray

    def __post_init__(self):
        v = as_matrix(self.vectors, "frame vectors")
        if v.shape[0] < 1 or v.shape[1] < 1:
            raise ShapeError(f"a frame needs at least one vector of positive dimension, got {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    @classmethod
    def from_vectors(cls, vectors):
        rows = [as_vector(v) for v in vectors]
        if len({len(r) for r in rows}) > 1:
            raise ShapeError("all frame vectors must share the same dimension")
        return cls(np.array(rows))

    @classmethod
    def from_columns(cls, matrix):
        return cls(np.transpose(as_matrix(matrix)))

    @property
    def length(self):
        return self.vectors.shape[0]

    @property
    def ambient_dim(self):
        return self.vectors.shape[1]

    def __len__(self):
        return self.length

    def __getitem__(self, i):
        return self.vectors[i]

    def columns(self):
        """The ``d x k`` matrix with the frame vectors as columns."""
        return np.transpose(self.vectors).copy()

    def rank(self, tol=DEFAULT_TOL):
        return len(pivoted_gram_schmidt(self.columns(), tol)[0])

    def without(self, i):
        """The frame with the ``i``-th vector (1-based) removed."""
        _check_index(self, i)
        return Frame(np.delete(self.vectors, i - 1, axis=0))

    def permuted(self, order):
        return Frame(self.vectors[list(order)])

    def __repr__(self):
        return f"Frame(length={self.length}, ambient_dim={self.ambient_dim})"


def _check_index(f, i):
    if not 1 <= i <= f.length:
        raise IndexError(f"frame index {i} out of range 1..{f.length}")


def gram_matrix(f):
    """``k x k`` Gram matrix of a frame; Hermitian and positive semi-definite."""
    v = f.vectors
    g = v @ dagger(v)
    return 0.5 * (g + dagger(g))


def relative_gram(f, g):
    """Relative Gram matrix ``R[a, b] = <g_b, f_a>`` of two frames of equal shape."""
    if f.vectors.shape != g.vectors.shape:
        raise ShapeError(
            f"frames must have equal length and dimension: {f.vectors.shape} vs {g.vectors.shape}"
        )
    return f.vectors @ dagger(g.vectors)


def gramian(f, tol=DEFAULT_TOL):
    """Determinant of the Gram matrix.

    Returned as a non-negative real.  Values at or below ``tol`` times the
    Hadamard bound ``prod ||f_i||^2`` are reported as exactly 0, so a
    numerically dependent frame has gramian 0.
    """
    g = gram_matrix(f)
    det = float(np.real(np.linalg.det(g)))
    bound = float(np.prod(np.real(np.diag(g))))
    if bound == 0.0 or det <= tol * bound:
        return 0.0
    return det


def height(f, i):
    """Distance from the ``i``-th vector (1-based) to the span of the others."""
    if f.length < 2:
        raise ShapeError("height needs a frame with at least two vectors")
    _check_index(f, i)
    target = f.vectors[i - 1]
    rest = np.delete(f.vectors, i - 1, axis=0)
    _, q = pivoted_gram_schmidt(np.transpose(rest), tol=1e-14)
    r = target - q @ (dagger(q) @ target)
    r = r - q @ (dagger(q) @ r)
    return float(np.linalg.norm(r))


def align_frames(f1, f2, tol=1e-9, rank_tol=DEFAULT_TOL):
    """Unitary ``U`` with ``U @ f1[i] ~= f2[i]`` for every ``i``.

    Requires equal Gram matrices (up to ``tol`` relative).  A spanning
    subframe of ``f1`` is picked by pivoted Gram-Schmidt; ``U`` maps it onto
    the matching vectors of ``f2`` and sends the orthogonal complement of
    ``span(f1)`` onto that of ``span(f2)`` using canonically completed bases.
    Identical frames therefore give the identity.
    """
    if f1.vectors.shape != f2.vectors.shape:
        raise ShapeError(
            f"frames must have equal length and dimension: {f1.vectors.shape} vs {f2.vectors.shape}"
        )
    g1 = gram_matrix(f1)
    g2 = gram_matrix(f2)
    distance = frobenius(g1 - g2)
    if distance > tol * max(1.0, frobenius(g1)):
        raise GramMismatchError(
            f"Gram matrices differ (Frobenius distance {distance:.3e}); "
            "the frames are not unitarily related",
            distance,
        )

    d = f1.ambient_dim
    a = f1.columns()
    b = f2.columns()
    idx, q1 = pivoted_gram_schmidt(a, rank_tol)
    if not idx:
        return np.eye(d, dtype=complex)
    a_s = a[:, idx]
    b_s = b[:, idx]
    r = dagger(q1) @ a_s  # a_s = q1 @ r, r invertible
    q2 = np.linalg.solve(r.T, b_s.T).T  # b_s @ r^{-1}
    c1 = complete_basis(q1, d)
    # re-orthonormalize the image before completing so U stays unitary
    _, q2_ortho = pivoted_gram_schmidt(q2, tol=0.0)
    c2 = complete_basis(q2_ortho, d)
    return q2 @ dagger(q1) + c2 @ dagger(c1)


def wedge_inner_bruteforce(f, g):
    """Inner product of ``f_1 ^ ... ^ f_k`` with ``g_1 ^ ... ^ g_k`` by the Leibniz sum.

    Uses the same slot order as :func:`relative_gram`, i.e. a sum over
    permutations of products ``<g_pi(a), f_a>``.  Factorial cost, so
    ``k`` is capped at 8.
    """
    if f.vectors.shape != g.vectors.shape:
        raise ShapeError("frames must have equal length and dimension")
    k = f.length
    if k > WEDGE_CAP:
        raise ValueError(f"permutation-sum oracle limited to k <= {WEDGE_CAP}, got {k}")
    pair = [[complex(np.vdot(g.vectors[b], f.vectors[a])) for b in range(k)] for a in range(k)]
    total = 0j
    for perm in itertools.permutations(range(k)):
        prod = complex(_perm_sign(perm))
        for a, b in enumerate(perm):
            prod *= pair[a][b]
        total += prod
    return total


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        j = start
        cycle = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            cycle += 1
        if cycle % 2 == 0:
            sign = -sign
    return sign


def transform_frame(a, f):
    """Apply a linear map ``a`` (``d x d``) to every vector of the frame.

    The Gram matrix transforms as ``gram(aF) = V (a^dagger a)^T V^dagger``;
    for ``k == d`` this gives ``gramian(aF) == |det a|^2 gramian(F)``.
    """
    a = as_matrix(a, "a")
    d = f.ambient_dim
    if a.shape != (d, d):
        raise ShapeError(f"map must be {d}x{d}, got {a.shape}")
    return Frame(f.vectors @ a.T)


def hadamard_bound(rows):
    """``prod ||r_i||^2`` over the rows of a square matrix."""
    rows = as_matrix(rows)
    return float(math.prod(float(np.real(np.vdot(r, r))) for r in rows))

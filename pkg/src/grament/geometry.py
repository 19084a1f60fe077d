"""Geometric entanglement quantities built from Gram matrices.

Stratum-dependent quantities assume ``d1 <= d2``; states with ``d1 > d2``
are swapped first (the non-zero spectra of the two Gram operators agree).

The gramian volume of a normalized state with Schmidt rank ``k`` is

    gvol = (det(GL_k (x) GR_k)) ** (1/k) = det(GL_k) * det(GR_k) = prod_{i<=k} s_i**4

where ``GR_k``/``GL_k`` are the ``k x k`` Gram matrices of the state's
frames restricted to its local supports.  It is 0 on product states and on
each stratum peaks at the maximally entangled state, ``k**(-2k)``.

Volumes shrink under local contractions ``(1 (x) T)`` with ``||T|| <= 1``;
that is the direction implemented and tested here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bipartite import (
    BipartiteState,
    Side,
    apply_local,
    entanglement_entropy,
    gram_operator,
    require_unit_norm,
    schmidt,
    side_frame,
)
from .errors import NotAContractionError, OrientationError, ZeroStateError
from .frames import gram_matrix, gramian
from .tensor_core import DEFAULT_TOL, dagger, frobenius, kron, pivoted_gram_schmidt, svd


def parallelepiped_volume(f, tol=DEFAULT_TOL):
    """Euclidean volume of the parallelepiped spanned by the frame: ``sqrt(gramian)``."""
    return math.sqrt(gramian(f, tol))


def _analysis_state(psi, check_norm):
    if psi.norm == 0.0:
        raise ZeroStateError("the zero vector belongs to no Schmidt stratum")
    if check_norm:
        require_unit_norm(psi)
    return psi.oriented()


def gvol(psi, tol=DEFAULT_TOL, check_norm=True):
    """Gramian volume of a state.

    Zero for Schmidt rank <= 1, otherwise ``prod_{i<=k} s_i**4`` over the
    ``k`` Schmidt coefficients above ``tol`` (relative to the largest).  With
    ``check_norm=False`` the same formula is evaluated on an unnormalized
    vector.
    """
    psi = _analysis_state(psi, check_norm)
    sd = schmidt(psi, tol)
    if sd.rank <= 1:
        return 0.0
    s = sd.coefficients[: sd.rank]
    return float(np.prod(s**4))


def gvol_subframe_oracle(psi, tol=DEFAULT_TOL):
    """Gramian volume evaluated from explicit ``k x k`` Gram matrices.

    Pivoted Gram-Schmidt picks ``k`` independent vectors from each frame;
    their orthonormalized spans are the local supports.  The state is
    compressed to C^k (x) C^k on those supports, its two frames give the
    ``k x k`` Gram matrices, and the result is the ``k``-th root of the
    determinant of their Kronecker product.
    """
    psi = _analysis_state(psi, True)
    c = psi.coeffs
    left_idx, q1 = pivoted_gram_schmidt(c, tol)  # columns of c: left frame in C^d1
    right_idx, q2 = pivoted_gram_schmidt(c.T, tol)  # rows of c: right frame in C^d2
    k = min(len(left_idx), len(right_idx))
    if k <= 1:
        return 0.0
    compressed = BipartiteState(dagger(q1[:, :k]) @ c @ np.conj(q2[:, :k]))
    g_right = gram_matrix(side_frame(compressed, Side.RIGHT))
    g_left = gram_matrix(side_frame(compressed, Side.LEFT))
    det = float(np.real(np.linalg.det(kron(g_left, g_right))))
    return max(det, 0.0) ** (1.0 / k)


def is_maximally_entangled(psi, tol=DEFAULT_TOL):
    """True iff the right Gram operator is ``I / d1`` to within ``tol`` (Frobenius)."""
    require_unit_norm(psi)
    if psi.d1 > psi.d2:
        raise OrientationError(
            f"expected d1 <= d2, got d1={psi.d1}, d2={psi.d2}; swap the factors first"
        )
    target = np.eye(psi.d1) / psi.d1
    return frobenius(gram_operator(psi, Side.RIGHT) - target) <= tol


def operator_norm(t):
    return float(svd(t).singulars[0]) if np.size(t) else 0.0


def contraction_probe(psi, t, tol=DEFAULT_TOL):
    """Right-frame volume before and after applying ``1 (x) t`` with ``||t|| <= 1``."""
    t = np.asarray(t, dtype=complex)
    norm = operator_norm(t)
    if norm > 1.0 + tol:
        raise NotAContractionError(f"operator norm {norm:.6g} exceeds 1")
    before = parallelepiped_volume(side_frame(psi, Side.RIGHT))
    after = parallelepiped_volume(side_frame(apply_local(psi, None, t), Side.RIGHT))
    return before, after


@dataclass(frozen=True)
class GeometryReport:
    schmidt_rank: int
    volume_right: float
    gvol: float
    entropy: float
    max_entangled: bool


def geometry_report(psi, tol=DEFAULT_TOL):
    """Collect the geometric summary of a normalized state (oriented to d1 <= d2)."""
    require_unit_norm(psi)
    psi = psi.oriented()
    return GeometryReport(
        schmidt_rank=schmidt(psi, tol).rank,
        volume_right=parallelepiped_volume(side_frame(psi, Side.RIGHT), tol),
        gvol=gvol(psi, tol),
        entropy=entanglement_entropy(psi),
        max_entangled=is_maximally_entangled(psi),
    )


def max_gvol(k):
    """Largest gramian volume on the rank-``k`` stratum, attained by ``I_k / sqrt(k)``."""
    return float(k) ** (-2 * k) if k > 1 else 0.0


"""Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` in row-major
storage.  Everything here is a pure function; inputs are never modified.

Index maps between a pair ``(i, j)`` of local indices and the flat index of
the product basis are 1-based, matching the formula ``alpha = (i-1)*d2 + j``.
Internally (and in every array) indexing is the usual 0-based numpy one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, NotHermitianError, ShapeError

DEFAULT_TOL = 1e-10
_EPS = np.finfo(float).eps
_MAX_SWEEPS = 60


def as_matrix(a, name="matrix"):
    """Return ``a`` as a finite 2-D complex128 array (copied)."""
    m = np.array(a, dtype=complex, copy=True)
    if m.ndim != 2:
        raise ShapeError(f"{name} must be 2-dimensional, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} contains NaN or Inf entries")
    return m


def as_vector(v, name="vector"):
    x = np.array(v, dtype=complex, copy=True)
    if x.ndim != 1:
        raise ShapeError(f"{name} must be 1-dimensional, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} contains NaN or Inf entries")
    return x


def dagger(a):
    return np.conj(np.transpose(a))


def frobenius(a):
    return float(np.sqrt(np.sum(np.abs(a) ** 2)))


@dataclass(frozen=True)
class SvdResult:
    """``a == left @ diag(singulars) @ right^dagger`` with unitary ``left``/``right``.

    ``left`` is ``m x m`` and ``right`` is ``n x n``; ``singulars`` has
    ``min(m, n)`` entries sorted non-increasing.
    """

    left: np.ndarray
    singulars: np.ndarray
    right: np.ndarray

    def reconstruct(self):
        m, n = self.left.shape[0], self.right.shape[0]
        d = np.zeros((m, n), dtype=complex)
        k = len(self.singulars)
        d[:k, :k] = np.diag(self.singulars)
        return self.left @ d @ dagger(self.right)

    def rank(self, tol=DEFAULT_TOL):
        if len(self.singulars) == 0 or self.singulars[0] == 0:
            return 0
        return int(np.count_nonzero(self.singulars > tol * self.singulars[0]))


@dataclass(frozen=True)
class EigResult:
    """Spectrum of a Hermitian matrix: ``a @ vectors[:, i] == values[i] * vectors[:, i]``."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self):
        return (self.vectors * self.values) @ dagger(self.vectors)


def kron(a, b):
    """Kronecker product with the block layout ``[[a11*B, a12*B, ...], ...]``."""
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    n, m = a.shape
    p, q = b.shape
    # (a x b)[i*p + k, j*q + l] = a[i, j] * b[k, l]
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(n * p, m * q)


def vec_op(a):
    """Column-stacking ``vec``: ``(a11, ..., an1, ..., a1n, ..., ann)``."""
    return as_matrix(a).reshape(-1, order="F")


def hs_inner(a, b):
    """Hilbert-Schmidt product ``tr(a^dagger b)``."""
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    return complex(np.sum(np.conj(a) * b))


def inner(x, y):
    """``<x, y>``, conjugate-linear in the first argument."""
    return complex(np.vdot(x, y))


def _phase_fix_columns(v):
    """Make the first non-negligible entry of each column real and positive."""
    v = v.copy()
    for j in range(v.shape[1]):
        col = v[:, j]
        scale = np.max(np.abs(col)) if col.size else 0.0
        if scale == 0.0:
            continue
        idx = int(np.argmax(np.abs(col) > 1e-12 * scale))
        z = col[idx]
        v[:, j] = col * (np.conj(z) / abs(z))
    return v


def check_hermitian(a, tol=DEFAULT_TOL):
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    norm = frobenius(a)
    if frobenius(a - dagger(a)) > tol * max(norm, 1.0):
        raise NotHermitianError(
            f"matrix is not Hermitian: ||a - a^dagger||_F = {frobenius(a - dagger(a)):.3e}"
        )
    return 0.5 * (a + dagger(a))


def eigh(a, tol=DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Eigenvalues are returned non-increasing (stable for ties); each
    eigenvector has its first non-negligible component real and positive.
    """
    h = check_hermitian(a, tol)
    n = h.shape[0]
    v = np.eye(n, dtype=complex)
    norm = frobenius(h)
    if n <= 1 or norm == 0.0:
        return EigResult(np.real(np.diag(h)).copy(), v)

    threshold = _EPS * norm
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(_MAX_SWEEPS):
        off = np.sqrt(np.sum(np.abs(h[offdiag]) ** 2))
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = h[p, q]
                mag = abs(apq)
                if mag <= 0.1 * threshold / n:
                    continue
                # phase so the (p, q) entry becomes real, then a real Jacobi rotation
                phase = apq / mag
                app = h[p, p].real
                aqq = h[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                h[:, idx] = h[:, idx] @ rot
                h[idx, :] = dagger(rot) @ h[idx, :]
                h[p, q] = 0.0
                h[q, p] = 0.0
                v[:, idx] = v[:, idx] @ rot
    else:
        raise ConvergenceError(f"Jacobi eigensolver did not converge in {_MAX_SWEEPS} sweeps")

    values = np.real(np.diag(h))
    order = np.argsort(-values, kind="stable")
    return EigResult(values[order], _phase_fix_columns(v[:, order]))


def complete_basis(q, dim):
    """Extend the orthonormal columns of ``q`` to an orthonormal basis of C^dim.

    New columns come from canonical basis vectors, always taking the one with
    the largest residual against the current span (lowest index on ties), so
    the completion is deterministic.
    """
    q = np.zeros((dim, 0), dtype=complex) if q is None else np.asarray(q, dtype=complex)
    cols = [q[:, j] for j in range(q.shape[1])]
    eye = np.eye(dim, dtype=complex)
    added = []
    while len(cols) < dim:
        basis = np.array(cols).T if cols else np.zeros((dim, 0), dtype=complex)
        resid = eye - basis @ (dagger(basis) @ eye)
        resid = resid - basis @ (dagger(basis) @ resid)
        norms = np.linalg.norm(resid, axis=0)
        j = int(np.argmax(norms))
        w = resid[:, j] / norms[j]
        cols.append(w)
        added.append(w)
    if not added:
        return np.zeros((dim, 0), dtype=complex)
    return np.array(added).T


def pivoted_gram_schmidt(vectors, tol=DEFAULT_TOL):
    """Select a maximal independent subset of the columns of ``vectors``.

    Uses modified Gram-Schmidt with largest-residual-first pivoting.  Stops
    once every remaining residual is at most ``tol`` times the largest input
    column norm.  Returns ``(indices, q)`` with ``q`` orthonormal and
    ``span(q) == span(vectors[:, indices])``.
    """
    a = np.array(vectors, dtype=complex)
    d, k = a.shape
    scale = float(np.max(np.linalg.norm(a, axis=0))) if k else 0.0
    if scale == 0.0:
        return [], np.zeros((d, 0), dtype=complex)
    resid = a.copy()
    chosen = []
    qcols = []
    remaining = list(range(k))
    while remaining and len(chosen) < d:
        norms = np.linalg.norm(resid[:, remaining], axis=0)
        pos = int(np.argmax(norms))
        if norms[pos] <= tol * scale:
            break
        j = remaining.pop(pos)
        w = resid[:, j].copy()
        # second pass against the accepted columns for stability
        for qc in qcols:
            w -= qc * np.vdot(qc, w)
        w /= np.linalg.norm(w)
        chosen.append(j)
        qcols.append(w)
        resid -= np.outer(w, np.conj(w) @ resid)
    return chosen, np.array(qcols).T if qcols else np.zeros((d, 0), dtype=complex)


def _one_sided_jacobi(a):
    """Hestenes one-sided Jacobi on the columns of ``a`` (rows >= cols)."""
    work = a.copy()
    m, n = work.shape
    w = np.eye(n, dtype=complex)
    # columns at roundoff level carry no direction and would rotate forever
    floor = (_EPS * frobenius(a)) ** 2
    for _ in range(_MAX_SWEEPS):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                ap = work[:, p]
                aq = work[:, q]
                alpha = float(np.real(np.vdot(ap, ap)))
                beta = float(np.real(np.vdot(aq, aq)))
                gamma = np.vdot(ap, aq)
                mag = abs(gamma)
                if alpha <= floor or beta <= floor or mag <= _EPS * np.sqrt(alpha * beta):
                    continue
                rotated = True
                phase = gamma / mag
                zeta = (beta - alpha) / (2.0 * mag)
                if abs(zeta) > 1e150:
                    t = 0.5 / zeta
                else:
                    t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                work[:, idx] = work[:, idx] @ rot
                w[:, idx] = w[:, idx] @ rot
        if not rotated:
            return work, w
    raise ConvergenceError(f"one-sided Jacobi SVD did not converge in {_MAX_SWEEPS} sweeps")


def svd(a):
    """Full singular value decomposition ``a = V diag(s) W^dagger`` via one-sided Jacobi."""
    a = as_matrix(a)
    m, n = a.shape
    if m < n:
        t = svd(dagger(a))
        return SvdResult(t.right, t.singulars, t.left)
    if n == 0:
        return SvdResult(np.eye(m, dtype=complex), np.zeros(0), np.eye(0, dtype=complex))

    work, w = _one_sided_jacobi(a)
    sing = np.linalg.norm(work, axis=0)
    order = np.argsort(-sing, kind="stable")
    sing = sing[order]
    work = work[:, order]
    w = w[:, order]

    smax = sing[0] if n else 0.0
    good = sing > max(m, n) * _EPS * smax if smax > 0 else np.zeros(n, dtype=bool)
    ucols = work[:, good] / sing[good]
    # columns with negligible norm carry no direction; fill them from the complement
    u = np.zeros((m, m), dtype=complex)
    u[:, : int(good.sum())] = ucols
    u[:, int(good.sum()):] = complete_basis(ucols, m)
    left = u
    # keep the V/W pairing of the non-negligible columns; the rest are arbitrary
    return SvdResult(left, sing, w)


def psd_rank(a, tol=DEFAULT_TOL):
    """Return ``(is_psd, rank)`` for a Hermitian matrix, thresholds relative to ``||a||_F``.

    ``rank`` counts eigenvalues with ``|lambda| > tol * ||a||_F``; on PSD input
    that is the number of positive ones.
    """
    values = eigh(a).values
    scale = frobenius(as_matrix(a))
    if scale == 0.0:
        return True, 0
    is_psd = bool(values.min() >= -tol * scale)
    rank = int(np.count_nonzero(np.abs(values) > tol * scale))
    return is_psd, rank


def pair_to_flat(i, j, d2, d1=None):
    """1-based ``(i, j) -> alpha = (i - 1) * d2 + j``."""
    if d2 < 1 or j < 1 or j > d2 or i < 1 or (d1 is not None and i > d1):
        raise IndexError(f"index pair ({i}, {j}) out of range for d2={d2}")
    return (i - 1) * d2 + j


def flat_to_pair(alpha, d2, d1=None):
    """Inverse of :func:`pair_to_flat`; 1-based on both sides."""
    if d2 < 1 or alpha < 1 or (d1 is not None and alpha > d1 * d2):
        raise IndexError(f"flat index {alpha} out of range")
    i, j = divmod(alpha - 1, d2)
    return i + 1, j + 1

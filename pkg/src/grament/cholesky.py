"""Cholesky factorization on the PSD cone and the non-linear purification maps.

``cholesky_psd0`` is the zero-extension: at a pivot that is numerically zero
the whole column of the factor is set to zero and elimination continues.
For a PSD matrix this is the limit of ``cholesky_spd(a + eps*I)`` as
``eps -> 0``, and it agrees with ``cholesky_spd`` on positive-definite input.
The factor always has a real, non-negative diagonal.

Purification builds ``psi = sum_a e_a (x) r_a(L)`` from the rows of
``L = cholesky_psd0(rho)``, so that the right Gram operator of ``psi`` is
``L L^dagger = rho``.  Cholesky is not additive, hence the map is non-linear.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bipartite import BipartiteState, Side, gram_operator
from .errors import InvalidDensityMatrixError, NotPositiveDefiniteError, NotPSDError
from .tensor_core import DEFAULT_TOL, as_vector, check_hermitian, eigh, frobenius

PIVOT_TOL = 1e-12
DENSITY_TOL = 1e-10


def cholesky_spd(a, tol=PIVOT_TOL):
    """Unique lower-triangular ``L`` with positive diagonal and ``L L^dagger = a``."""
    h = check_hermitian(a, DEFAULT_TOL)
    n = h.shape[0]
    scale = float(np.max(np.real(np.diag(h)))) if n else 0.0
    out = np.zeros_like(h)
    for k in range(n):
        pivot = float(np.real(h[k, k] - np.vdot(out[k, :k], out[k, :k])))
        if scale <= 0.0 or pivot <= tol * scale:
            raise NotPositiveDefiniteError(
                f"pivot {pivot:.3e} at step {k + 1} is not positive; "
                "use cholesky_psd0 for positive semi-definite input"
            )
        lkk = np.sqrt(pivot)
        out[k, k] = lkk
        out[k + 1:, k] = (h[k + 1:, k] - out[k + 1:, :k] @ np.conj(out[k, :k])) / lkk
    return out


def cholesky_psd0(a, tol=PIVOT_TOL, psd_tol=DEFAULT_TOL):
    """Zero-extended Cholesky factor of a positive semi-definite matrix.

    A pivot at or below ``tol`` times the largest diagonal entry zeroes its
    column.  Raises :class:`NotPSDError` if ``a`` has an eigenvalue below
    ``-psd_tol * ||a||_F``.
    """
    h = check_hermitian(a, DEFAULT_TOL)
    n = h.shape[0]
    norm = frobenius(h)
    if n and norm > 0.0:
        lam_min = eigh(h).values[-1]
        if lam_min < -psd_tol * norm:
            raise NotPSDError(f"matrix has negative eigenvalue {lam_min:.3e}")
    scale = float(np.max(np.real(np.diag(h)))) if n else 0.0
    out = np.zeros_like(h)
    for k in range(n):
        pivot = float(np.real(h[k, k] - np.vdot(out[k, :k], out[k, :k])))
        if pivot <= tol * scale:
            continue
        lkk = np.sqrt(pivot)
        out[k, k] = lkk
        out[k + 1:, k] = (h[k + 1:, k] - out[k + 1:, :k] @ np.conj(out[k, :k])) / lkk
    return out


def validate_density(rho, tol=DENSITY_TOL):
    """Return ``rho`` as a Hermitian array after checking PSD and unit trace."""
    try:
        h = check_hermitian(rho, tol)
    except ValueError as exc:
        raise InvalidDensityMatrixError(str(exc)) from exc
    tr = float(np.real(np.trace(h)))
    if abs(tr - 1.0) > tol:
        raise InvalidDensityMatrixError(f"trace is {tr:.12g}, expected 1")
    lam_min = eigh(h).values[-1]
    if lam_min < -tol:
        raise InvalidDensityMatrixError(f"matrix is not positive semi-definite (eigenvalue {lam_min:.3e})")
    return h


@dataclass(frozen=True)
class PurificationResult:
    factor: np.ndarray
    state: BipartiteState
    side: Side

    def residual(self):
        """``||Delta^side(state) - L L^dagger||_F``."""
        target = self.factor @ np.conj(self.factor.T)
        return frobenius(gram_operator(self.state, self.side) - target)


def purify(rho, side=Side.RIGHT, tol=PIVOT_TOL):
    """Pure state in C^d (x) C^d whose Gram operator on ``side`` equals ``rho``."""
    side = Side.parse(side)
    h = validate_density(rho)
    factor = cholesky_psd0(h, tol=tol)
    coeffs = factor if side is Side.RIGHT else factor.T
    return PurificationResult(factor, BipartiteState(coeffs), side)


def pure_projector(psi):
    """``|psi><psi|`` with entries ``psi_i * conj(psi_j)``; trace ``||psi||^2``."""
    v = as_vector(psi)
    return np.outer(v, np.conj(v))

"""Bipartite pure states in C^d1 (x) C^d2 and their Gram operators.

A state is stored as its ``d1 x d2`` coefficient matrix ``c[i, j]``; the
flat vector in C^(d1*d2) is ``c.reshape(-1)`` (row-major), which is exactly
the ordering ``alpha = (i-1)*d2 + j``.

Right frame: the ``d1`` rows of ``c`` (vectors in C^d2).
Left frame:  the ``d2`` columns of ``c`` (vectors in C^d1).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotNormalizedError, ShapeError, ZeroStateError
from .frames import Frame, align_frames, gram_matrix
from .tensor_core import DEFAULT_TOL, as_matrix, as_vector, dagger, eigh, frobenius, kron, svd

NORM_TOL = 1e-10


class Side(str, enum.Enum):
    RIGHT = "right"
    LEFT = "left"

    @classmethod
    def parse(cls, side):
        if isinstance(side, cls):
            return side
        try:
            return cls(str(side).lower())
        except ValueError:
            raise ValueError(f"side must be 'right' or 'left', got {side!r}") from None


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """Vector in C^d1 (x) C^d2 held as its coefficient matrix."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = as_matrix(self.coeffs, "coefficients")
        if c.shape[0] < 1 or c.shape[1] < 1:
            raise ShapeError(f"dimensions must be positive, got {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_flat(cls, vector, d1, d2, normalize=False):
        v = as_vector(vector, "state vector")
        if v.size != d1 * d2:
            raise ShapeError(f"expected {d1 * d2} coefficients for d1={d1}, d2={d2}, got {v.size}")
        state = cls(v.reshape(d1, d2))
        return state.normalized() if normalize else state

    @classmethod
    def product(cls, psi1, psi2):
        return cls(np.outer(as_vector(psi1), as_vector(psi2)))

    @classmethod
    def maximally_entangled(cls, d):
        return cls(np.eye(d, dtype=complex) / math.sqrt(d))

    @property
    def d1(self):
        return self.coeffs.shape[0]

    @property
    def d2(self):
        return self.coeffs.shape[1]

    @property
    def norm(self):
        return frobenius(self.coeffs)

    def flat(self):
        return self.coeffs.reshape(-1).copy()

    def normalized(self):
        n = self.norm
        if n == 0.0:
            raise ZeroStateError("cannot normalize the zero vector")
        return BipartiteState(self.coeffs / n)

    def swapped(self):
        """The same vector viewed in C^d2 (x) C^d1."""
        return BipartiteState(self.coeffs.T)

    def oriented(self):
        """Return the state with ``d1 <= d2``, swapping the factors if needed."""
        return self if self.d1 <= self.d2 else self.swapped()

    def __repr__(self):
        return f"BipartiteState(d1={self.d1}, d2={self.d2}, norm={self.norm:.6g})"


def require_unit_norm(psi, tol=NORM_TOL):
    if psi.norm == 0.0:
        raise ZeroStateError("the zero vector is not a state")
    if abs(psi.norm - 1.0) > tol:
        raise NotNormalizedError(f"state norm is {psi.norm:.12g}, expected 1")


def side_frame(psi, side):
    if Side.parse(side) is Side.RIGHT:
        return Frame(psi.coeffs)
    return Frame(psi.coeffs.T)


def gram_operator(psi, side):
    """Right (``d1 x d1``) or left (``d2 x d2``) Gram operator of the state."""
    return gram_matrix(side_frame(psi, side))


def full_gram(psi):
    return kron(gram_operator(psi, Side.RIGHT), gram_operator(psi, Side.LEFT))


def reduced_density(psi, side):
    """Partial trace of ``|psi><psi|`` over the opposite factor.

    Built directly from the ``d1*d2`` projector, independently of the frame
    route, so it can be checked against :func:`gram_operator`.
    """
    require_unit_norm(psi)
    side = Side.parse(side)
    d1, d2 = psi.d1, psi.d2
    v = psi.flat()
    proj = np.outer(v, np.conj(v)).reshape(d1, d2, d1, d2)
    if side is Side.RIGHT:
        out = np.zeros((d1, d1), dtype=complex)
        for j in range(d2):
            out += proj[:, j, :, j]
    else:
        out = np.zeros((d2, d2), dtype=complex)
        for i in range(d1):
            out += proj[i, :, i, :]
    return out


@dataclass(frozen=True)
class SchmidtDecomposition:
    """``psi = sum_i s_i u_i (x) w_i`` with orthonormal ``u_i`` (C^d1), ``w_i`` (C^d2).

    ``left_vectors`` / ``right_vectors`` hold the vectors as columns, one per
    coefficient; ``rank`` counts coefficients above the tolerance.
    """

    coefficients: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray
    rank: int

    def reconstruct(self):
        c = (self.left_vectors * self.coefficients) @ self.right_vectors.T
        return BipartiteState(c)


def schmidt(psi, tol=DEFAULT_TOL):
    """Schmidt decomposition from the SVD of the coefficient matrix.

    ``rank`` counts coefficients above ``tol`` times the largest one.  Each
    left vector has its first non-negligible entry real positive and the
    matching right vector absorbs the phase.
    """
    res = svd(psi.coeffs)
    k = min(psi.d1, psi.d2)
    s = res.singulars[:k]
    u = res.left[:, :k].copy()
    w = np.conj(res.right[:, :k])
    for j in range(k):
        col = u[:, j]
        scale = np.max(np.abs(col))
        idx = int(np.argmax(np.abs(col) > 1e-12 * scale))
        z = col[idx]
        ph = np.conj(z) / abs(z)
        u[:, j] = col * ph
        w[:, j] = w[:, j] / ph
    rank = int(np.count_nonzero(s > tol * s[0])) if s[0] > 0 else 0
    return SchmidtDecomposition(s, u, w, rank)


@dataclass(frozen=True)
class Separability:
    """Outcome of :func:`is_separable`; truthy when the state is a product.

    For a product state ``right_gram == outer(conj(c), c)`` and
    ``left_gram == outer(conj(d), d)`` for the row vectors ``c`` and ``d``.
    """

    separable: bool
    c: np.ndarray | None = None
    d: np.ndarray | None = None

    def __bool__(self):
        return self.separable


def is_separable(psi, tol=DEFAULT_TOL):
    sd = schmidt(psi, tol)
    if sd.rank != 1:
        return Separability(False)
    s = sd.coefficients[0]
    c = s * np.conj(sd.left_vectors[:, 0])
    d = s * np.conj(sd.right_vectors[:, 0])
    return Separability(True, c, d)


def apply_local(psi, u1=None, u2=None):
    """``(u1 (x) u2) psi``; ``None`` stands for the identity on that factor."""
    c = psi.coeffs
    if u1 is not None:
        u1 = as_matrix(u1, "u1")
        if u1.shape != (psi.d1, psi.d1):
            raise ShapeError(f"u1 must be {psi.d1}x{psi.d1}, got {u1.shape}")
        c = u1 @ c
    if u2 is not None:
        u2 = as_matrix(u2, "u2")
        if u2.shape != (psi.d2, psi.d2):
            raise ShapeError(f"u2 must be {psi.d2}x{psi.d2}, got {u2.shape}")
        c = c @ u2.T
    return BipartiteState(c)


def state_from_equal_grams(psi1, psi2, side=Side.RIGHT, tol=1e-9):
    """Local unitary carrying ``psi2`` onto ``psi1``.

    Right side: ``(1 (x) U) psi2 ~= psi1`` given equal right Gram operators.
    Left side:  ``(U (x) 1) psi2 ~= psi1`` given equal left Gram operators.
    """
    side = Side.parse(side)
    if (psi1.d1, psi1.d2) != (psi2.d1, psi2.d2):
        raise ShapeError("states live in different spaces")
    return align_frames(side_frame(psi2, side), side_frame(psi1, side), tol=tol)


def entanglement_entropy(psi, base=math.e, tol=DEFAULT_TOL):
    """Von Neumann entropy of the right reduced state (natural log by default)."""
    require_unit_norm(psi)
    mu = eigh(gram_operator(psi, Side.RIGHT)).values
    mu = mu[mu > tol]
    h = -float(np.sum(mu * np.log(mu)))
    if base != math.e:
        h /= math.log(base)
    return max(h, 0.0)


def random_state(d1, d2, seed=None):
    """I.i.d. standard complex Gaussian coefficients, normalized; deterministic per seed."""
    if d1 < 1 or d2 < 1:
        raise ValueError(f"dimensions must be >= 1, got ({d1}, {d2})")
    rng = np.random.default_rng(seed)
    c = rng.standard_normal((d1, d2)) + 1j * rng.standard_normal((d1, d2))
    return BipartiteState(c / frobenius(c))

"""Seeded random matrices for sweeps and tests.

Every function takes ``rng``: an ``int`` seed, ``None`` or a
``numpy.random.Generator``; nothing touches global RNG state.
"""

from __future__ import annotations

import numpy as np


def _rng(rng):
    return np.random.default_rng(rng)


def ginibre(shape, rng=None):
    g = _rng(rng)
    return g.standard_normal(shape) + 1j * g.standard_normal(shape)


def random_unitary(d, rng=None):
    """Haar-distributed unitary (QR of a Ginibre matrix with the R-phase removed)."""
    q, r = np.linalg.qr(ginibre((d, d), rng))
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_special_unitary(d, rng=None):
    u = random_unitary(d, rng)
    return u / np.linalg.det(u) ** (1.0 / d)


def random_density(d, rank=None, rng=None):
    """``M M^dagger / tr`` with ``M`` a ``d x rank`` Ginibre matrix (full rank by default)."""
    g = _rng(rng)
    rank = d if rank is None else rank
    m = ginibre((d, rank), g)
    rho = m @ m.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def random_low_rank(shape, rank, rng=None):
    """Ginibre product ``A (shape[0] x rank) @ B (rank x shape[1])``."""
    g = _rng(rng)
    return ginibre((shape[0], rank), g) @ ginibre((rank, shape[1]), g)


def random_contraction(d, rng=None):
    """Random ``d x d`` matrix rescaled so its operator norm is uniform in (0, 1]."""
    g = _rng(rng)
    t = ginibre((d, d), g)
    return t * (g.uniform(0.05, 1.0) / np.linalg.norm(t, 2))

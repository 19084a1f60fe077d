"""Bipartite states: frames, Gram operators, Schmidt data, local actions."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grament.bipartite import (
    BipartiteState,
    Side,
    apply_local,
    entanglement_entropy,
    full_gram,
    gram_operator,
    is_separable,
    random_state,
    reduced_density,
    schmidt,
    side_frame,
    state_from_equal_grams,
)
from grament.errors import GramMismatchError, NotNormalizedError, ShapeError, ZeroStateError
from grament.sampling import ginibre, random_low_rank, random_unitary
from grament.tensor_core import kron

BELL = BipartiteState.maximally_entangled(2)
E1F1 = BipartiteState.product([1, 0], [1, 0])

shapes = st.tuples(st.integers(1, 5), st.integers(1, 5))
seeds = st.integers(0, 2**32 - 1)


def frob(a):
    return float(np.linalg.norm(a))


# -- construction ------------------------------------------------------------


def test_state_construction():
    psi = BipartiteState.from_flat([1, 2, 3, 4, 5, 6], 2, 3)
    assert psi.coeffs.tolist() == [[1, 2, 3], [4, 5, 6]]
    assert np.array_equal(psi.flat(), [1, 2, 3, 4, 5, 6])
    assert BipartiteState.from_flat([3, 4], 1, 2, normalize=True).norm == pytest.approx(1.0)
    with pytest.raises(ShapeError):
        BipartiteState.from_flat([1, 2, 3], 2, 2)
    with pytest.raises(ZeroStateError):
        BipartiteState(np.zeros((2, 2))).normalized()
    with pytest.raises(ValueError):
        psi.coeffs[0, 0] = 1


def test_flat_vector_is_kron_of_factors():
    rng = np.random.default_rng(0)
    a, b = ginibre(3, rng), ginibre(4, rng)
    psi = BipartiteState.product(a, b)
    assert np.allclose(psi.flat(), np.kron(a, b))


def test_swapped_and_oriented():
    psi = random_state(4, 2, seed=1)
    assert (psi.oriented().d1, psi.oriented().d2) == (2, 4)
    assert np.allclose(gram_operator(psi.swapped(), Side.RIGHT), gram_operator(psi, Side.LEFT))


# -- frames ------------------------------------------------------------------


def test_side_frames_2x2():
    c = np.array([1, 2j, 3, 4 - 1j])
    psi = BipartiteState.from_flat(c, 2, 2)
    assert np.array_equal(side_frame(psi, Side.RIGHT).vectors, [[c[0], c[1]], [c[2], c[3]]])
    assert np.array_equal(side_frame(psi, "left").vectors, [[c[0], c[2]], [c[1], c[3]]])


def test_side_frame_examples():
    assert np.array_equal(side_frame(E1F1, Side.RIGHT).vectors, [[1, 0], [0, 0]])
    rng = np.random.default_rng(1)
    a, b = ginibre(3, rng), ginibre(2, rng)
    rf = side_frame(BipartiteState.product(a, b), Side.RIGHT).vectors
    assert np.allclose(rf, np.outer(a, b))


def test_right_frame_reconstructs_state():
    psi = random_state(3, 4, seed=2)
    rf = side_frame(psi, Side.RIGHT).vectors
    rebuilt = sum(np.kron(np.eye(3)[i], rf[i]) for i in range(3))
    assert np.allclose(rebuilt, psi.flat())


def test_side_parse():
    assert Side.parse("RIGHT") is Side.RIGHT
    with pytest.raises(ValueError, match="side"):
        Side.parse("up")


# -- Gram operators ---------------------------------------------------------


def test_gram_examples():
    assert np.allclose(gram_operator(BELL, Side.RIGHT), np.eye(2) / 2)
    assert np.allclose(gram_operator(BELL, Side.LEFT), np.eye(2) / 2)
    assert np.allclose(gram_operator(E1F1, Side.RIGHT), np.diag([1, 0]))


def test_gram_2x2_closed_form():
    # entrywise conjugate of the textbook formulas, which use <psi_i, psi_j>
    rng = np.random.default_rng(3)
    c1, c2, c3, c4 = ginibre(4, rng)
    psi = BipartiteState.from_flat([c1, c2, c3, c4], 2, 2)
    A, B = abs(c1) ** 2 + abs(c2) ** 2, abs(c3) ** 2 + abs(c4) ** 2
    C, D = abs(c1) ** 2 + abs(c3) ** 2, abs(c2) ** 2 + abs(c4) ** 2
    c13 = np.conj(c1) * c3 + np.conj(c2) * c4
    c12 = np.conj(c1) * c2 + np.conj(c3) * c4
    c31, c21 = np.conj(c13), np.conj(c12)
    right = np.array([[A, c13], [c31, B]])
    left = np.array([[C, c12], [c21, D]])
    full = np.array([
        [A * C, A * c12, C * c13, c13 * c12],
        [A * c21, A * D, c13 * c21, D * c13],
        [c31 * C, c31 * c12, B * C, B * c12],
        [c31 * c21, D * c31, B * c21, B * D],
    ])
    assert np.allclose(gram_operator(psi, Side.RIGHT), np.conj(right))
    assert np.allclose(gram_operator(psi, Side.LEFT), np.conj(left))
    assert np.allclose(full_gram(psi), np.conj(full))


@given(shape=shapes, seed=seeds, scale=st.floats(0.1, 10))
@settings(max_examples=60, deadline=None)
def test_trace_identities(shape, seed, scale):
    rng = np.random.default_rng(seed)
    psi = BipartiteState(scale * ginibre(shape, rng))
    n2 = psi.norm**2
    assert abs(np.trace(gram_operator(psi, Side.RIGHT)) - n2) <= 1e-12 * n2
    assert abs(np.trace(gram_operator(psi, Side.LEFT)) - n2) <= 1e-12 * n2
    assert abs(np.trace(full_gram(psi)) - n2**2) <= 1e-10 * n2**2


# -- reduced density ----------------------------------------------------------


def test_reduced_density_examples():
    assert np.allclose(reduced_density(BELL, Side.RIGHT), np.eye(2) / 2)
    assert np.allclose(reduced_density(BELL, Side.LEFT), np.eye(2) / 2)
    assert np.allclose(reduced_density(E1F1, Side.RIGHT), np.diag([1, 0]))
    psi = random_state(3, 4, seed=4)
    for side in Side:
        assert frob(reduced_density(psi, side) - gram_operator(psi, side)) <= 1e-12
    with pytest.raises(NotNormalizedError):
        reduced_density(BipartiteState(2 * np.eye(2)), Side.RIGHT)


# -- spectra -------------------------------------------------------------------


@pytest.mark.parametrize("d1, d2", [(2, 3), (2, 5), (3, 4), (1, 4)])
def test_asymmetric_spectrum(d1, d2):
    psi = random_state(d1, d2, seed=d1 + d2)
    mu_r = np.linalg.eigvalsh(gram_operator(psi, Side.RIGHT))
    mu_l = np.linalg.eigvalsh(gram_operator(psi, Side.LEFT))
    padded = np.sort(np.concatenate([mu_r, np.zeros(d2 - d1)]))
    assert np.allclose(np.sort(mu_l), padded, atol=1e-9)
    assert abs(np.linalg.det(gram_operator(psi, Side.LEFT))) <= 1e-12
    r = np.linalg.matrix_rank
    assert r(gram_operator(psi, Side.LEFT)) == r(gram_operator(psi, Side.RIGHT))


def test_equal_rank_of_gram_operators_low_rank():
    rng = np.random.default_rng(5)
    for rank in (1, 2, 3):
        psi = BipartiteState(random_low_rank((4, 6), rank, rng)).normalized()
        assert schmidt(psi).rank == rank
        for side in Side:
            assert np.linalg.matrix_rank(gram_operator(psi, side), tol=1e-10) == rank


# -- local unitaries ----------------------------------------------------------


def test_apply_local_matches_kron():
    rng = np.random.default_rng(6)
    psi = BipartiteState(ginibre((2, 3), rng))
    a, b = ginibre((2, 2), rng), ginibre((3, 3), rng)
    assert np.allclose(apply_local(psi, a, b).flat(), kron(a, b) @ psi.flat())
    assert np.array_equal(apply_local(psi).coeffs, psi.coeffs)
    with pytest.raises(ShapeError):
        apply_local(psi, np.eye(3))


def test_local_unitary_invariance():
    rng = np.random.default_rng(7)
    for _ in range(20):
        d1, d2 = rng.integers(1, 6, size=2)
        psi = random_state(d1, d2, seed=int(rng.integers(2**31)))
        u1, u2 = random_unitary(d1, rng), random_unitary(d2, rng)
        r, l, f = gram_operator(psi, "right"), gram_operator(psi, "left"), full_gram(psi)
        assert frob(gram_operator(apply_local(psi, None, u2), "right") - r) <= 1e-10
        assert frob(gram_operator(apply_local(psi, u1, None), "left") - l) <= 1e-10
        # the full operator is covariant, not invariant: each factor is conjugated
        # by the unitary acting on its own side, so its spectrum is what survives
        w = kron(u1, u2)
        moved = full_gram(apply_local(psi, u1, u2))
        assert frob(moved - w @ f @ w.conj().T) <= 1e-10
        assert np.allclose(np.linalg.eigvalsh(moved), np.linalg.eigvalsh(f), atol=1e-10)


def test_full_gram_not_literally_invariant():
    rng = np.random.default_rng(8)
    psi = random_state(2, 3, seed=8)
    moved = full_gram(apply_local(psi, random_unitary(2, rng), random_unitary(3, rng)))
    assert frob(moved - full_gram(psi)) > 1e-3


# -- Schmidt / separability ----------------------------------------------------


def test_schmidt_examples():
    sd = schmidt(BELL)
    assert np.allclose(sd.coefficients, [2**-0.5] * 2) and sd.rank == 2
    assert schmidt(E1F1).rank == 1


@given(shape=shapes, seed=seeds)
@settings(max_examples=60, deadline=None)
def test_schmidt_properties(shape, seed):
    psi = random_state(*shape, seed=seed)
    sd = schmidt(psi)
    k = min(shape)
    assert frob(sd.reconstruct().coeffs - psi.coeffs) <= 1e-10
    assert abs(np.sum(sd.coefficients**2) - 1) <= 1e-12
    assert np.allclose(sd.left_vectors.conj().T @ sd.left_vectors, np.eye(k), atol=1e-12)
    assert np.allclose(sd.right_vectors.conj().T @ sd.right_vectors, np.eye(k), atol=1e-12)
    mu = np.sort(np.linalg.eigvalsh(gram_operator(psi, Side.RIGHT)))[::-1][:k]
    assert np.allclose(sd.coefficients**2, mu, atol=1e-12)
    # phase rule: first non-negligible entry of each left vector is real positive
    for col in sd.left_vectors.T:
        first = col[np.argmax(np.abs(col) > 1e-12 * np.abs(col).max())]
        assert abs(first.imag) <= 1e-15 and first.real > 0


def test_schmidt_is_deterministic():
    psi = random_state(3, 3, seed=9)
    a, b = schmidt(psi), schmidt(psi)
    assert np.array_equal(a.left_vectors, b.left_vectors)
    assert np.array_equal(a.right_vectors, b.right_vectors)


def test_separability_examples():
    sep = is_separable(E1F1)
    assert sep and np.allclose(sep.c, [1, 0]) and np.allclose(sep.d, [1, 0])
    assert not is_separable(BELL)
    assert is_separable(BELL).c is None


def test_separability_witness():
    rng = np.random.default_rng(10)
    for _ in range(20):
        psi = BipartiteState.product(ginibre(3, rng), ginibre(4, rng)).normalized()
        sep = is_separable(psi)
        assert sep
        r = gram_operator(psi, Side.RIGHT)
        l = gram_operator(psi, Side.LEFT)
        # c^dagger c with c a row vector: [conj(c_a) c_b]
        assert frob(r - np.outer(np.conj(sep.c), sep.c)) <= 1e-10
        assert frob(l - np.outer(np.conj(sep.d), sep.d)) <= 1e-10


# -- state_from_equal_grams -----------------------------------------------------


@pytest.mark.parametrize("side", list(Side))
def test_state_from_equal_grams_round_trip(side):
    rng = np.random.default_rng(11)
    for _ in range(20):
        d1, d2 = (int(x) for x in rng.integers(1, 6, size=2))
        psi1 = random_state(d1, d2, seed=int(rng.integers(2**31)))
        if side is Side.RIGHT:
            v = random_unitary(d2, rng)
            psi2 = apply_local(psi1, None, v)
        else:
            v = random_unitary(d1, rng)
            psi2 = apply_local(psi1, v, None)
        u = state_from_equal_grams(psi1, psi2, side)
        back = apply_local(psi2, None, u) if side is Side.RIGHT else apply_local(psi2, u, None)
        assert frob(back.coeffs - psi1.coeffs) <= 1e-9


def test_state_from_equal_grams_identity_and_uniqueness():
    psi = random_state(3, 3, seed=12)
    assert np.allclose(state_from_equal_grams(psi, psi), np.eye(3), atol=1e-12)
    # full rank: any U with (1 (x) U) psi2 = psi1 acts identically on the state,
    # and the matrix itself is pinned down up to nothing (frame spans C^d2)
    v = random_unitary(3, 13)
    psi2 = apply_local(psi, None, v)
    u = state_from_equal_grams(psi, psi2)
    assert np.allclose(u, v.conj().T, atol=1e-9)


def test_state_from_equal_grams_rank_deficient():
    rng = np.random.default_rng(14)
    psi1 = BipartiteState(random_low_rank((2, 4), 1, rng)).normalized()
    psi2 = apply_local(psi1, None, random_unitary(4, rng))
    u = state_from_equal_grams(psi1, psi2)
    assert np.allclose(u.conj().T @ u, np.eye(4), atol=1e-10)
    assert frob(apply_local(psi2, None, u).coeffs - psi1.coeffs) <= 1e-9


def test_state_from_equal_grams_mismatch():
    with pytest.raises(GramMismatchError):
        state_from_equal_grams(random_state(2, 2, seed=1), random_state(2, 2, seed=2))
    with pytest.raises(ShapeError):
        state_from_equal_grams(random_state(2, 2, seed=1), random_state(2, 3, seed=2))


# -- entropy / random_state ------------------------------------------------------


def test_entropy_examples():
    assert abs(entanglement_entropy(BELL) - math.log(2)) <= 1e-12
    assert entanglement_entropy(BELL, base=2) == pytest.approx(1.0, abs=1e-12)
    assert entanglement_entropy(E1F1) == 0.0
    three = BipartiteState.maximally_entangled(3)
    assert abs(entanglement_entropy(three) - math.log(3)) <= 1e-12
    with pytest.raises(NotNormalizedError):
        entanglement_entropy(BipartiteState(np.eye(2)))


def test_random_state():
    a, b = random_state(2, 2, seed=1), random_state(2, 2, seed=1)
    assert np.array_equal(a.coeffs, b.coeffs)
    assert abs(random_state(3, 5, seed=3).norm - 1) <= 1e-14
    with pytest.raises(ValueError):
        random_state(0, 2)

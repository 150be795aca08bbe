import numpy as np
import pytest

from conftest import P
from jacring.jacobian import JacobianRing, fermat, random_smooth
from jacring.polynomials import dim_graded
from jacring.spaces import GradedSubspace, subspace_sum
from jacring.yukawa import (
    power_span,
    random_hyperplane_over_jacobian,
    socle_functional,
    socle_pairing_rank,
    yukawa_chain,
    yukawa_nonvanishing,
)


def test_socle_degree_identity():
    for d in range(1, 8):
        X = fermat(d, d + 2, P)
        assert X.socle_degree == d * (d + 2)


def test_socle_functional():
    rng = np.random.default_rng(29)
    ring = JacobianRing(random_smooth(2, 4, P, rng))
    u = socle_functional(ring)
    sigma = ring.X.socle_degree
    # u computes the socle coordinate of the reduction map
    eye = np.eye(dim_graded(4, sigma), dtype=np.int64)
    red = ring.reduce(eye, sigma)  # one coordinate per row
    assert np.array_equal(red[:, 0], u % P)


def test_pairing_perfect_on_full_pieces():
    rng = np.random.default_rng(30)
    for _ in range(5):
        ring = JacobianRing(random_smooth(2, 4, P, rng))
        sigma = ring.X.socle_degree
        for a in range(sigma + 1):
            A = GradedSubspace.full(4, P, a)
            B = GradedSubspace.full(4, P, sigma - a)
            assert socle_pairing_rank(ring, A, B) == ring.hilbert(a)


def test_pairing_degenerate_cases():
    rng = np.random.default_rng(31)
    ring = JacobianRing(random_smooth(2, 4, P, rng))
    sigma = ring.X.socle_degree
    a = 4
    J = ring.jacobian_piece(a)
    B = GradedSubspace.full(4, P, sigma - a)
    assert socle_pairing_rank(ring, J, B) == 0
    # a single element outside J pairs with rank 1
    quot = ring.quotient_basis(a)
    A = GradedSubspace.span_of_monomials([int(quot[0])], 4, P, a)
    assert socle_pairing_rank(ring, A, B) == 1
    with pytest.raises(ValueError):
        socle_pairing_rank(ring, A, GradedSubspace.full(4, P, 2))


def test_nonvanishing_cases():
    ring = JacobianRing(fermat(2, 4, P))
    full = GradedSubspace.full(4, P, 4)
    assert yukawa_nonvanishing(ring, full)
    J = ring.jacobian_piece(4)
    assert not yukawa_nonvanishing(ring, J)


def test_nonvanishing_monotone():
    rng = np.random.default_rng(32)
    ring = JacobianRing(random_smooth(2, 4, P, rng))
    K1 = random_hyperplane_over_jacobian(ring, rng)
    K2 = GradedSubspace.full(4, P, 4)
    assert K2.contains(K1)
    if yukawa_nonvanishing(ring, K1):
        assert yukawa_nonvanishing(ring, K2)


def test_random_hyperplane():
    rng = np.random.default_rng(33)
    ring = JacobianRing(random_smooth(2, 4, P, rng))
    K = random_hyperplane_over_jacobian(ring, rng)
    assert K.codim == 1 and K.degree == 4
    assert K.contains(ring.jacobian_piece(4))


def test_chain_single_instance():
    rng = np.random.default_rng(34)
    ring = JacobianRing(random_smooth(2, 4, P, rng))
    K = random_hyperplane_over_jacobian(ring, rng)
    rep = yukawa_chain(ring, K)
    assert rep.all_ok
    names = [s.step for s in rep.steps]
    assert names == ["colon_codim", "colon_bpf", "span_full_times_colon",
                     "square_full", "power_full", "socle_image_nonzero"]
    assert all(isinstance(s.as_dict()["ok"], bool) for s in rep.steps)


def test_chain_rejects_non_hyperplane():
    ring = JacobianRing(fermat(2, 4, P))
    with pytest.raises(ValueError):
        yukawa_chain(ring, GradedSubspace.full(4, P, 4))


def test_power_span():
    K = GradedSubspace.full(2, P, 1)
    assert power_span(K, 3).is_full()
    with pytest.raises(ValueError):
        power_span(K, 0)

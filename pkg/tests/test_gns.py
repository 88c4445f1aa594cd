"""Tests for the cyclic-representation construction and its consumers."""

import numpy as np
import pytest

from starrep import (
    GNSRepresentation,
    build_matrix_algebra,
    commutant,
    decompose,
    gns_construct,
    intertwiner,
    is_extremal,
    is_irreducible,
    is_positive,
    representations_equivalent,
    verify_star_rep,
)
from starrep.errors import NotEquivalent, NotPositive, ZeroFunctional

from conftest import (
    random_algebra,
    random_positive_functional,
    random_unitary,
    z2_algebra,
)

TRACE2 = np.array([1.0, 0, 0, 1.0])


def conjugated_copy(rep, u):
    """The same representation written in a rotated orthonormal basis."""
    return GNSRepresentation(
        algebra=rep.algebra,
        matrices=np.einsum("ab,ibc,cd->iad", u, rep.matrices, u.conj().T),
        cyclic_vector=u @ rep.cyclic_vector,
        source_functional=rep.source_functional,
        embedding=u @ rep.embedding,
    )


def test_gns_scalar_algebra():
    c1 = build_matrix_algebra(1)
    rep = gns_construct(c1, [1.0])
    assert rep.rep_dim == 1
    assert np.allclose(rep.matrices[0], [[1.0]])
    assert np.allclose(rep.cyclic_vector, [1.0])


def test_gns_trivial_character():
    rep = gns_construct(z2_algebra(), [1, 1])
    assert rep.rep_dim == 1
    assert np.allclose(rep.matrices[1], [[1.0]])
    assert np.allclose(rep.cyclic_vector, [1.0])


def test_gns_matrix_trace_reproduces():
    m2 = build_matrix_algebra(2)
    rep = gns_construct(m2, TRACE2)
    assert rep.rep_dim == 4
    values = np.einsum(
        "a,iab,b->i", np.conj(rep.cyclic_vector), rep.matrices, rep.cyclic_vector
    )
    assert np.allclose(values, TRACE2, atol=1e-12)


def test_gns_requires_positive():
    with pytest.raises(NotPositive):
        gns_construct(z2_algebra(), [1, 2.0])


def test_gns_zero_functional_gives_empty_rep():
    rep = gns_construct(z2_algebra(), [0, 0])
    assert rep.rep_dim == 0
    assert verify_star_rep(rep).passed


def test_verify_detects_broken_multiplicativity():
    rep = gns_construct(z2_algebra(), [1, 0])
    mats = np.array(rep.matrices, copy=True)
    mats[1] = 2.0 * mats[1]
    broken = GNSRepresentation(
        algebra=rep.algebra,
        matrices=mats,
        cyclic_vector=rep.cyclic_vector,
        source_functional=rep.source_functional,
        embedding=rep.embedding,
    )
    report = verify_star_rep(broken)
    assert not report.passed
    assert report.violations["multiplicativity"] == pytest.approx(3.0)


def test_gns_round_trip_random():
    rng = np.random.default_rng(31)
    for _ in range(30):
        a, _ = random_algebra(rng)
        rho = random_positive_functional(a, rng)
        rep = gns_construct(a, rho)
        assert verify_star_rep(rep).passed
        _, gram_rank = is_positive(a, rho)
        assert rep.rep_dim == gram_rank


def test_intertwiner_with_itself_is_identity():
    rep = gns_construct(z2_algebra(), [1, 0])
    u = intertwiner(rep, rep)
    assert np.allclose(u, np.eye(2))


def test_intertwiner_finds_basis_rotation():
    rng = np.random.default_rng(32)
    for _ in range(10):
        a, _ = random_algebra(rng)
        rho = random_positive_functional(a, rng)
        rep1 = gns_construct(a, rho)
        if rep1.rep_dim == 0:
            continue
        w = random_unitary(rng, rep1.rep_dim)
        rep2 = conjugated_copy(rep1, w)
        u = intertwiner(rep1, rep2)
        t1 = rep1.orbit_matrix()
        t2 = rep2.orbit_matrix()
        assert np.max(np.abs(u @ t1 - t2)) < 1e-8
        assert np.max(np.abs(u.conj().T @ u - np.eye(rep1.rep_dim))) < 1e-8


def test_intertwiner_rejects_different_functionals():
    z2 = z2_algebra()
    with pytest.raises(NotEquivalent):
        intertwiner(gns_construct(z2, [1, 1]), gns_construct(z2, [1, -1]))


def test_functional_equality_decides_equivalence():
    rng = np.random.default_rng(33)
    for _ in range(10):
        a, trace = random_algebra(rng)
        rho = random_positive_functional(a, rng)
        rep = gns_construct(a, rho)
        if rep.rep_dim == 0:
            continue
        intertwiner(rep, conjugated_copy(rep, random_unitary(rng, rep.rep_dim)))
        perturbed = rho + 1e-4 * trace
        with pytest.raises(NotEquivalent):
            intertwiner(rep, gns_construct(a, perturbed))


def test_commutant_dimensions():
    c1 = build_matrix_algebra(1)
    _, dim = commutant(gns_construct(c1, [1.0]))
    assert dim == 1

    m2 = build_matrix_algebra(2)
    _, dim = commutant(gns_construct(m2, TRACE2))
    assert dim == 4

    _, dim = commutant(gns_construct(z2_algebra(), [1, 0]))
    assert dim == 2


def test_commutant_basis_commutes():
    m2 = build_matrix_algebra(2)
    rep = gns_construct(m2, TRACE2)
    basis, dim = commutant(rep)
    assert basis.shape == (dim, 4, 4)
    for b in basis:
        for mat in rep.matrices:
            assert np.max(np.abs(b @ mat - mat @ b)) < 1e-10


def test_is_irreducible():
    z2 = z2_algebra()
    assert is_irreducible(gns_construct(z2, [1, 1]))
    assert not is_irreducible(gns_construct(z2, [1, 0]))
    m2 = build_matrix_algebra(2)
    vector_state = gns_construct(m2, [1.0, 0, 0, 0])
    assert vector_state.rep_dim == 2
    assert is_irreducible(vector_state)


def test_is_extremal():
    z2 = z2_algebra()
    assert is_extremal(z2, [1, 1])
    assert not is_extremal(z2, [1, 0])
    # and indeed (1, 0) = (1/2)(1, 1) + (1/2)(1, -1)
    assert np.allclose(
        0.5 * np.array([1.0, 1.0]) + 0.5 * np.array([1.0, -1.0]), [1, 0]
    )
    assert not is_extremal(build_matrix_algebra(2), TRACE2)
    with pytest.raises(ZeroFunctional):
        is_extremal(z2, [0, 0])
    with pytest.raises(NotPositive):
        is_extremal(z2, [1, 2.0])


def test_decompose_regular_z2():
    dec = decompose(z2_algebra(), [1, 0], seed=0)
    assert len(dec.components) == 2
    weights = sorted(c.weight for c in dec.components)
    assert np.allclose(weights, [0.5, 0.5], atol=1e-12)
    values = sorted(c.functional[1].real for c in dec.components)
    assert np.allclose(values, [-1.0, 1.0], atol=1e-12)
    assert len(dec.multiplicity_classes) == 2


def test_decompose_already_irreducible():
    dec = decompose(z2_algebra(), [1, 1], seed=0)
    assert len(dec.components) == 1
    assert dec.components[0].weight == pytest.approx(1.0)
    assert dec.multiplicity_classes == ((0,),)


def test_decompose_matrix_trace():
    m2 = build_matrix_algebra(2)
    dec = decompose(m2, TRACE2, seed=7)
    assert len(dec.components) == 2
    assert dec.multiplicity_classes == ((0, 1),)
    for c in dec.components:
        assert c.weight == pytest.approx(1.0, abs=1e-9)
        assert c.representation.rep_dim == 2
        assert is_irreducible(c.representation)
    # both pieces carry the defining representation
    defining = gns_construct(m2, [1.0, 0, 0, 0])
    for c in dec.components:
        assert representations_equivalent(c.representation, defining)


def test_decompose_is_seed_deterministic():
    m2 = build_matrix_algebra(2)
    first = decompose(m2, TRACE2, seed=5)
    second = decompose(m2, TRACE2, seed=5)
    for c1, c2 in zip(first.components, second.components):
        assert np.array_equal(c1.functional, c2.functional)
        assert c1.weight == c2.weight


def test_decompose_soundness_random():
    rng = np.random.default_rng(34)
    for trial in range(15):
        a, _ = random_algebra(rng)
        rho = random_positive_functional(a, rng)
        if float(np.max(np.abs(rho))) < 1e-9:
            continue
        dec = decompose(a, rho, seed=trial)
        rebuilt = sum(c.weight * c.functional for c in dec.components)
        assert np.max(np.abs(rebuilt - rho)) < 1e-8
        for c in dec.components:
            assert is_irreducible(c.representation)
            _, dim = commutant(c.representation)
            assert dim == 1


def test_decompose_s3_regular_matches_character_theory():
    # the regular representation splits into irreducibles of dims 1, 1, 2, 2
    # with the 2-dimensional piece appearing twice, and the projected-unit
    # weights equal dim(pi)/|G| per copy
    from conftest import s3_algebra

    s3 = s3_algebra()
    delta = np.eye(6)[0]
    dec = decompose(s3, delta, seed=1)
    dims = sorted(c.representation.rep_dim for c in dec.components)
    assert dims == [1, 1, 2, 2]
    assert sorted(len(c) for c in dec.multiplicity_classes) == [1, 1, 2]
    weights = sorted(c.weight for c in dec.components)
    assert np.allclose(weights, [1 / 6, 1 / 6, 1 / 3, 1 / 3], atol=1e-10)
    rebuilt = sum(c.weight * c.functional for c in dec.components)
    assert np.max(np.abs(rebuilt - delta)) < 1e-10


def test_decompose_rejects_bad_input():
    z2 = z2_algebra()
    with pytest.raises(NotPositive):
        decompose(z2, [1, 2.0])
    with pytest.raises(ZeroFunctional):
        decompose(z2, [0, 0])

"""Shared builders and random-instance generators for the test suite."""

from __future__ import annotations

import itertools

import numpy as np

from starrep import (
    FiniteStarAlgebra,
    build_group_algebra,
    build_matrix_algebra,
    direct_sum_algebra,
    gram_matrix,
    hermitian_eigen,
    is_positive,
)


def cyclic_group_table(k: int) -> list[list[int]]:
    return [[(i + j) % k for j in range(k)] for i in range(k)]


def s3_table() -> list[list[int]]:
    perms = list(itertools.permutations(range(3)))

    def compose(p, q):
        return tuple(p[q[x]] for x in range(3))

    return [[perms.index(compose(p, q)) for q in perms] for p in perms]


def z2_algebra() -> FiniteStarAlgebra:
    return build_group_algebra([[0, 1], [1, 0]], labels=("e", "g"))


def z3_algebra() -> FiniteStarAlgebra:
    return build_group_algebra(cyclic_group_table(3))


def s3_algebra() -> FiniteStarAlgebra:
    return build_group_algebra(s3_table())


# Building blocks for random algebras: (constructor, dim, canonical trace).
# The trace of a block is the functional whose Gram matrix is the identity
# (delta at the group identity, resp. the matrix trace), so it is positive.
def _blocks():
    eye9 = np.eye(9)
    return [
        (lambda: build_matrix_algebra(1), 1, np.array([1.0 + 0j])),
        (z2_algebra, 2, np.array([1.0, 0.0], dtype=complex)),
        (z3_algebra, 3, np.array([1.0, 0.0, 0.0], dtype=complex)),
        (
            lambda: build_group_algebra(cyclic_group_table(4)),
            4,
            np.array([1.0, 0, 0, 0], dtype=complex),
        ),
        (lambda: build_matrix_algebra(2), 4, np.array([1.0, 0, 0, 1.0], dtype=complex)),
    ]


def random_algebra(rng, max_dim: int = 6):
    """Random direct sum of builder blocks, with its canonical trace functional."""
    target = int(rng.integers(1, max_dim + 1))
    algebra = None
    trace = None
    remaining = target
    while remaining > 0:
        options = [b for b in _blocks() if b[1] <= remaining]
        make, dim, block_trace = options[int(rng.integers(len(options)))]
        block = make()
        if algebra is None:
            algebra, trace = block, block_trace
        else:
            algebra = direct_sum_algebra(algebra, block)
            trace = np.concatenate([trace, block_trace])
        remaining -= dim
    return algebra, trace


def random_positive_functional(algebra, rng):
    """Seeded-Gaussian functional made positive by clipping its Gram matrix.

    A Gaussian draw is hermitized, its Gram matrix eigen-clipped to the PSD
    cone, and the functional read back off the clipped matrix.  In the
    builder coordinates used by random_algebra the clipped matrix is still a
    Gram matrix, so the result is exactly positive.
    """
    n = algebra.dim
    raw = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    adjoint = np.conj(algebra.involution @ raw)
    values = (raw + adjoint) / 2.0
    g = gram_matrix(algebra, values)
    w, v = hermitian_eigen((g + g.conj().T) / 2.0)
    clipped = (v * np.clip(w, 0.0, None)) @ v.conj().T
    rho = np.conj(algebra.unit) @ clipped
    ok, _ = is_positive(algebra, rho)
    assert ok, "gram projection failed to produce a positive functional"
    return rho


def random_element(algebra, rng):
    n = algebra.dim
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def random_hermitian(rng, n: int) -> np.ndarray:
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (a + a.conj().T) / 2.0


def random_psd(rng, n: int, rank: int | None = None) -> np.ndarray:
    k = n if rank is None else rank
    b = rng.standard_normal((k, n)) + 1j * rng.standard_normal((k, n))
    return b.conj().T @ b


def random_unitary(rng, n: int) -> np.ndarray:
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def infimum_norm_oracle(h1: np.ndarray, h2: np.ndarray, xi: np.ndarray) -> float:
    """Constrained quadratic minimization reference for the two-kernel sum norm.

    Minimizes ||xi1||^2_{H1} + ||xi2||^2_{H2} over xi1 + xi2 = xi with each
    part constrained to the corresponding range, by normal equations on the
    joint range basis.  Deliberately routed through numpy's eigensolver so
    it shares nothing with the pseudoinverse path it checks.
    """

    def range_basis(h):
        w, v = np.linalg.eigh(h)
        keep = w > 1e-12 * max(w.max(), 1.0)
        return v[:, keep], w[keep]

    b1, w1 = range_basis(h1)
    b2, w2 = range_basis(h2)
    basis = np.hstack([b1, b2])
    norm_diag = np.concatenate([1.0 / w1, 1.0 / w2])

    c0, *_ = np.linalg.lstsq(basis, xi, rcond=None)
    assert np.linalg.norm(basis @ c0 - xi) < 1e-8 * (1 + np.linalg.norm(xi))

    u, s, vh = np.linalg.svd(basis)
    null_dim = basis.shape[1] - int(np.sum(s > 1e-12 * max(s[0], 1.0)))
    if null_dim > 0:
        z = vh.conj().T[:, basis.shape[1] - null_dim:]
        lhs = z.conj().T @ (norm_diag[:, None] * z)
        rhs = -z.conj().T @ (norm_diag * c0)
        t = np.linalg.solve(lhs, rhs)
        c = c0 + z @ t
    else:
        c = c0
    return float(np.real(np.vdot(c, norm_diag * c)))

"""Reproducing operators for Hilbert subspaces of the dual, and their cone.

A Hilbert subspace of the dual space is represented solely by its
reproducing operator: a hermitian PSD matrix H acting on dual coordinates.
Its elements are the vectors in range(H), carrying the squared norm
``phi^dagger H^+ phi``.  The cone operations (sum, nonnegative scaling,
order, difference, exclusion, chains, weighted sums) all reduce to matrix
arithmetic on the reproducing operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    DimMismatch,
    MonotonicityViolation,
    NegativeEigenvalue,
    NegativeScalar,
    NegativeWeight,
    NoConvergence,
    NotDominated,
    NotMajorized,
    ZeroKernel,
)
from .numerics import (
    DEFAULT_POLICY,
    TolerancePolicy,
    hermitian_eigen,
    psd_check,
)

__all__ = [
    "Kernel",
    "SubspaceElement",
    "make_kernel",
    "membership",
    "kernel_sum",
    "kernel_scale",
    "kernel_leq",
    "kernel_difference",
    "mutually_excluding",
    "min_dominating_scale",
    "ordinary_subrep_check",
    "chain_limit",
    "weighted_kernel_sum",
]

# Ceiling on the diagonal quadratic forms of an increasing chain; growth past
# it is the finite surrogate for an unbounded family.
DEFAULT_MAJORIZATION_BOUND = 1e12


@dataclass(frozen=True)
class Kernel:
    """Reproducing operator (hermitian PSD) with its numerical rank cached."""

    matrix: np.ndarray
    rank: int

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class SubspaceElement:
    """A dual vector known to lie in the subspace, with its squared norm there."""

    vector: np.ndarray
    norm_sq: float


def make_kernel(matrix, pol: TolerancePolicy = DEFAULT_POLICY) -> Kernel:
    """Validate a matrix as a reproducing operator and cache its rank."""
    m = np.asarray(matrix, dtype=complex)
    is_psd, rank = psd_check(m, pol)
    if not is_psd:
        raise NegativeEigenvalue("a reproducing operator must be PSD")
    return Kernel(matrix=(m + m.conj().T) / 2.0, rank=rank)


def _check_same_dim(k1: Kernel, k2: Kernel) -> None:
    if k1.dim != k2.dim:
        raise DimMismatch(f"kernel dimensions differ: {k1.dim} vs {k2.dim}")


def membership(
    kernel: Kernel, phi, pol: TolerancePolicy = DEFAULT_POLICY
) -> SubspaceElement | None:
    """Test whether phi lies in the subspace; if so return it with its norm.

    Membership is decided by the residual of phi against its projection onto
    range(H); borderline vectors are rejected.  The squared norm of a member
    is ``phi^dagger H^+ phi``.
    """
    v = np.asarray(phi, dtype=complex)
    if v.shape != (kernel.dim,):
        raise DimMismatch(f"vector has shape {v.shape}, kernel dim {kernel.dim}")
    values, vectors = hermitian_eigen(kernel.matrix, pol)
    basis = vectors[:, : kernel.rank]
    coords = basis.conj().T @ v
    residual = float(np.linalg.norm(v - basis @ coords))
    if residual >= pol.rel_rank_tol * (1.0 + float(np.linalg.norm(v))):
        return None
    norm_sq = float(np.sum(np.abs(coords) ** 2 / values[: kernel.rank]).real) if kernel.rank else 0.0
    return SubspaceElement(vector=v, norm_sq=norm_sq)


def kernel_sum(k1: Kernel, k2: Kernel, pol: TolerancePolicy = DEFAULT_POLICY) -> Kernel:
    """Subspace sum; elements carry the infimum norm over all splittings."""
    _check_same_dim(k1, k2)
    return make_kernel(k1.matrix + k2.matrix, pol)


def kernel_scale(lam: float, kernel: Kernel, pol: TolerancePolicy = DEFAULT_POLICY) -> Kernel:
    """Scale by a nonnegative real; member norms scale by 1/lam, 0 gives {0}."""
    if lam < 0:
        raise NegativeScalar(f"scale factor must be nonnegative, got {lam}")
    return make_kernel(lam * kernel.matrix, pol)


def kernel_leq(k1: Kernel, k2: Kernel, pol: TolerancePolicy = DEFAULT_POLICY) -> bool:
    """Order relation: the difference of reproducing operators is PSD."""
    _check_same_dim(k1, k2)
    diff = k2.matrix - k1.matrix
    is_psd, _ = psd_check(diff, pol)
    return is_psd


def kernel_difference(
    kernel: Kernel, k1: Kernel, pol: TolerancePolicy = DEFAULT_POLICY
) -> Kernel:
    """The unique complement with k1 + result = kernel; requires k1 <= kernel."""
    _check_same_dim(kernel, k1)
    if not kernel_leq(k1, kernel, pol):
        raise NotDominated("subtrahend is not below the kernel")
    return make_kernel(kernel.matrix - k1.matrix, pol)


def mutually_excluding(
    k1: Kernel, k2: Kernel, pol: TolerancePolicy = DEFAULT_POLICY
) -> bool:
    """Trivial intersection of the two subspaces, i.e. their sum is direct.

    At finite dimension this is exactly additivity of ranks under the sum.
    """
    _check_same_dim(k1, k2)
    total = make_kernel(k1.matrix + k2.matrix, pol)
    return k1.rank + k2.rank == total.rank


def min_dominating_scale(
    k1: Kernel, k2: Kernel, pol: TolerancePolicy = DEFAULT_POLICY
) -> float | None:
    """Least lam with k1 <= lam * k2, or None when no scaling works.

    Finite domination is possible exactly when range(H1) sits inside
    range(H2); the optimum is the top eigenvalue of the compression of H1 by
    the inverse square root of H2 on its range.
    """
    _check_same_dim(k1, k2)
    if k1.rank == 0:
        raise ZeroKernel("the zero kernel is dominated by every scaling")
    if k2.rank == 0:
        return None

    values2, vectors2 = hermitian_eigen(k2.matrix, pol)
    basis2 = vectors2[:, : k2.rank]
    values1, vectors1 = hermitian_eigen(k1.matrix, pol)
    basis1 = vectors1[:, : k1.rank]

    overflow = basis1 - basis2 @ (basis2.conj().T @ basis1)
    residuals = np.linalg.norm(overflow, axis=0)
    if np.any(residuals >= pol.rel_rank_tol * 2.0):
        return None

    inv_sqrt = basis2 * (1.0 / np.sqrt(values2[: k2.rank]))[None, :]  # (n, r2)
    compressed = inv_sqrt.conj().T @ k1.matrix @ inv_sqrt
    top, _ = hermitian_eigen(compressed, pol)
    return float(top[0])


def ordinary_subrep_check(
    k1: Kernel, kernel: Kernel, pol: TolerancePolicy = DEFAULT_POLICY
) -> bool:
    """Whether k1 sits inside kernel as a direct summand.

    True exactly when k1 <= kernel and k1 excludes the complement
    kernel - k1; rank additivity then certifies the direct-sum splitting.
    """
    _check_same_dim(k1, kernel)
    if not kernel_leq(k1, kernel, pol):
        return False
    complement = make_kernel(kernel.matrix - k1.matrix, pol)
    return mutually_excluding(k1, complement, pol)


def chain_limit(
    generator: Callable[[int], Kernel],
    direction: str,
    pol: TolerancePolicy = DEFAULT_POLICY,
    max_steps: int = 50,
    majorization_bound: float = DEFAULT_MAJORIZATION_BOUND,
) -> Kernel:
    """Limit of a monotone kernel chain produced by ``generator(step)``.

    Monotonicity is checked between consecutive terms.  Increasing chains
    are monitored through their diagonal quadratic forms: growth past
    ``majorization_bound`` means the chain has no upper bound and
    NotMajorized is raised.  Convergence is entrywise agreement of
    consecutive terms within match_tol; exhausting max_steps while still
    moving raises NoConvergence.
    """
    if direction not in ("decreasing", "increasing"):
        raise ValueError(f"direction must be 'decreasing' or 'increasing', got {direction!r}")

    def check_bound(k: Kernel, step: int) -> None:
        if direction == "increasing":
            top = float(np.max(np.diag(k.matrix).real))
            if top > majorization_bound:
                raise NotMajorized(
                    f"diagonal form reached {top:.3e} at step {step}; chain unbounded"
                )

    prev = generator(0)
    check_bound(prev, 0)
    for step in range(1, max_steps):
        cur = generator(step)
        if cur.dim != prev.dim:
            raise DimMismatch(f"chain changed dimension at step {step}")
        ordered = (
            kernel_leq(cur, prev, pol)
            if direction == "decreasing"
            else kernel_leq(prev, cur, pol)
        )
        if not ordered:
            raise MonotonicityViolation(f"chain not {direction} at step {step}")
        check_bound(cur, step)
        if float(np.max(np.abs(cur.matrix - prev.matrix))) < pol.match_tol:
            return cur
        prev = cur
    raise NoConvergence(f"chain still moving after {max_steps} steps")


def weighted_kernel_sum(
    terms: list[tuple[float, Kernel]], pol: TolerancePolicy = DEFAULT_POLICY
) -> tuple[Kernel, bool]:
    """Nonnegatively weighted sum of kernels, with a direct-sum certificate.

    The sum is direct exactly when the ranks of the (positively weighted)
    terms add up to the rank of the sum.  With quadrature weights this is
    the finite realization of integrating a kernel-valued map.
    """
    if not terms:
        raise ValueError("weighted_kernel_sum needs at least one term")
    dim = terms[0][1].dim
    total = np.zeros((dim, dim), dtype=complex)
    rank_sum = 0
    for weight, kernel in terms:
        if weight < 0:
            raise NegativeWeight(f"weights must be nonnegative, got {weight}")
        if kernel.dim != dim:
            raise DimMismatch("kernels in a weighted sum must share a dimension")
        total = total + weight * kernel.matrix
        if weight > 0:
            rank_sum += kernel.rank
    combined = make_kernel(total, pol)
    return combined, rank_sum == combined.rank

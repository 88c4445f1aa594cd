"""Dense complex linear algebra primitives with a shared rank/tolerance policy.

Every module in the package funnels its spectral work through the three
primitives here (``hermitian_eigen``, ``pseudo_inverse``, ``psd_check``) so
that rank decisions and eigenbasis conventions are made exactly once.  The
eigensolver is a cyclic Jacobi sweep: self-contained, deterministic, and
entirely adequate for the matrix sizes this package targets (n <= 64).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NegativeEigenvalue, NoConvergence, NonSquare, NotHermitian

__all__ = [
    "TolerancePolicy",
    "DEFAULT_POLICY",
    "ValidationReport",
    "as_complex_matrix",
    "hermitian_eigen",
    "pseudo_inverse",
    "psd_check",
]

# Off-diagonal Frobenius mass below this fraction of ||M||_F counts as
# diagonal; quadratic convergence of Jacobi makes the sweep cap generous.
_JACOBI_REL_THRESHOLD = 1e-14
_JACOBI_MAX_SWEEPS = 100

# Eigenvalues closer than this (relative) are treated as a tie and their
# eigenvectors ordered lexicographically for reproducibility.
_TIE_REL_TOL = 1e-12
_KEY_DECIMALS = 9


@dataclass(frozen=True)
class TolerancePolicy:
    """Bundle of the three tolerances used throughout the package.

    rel_rank_tol
        Eigenvalues below ``rel_rank_tol * lambda_max`` count as zero.
    psd_tol
        Eigenvalues above ``-psd_tol * (1 + lambda_max)`` still count as
        nonnegative.
    match_tol
        Generic agreement tolerance for identities checked entrywise.
    """

    rel_rank_tol: float = 1e-9
    psd_tol: float = 1e-9
    match_tol: float = 1e-8

    def __post_init__(self) -> None:
        for name in ("rel_rank_tol", "psd_tol", "match_tol"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


DEFAULT_POLICY = TolerancePolicy()


@dataclass(frozen=True)
class ValidationReport:
    """Named maximum violations of a family of laws, plus a pass threshold."""

    violations: dict[str, float]
    tolerance: float

    @property
    def max_violation(self) -> float:
        return max(self.violations.values(), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_violation < self.tolerance

    def as_dict(self) -> dict:
        return {
            "violations": {k: float(v) for k, v in self.violations.items()},
            "tolerance": float(self.tolerance),
            "passed": bool(self.passed),
        }


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a 2-d complex array, rejecting empty or non-finite input."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.size == 0:
        raise NonSquare(f"expected a nonempty 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix entries must be finite")
    return a


def _require_square_hermitian(m, match_tol: float) -> np.ndarray:
    a = as_complex_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {a.shape}")
    asym = np.max(np.abs(a - a.conj().T))
    if asym > 1e3 * match_tol:
        raise NotHermitian(f"asymmetry {asym:.3e} exceeds {1e3 * match_tol:.3e}")
    return (a + a.conj().T) / 2.0


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Zero out a[p, q] by a unitary plane rotation, updating a and v in place."""
    apq = a[p, q]
    b = abs(apq)
    if b == 0.0:
        return
    phase = apq / b
    tau = (a[q, q].real - a[p, p].real) / (2.0 * b)
    if tau == 0.0:
        t = 1.0
    else:
        t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    # 2x2 factor [[c*phase, s*phase], [-s, c]]; conjugating by it makes the
    # (p, q) entry real first and then rotates it away.
    j00, j01 = c * phase, s * phase
    j10, j11 = -s, c

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = col_p * j00 + col_q * j10
    a[:, q] = col_p * j01 + col_q * j11
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = np.conj(j00) * row_p + np.conj(j10) * row_q
    a[q, :] = np.conj(j01) * row_p + np.conj(j11) * row_q
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real

    vcol_p = v[:, p].copy()
    vcol_q = v[:, q].copy()
    v[:, p] = vcol_p * j00 + vcol_q * j10
    v[:, q] = vcol_p * j01 + vcol_q * j11


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def _canonical_columns(values: np.ndarray, vectors: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Fix descending order, column phases, and tie ordering deterministically."""
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]

    for k in range(vectors.shape[1]):
        col = vectors[:, k]
        idx = int(np.argmax(np.abs(col)))
        z = col[idx]
        if abs(z) > 0.0:
            vectors[:, k] = col * (np.conj(z) / abs(z))

    # Within a tie cluster the eigenbasis is not canonical; order the columns
    # by (descending) lexicographic comparison of their rounded coordinates.
    tie_tol = _TIE_REL_TOL * (1.0 + (np.max(np.abs(values)) if values.size else 0.0))
    n = values.size
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and values[stop - 1] - values[stop] <= tie_tol:
            stop += 1
        if stop - start > 1:
            def key(k: int):
                col = np.round(vectors[:, k], _KEY_DECIMALS) + 0.0
                return tuple((float(z.real) + 0.0, float(z.imag) + 0.0) for z in col)

            perm = sorted(range(start, stop), key=key, reverse=True)
            values[start:stop] = values[perm]
            vectors[:, start:stop] = vectors[:, perm]
        start = stop
    return values, vectors


def hermitian_eigen(
    m, pol: TolerancePolicy = DEFAULT_POLICY
) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a hermitian matrix by cyclic Jacobi sweeps.

    Returns ``(values, vectors)`` with real eigenvalues in descending order
    and orthonormal eigenvector columns.  The output is a pure function of
    the input: column phases are normalized (largest-magnitude entry real
    positive) and tied eigenvalues are ordered by their eigenvectors'
    rounded coordinates, so repeated calls are bit-identical.
    """
    a = _require_square_hermitian(m, pol.match_tol)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = float(np.linalg.norm(a))
    if scale == 0.0:
        return np.zeros(n), v

    threshold = _JACOBI_REL_THRESHOLD * scale
    for _ in range(_JACOBI_MAX_SWEEPS):
        if _offdiag_norm(a) < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _jacobi_rotate(a, v, p, q)
    else:
        raise NoConvergence("jacobi sweep limit reached")

    values = np.diag(a).real.copy()
    return _canonical_columns(values, v)


def psd_check(m, pol: TolerancePolicy = DEFAULT_POLICY) -> tuple[bool, int]:
    """Decide positive semidefiniteness and the numerical rank of ``m``.

    ``rank`` counts eigenvalues above ``rel_rank_tol * lambda_max``; the
    cutoff is relative so that uniformly scaled matrices keep their rank.
    """
    values, _ = hermitian_eigen(m, pol)
    lam_max = max(float(values[0]), 0.0)
    is_psd = bool(values[-1] >= -pol.psd_tol * (1.0 + lam_max))
    rank = int(np.count_nonzero(values > pol.rel_rank_tol * lam_max))
    return is_psd, rank


def pseudo_inverse(m, pol: TolerancePolicy = DEFAULT_POLICY) -> np.ndarray:
    """Moore-Penrose inverse of a hermitian PSD matrix under the rank policy."""
    values, vectors = hermitian_eigen(m, pol)
    lam_max = max(float(values[0]), 0.0)
    if values[-1] < -pol.psd_tol * (1.0 + lam_max):
        raise NegativeEigenvalue(
            f"eigenvalue {values[-1]:.3e} below -psd_tol*(1+lambda_max)"
        )
    cutoff = pol.rel_rank_tol * lam_max
    inv = np.where(values > cutoff, 1.0 / np.where(values > cutoff, values, 1.0), 0.0)
    return (vectors * inv) @ vectors.conj().T

"""Jacobi-like block-diagonalization of 2n x 2n symplices.

The matrix is viewed as an n x n grid of 2x2 blocks.  Each iteration
picks the off-diagonal block of largest mean-square amplitude, extracts
the corresponding degree-of-freedom pair as a 4x4 symplex, decouples it
with the geometric 4x4 pipeline, and applies the embedded transform to
the full matrix.  Convergence is declared when the summed Frobenius
norms of all off-diagonal blocks fall below a relative threshold; a
final pass can push every diagonal block to Hamiltonian form.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .decouple4 import (Tolerances, decouple_block_diagonal,
                        to_hamiltonian_form)
from .dirac import symplectic_unit
from .errors import (ComplexEigenvalues, DegenerateB, MaxStepsExceeded,
                     NotASymplex, PivotComplex)
from .transform import (SymplecticTransform, compose, embed_4x4,
                        identity_transform)

__all__ = [
    "SymplexN",
    "IterationStats",
    "off_block_norms",
    "random_test_symplex",
    "jacobi_decouple",
]


@dataclass(frozen=True)
class SymplexN:
    """A 2n x 2n symplex for n degrees of freedom."""

    matrix: np.ndarray
    n: int

    @classmethod
    def from_matrix(cls, M: np.ndarray, tol: float = 1e-10) -> "SymplexN":
        M = np.asarray(M, dtype=float)
        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2:
            raise ValueError(f"expected a square even matrix, got {M.shape}")
        n = M.shape[0] // 2
        g0 = symplectic_unit(n)
        resid = np.linalg.norm(M.T - g0 @ M @ g0)
        if resid > tol * max(1.0, np.linalg.norm(M)):
            raise NotASymplex(
                f"symplex condition violated with residual {resid:.3e}")
        return cls(matrix=M, n=n)


@dataclass
class IterationStats:
    """Per-run counters: pivot history and the residual trend."""

    pivot_steps: int = 0
    hamiltonian_steps: int = 0
    pivots: list = field(default_factory=list)   # (i, j, off norm before)
    residuals: list = field(default_factory=list)
    final_residual: float = 0.0

    @property
    def total_steps(self) -> int:
        """4x4 decoupling steps to Hamiltonian form (pivots + block passes)."""
        return self.pivot_steps + self.hamiltonian_steps


def off_block_norms(F: np.ndarray) -> np.ndarray:
    """Mean-square amplitude of each off-diagonal 2x2 block.

    Entry (i, j) with i != j is the mean of the squared entries of block
    B_ij; diagonal entries are zero.
    """
    F = np.asarray(F, dtype=float)
    n = F.shape[0] // 2
    blocks = F.reshape(n, 2, n, 2)
    out = np.einsum("iajb,iajb->ij", blocks, blocks) / 4.0
    np.fill_diagonal(out, 0.0)
    return out


def _off_residual(F: np.ndarray) -> float:
    """Sum of off-diagonal block Frobenius norms relative to ||F||_F."""
    n = F.shape[0] // 2
    blocks = F.reshape(n, 2, n, 2)
    norms = np.sqrt(np.einsum("iajb,iajb->ij", blocks, blocks))
    np.fill_diagonal(norms, 0.0)
    total = float(np.linalg.norm(F))
    return float(norms.sum()) / max(total, 1e-300)


def random_test_symplex(n: int, seed: int) -> SymplexN:
    """Deterministic random symplex F = g0 A for convergence studies.

    A is symmetric with off-diagonal entries uniform in [-1/2, 1/2) and
    diagonal entries n + uniform[0, 1); the raised diagonal keeps the
    eigenvalues away from the complex region.  Entries are drawn from
    numpy's PCG64 generator seeded with `seed`, row-major over the upper
    triangle, so the same seed always yields the same matrix.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    dim = 2 * n
    A = np.zeros((dim, dim))
    for i in range(dim):
        for j in range(i, dim):
            x = rng.random()
            if i == j:
                A[i, i] = n + x
            else:
                A[i, j] = A[j, i] = x - 0.5
    return SymplexN(matrix=symplectic_unit(n) @ A, n=n)


def _extract_pair(F: np.ndarray, i: int, j: int) -> np.ndarray:
    idx = np.array([2 * i, 2 * i + 1, 2 * j, 2 * j + 1])
    return F[np.ix_(idx, idx)]


def jacobi_decouple(F, tol: float = 1e-12, max_steps: int | None = None,
                    hamiltonian: bool = True,
                    tolerances: Tolerances = Tolerances(),
                    ) -> tuple[SymplecticTransform, SymplexN, IterationStats]:
    """Iteratively block-diagonalize a 2n x 2n symplex.

    Parameters
    ----------
    F : SymplexN or ndarray
        The symplex to decouple; all eigenvalues must be real or
        imaginary (a complex 4x4 pivot raises PivotComplex).
    tol : float
        Convergence threshold on the summed off-diagonal block norms
        relative to the total Frobenius norm.
    max_steps : int, optional
        Pivot budget; defaults to 40 n^2.
    hamiltonian : bool
        After convergence, push every diagonal block to Hamiltonian form
        (zero block diagonals) with per-pair passes.

    Returns
    -------
    (transform, decoupled, stats)
        The accumulated symplectic transform, the transformed symplex,
        and the iteration statistics.
    """
    sym = F if isinstance(F, SymplexN) else SymplexN.from_matrix(F)
    n = sym.n
    M = sym.matrix.copy()
    total = identity_transform(2 * n)
    stats = IterationStats()
    if max_steps is None:
        max_steps = 40 * n * n

    if n > 1:
        while True:
            resid = _off_residual(M)
            stats.residuals.append(resid)
            if resid <= tol:
                break
            if stats.pivot_steps >= max_steps:
                raise MaxStepsExceeded(
                    f"no convergence after {stats.pivot_steps} pivots "
                    f"(residual {resid:.3e})")
            amp = off_block_norms(M)
            # lexicographically smallest pair among maximal blocks
            flat = np.argmax(amp)
            i, j = divmod(int(flat), n)
            if i > j:
                i, j = j, i
            sub = _extract_pair(M, i, j)
            try:
                res4 = decouple_block_diagonal(sub, tolerances)
            except (ComplexEigenvalues, DegenerateB) as exc:
                raise PivotComplex(
                    f"pivot ({i}, {j}) cannot be decoupled over the "
                    f"reals: {exc}", pivot=(i, j)) from exc
            t = embed_4x4(res4.transform, i, j, n)
            M = t.r @ M @ t.rinv
            total = compose(t, total)
            stats.pivots.append((i, j, float(np.sqrt(amp[i, j]))))
            stats.pivot_steps += 1

    if hamiltonian:
        if n == 1:
            t = _single_dof_hamiltonian(M, tolerances)
            if t is not None:
                M = t.r @ M @ t.rinv
                total = compose(t, total)
                stats.hamiltonian_steps += 1
        else:
            pairs = [(k, k + 1) for k in range(0, n - 1, 2)]
            if n % 2:
                pairs.append((n - 2, n - 1))
            for (i, j) in pairs:
                sub = _extract_pair(M, i, j)
                res4 = decouple_block_diagonal(sub, tolerances)
                res4 = to_hamiltonian_form(res4, tolerances)
                if all(s.skipped for s in res4.transform.steps):
                    continue
                t = embed_4x4(res4.transform, i, j, n)
                M = t.r @ M @ t.rinv
                total = compose(t, total)
                stats.hamiltonian_steps += 1

    stats.final_residual = _off_residual(M)
    return total, SymplexN(matrix=M, n=n), stats


def _single_dof_hamiltonian(M: np.ndarray,
                            tolerances: Tolerances) -> SymplecticTransform | None:
    """Rotation zeroing the diagonal of a single 2x2 symplex, or None.

    A 2x2 symplex [[a, b], [c, -a]] conjugated by the phase rotation of
    angle theta has diagonal a cos(2 theta) + (b + c)/2 sin(2 theta);
    theta = atan2(-2a, b + c)/2 removes it.
    """
    a, bc = M[0, 0], M[0, 1] + M[1, 0]
    if max(abs(a), abs(bc)) < tolerances.step:
        return None
    eps = np.arctan2(-2.0 * a, bc)  # full angle of the dof rotation pair
    if abs(eps) < tolerances.step:
        return None
    c, s = np.cos(eps / 2.0), np.sin(eps / 2.0)
    r = np.array([[c, s], [-s, c]])
    from .transform import TransformStep
    step = TransformStep(generator=0, epsilon=float(eps))
    return SymplecticTransform(r=r, rinv=r.T, steps=(step,))

"""Real Dirac matrix basis of the 4x4 real matrices.

The sixteen matrices ``gamma(0) .. gamma(15)`` form a basis of the real
4x4 matrices (a real representation of the Clifford algebra Cl(3,1)).
The first ten are symplices (Hamiltonian matrices), the last six are
cosymplices (skew-Hamiltonian matrices) with respect to the symplectic
unit ``gamma(0)``, which is fixed by the phase-space variable ordering
(q1, p1, q2, p2).

Conventions
-----------
* ``gamma(0)`` is block-diagonal with 2x2 blocks [[0, 1], [-1, 0]].
* ``gamma(1) .. gamma(3)`` complete the anticommuting generator set;
  the remaining twelve are signed products of the generators.
* A symplex F satisfies F^T = g0 F g0, a cosymplex C^T = -g0 C g0.

All matrices are stored with exact integer entries and are read-only.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "GAMMA",
    "SYMPLEX_INDICES",
    "COSYMPLEX_INDICES",
    "gamma",
    "gamma_signature",
    "symplectic_unit",
    "rdm_coefficients",
    "from_coefficients",
    "is_symplex",
    "is_cosymplex",
    "symplex_cosymplex_split",
]

SYMPLEX_INDICES = tuple(range(10))
COSYMPLEX_INDICES = tuple(range(10, 16))


def _build_basis() -> tuple[np.ndarray, ...]:
    g = [None] * 16
    g[0] = np.array([[0, 1, 0, 0],
                     [-1, 0, 0, 0],
                     [0, 0, 0, 1],
                     [0, 0, -1, 0]], dtype=float)
    g[1] = np.array([[0, -1, 0, 0],
                     [-1, 0, 0, 0],
                     [0, 0, 0, 1],
                     [0, 0, 1, 0]], dtype=float)
    g[2] = np.array([[0, 0, 0, 1],
                     [0, 0, 1, 0],
                     [0, 1, 0, 0],
                     [1, 0, 0, 0]], dtype=float)
    g[3] = np.array([[-1, 0, 0, 0],
                     [0, 1, 0, 0],
                     [0, 0, -1, 0],
                     [0, 0, 0, 1]], dtype=float)
    g[14] = g[0] @ g[1] @ g[2] @ g[3]
    g[15] = np.eye(4)
    g[4] = g[0] @ g[1]
    g[5] = g[0] @ g[2]
    g[6] = g[0] @ g[3]
    g[7] = g[14] @ g[0] @ g[1]
    g[8] = g[14] @ g[0] @ g[2]
    g[9] = g[14] @ g[0] @ g[3]
    g[10] = g[14] @ g[0]
    g[11] = g[14] @ g[1]
    g[12] = g[14] @ g[2]
    g[13] = g[14] @ g[3]
    for m in g:
        m.flags.writeable = False
    return tuple(g)


GAMMA = _build_basis()

# gamma(k)^2 = sign * identity; +1 for the symmetric basis elements
# (boost generators), -1 for the skew-symmetric ones (rotation generators).
_SIGNATURE = tuple(int(round((m @ m)[0, 0])) for m in GAMMA)


def gamma(k: int) -> np.ndarray:
    """Return the k-th real Dirac matrix, k in 0..15 (read-only view)."""
    if not 0 <= k <= 15:
        raise IndexError(f"gamma index out of range: {k}")
    return GAMMA[k]


def gamma_signature(k: int) -> int:
    """Sign s with gamma(k) @ gamma(k) == s * identity (+1 or -1)."""
    if not 0 <= k <= 15:
        raise IndexError(f"gamma index out of range: {k}")
    return _SIGNATURE[k]


def symplectic_unit(n: int = 2) -> np.ndarray:
    """Block-diagonal 2n x 2n symplectic unit for (q1, p1, ..., qn, pn) ordering."""
    g0 = np.zeros((2 * n, 2 * n))
    for i in range(0, 2 * n, 2):
        g0[i, i + 1] = 1.0
        g0[i + 1, i] = -1.0
    return g0


def rdm_coefficients(M: np.ndarray) -> np.ndarray:
    """Expansion coefficients of a real 4x4 matrix over the Dirac basis.

    Returns the length-16 vector m with M = sum_k m[k] * gamma(k), computed
    from m_k = Tr(gamma_k^2) * Tr(M gamma_k + gamma_k M) / 32.
    """
    M = np.asarray(M, dtype=float)
    if M.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {M.shape}")
    out = np.empty(16)
    for k in range(16):
        out[k] = _SIGNATURE[k] * np.trace(M @ GAMMA[k]) / 4.0
    return out


def from_coefficients(c: np.ndarray) -> np.ndarray:
    """Reassemble sum_k c[k] * gamma(k) from a length-16 coefficient vector."""
    c = np.asarray(c, dtype=float)
    if c.shape != (16,):
        raise ValueError(f"expected 16 coefficients, got shape {c.shape}")
    M = np.zeros((4, 4))
    for k in range(16):
        if c[k] != 0.0:
            M += c[k] * GAMMA[k]
    return M


def _relative_scale(M: np.ndarray) -> float:
    return max(1.0, float(np.linalg.norm(M)))


def is_symplex(M: np.ndarray, tol: float = 1e-10) -> bool:
    """True iff M^T = g0 M g0 within tol relative to the Frobenius norm.

    Works for any even dimension 2n with the block-diagonal symplectic unit.
    """
    M = np.asarray(M, dtype=float)
    g0 = symplectic_unit(M.shape[0] // 2)
    resid = np.linalg.norm(M.T - g0 @ M @ g0)
    return resid <= tol * _relative_scale(M)


def is_cosymplex(M: np.ndarray, tol: float = 1e-10) -> bool:
    """True iff M^T = -g0 M g0 within tol relative to the Frobenius norm."""
    M = np.asarray(M, dtype=float)
    g0 = symplectic_unit(M.shape[0] // 2)
    resid = np.linalg.norm(M.T + g0 @ M @ g0)
    return resid <= tol * _relative_scale(M)


def symplex_cosymplex_split(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split M into its symplex and cosymplex parts.

    Returns (Ms, Mc) with Ms = (M + g0 M^T g0)/2 a symplex,
    Mc = (M - g0 M^T g0)/2 a cosymplex, and Ms + Mc = M.
    For a symplectic matrix this coincides with Ms = (M - M^-1)/2.
    """
    M = np.asarray(M, dtype=float)
    g0 = symplectic_unit(M.shape[0] // 2)
    pulled = g0 @ M.T @ g0
    return (M + pulled) / 2.0, (M - pulled) / 2.0

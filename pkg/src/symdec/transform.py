"""Elementary symplectic transforms and similarity machinery.

Each of the ten basic symplices generates a one-parameter family of
symplectic matrices R_b(eps) = exp(gamma_b * eps/2), evaluated in closed
form: rotations (generator squaring to -1) use cos/sin of the half angle,
boosts (squaring to +1) use cosh/sinh of the half rapidity.  Transforms
carry their inverse (the -eps closed form) and a replayable step log.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dirac import GAMMA, gamma_signature, symplectic_unit
from .errors import DimensionMismatch

__all__ = [
    "TransformStep",
    "SymplecticTransform",
    "TransferMatrix",
    "identity_transform",
    "basic_transform",
    "apply_similarity",
    "compose",
    "embed_4x4",
    "replay",
    "block_scaling",
    "symplectic_residual",
    "matrix_exponential",
]

ROTATION_GENERATORS = (0, 7, 8, 9)
BOOST_GENERATORS = (1, 2, 3, 4, 5, 6)


@dataclass(frozen=True)
class TransformStep:
    """One generator application: which gamma, the full angle/rapidity,
    and (for 2n > 4) the pair of degrees of freedom it was embedded at."""

    generator: int
    epsilon: float
    block: tuple[int, int] | None = None
    skipped: bool = False


@dataclass(frozen=True)
class SymplecticTransform:
    """Accumulated similarity transform with closed-form inverse and log."""

    r: np.ndarray
    rinv: np.ndarray
    steps: tuple[TransformStep, ...] = ()

    @property
    def dim(self) -> int:
        return self.r.shape[0]

    def residual(self) -> float:
        """Frobenius deviation from the symplectic condition."""
        return symplectic_residual(self.r)


@dataclass(frozen=True)
class TransferMatrix:
    """Matrix exponential of a symplex over a path length / period tau."""

    matrix: np.ndarray
    tau: float
    symplectic_residual: float


def symplectic_residual(R: np.ndarray) -> float:
    """|| R g0 R^T - g0 ||_F for the block-diagonal symplectic unit."""
    R = np.asarray(R, dtype=float)
    g0 = symplectic_unit(R.shape[0] // 2)
    return float(np.linalg.norm(R @ g0 @ R.T - g0))


def identity_transform(dim: int = 4) -> SymplecticTransform:
    """The do-nothing transform of the given even dimension."""
    return SymplecticTransform(r=np.eye(dim), rinv=np.eye(dim))


def basic_transform(b: int, epsilon: float,
                    skipped: bool = False) -> SymplecticTransform:
    """Elementary 4x4 transform generated by gamma(b), b in 0..9.

    The parameter is the full angle (rotation) or rapidity (boost); the
    closed form uses the half parameter.  The inverse is the -epsilon
    closed form, exact up to the cos^2+sin^2 / cosh^2-sinh^2 identities.
    """
    if not 0 <= b <= 9:
        raise IndexError(f"generator index out of range: {b}")
    if not math.isfinite(epsilon):
        raise ValueError(f"non-finite transform parameter: {epsilon}")
    g = GAMMA[b]
    eye = np.eye(4)
    if gamma_signature(b) < 0:
        c, s = math.cos(epsilon / 2.0), math.sin(epsilon / 2.0)
    else:
        c, s = math.cosh(epsilon / 2.0), math.sinh(epsilon / 2.0)
    step = TransformStep(generator=b, epsilon=float(epsilon), skipped=skipped)
    return SymplecticTransform(r=c * eye + s * g, rinv=c * eye - s * g,
                               steps=(step,))


def apply_similarity(t: SymplecticTransform, F: np.ndarray) -> np.ndarray:
    """Similarity action R F R^-1 on a matrix of matching dimension."""
    F = np.asarray(F, dtype=float)
    if F.shape != (t.dim, t.dim):
        raise DimensionMismatch(
            f"transform is {t.dim}x{t.dim}, matrix has shape {F.shape}")
    return t.r @ F @ t.rinv


def compose(t2: SymplecticTransform, t1: SymplecticTransform) -> SymplecticTransform:
    """Transform applying t1 first, then t2 (R = R2 R1)."""
    if t1.dim != t2.dim:
        raise DimensionMismatch(
            f"cannot compose {t2.dim}x{t2.dim} with {t1.dim}x{t1.dim}")
    return SymplecticTransform(r=t2.r @ t1.r, rinv=t1.rinv @ t2.rinv,
                               steps=t1.steps + t2.steps)


def embed_4x4(t: SymplecticTransform, i: int, j: int, n: int) -> SymplecticTransform:
    """Embed a 4x4 transform at the degree-of-freedom pair (i, j) of n.

    The 2n x 2n result is the identity outside the four 2x2 blocks at
    rows/columns (2i, 2i+1) and (2j, 2j+1).
    """
    if t.dim != 4:
        raise DimensionMismatch("only 4x4 transforms can be embedded")
    if not 0 <= i < j < n:
        raise IndexError(f"invalid block pair ({i}, {j}) for n={n}")
    idx = np.array([2 * i, 2 * i + 1, 2 * j, 2 * j + 1])
    r = np.eye(2 * n)
    rinv = np.eye(2 * n)
    r[np.ix_(idx, idx)] = t.r
    rinv[np.ix_(idx, idx)] = t.rinv
    steps = tuple(
        TransformStep(generator=s.generator, epsilon=s.epsilon,
                      block=(i, j), skipped=s.skipped)
        for s in t.steps)
    return SymplecticTransform(r=r, rinv=rinv, steps=steps)


def replay(steps, dim: int = 4) -> SymplecticTransform:
    """Rebuild the accumulated transform from a step log.

    Steps are applied in log order (earliest first), skipped entries
    included as identity factors, embedded entries placed at their
    recorded block pair.
    """
    total = identity_transform(dim)
    n = dim // 2
    for s in steps:
        eps = 0.0 if s.skipped else s.epsilon
        if dim == 2:
            # single degree of freedom: only the phase rotation survives
            if s.generator != 0:
                raise DimensionMismatch(
                    f"generator {s.generator} has no 2x2 restriction")
            c, sa = math.cos(eps / 2.0), math.sin(eps / 2.0)
            r = np.array([[c, sa], [-sa, c]])
            t = SymplecticTransform(r=r, rinv=r.T, steps=(s,))
        else:
            t = basic_transform(s.generator, eps, skipped=s.skipped)
            if s.block is not None:
                t = embed_4x4(t, s.block[0], s.block[1], n)
            elif dim != 4:
                raise DimensionMismatch(
                    "un-embedded 4x4 step in a log of dimension "
                    f"{dim}; block indices required")
        total = compose(t, total)
    return total


def block_scaling(exponents) -> SymplecticTransform:
    """Diagonal symplectic scaling diag(exp(-u_k), exp(u_k)) per dof.

    Composed from the gamma(3)/gamma(4) generators embedded pairwise, so
    the step log stays replayable.  One exponent per degree of freedom.
    """
    exponents = [float(u) for u in np.atleast_1d(exponents)]
    n = len(exponents)
    if n == 1:
        u = exponents[0]
        r = np.diag([math.exp(-u), math.exp(u)])
        rinv = np.diag([math.exp(u), math.exp(-u)])
        step = TransformStep(generator=3, epsilon=2.0 * u, skipped=u == 0.0)
        return SymplecticTransform(r=r, rinv=rinv, steps=(step,))
    total = identity_transform(2 * n)
    pairs = [(k, k + 1, exponents[k], exponents[k + 1])
             for k in range(0, n - 1, 2)]
    if n % 2:
        pairs.append((n - 2, n - 1, 0.0, exponents[n - 1]))
    for (i, j, u, v) in pairs:
        t = compose(basic_transform(4, u - v), basic_transform(3, u + v))
        total = compose(embed_4x4(t, i, j, n), total)
    return total


def matrix_exponential(F: np.ndarray, s: float = 1.0) -> TransferMatrix:
    """Transfer matrix exp(F s) by scaling-and-squaring of a Taylor series.

    The symplecticity residual of the result is computed and reported on
    the returned TransferMatrix; it is never silently repaired.
    """
    F = np.asarray(F, dtype=float)
    if F.ndim != 2 or F.shape[0] != F.shape[1] or F.shape[0] % 2:
        raise DimensionMismatch(f"expected a square even matrix, got {F.shape}")
    A = F * s
    norm = float(np.linalg.norm(A, ord=1))
    squarings = max(0, int(math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0)
    A = A / (2.0 ** squarings)
    dim = F.shape[0]
    result = np.eye(dim)
    term = np.eye(dim)
    for k in range(1, 40):
        term = term @ A / k
        result = result + term
        if np.linalg.norm(term) <= 1e-20 * np.linalg.norm(result):
            break
    for _ in range(squarings):
        result = result @ result
    return TransferMatrix(matrix=result, tau=float(s),
                          symplectic_residual=symplectic_residual(result))

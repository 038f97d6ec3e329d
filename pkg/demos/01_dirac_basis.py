"""The real Dirac matrix basis and the symplex/cosymplex split.

Every real 4x4 matrix expands uniquely over sixteen basis matrices with
integer entries.  The first ten are symplices (Hamiltonian matrices) --
the building blocks of linear dynamics -- and the remaining six are
cosymplices.  Commutators and anticommutators move between the two
families in a fixed pattern.
"""

import numpy as np

from symdec import (from_coefficients, gamma, is_cosymplex, is_symplex,
                    rdm_coefficients, symplex_cosymplex_split)

np.set_printoptions(precision=3, suppress=True)

print("The symplectic unit (generator of phase rotations):")
print(gamma(0), "\n")

print("A boost generator (symmetric, squares to +1):")
print(gamma(4), "\n")

print("The pseudoscalar gamma(14) = gamma0 gamma1 gamma2 gamma3:")
print(gamma(14), "\n")

for k in (0, 4, 14):
    sq = gamma(k) @ gamma(k)
    print(f"gamma({k})^2 = {'+' if sq[0, 0] > 0 else '-'}identity, "
          f"symplex={is_symplex(gamma(k))}, cosymplex={is_cosymplex(gamma(k))}")

# --- coefficient extraction is exact ---------------------------------------
rng = np.random.default_rng(1)
M = rng.standard_normal((4, 4))
coeffs = rdm_coefficients(M)
print("\nRandom matrix expanded over the basis; reconstruction error:",
      np.max(np.abs(from_coefficients(coeffs) - M)))

# --- the closure pattern ----------------------------------------------------
c = np.zeros(16)
c[:10] = rng.uniform(-1, 1, 10)
S1 = from_coefficients(c)
c2 = np.zeros(16)
c2[:10] = rng.uniform(-1, 1, 10)
S2 = from_coefficients(c2)

print("\nTwo random symplices S1, S2:")
print("  [S1, S2] is a symplex:   ", is_symplex(S1 @ S2 - S2 @ S1))
print("  {S1, S2} is a cosymplex: ", is_cosymplex(S1 @ S2 + S2 @ S1))

# --- splitting a transfer matrix --------------------------------------------
from symdec import matrix_exponential

M = matrix_exponential(S1 * 0.3, 1.0).matrix
Ms, Mc = symplex_cosymplex_split(M)
print("\nTransfer matrix exp(F) split into symplex + cosymplex parts:")
print("  Ms symplex:", is_symplex(Ms), "  Mc cosymplex:", is_cosymplex(Mc))
print("  Ms equals (M - M^-1)/2:",
      np.allclose(Ms, (M - np.linalg.inv(M)) / 2))

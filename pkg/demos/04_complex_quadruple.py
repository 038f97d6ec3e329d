"""Force matrices with eigenvalues off both axes.

When the second invariant K2 is negative the four eigenvalues form a
quadruple in the complex plane and no real 2x2-block-diagonalization
exists.  The matrix can still be driven to a real canonical form with
only three surviving coefficients (E_y, E_z, B_y); the eigenvalues then
sit on a circle of radius (K1^2 + 4 |K2|)^(1/4).
"""

import numpy as np

from symdec import (complex_intermediate, complex_low_energy, decouple,
                    emeq_from_symplex, gamma, spectral_invariants)
from symdec.errors import ComplexEigenvalues

np.set_printoptions(precision=5, suppress=True)

# the minimal example: an electric and a magnetic x-component
ex, bx = 0.6, 1.1
F = ex * gamma(4) + bx * gamma(7)
print("F = E_x gamma(4) + B_x gamma(7), eigenvalues +-i(B_x +- i E_x):")
print(np.round(np.linalg.eigvals(F), 5))

inv = spectral_invariants(emeq_from_symplex(F))
print("\nK2 = %.4f < 0 -> %s" % (inv.k2, inv.classification))

try:
    from symdec import decouple_block_diagonal
    decouple_block_diagonal(F)
except ComplexEigenvalues as exc:
    print("block-diagonalization refuses:", exc)

res = decouple(F)   # routes to the appropriate complex procedure
print("\nCanonical form (surviving coefficients E_y, E_z, B_y):")
print(res.final.matrix)
c = res.final.state.coefficients
print("coefficients:", np.round(c, 6))
print("eigenvalue circle radius rho =", res.complex_radius,
      " vs |eigenvalues| =", np.abs(np.linalg.eigvals(F))[0])

# --- the two energy regimes agree where they overlap -------------------------
rng = np.random.default_rng(7)
while True:
    coeff = np.zeros(16)
    coeff[:10] = rng.uniform(-1, 1, 10)
    from symdec import from_coefficients
    F = from_coefficients(coeff)
    state = emeq_from_symplex(F)
    inv = spectral_invariants(state)
    e2 = state.energy**2
    p2, em2 = state.p @ state.p, state.e @ state.e
    if inv.k2 < 0 and min(p2, em2) < e2 < max(p2, em2):
        break

r_low = complex_low_energy(F)
r_int = complex_intermediate(F)
print("\nOverlap-region sample decoupled by both procedures:")
print("  low-energy route radius:   ", r_low.complex_radius)
print("  intermediate route radius: ", r_int.complex_radius)
print("  step counts (non-skip):",
      sum(not s.skipped for s in r_low.transform.steps), "vs",
      sum(not s.skipped for s in r_int.transform.steps))

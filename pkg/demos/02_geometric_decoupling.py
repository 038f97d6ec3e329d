"""Decoupling a coupled two-oscillator force matrix, step by step.

The ten coefficients of a 4x4 symplex read as an energy and three
vectors P, E, B.  Coupling lives in the misalignment of these vectors:
the matrix is block-diagonal exactly when B and the auxiliary vector
b = energy*B + E x P point along the y-axis and the scalar products
E.B and B.P vanish.  Four elementary transforms arrange exactly that.
"""

import numpy as np

from symdec import (aux_vectors, decouple_block_diagonal, diagonalize,
                    emeq_from_symplex, mass_components, spectral_invariants,
                    to_hamiltonian_form, to_normal_form)
from symdec.dirac import symplectic_unit

np.set_printoptions(precision=5, suppress=True)
rng = np.random.default_rng(42)

# a random stable coupled system: F = g0 A with A symmetric, focusing
A = rng.uniform(-0.5, 0.5, (4, 4))
A = (A + A.T) / 2
A[np.diag_indices(4)] = 2 + rng.uniform(0, 1, 4)
F = symplectic_unit(2) @ A
print("Coupled force matrix F:")
print(F)

state = emeq_from_symplex(F)
m = mass_components(state)
print("\nEMEQ view:  energy =", round(state.energy, 5))
print("  P =", state.p, "\n  E =", state.e, "\n  B =", state.b)
print("  scalar products E.B, B.P, E.P:", (m.m_r, m.m_g, m.m_b))

inv = spectral_invariants(state)
print("\nInvariants: K1 =", inv.k1, " K2 =", inv.k2)
print("Eigenfrequencies:", inv.omega1, inv.omega2)

# --- stage 1: block-diagonal ------------------------------------------------
res = decouple_block_diagonal(F)
print("\nTransform sequence (generator, angle):")
for s in res.transform.steps:
    tag = "skip" if s.skipped else f"{s.epsilon:+.5f}"
    print(f"  gamma({s.generator}): {tag}")
print("Block-diagonal matrix (off-block residual %.1e):" % res.residual)
print(res.final.matrix)
a = aux_vectors(res.final.state)
print("auxiliary b now along y:", a.b)

# --- stage 2: Hamiltonian form (zero block diagonals) ------------------------
res = to_hamiltonian_form(res)
print("\nHamiltonian form:")
print(res.final.matrix)

# --- stage 3: normal form (pure rotation blocks) ------------------------------
res = to_normal_form(res)
print("\nNormal form with frequencies",
      [round(w.value, 6) for w in res.frequencies], ":")
print(res.final.matrix)

# the frequencies agree with the invariant formulas on the original matrix
print("vs invariant formulas:",
      [round(inv.omega1.value, 6), round(inv.omega2.value, 6)])

# --- stage 4: full diagonalization -------------------------------------------
vecs, vals = diagonalize(res)
print("\nEigenvalues from the constant unitary basis:", np.round(vals, 6))
print("Eigen-equation residual:",
      np.max(np.abs(F @ vecs - vecs * vals)))

"""Bilinear observables of a phase-space vector along the flow.

For a state psi the sixteen bilinears psibar gamma_k psi split cleanly:
the cosymplex ones vanish identically, and the anticommutator
observables g_k = psibar (gamma_k F + F gamma_k) psi vanish for all
symplex k.  The six surviving cosymplex observables are bilinear in the
force coefficients, and their time derivatives along psi' = F psi close
on the mass components and the auxiliary vector b.  In the decoupled
frame the mass-driven terms are gone and only b_y feeds the rates.
"""

import numpy as np

from symdec import (cosymplex_observable_forms, cosymplex_observable_rates,
                    decouple, emeq_from_symplex, from_coefficients,
                    matrix_exponential, rdm_expectations, spinor_observables)

np.set_printoptions(precision=6, suppress=True)
rng = np.random.default_rng(11)

c = np.zeros(16)
c[:10] = rng.uniform(-1, 1, 10)
F = from_coefficients(c)
state = emeq_from_symplex(F)
psi = rng.standard_normal(4)

f, g = spinor_observables(psi, F)
print("expectation values f_0..f_9:", f)
print("\nsymplex observables vanish:", np.max(np.abs(g[:10])))
print("cosymplex observables:", g[10:])
print("closed forms agree:",
      np.max(np.abs(g[10:] - cosymplex_observable_forms(
          state, rdm_expectations(psi)))))

# --- rates along the flow ------------------------------------------------------
h = 1e-6
rates = cosymplex_observable_rates(state, rdm_expectations(psi))
plus = matrix_exponential(F, h).matrix @ psi
minus = matrix_exponential(F, -h).matrix @ psi
fd = (spinor_observables(plus, F)[1][10:]
      - spinor_observables(minus, F)[1][10:]) / (2 * h)
print("\nanalytic rates:       ", rates)
print("finite-difference:    ", fd)

# after decoupling the mass terms E.B and B.P are gone and b lies on the
# y-axis, so only the b_y entries survive in the rate formulas
from symdec import aux_vectors, mass_components

res = decouple(F, form="hamiltonian")
state_d = res.final.state
m = mass_components(state_d)
print("\ndecoupled frame: E.B = %.1e, B.P = %.1e, b = %s"
      % (m.m_r, m.m_g, np.round(aux_vectors(state_d).b, 6)))
rates_d = cosymplex_observable_rates(state_d, rdm_expectations(psi))
print("rates now carried by b_y alone:", rates_d)

"""Symplectic decoupling of coupled linear oscillators.

Block-diagonalizes Hamiltonian (force) matrices by symplectic similarity
transforms built from the sixteen real Dirac matrices, and applies the
machinery to periodic accelerator optics: tunes, matched second moments,
effective force matrices and motion invariants.
"""

from .dirac import (GAMMA, from_coefficients, gamma, is_cosymplex,
                    is_symplex, rdm_coefficients, symplectic_unit,
                    symplex_cosymplex_split)
from .emeq import (AuxVectors, EmeqState, Frequency, MassComponents,
                   SpectralInvariants, aux_vectors, emeq_from_symplex,
                   lax_invariants, mass_components, spectral_invariants,
                   state_from_coefficients)
from .transform import (SymplecticTransform, TransferMatrix, TransformStep,
                        apply_similarity, basic_transform, block_scaling,
                        compose, embed_4x4, identity_transform,
                        matrix_exponential, replay, symplectic_residual)
from .decouple4 import (DecoupleResult, Symplex4, Tolerances,
                        closed_form_block_coefficients, complex_intermediate,
                        complex_low_energy, decouple, decouple_block_diagonal,
                        diagonalize, to_hamiltonian_form, to_normal_form)
from .jacobi import (IterationStats, SymplexN, jacobi_decouple,
                     off_block_norms, random_test_symplex)
from .optics import (BlockTune, EffectiveForce, OpticsReport, SigmaMatrix,
                     analyze_one_turn, cosymplex_observable_forms,
                     cosymplex_observable_rates, effective_force,
                     matched_sigma, propagate_sigma, rdm_expectations,
                     spinor_observables, tune_cosines_from_traces)
from . import errors

__version__ = "0.1.0"

"""Exact-arithmetic workbench for restricted sl2 module families.

Everything is computed over small finite fields GF(p^m) with no floating
point anywhere in the mathematics: module constructions, graded
induction with its shift filtration, rank varieties, endomorphism-ring
analysis and Clifford-style decompositions are all exact matrix
computations, each guarded by structural invariants that are checked at
construction time.
"""

from .field import Field, GF
from .linalg import Mat, kernel_basis, mat_mul, rank, subspace_ops
from .reps import (Rep, SL2Element, baby_verma, check_rep, direct_sum, dual,
                   premet_w, simple, sub_quotient, quotient_rep,
                   submodule_spin, tensor, twist, weyl)
from .graded import (Filtration, GradedRep, char_twist, check_graded,
                     dual_graded, induce, induce_graded, realize_x, restrict,
                     restrict_level, shift_operator, twist_graded, unit_map,
                     verify_nonsplit_steps, voigt_filtration, weyl_graded,
                     premet_w_graded, baby_verma_graded)
from .homalg import (EndAlgebra, HomSpace, algebra_radical, base_change,
                     decompose, ext1_dim, hom_basis, hom_dim, is_brick,
                     is_indecomposable, is_isomorphic, is_projective,
                     isomorphism_witness, module_radical, omega, pims,
                     projective_cover, restrict_scalars)
from .skew import SkewRep, clifford_counts, skew_decompose, skew_induce, skew_restrict
from .support import (FiniteSubgroup, ProjPoint, act_on_point,
                      cyclic_torus_subgroup, is_cyclic, module_stabilizer,
                      nullcone_point, orbit_stabilizer, point_projective,
                      projective_line, support)
from .serialize import load, save
from .suites import SUITE_NAMES, run_suite

__version__ = "0.1.0"

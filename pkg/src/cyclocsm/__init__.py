"""Coincidence site modules of the 29 class-number-one cyclotomic fields.

Counting functions for simple and multiple coincidences, their Dirichlet
series and residues, and an exact lattice oracle for cross-checking.
"""
from .analytic import (DirichletCharacter, ResidueReport, characters, dedekind_zeta_K,
                       dedekind_zeta_L, digamma, hurwitz_zeta, l_value, phi_value,
                       psi_value, residues, riemann_zeta)
from .catalog import (CATALOG_N, CyclotomicField, PrimeSplitting, basic_indices, catalog,
                      classify_prime, field, residue_class_table)
from .counting import (CoefficientTable, IdealFactorization, basic_index_factorization,
                       coefficient_table, count, enumerate_csms, euler_factor, ideal_count,
                       is_coincidence_index, multiple_count, simple_count, summatory)
from .errors import (ArithmeticOverflowError, ConvergenceError, DomainError, PoleError,
                     ResourceError)
from .kernels import BACKEND
from .oracle import (QuadraticIntegerElement, RotationWord, SubmoduleBasis,
                     brute_force_counts, intersect_modules, norm_form_elements,
                     rotation_from_word)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

"""Real and complex induced (p, q) operator norms of matrices, and when they agree."""

from .bounds import cx_estimate, cx_lp, jensen_check, pathological_norm, ratio_check
from .counterexamples import (GapFixture, build_gap_fixture, check_fixtures, concavity_gap_check, matrix_A2x2,
                              matrix_A3x6, matrix_A6x3, perturbation_expansion_check, regenerate_fixtures)
from .engine import OperatorSpec, SearchConfig, opnorm, opnorm_absolute, opnorm_exact, opnorm_oracle, opnorm_search, \
    transpose_spec
from .equality import (QuadratureGrid, integral_inequality_check, phase_argmax_sup, phase_selection_finite,
                       verify_inner_product, verify_main_theorem, verify_modulus_bound, verify_nonnegative,
                       verify_weighted_max)
from .extension import (ExtensionNorm, GramNorm, NuFunctional, extension_norm_eval, nu_eval, verify_norm_axioms,
                        verify_opnorm_preservation)
from .lp import (INF, AbsoluteNorm, CVector, DimensionError, DiscreteMeasure, Field, NormCertificate, dual_exponent,
                 phase_function, real_part_rotation, weighted_pnorm)

__version__ = "0.1.0"

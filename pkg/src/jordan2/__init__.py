"""Two-dimensional real Jordan algebras: classification, orbit geometry,
rigidity probes, and exact symbolic contractions."""

from .core import (ALL_DIRECTIONS, BilinearSym, DimensionError, JordanLaw,
                   LinearMap, MultipleUnitsError, ProjectiveDirection,
                   SingularMapError, act, find_ideals_1d, find_unit,
                   is_jordan, is_simple, isotropic_directions, j2_residuals,
                   jordan_residual, law_from_document, law_to_document,
                   load_law, mul, sj_residuals)
from .classify import (CanonicalClass, ClassificationReport,
                       IndeterminateError, NotJordanError, canonical_law,
                       classify, discriminant_in_unit_basis, image_rank,
                       is_isomorphic, iso_witness, verify_witness)
from .geometry import (TangentReport, cocycle_endo, delta_bilinear, g_space,
                       orbit_dim, orbit_tangent, plane_in_variety,
                       tangent_report)
from .deform import (NonConvergenceError, RigidityReport, VarietyPoint,
                     example1_constraint_check, forbidden_degeneration_check,
                     newton_project, rigidity_probe, sample_perturbations,
                     sj_jacobian)
from .contract import (ContractionFamily, ContractionResult,
                       DegenerationGraph, LaurentPoly, RationalFunction,
                       check_dimension_inequality, contract,
                       degeneration_graph, emit_dot, family_inverse,
                       known_contractions, load_family)
from .scalars import RATIONAL_MODE, REAL_MODE, COMPLEX_MODE, ScalarMode

__version__ = "0.1.0"

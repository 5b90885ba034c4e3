"""Exact Hodge-type spectra of exponentially twisted de Rham cohomology for
Laurent polynomials on algebraic tori.

Everything runs in exact rational arithmetic: the jumps and graded
multiplicities of the filtration on twisted cohomology are computed twice,
by a combinatorial route (weight censuses of the Newton polytope) and by an
independent linear-algebra route (exact ranks of filtered subcomplexes), and
a dedicated projective-line engine handles the one-variable comparisons.
"""

from .errors import (BadPrimeError, BudgetExceededError, DegenerateInputError,
                     ExpHodgeError, IntegrityError, NotFullDimensionalError,
                     ParseError)
from .laurent import (LaurentPolynomial, face_restriction, format_laurent,
                      log_derivative, make_laurent, parse_laurent, reduce_mod_p)
from .polytope import Face, Facet, NewtonPolytope, newton_polytope
from .linalg import SparseRationalMatrix
from .nondegen import NondegeneracyReport, is_nondegenerate
from .derham import (ComplexSlice, GradedSlice, betti_numbers,
                     build_filtration_level, build_graded_level, exact_rank,
                     filtration_image_dim)
from .spectrum import (AnalysisReport, HodgeSpectrum, analyze,
                       check_degeneration, check_symmetry, jump_candidates,
                       spectrum_euler, spectrum_rank)
from .curve import (CechModel, CurveFiltrationReport, PointDivisor,
                    TwoTermComplex, cech_hypercohomology,
                    compact_filtration_on_H1, compare_filtrations,
                    deligne_filtration_on_H1, deligne_injectivity,
                    divisor_shift_invariance, duality_check_curve,
                    divisor_twist_filtration_on_H1, pole_divisor)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ExpHodgeError", "ParseError", "NotFullDimensionalError",
    "DegenerateInputError", "BadPrimeError", "BudgetExceededError",
    "IntegrityError",
    "LaurentPolynomial", "make_laurent", "parse_laurent", "format_laurent",
    "log_derivative", "face_restriction", "reduce_mod_p",
    "NewtonPolytope", "Face", "Facet", "newton_polytope",
    "SparseRationalMatrix",
    "NondegeneracyReport", "is_nondegenerate",
    "ComplexSlice", "GradedSlice", "build_filtration_level",
    "build_graded_level", "betti_numbers", "filtration_image_dim", "exact_rank",
    "HodgeSpectrum", "AnalysisReport", "jump_candidates", "spectrum_euler",
    "spectrum_rank", "check_degeneration", "check_symmetry", "analyze",
    "PointDivisor", "TwoTermComplex", "CechModel", "CurveFiltrationReport",
    "pole_divisor", "cech_hypercohomology", "divisor_twist_filtration_on_H1",
    "deligne_filtration_on_H1", "deligne_injectivity",
    "compact_filtration_on_H1", "compare_filtrations", "duality_check_curve",
    "divisor_shift_invariance",
]

"""Saturated Jacobian ideals of projective hypersurfaces: defects, spectrum
bounds and Alexander-root exclusions, computed with exact arithmetic."""

from .alexander import (AnalysisReport, TripleVerdict, alpha, analyze, classify_triple, psi,
                        spectrum_bounds, sweep_triples)
from .hilbert import (CIData, DefectProfile, ci_hilbert, ci_last_defect_degree, defect_profile,
                      hilbert_function, scheme_length)
from .ideals import (GroebnerBasis, Ideal, colon_saturate_by, groebner_basis, ideal_intersection,
                     ideal_sum, jacobian_ideal, krull_dimension, normal_form, saturation_irrelevant)
from .polyring import (MonomialOrder, Polynomial, RingContext, graded_dim, parse_poly,
                       random_general_form)

__version__ = "0.1.0"

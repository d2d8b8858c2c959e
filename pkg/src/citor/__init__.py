"""Exact homological invariants of module pairs over graded complete intersections."""

__version__ = "0.1.0"

from .scalar import GF, INF, QQ, FieldError, field_from_descriptor  # noqa: E402
from .poly import PolyParseError, PolyRing, Polynomial  # noqa: E402
from .groebner import (FreeModule, GroebnerBasis, InhomogeneousError, TrackedBasis,  # noqa: E402
                       buchberger, hilbert, normal_form, syzygies)
from .rings import NotRegularSequence, RingSpec, verify_regular_sequence  # noqa: E402
from .modules import (GradedPresentation, LengthReport, ModuleMap, depth, hom_into_ring,  # noqa: E402
                      length_report, minimal_presentation, mu, pushforward, tensor)
from .resolution import (HorizonError, InfiniteResolution, MatrixFactorization,  # noqa: E402
                         ResolutionPrefix, eisenbud_operators, matrix_factorization, resolve)
from .pairs import (BettiSequence, betti_sequence, change_of_rings_check, ext,  # noqa: E402
                    kirby_check, operator_action_on_tor, tor)
from .asymptotics import (EtaValue, FitError, SeriesFit, complexities,  # noqa: E402
                          dimension_inequality_check, eta, fit_sequence, fit_series,
                          gulliksen_chi, rigidity_check, serre_chi, theta)

__all__ = [
    "GF", "INF", "QQ", "FieldError", "field_from_descriptor",
    "PolyParseError", "PolyRing", "Polynomial",
    "FreeModule", "GroebnerBasis", "InhomogeneousError", "TrackedBasis", "buchberger",
    "hilbert", "normal_form", "syzygies",
    "NotRegularSequence", "RingSpec", "verify_regular_sequence",
    "GradedPresentation", "LengthReport", "ModuleMap", "depth", "hom_into_ring",
    "length_report", "minimal_presentation", "mu", "pushforward", "tensor",
    "HorizonError", "InfiniteResolution", "MatrixFactorization", "ResolutionPrefix",
    "eisenbud_operators", "matrix_factorization", "resolve",
    "BettiSequence", "betti_sequence", "change_of_rings_check", "ext", "kirby_check",
    "operator_action_on_tor", "tor",
    "EtaValue", "FitError", "SeriesFit", "complexities", "dimension_inequality_check", "eta",
    "fit_sequence", "fit_series", "gulliksen_chi", "rigidity_check", "serre_chi", "theta",
]

"""Exact q-polynomial calculus: Al-Salam--Carlitz I families and the
quasi-orthogonal q-Appell families built from them."""

from .alsalamcarlitz import (
    MalformedFamilyError,
    PolyFamily,
    TTRRCoeffs,
    asc_hypergeom,
    asc_recurrence,
    scaled_family,
    ttrr_coeffs,
)
from .appell import AppellReport, check_appell
from .exactnum import parse_rational, qfact, qnum, qparam, qpochhammer
from .qpoly import QPoly, hahn_derivative, qproduct_basis, scale_arg
from .quasi import (
    MomentFunctional,
    QuasiParams,
    RecurrenceParams,
    build_Q,
    connection_coeffs,
    extract_recurrence_params,
    functional_apply,
    moments_from_ttrr,
    quasi_orthogonality_test,
    reconstruct_P_from_Q,
    riesz_decompose,
    verify_extended_recurrence,
)

__version__ = "0.1.0"

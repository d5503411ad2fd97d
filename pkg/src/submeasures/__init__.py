"""Exact computations with lower semicontinuous submeasures on the naturals."""
from .colorings import (
    Coloring,
    eventually_disjoint_extract,
    hom_cover_number,
    is_homogeneous,
    ramsey_extract,
    schreier_c3,
)
from .core import (
    CoverNumber,
    Filtration,
    PointMeasure,
    Submeasure,
    SupMeasures,
    TableSubmeasure,
    VectorSeq,
    evaluate,
    sum_combine,
    sum_exh_diagnostics,
    sup_combine,
    symdiff_metric,
    validate_table,
)
from .errors import (
    BudgetExhausted,
    CapExceeded,
    CertificateError,
    PreconditionError,
    SelectorFailure,
    SubmeasureError,
    UniverseError,
)
from .extended import INF, format_ext, parse_ext
from .ideals import ARITH_V1, SEGMENTS_V1, CanonicalIdeal, bounded_on_prefix, has_property_A
from .pathology import hat_phi, integer_pathology_criterion, pathology_degree
from .selectors import (
    SelectorCertificate,
    bp_select,
    c0like_selector,
    property_A_selector,
    schreier_selector,
    small_norm_selector,
    tall_selector,
    verify_certificate,
)
from .streams import SetStream

__all__ = [
    "ARITH_V1", "SEGMENTS_V1", "INF",
    "BudgetExhausted", "CanonicalIdeal", "CapExceeded", "CertificateError", "Coloring", "CoverNumber",
    "Filtration", "PointMeasure", "PreconditionError", "SelectorCertificate", "SelectorFailure", "SetStream",
    "Submeasure", "SubmeasureError", "SupMeasures", "TableSubmeasure", "UniverseError", "VectorSeq",
    "bounded_on_prefix", "bp_select", "c0like_selector", "evaluate", "eventually_disjoint_extract",
    "format_ext", "has_property_A", "hat_phi", "hom_cover_number", "integer_pathology_criterion",
    "is_homogeneous", "parse_ext", "pathology_degree", "property_A_selector", "ramsey_extract",
    "schreier_c3", "schreier_selector", "small_norm_selector", "sum_combine", "sum_exh_diagnostics",
    "sup_combine", "symdiff_metric", "tall_selector", "validate_table", "verify_certificate",
]

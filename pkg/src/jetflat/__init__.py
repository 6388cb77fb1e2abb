"""Numerical laboratory for jet-graph Legendrians and circle contactomorphisms.

Truncated Fourier functions with exact derivatives model generating
functions on the circle and the 2-torus; on top of them the package
computes order spectral selectors and the flat spectral distance, Reeb
chord spectra, sup-norm path lengths, quasi-autonomy witnesses for
geodesic verification, a variational path optimizer used as an independent
oracle, and the contact-product chart for circle contactomorphisms.
"""

from .config import RunConfig, thread_cap
from .contact import (
    CircleContactomorphism,
    ProductChartMap,
    SpectralNormResult,
    contact_qa_check,
    graph_of,
    rotation,
    shelukhin_norm_upper,
    spectral_norm,
    translated_points,
)
from .fourier import (
    CIRCLE,
    TORUS2,
    CriticalSet,
    DomainDescriptor,
    Extremum,
    FourierFunction,
    attaining_set,
    critical_set,
    evaluate,
    extremum,
    is_morse,
    sup_norm,
    sup_norm_by_squaring,
)
from .geodesics import (
    GeodesicCheckReport,
    IntegralCriterionReport,
    OptimizeResult,
    QAWitness,
    SegmentationReport,
    grid_flatness_gap,
    grid_quasi_autonomy_witness,
    integral_criterion,
    local_quasi_autonomy_check,
    minimizing_geodesic_check,
    monotone_check,
    optimize_path,
    quasi_autonomy_check,
)
from .jets import (
    ChordSpectrum,
    JetLegendrian,
    OrderVerdict,
    chord_spectrum,
    pointwise_leq,
    pointwise_leq_detailed,
    reeb_translate,
    zero_section,
)
from .paths import IsotopyPath
from .selectors import (
    AxiomSuiteReport,
    HamiltonianBounds,
    MetricLengthReport,
    SelectorReport,
    axiom_suite,
    hamiltonian_bounds_check,
    metric_length,
    sch_length,
    selector_csv,
    selectors,
    spectral_distance,
)

__all__ = [
    "CIRCLE",
    "TORUS2",
    "AxiomSuiteReport",
    "ChordSpectrum",
    "CircleContactomorphism",
    "CriticalSet",
    "DomainDescriptor",
    "Extremum",
    "FourierFunction",
    "GeodesicCheckReport",
    "HamiltonianBounds",
    "IntegralCriterionReport",
    "IsotopyPath",
    "JetLegendrian",
    "MetricLengthReport",
    "OptimizeResult",
    "OrderVerdict",
    "ProductChartMap",
    "QAWitness",
    "RunConfig",
    "SegmentationReport",
    "SelectorReport",
    "SpectralNormResult",
    "attaining_set",
    "axiom_suite",
    "chord_spectrum",
    "contact_qa_check",
    "critical_set",
    "evaluate",
    "extremum",
    "graph_of",
    "grid_flatness_gap",
    "hamiltonian_bounds_check",
    "grid_quasi_autonomy_witness",
    "integral_criterion",
    "is_morse",
    "local_quasi_autonomy_check",
    "metric_length",
    "minimizing_geodesic_check",
    "monotone_check",
    "optimize_path",
    "pointwise_leq",
    "pointwise_leq_detailed",
    "quasi_autonomy_check",
    "reeb_translate",
    "rotation",
    "sch_length",
    "selector_csv",
    "selectors",
    "shelukhin_norm_upper",
    "spectral_distance",
    "spectral_norm",
    "sup_norm",
    "sup_norm_by_squaring",
    "thread_cap",
    "translated_points",
    "zero_section",
]

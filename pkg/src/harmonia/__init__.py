"""harmonia: numerical verification of harmonic (s,m)-convexity results.

The package checks, end to end, a family of integral-inequality results for
harmonically (s,m)-convex functions: the convexity class itself and its
closure properties, a kernel integral identity for the deviation of a
three-point quadrature rule, two derivative-based upper bounds whose
coefficients have Beta/Gauss-2F1 closed forms, and the specializations of
those bounds at the trapezoid, midpoint, and simpson triples.  Every closed
form is cross-checked against an independent quadrature oracle; printed
coefficient cases that fail their oracle are flagged as errata (see
ERRATA.md) rather than silently corrected.
"""

from .errors import (
    AccuracyError,
    ConfigError,
    DomainError,
    EvaluationError,
    HarmoniaError,
    ParameterError,
    PreconditionError,
)
from .quadrature import DEFAULT_SETTINGS, QuadResult, QuadSettings, integrate, integrate_de
from .specfun import (
    DEFAULT_BUDGET,
    AccuracyBudget,
    beta,
    gamma,
    gamma_integral,
    hyp2f1,
    hyp2f1_euler,
    hyp2f1_series,
)
from .convexity import (
    DEFECT_TOL,
    PROPERTY_CORPUS,
    SM_PAIRS,
    Classification,
    ConvexityReport,
    CorpusEntry,
    FunctionSpec,
    GridSpec,
    ReflectionWitness,
    abs_deriv_pow,
    check_harmonic_sm,
    check_plain_sm,
    classify,
    combine,
    format_function_spec,
    harmonic_sm_defect,
    linear,
    parse_function_spec,
    power,
    reflection_witness,
    s_power,
)
from .identity import (
    IDENTITY_TOL,
    IdentityCheck,
    Instance,
    check_identity,
    kernel_representation,
    rule_deviation,
    rule_deviation_as_printed,
)
from .bounds import (
    CROSSCHECK_TOL,
    EXPECTED_COEFFICIENT_ERRATA,
    KIND_FOR_INDEX,
    MARGIN_TOL,
    PRESETS,
    BoundTerm,
    KernelKind,
    Verdict,
    b1_b4,
    b7_b10,
    case_label,
    certify_instance,
    check_theorem,
    closed_B,
    corollary_rhs,
    corrected_B,
    crosscheck_B,
    kernel_oracle,
    simpson_theorem2_prefactor,
    theorem1_rhs,
    theorem2_rhs,
)
from .harness import (
    CSV_COLUMNS,
    SCHEMA,
    Row,
    RunReport,
    SweepConfig,
    emit_report,
    generate_instances,
    report_to_dict,
    run_sweep,
)

__version__ = "1.0.0"

__all__ = [
    "AccuracyBudget",
    "AccuracyError",
    "BoundTerm",
    "CROSSCHECK_TOL",
    "CSV_COLUMNS",
    "Classification",
    "ConfigError",
    "ConvexityReport",
    "CorpusEntry",
    "DEFAULT_BUDGET",
    "DEFAULT_SETTINGS",
    "DEFECT_TOL",
    "DomainError",
    "EXPECTED_COEFFICIENT_ERRATA",
    "EvaluationError",
    "FunctionSpec",
    "GridSpec",
    "HarmoniaError",
    "IDENTITY_TOL",
    "IdentityCheck",
    "Instance",
    "KIND_FOR_INDEX",
    "KernelKind",
    "MARGIN_TOL",
    "PRESETS",
    "PROPERTY_CORPUS",
    "ParameterError",
    "PreconditionError",
    "QuadResult",
    "QuadSettings",
    "ReflectionWitness",
    "Row",
    "RunReport",
    "SCHEMA",
    "SM_PAIRS",
    "SweepConfig",
    "Verdict",
    "__version__",
    "abs_deriv_pow",
    "b1_b4",
    "b7_b10",
    "beta",
    "case_label",
    "certify_instance",
    "check_harmonic_sm",
    "check_identity",
    "check_plain_sm",
    "check_theorem",
    "classify",
    "closed_B",
    "combine",
    "corollary_rhs",
    "corrected_B",
    "crosscheck_B",
    "emit_report",
    "format_function_spec",
    "gamma",
    "gamma_integral",
    "generate_instances",
    "harmonic_sm_defect",
    "hyp2f1",
    "hyp2f1_euler",
    "hyp2f1_series",
    "integrate",
    "integrate_de",
    "kernel_oracle",
    "kernel_representation",
    "linear",
    "parse_function_spec",
    "power",
    "reflection_witness",
    "report_to_dict",
    "rule_deviation",
    "rule_deviation_as_printed",
    "run_sweep",
    "s_power",
    "simpson_theorem2_prefactor",
    "theorem1_rhs",
    "theorem2_rhs",
]

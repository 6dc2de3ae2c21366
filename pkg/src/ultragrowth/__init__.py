"""Numerics for weight sequences, associated weight functions, and growth conditions.

The package works with truncated log-convex weight sequences (Denjoy-Carleman
style), their associated weight functions and Young conjugates, harmonic
extensions of weight functions to the upper half plane, mixed growth/decay
conditions between pairs of sequences or matrices, and a constructive pipeline
that turns a formal power series outside a quasianalytic class into a pair of
comparison sequences witnessing non-surjectivity of the Borel map.

Everything is finite-horizon: a sequence is stored up to index K together with
an optional power-law tail model, and every verdict that depends on the tail
is reported as HOLDS/FAILS "on trend" with the window and margins disclosed.
"""

__version__ = "0.1.0"

from .errors import (
    DerivativeOrderExceeded,
    HorizonExceeded,
    HypothesisNotMet,
    InsufficientRows,
    JetNotInClass,
    NoDecayWithinK,
    NonLogConvex,
    NonMonotoneQuotients,
    NonPositive,
    NotSublinear,
    OutOfTrustedRange,
    PropertyViolation,
    QuadratureFailure,
    QuasianalyticWeight,
    SelectionStalls,
    SupAtBoundary,
    TailUnbounded,
    TruncationTooShort,
    Unbounded,
    VerificationFailed,
    WitnessMissing,
)
from .reports import ConditionReport, FAILS_TREND, HOLDS_TREND, INCONCLUSIVE
from .sequences import (
    Jet,
    TailModel,
    WeightMatrix,
    WeightSequence,
    derivation_closed_shift,
    equivalent_absorbing_matrix,
    gevrey,
    growth_index,
    jet_norm,
    make_sequence,
    matrix_condition,
    q_gevrey,
    quasianalytic_check,
    relation_check,
)
from .weightfuncs import (
    PreWeightFunction,
    lambda_series,
    matrix_from_weight_function,
    recover_sequence,
    weight_predicates,
)
from .harmonic import HarmonicSample, kappa, poisson, validate_inequality
from .conditions import (
    MixedConditionSpec,
    gevrey_harness,
    implication_consistency,
    matrix_mixed_condition,
    mixed_condition,
)
from .entire import (
    SampledFunction,
    derivative_seminorm,
    l2_embedding_check,
    mollify,
    weighted_sup_norm,
)
from .pipeline import (
    PipelineResult,
    ThetaResult,
    build_pair,
    jet_envelope,
    lower_envelopes,
    normalize_inputs,
    run_pipeline,
    theta_builder,
)

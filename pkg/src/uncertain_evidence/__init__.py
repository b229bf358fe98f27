"""Weights of evidence, posteriors and posterior bounds when the likelihood
function of a hypothesis is only known to lie in a finite set.

All arithmetic is exact (:class:`fractions.Fraction`).
"""

from .errors import (
    CorrelatedSpace,
    DuplicateLabel,
    EvidenceError,
    ImpossibleObservation,
    InvalidSpace,
    NegativeMass,
    NonNormalized,
    TotalConflict,
    UnknownHypothesis,
    UnknownObservation,
    ZeroDenominator,
    ZeroProbabilityObservation,
)
from .evidence import (
    EvidenceSpace,
    JointDistribution,
    LikelihoodMapping,
    bayes_oracle,
    posterior,
    weight_of_evidence,
)
from .generalized import (
    GeneralizedEvidenceSpace,
    TaggedDistSet,
    WeightSet,
    generalized_weights,
    per_hypothesis_sets,
    posterior_bounds_formula,
    posterior_set,
    upper_lower_weight,
    upper_lower_weight_product_form,
)
from .model import Model, ModelError, dump_model, load_model, loads_model
from .prob import Dist, dempster_combine, format_rational, make_dist, point_mass, to_rational, uniform
from .refinement import (
    Correlated,
    Factorization,
    Refinement,
    build_refinement,
    extension_posterior_bounds,
    extension_vertices,
    factor_uncorrelated,
    is_extension,
    is_refinement_of,
    refined_posterior_mass,
)
from .sequence import CombinationMode, generalized_sequence_weights, sequence_weight

__version__ = "0.1.0"

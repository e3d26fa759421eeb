"""Density estimation from an individual numerical sequence.

A sequence is treated as stationary when its interval frequencies
converge to those of some density; no stochastic mechanism is assumed.
Given a known nondecreasing bound alpha(i) on the density's variation
over [-i, i), the adaptive dyadic histogram recovers the density in L1.
The package also ships sequence generators (i.i.d., Markov, deterministic
low-discrepancy), the diagonal adversary showing the variation bound
cannot be dropped, and evaluation metrics.
"""

from .adversary import (
    AdversaryError,
    AdversaryTranscript,
    LevelCertificate,
    adversarial_sequence,
    fixed_level_scheme,
    oscillation_table,
    phi_star_scheme,
    probe_intervals,
    uniformity_gap,
)
from .budget import VariationBudget, budget_membership
from .densities import (
    ContinuousDensity,
    exponential_density,
    inverse_cdf_sample,
    normal_density,
    step_backed,
    uniform_density,
)
from .dyadic import LEVEL_CAP, SAMPLE_LIMIT, DyadicCell, cell_of
from .empirical import SampleBuffer, empirical_measure, histogram, sup_interval_discrepancy
from .estimator import (
    AdaptiveHistogramDensity,
    EstimateReport,
    EstimatorConfig,
    SourceExhausted,
    default_depth,
    estimate,
    select_level,
    stream,
)
from .evaluation import (
    ConvergenceReport,
    L1Result,
    convergence_report,
    l1_error,
    l1_mixed,
    l1_step,
)
from .generators import (
    SequenceSource,
    certified_index,
    constant_source,
    discrepancy_envelope,
    iid_source,
    markov_source,
    rademacher_density,
    radical_inverse_base2,
    stratified_rademacher_source,
    van_der_corput_source,
)
from .step import StepDensity, integrate
from .validation import EmptyBufferError, SampleRangeError, check_samples
from .variation import (
    conditional_on_partition,
    histogram_variation,
    step_variation,
    variation_profile,
)

__version__ = "0.1.0"

__all__ = [
    "AdaptiveHistogramDensity",
    "AdversaryError",
    "AdversaryTranscript",
    "ContinuousDensity",
    "ConvergenceReport",
    "DyadicCell",
    "EmptyBufferError",
    "EstimateReport",
    "EstimatorConfig",
    "L1Result",
    "LEVEL_CAP",
    "LevelCertificate",
    "SAMPLE_LIMIT",
    "SampleBuffer",
    "SampleRangeError",
    "SequenceSource",
    "SourceExhausted",
    "StepDensity",
    "VariationBudget",
    "adversarial_sequence",
    "budget_membership",
    "cell_of",
    "certified_index",
    "check_samples",
    "conditional_on_partition",
    "constant_source",
    "convergence_report",
    "default_depth",
    "discrepancy_envelope",
    "empirical_measure",
    "estimate",
    "exponential_density",
    "fixed_level_scheme",
    "histogram",
    "histogram_variation",
    "iid_source",
    "integrate",
    "inverse_cdf_sample",
    "l1_error",
    "l1_mixed",
    "l1_step",
    "markov_source",
    "normal_density",
    "oscillation_table",
    "phi_star_scheme",
    "probe_intervals",
    "rademacher_density",
    "radical_inverse_base2",
    "select_level",
    "step_backed",
    "step_variation",
    "stratified_rademacher_source",
    "stream",
    "sup_interval_discrepancy",
    "uniform_density",
    "uniformity_gap",
    "van_der_corput_source",
    "variation_profile",
]

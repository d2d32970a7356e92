"""Sharp nonparametric bounds for natural indirect effects in binary mediation designs.

The package answers one question honestly: given a randomized binary treatment,
a binary mediator, and a binary outcome, what does the data alone (plus any
explicitly maintained assumption) say about the average natural indirect
effect?  The answer is an identification interval, never a point, and every
interval carries the assumption set that produced it.

Layout:

* :mod:`mediation_bounds.model` observed-data types, estimand specs, results
* :mod:`mediation_bounds.closed_form` printed bound expressions per assumption set
* :mod:`mediation_bounds.lp_engine` stratum LP construction and bespoke simplex
* :mod:`mediation_bounds.inference` intersection-bounds estimation and CIs
* :mod:`mediation_bounds.oracle` full potential-outcome populations for validation
* :mod:`mediation_bounds.cli` the ``mediation-bounds`` command
"""

__version__ = "0.1.0"

from .model import (
    Assumptions,
    AssumptionIncompatibilityError,
    BoundsResult,
    ClosedFormUnavailableError,
    ConsistencyError,
    EmptyArmError,
    EstimandSpec,
    InsufficientDataError,
    Method,
    ObservedDistribution,
    UnitRecord,
    ValidationError,
    as_record_array,
    ate,
    atm,
    from_counts,
    from_probabilities,
    from_units,
)
from .closed_form import (
    anie_expressions,
    ande_bounds,
    bounds_mmr,
    bounds_mmr_pos_mediator,
    bounds_no_assumption,
)
from .lp_engine import (
    InfeasibleError,
    LinearProgram,
    Sense,
    StrataDistribution16,
    UnboundedError,
    anie_bounds_lp,
    build_lp,
    cross_world_range,
    format_lp,
    solve,
)
from .inference import (
    InferenceConfig,
    IntervalEstimate,
    WaldResult,
    ate_test,
    clr_bounds,
    estimate_distribution,
    iot_test,
)
from .oracle import (
    FullPopulation64,
    TrueEstimands,
    extend_witness,
    iot_blindspot_population,
    observed_from_population,
    random_population,
    sample_records,
    sharpness_check,
    soundness_check,
    strata16_from_population,
    strata_proportions,
    true_estimands,
)

__all__ = [
    "Assumptions",
    "AssumptionIncompatibilityError",
    "BoundsResult",
    "ClosedFormUnavailableError",
    "ConsistencyError",
    "EmptyArmError",
    "EstimandSpec",
    "InsufficientDataError",
    "Method",
    "ObservedDistribution",
    "UnitRecord",
    "ValidationError",
    "as_record_array",
    "ate",
    "atm",
    "from_counts",
    "from_probabilities",
    "from_units",
    "anie_expressions",
    "ande_bounds",
    "bounds_mmr",
    "bounds_mmr_pos_mediator",
    "bounds_no_assumption",
    "InfeasibleError",
    "LinearProgram",
    "Sense",
    "StrataDistribution16",
    "UnboundedError",
    "anie_bounds_lp",
    "build_lp",
    "cross_world_range",
    "format_lp",
    "solve",
    "InferenceConfig",
    "IntervalEstimate",
    "WaldResult",
    "ate_test",
    "clr_bounds",
    "estimate_distribution",
    "iot_test",
    "FullPopulation64",
    "TrueEstimands",
    "extend_witness",
    "iot_blindspot_population",
    "observed_from_population",
    "random_population",
    "sample_records",
    "sharpness_check",
    "soundness_check",
    "strata16_from_population",
    "strata_proportions",
    "true_estimands",
    "__version__",
]

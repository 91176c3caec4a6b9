"""hedgesim: signalling-game simulation of coordination under vagueness.

Builds partitioned possible-worlds models from forced-march judgment data,
evaluates a four-sentence signal language (including an epistemic "might"),
runs assertion dynamics with Bayesian listener inference, classifies
coordination equilibria under a two-parameter prior, and traces the
iterated hedging recurrence that lifts expected utility after a hedged
assertion.
"""

from .assertion import (
    AbsurdUpdateError,
    CommonGround,
    NoAssertableSignalError,
    SignalLikelihoods,
    UnexpectedSignalError,
    base_rate,
    ideal_signal,
    initial_common_ground,
    listener_posterior,
    speaker_signal,
    update,
)
from .game import (
    GameConfig,
    PayoffMatrix,
    RegionReport,
    SweepRow,
    WorldPrior,
    brute_force_eu,
    equilibrium_region,
    expected_utility,
    grid,
    threshold_sweep,
    world_priors,
)
from .hedging import (
    HedgingStep,
    HedgingSummary,
    HedgingTrace,
    propensities_at_step,
    propensity,
    propensity_sequence,
    run_hedging,
    stepwise_eu,
)
from .scenario_io import (
    ReportAuditError,
    RunReport,
    Scenario,
    ScenarioParseError,
    audit_report,
    load_scenario,
    parse_scenario,
    render_scenario,
    run_scenario,
)
from .semantics import Formula, FrameReport, TruthValue, check_frame, evaluate, extension
from .worlds import (
    InvalidSeriesError,
    JudgmentProposition,
    SoritesSeries,
    UnknownLabelError,
    WorldModel,
    accessible,
    build_forced_march,
    common_belief,
    everyone_thinks,
    judgment_proposition,
    pool_states,
    thinks,
)

__version__ = "0.1.0"

__all__ = [
    "AbsurdUpdateError",
    "CommonGround",
    "Formula",
    "FrameReport",
    "GameConfig",
    "HedgingStep",
    "HedgingSummary",
    "HedgingTrace",
    "InvalidSeriesError",
    "JudgmentProposition",
    "NoAssertableSignalError",
    "PayoffMatrix",
    "RegionReport",
    "ReportAuditError",
    "RunReport",
    "Scenario",
    "ScenarioParseError",
    "SignalLikelihoods",
    "SoritesSeries",
    "SweepRow",
    "TruthValue",
    "UnexpectedSignalError",
    "UnknownLabelError",
    "WorldModel",
    "WorldPrior",
    "accessible",
    "audit_report",
    "base_rate",
    "brute_force_eu",
    "build_forced_march",
    "check_frame",
    "common_belief",
    "equilibrium_region",
    "evaluate",
    "everyone_thinks",
    "expected_utility",
    "extension",
    "grid",
    "ideal_signal",
    "initial_common_ground",
    "judgment_proposition",
    "listener_posterior",
    "load_scenario",
    "parse_scenario",
    "pool_states",
    "propensities_at_step",
    "propensity",
    "propensity_sequence",
    "render_scenario",
    "run_hedging",
    "run_scenario",
    "speaker_signal",
    "stepwise_eu",
    "thinks",
    "threshold_sweep",
    "update",
    "world_priors",
]

"""Scenario files, end-to-end runs, and deterministic CSV/JSON rendering.

Scenario format: three sections (``[series]``, ``[game]``, ``[run]``) of
``key = value`` lines; ``#`` starts a comment, blank lines are ignored.

    [series]            # either `canonical = true` or an explicit march
    n = 5
    flip.S = 4
    flip.L = 2

    [game]
    delta = 0.7         # required
    gamma = 0.2         # required
    tau = 0.5           # optional, default 0.5
    epsilon = 0.01      # optional, default 0.01

    [run]
    speaker = S         # required, one of the series' agents
    world = w2          # required, a world of the pooled model
    steps = 50          # optional, default 50
    tolerance = 1e-6    # optional, default 1e-6

Unknown sections or keys, duplicates, bad values, and range violations are
errors that name the offending key and line. All emitted numbers are
formatted to 12 significant digits so outputs are byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .assertion import (
    SignalLikelihoods,
    base_rate,
    initial_common_ground,
    listener_posterior,
    speaker_signal,
    update,
)
from .game import GameConfig, RegionReport, SweepRow, equilibrium_region
from .hedging import HedgingTrace, run_hedging
from .semantics import Formula, FrameReport, TruthValue, evaluate, extension
from .worlds import SoritesSeries, WorldModel, common_belief, pool_states

CANONICAL_N = 5
CANONICAL_FLIPS = {"S": 4, "L": 2}

_DEFAULT_STEPS = 50
_DEFAULT_TOLERANCE = 1e-6


class ScenarioParseError(ValueError):
    """A scenario file problem, carrying the offending line when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ReportAuditError(RuntimeError):
    """A run report failed its internal consistency audit."""


@dataclass(frozen=True)
class Scenario:
    """A parsed scenario: the march, the game parameters, and the run plan."""

    series: SoritesSeries
    canonical: bool
    config: GameConfig
    speaker: str
    world: str
    steps: int = _DEFAULT_STEPS
    tolerance: float = _DEFAULT_TOLERANCE


_SECTIONS = ("series", "game", "run")
_FIXED_KEYS = {
    "series": {"n", "canonical"},
    "game": {"delta", "gamma", "tau", "epsilon"},
    "run": {"speaker", "world", "steps", "tolerance"},
}

_Entry = tuple[str, int]  # raw value, line number


def _tokenize(text: str) -> dict[str, dict[str, _Entry]]:
    entries: dict[str, dict[str, _Entry]] = {name: {} for name in _SECTIONS}
    section: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ScenarioParseError("unterminated section header", lineno)
            name = line[1:-1].strip().lower()
            if name not in _SECTIONS:
                raise ScenarioParseError(f"unknown section [{name}]", lineno)
            section = name
            continue
        if "=" not in line:
            raise ScenarioParseError(f"expected `key = value`, got {line!r}", lineno)
        if section is None:
            raise ScenarioParseError("key before any [section] header", lineno)
        key, _, value = (part.strip() for part in line.partition("="))
        if not key:
            raise ScenarioParseError("empty key", lineno)
        if not value:
            raise ScenarioParseError(f"missing value for key {key!r}", lineno)
        is_flip = section == "series" and key.startswith("flip.") and len(key) > len("flip.")
        if key not in _FIXED_KEYS[section] and not is_flip:
            raise ScenarioParseError(f"unknown key {key!r} in [{section}]", lineno)
        if key in entries[section]:
            raise ScenarioParseError(f"duplicate key {key!r}", lineno)
        entries[section][key] = (value, lineno)
    return entries


def _int_value(key: str, entry: _Entry) -> int:
    value, lineno = entry
    try:
        return int(value)
    except ValueError:
        raise ScenarioParseError(f"{key} must be an integer, got {value!r}", lineno) from None


def _float_value(key: str, entry: _Entry) -> float:
    value, lineno = entry
    try:
        return float(value)
    except ValueError:
        raise ScenarioParseError(f"{key} must be a number, got {value!r}", lineno) from None


def _bool_value(key: str, entry: _Entry) -> bool:
    value, lineno = entry
    lowered = value.lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise ScenarioParseError(f"{key} must be true or false, got {value!r}", lineno)


def _require(section: Mapping[str, _Entry], name: str, key: str) -> _Entry:
    if key not in section:
        raise ScenarioParseError(f"missing required key {key!r} in [{name}]")
    return section[key]


def parse_scenario(text: str) -> Scenario:
    """Parse scenario text; see the module docstring for the grammar."""
    entries = _tokenize(text)
    series_entries, game_entries, run_entries = (
        entries["series"],
        entries["game"],
        entries["run"],
    )

    canonical = False
    if "canonical" in series_entries:
        canonical = _bool_value("canonical", series_entries["canonical"])
    if canonical:
        extras = [key for key in series_entries if key != "canonical"]
        if extras:
            raise ScenarioParseError(
                f"canonical series takes no other [series] keys, got {extras[0]!r}",
                series_entries[extras[0]][1],
            )
        series = SoritesSeries(n=CANONICAL_N, flips=dict(CANONICAL_FLIPS))
    else:
        n = _int_value("n", _require(series_entries, "series", "n"))
        if n < 3:
            raise ScenarioParseError(
                f"n must be at least 3, got {n}", series_entries["n"][1]
            )
        flips: dict[str, int] = {}
        for key, entry in series_entries.items():
            if not key.startswith("flip."):
                continue
            agent = key[len("flip."):]
            flip = _int_value(key, entry)
            if not 2 <= flip <= n:
                raise ScenarioParseError(
                    f"{key} must be in [2, {n}], got {flip}", entry[1]
                )
            flips[agent] = flip
        if not flips:
            raise ScenarioParseError("at least one flip.<agent> key is required in [series]")
        series = SoritesSeries(n=n, flips=flips)

    delta = _float_value("delta", _require(game_entries, "game", "delta"))
    if not 0.0 < delta < 1.0:
        raise ScenarioParseError(
            f"delta must be strictly between 0 and 1, got {delta}", game_entries["delta"][1]
        )
    gamma = _float_value("gamma", _require(game_entries, "game", "gamma"))
    if not 0.0 <= gamma < 1.0:
        raise ScenarioParseError(
            f"gamma must be at least 0 and strictly below 1, got {gamma}",
            game_entries["gamma"][1],
        )
    tau = 0.5
    if "tau" in game_entries:
        tau = _float_value("tau", game_entries["tau"])
        if not 0.0 < tau < 1.0:
            raise ScenarioParseError(
                f"tau must be strictly between 0 and 1, got {tau}", game_entries["tau"][1]
            )
    epsilon = 0.01
    if "epsilon" in game_entries:
        epsilon = _float_value("epsilon", game_entries["epsilon"])
        if not 0.0 <= epsilon < 0.5:
            raise ScenarioParseError(
                f"epsilon must be in [0, 0.5), got {epsilon}", game_entries["epsilon"][1]
            )
    config = GameConfig(delta=delta, gamma=gamma, tau=tau, epsilon=epsilon)

    speaker_entry = _require(run_entries, "run", "speaker")
    speaker = speaker_entry[0]
    world_entry = _require(run_entries, "run", "world")
    world = world_entry[0]
    steps = _DEFAULT_STEPS
    if "steps" in run_entries:
        steps = _int_value("steps", run_entries["steps"])
        if steps < 4:
            raise ScenarioParseError(
                f"steps must be at least 4, got {steps}", run_entries["steps"][1]
            )
    tolerance = _DEFAULT_TOLERANCE
    if "tolerance" in run_entries:
        tolerance = _float_value("tolerance", run_entries["tolerance"])
        if tolerance <= 0.0:
            raise ScenarioParseError(
                f"tolerance must be positive, got {tolerance}", run_entries["tolerance"][1]
            )

    if speaker not in series.flips:
        raise ScenarioParseError(
            f"speaker {speaker!r} is not an agent of the series "
            f"(agents: {', '.join(series.agents)})",
            speaker_entry[1],
        )
    model = pool_states(series)
    if world not in model.worlds:
        raise ScenarioParseError(
            f"world {world!r} not in the pooled model (worlds: {', '.join(model.worlds)})",
            world_entry[1],
        )
    return Scenario(
        series=series,
        canonical=canonical,
        config=config,
        speaker=speaker,
        world=world,
        steps=steps,
        tolerance=tolerance,
    )


def load_scenario(path) -> Scenario:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_scenario(handle.read())


def render_scenario(scenario: Scenario) -> str:
    """Render a scenario back to text; parsing the result round-trips."""
    lines = ["[series]"]
    if scenario.canonical:
        lines.append("canonical = true")
    else:
        lines.append(f"n = {scenario.series.n}")
        for agent, flip in scenario.series.flips.items():
            lines.append(f"flip.{agent} = {flip}")
    lines += [
        "",
        "[game]",
        f"delta = {fmt_float(scenario.config.delta)}",
        f"gamma = {fmt_float(scenario.config.gamma)}",
        f"tau = {fmt_float(scenario.config.tau)}",
        f"epsilon = {fmt_float(scenario.config.epsilon)}",
        "",
        "[run]",
        f"speaker = {scenario.speaker}",
        f"world = {scenario.world}",
        f"steps = {scenario.steps}",
        f"tolerance = {fmt_float(scenario.tolerance)}",
    ]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DialogueStep:
    """One conversation step: what was said and where belief stands after it."""

    time: int
    signal: Formula | None
    live: tuple[str, ...]
    posterior: Mapping[str, float]


@dataclass(frozen=True)
class RunReport:
    """Everything a single end-to-end run produced."""

    scenario: Scenario
    model: WorldModel
    signal: Formula
    dialogue: tuple[DialogueStep, ...]
    posterior: Mapping[str, float]
    region: RegionReport
    hedging: HedgingTrace
    public_belief_proposition: frozenset[str]
    public_belief_worlds: frozenset[str]
    public_belief: bool


def run_scenario(scenario: Scenario) -> RunReport:
    """Deterministic end-to-end run: pool, signal, update, infer, classify, hedge.

    The public-belief flag reports whether the asserted polarity's unanimous
    worlds are publicly believed once the common ground has been updated.
    """
    model = pool_states(scenario.series)
    if len(model.agents) != 2:
        raise ValueError(
            f"the game stage needs exactly two agents, got {len(model.agents)}"
        )
    cg0 = initial_common_ground(model)
    signal = speaker_signal(model, scenario.speaker, scenario.world)
    cg1 = update(cg0, signal)
    likelihoods = SignalLikelihoods.for_common_ground(
        cg1,
        scenario.config.epsilon,
        repertoire=(Formula.PHI, Formula.NOT_PHI, signal),
    )
    posterior = listener_posterior(cg1, signal, likelihoods)
    dialogue = (
        DialogueStep(time=0, signal=None, live=cg0.live, posterior=base_rate(cg0)),
        DialogueStep(time=1, signal=signal, live=cg1.live, posterior=posterior),
    )
    proposition = model.valuation[signal.atom.text]
    public_worlds = common_belief(model, proposition, cg1.live)
    report = RunReport(
        scenario=scenario,
        model=model,
        signal=signal,
        dialogue=dialogue,
        posterior=posterior,
        region=equilibrium_region(scenario.config),
        hedging=run_hedging(
            scenario.config, max_steps=scenario.steps, tolerance=scenario.tolerance
        ),
        public_belief_proposition=proposition,
        public_belief_worlds=public_worlds,
        public_belief=bool(public_worlds),
    )
    audit_report(report)
    return report


def audit_report(report: RunReport) -> None:
    """Internal consistency: the signal holds at the actual world and at every
    surviving world, and the posterior is a distribution over the survivors."""
    model = report.model
    if evaluate(model, report.signal, report.scenario.world) is not TruthValue.TRUE:
        raise ReportAuditError("signal is not true at the actual world")
    signal_worlds = extension(model, report.signal)
    final_live = set(report.dialogue[-1].live)
    if not final_live <= signal_worlds:
        raise ReportAuditError("a surviving world falsifies the applied signal")
    support = {w for w, p in report.posterior.items() if p > 0.0}
    if not support <= final_live:
        raise ReportAuditError("posterior support leaks outside the common ground")
    total = sum(report.posterior.values())
    if abs(total - 1.0) > 1e-12:
        raise ReportAuditError(f"posterior sums to {total!r}, not 1")


# ---------------------------------------------------------------------------
# Rendering. CSV uses `.` decimals, no grouping, 12 significant digits; JSON
# mirrors the same (rounded) numbers so both formats stay byte-stable.


def fmt_float(value: float) -> str:
    return format(float(value), ".12g")


def _jnum(value: float) -> float:
    return float(fmt_float(value))


def _jdist(dist: Mapping[str, float]) -> dict[str, float]:
    return {key: _jnum(value) for key, value in dist.items()}


def _dumps(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def scenario_payload(scenario: Scenario) -> dict:
    return {
        "canonical": scenario.canonical,
        "n": scenario.series.n,
        "flips": dict(scenario.series.flips),
        "delta": _jnum(scenario.config.delta),
        "gamma": _jnum(scenario.config.gamma),
        "tau": _jnum(scenario.config.tau),
        "epsilon": _jnum(scenario.config.epsilon),
        "speaker": scenario.speaker,
        "world": scenario.world,
        "steps": scenario.steps,
        "tolerance": _jnum(scenario.tolerance),
    }


def model_payload(model: WorldModel) -> dict:
    payload = {
        "agents": list(model.agents),
        "worlds": list(model.worlds),
        "partitions": {
            agent: [list(model.sort_worlds(cell)) for cell in cells]
            for agent, cells in model.partitions.items()
        },
        "valuation": {
            key: list(model.sort_worlds(worlds))
            for key, worlds in model.valuation.items()
        },
    }
    if model.judgments is not None:
        payload["judgments"] = {
            agent: dict(per_world) for agent, per_world in model.judgments.items()
        }
    if model.members is not None:
        payload["members"] = {world: list(states) for world, states in model.members.items()}
    return payload


def _dialogue_record(step: DialogueStep) -> dict:
    return {
        "time": step.time,
        "signal": None if step.signal is None else step.signal.text,
        "live": list(step.live),
        "posterior": _jdist(step.posterior),
    }


def report_payload(report: RunReport) -> dict:
    summary = report.hedging.summary
    return {
        "scenario": scenario_payload(report.scenario),
        "model": model_payload(report.model),
        "signal": report.signal.text,
        "dialogue": [_dialogue_record(step) for step in report.dialogue],
        "posterior": _jdist(report.posterior),
        "equilibrium": {
            "region": report.region.region,
            "eu_a": _jnum(report.region.eu_a),
            "eu_b": _jnum(report.region.eu_b),
            "gamma_bound_a": _jnum(report.region.gamma_bound_a),
            "gamma_bound_b": _jnum(report.region.gamma_bound_b),
            "listener_q_given_speaker_q": _jnum(report.region.listener_q_given_speaker_q),
        },
        "hedging": {
            "max_steps": report.hedging.max_steps,
            "tolerance": _jnum(report.hedging.tolerance),
            "even_tail": _jnum(summary.even_tail),
            "odd_tail": _jnum(summary.odd_tail),
            "pair_sum_gap": _jnum(summary.pair_sum_gap),
            "pair_sums_converged": summary.pair_sums_converged,
            "pair_sums_descending": summary.pair_sums_descending,
            "eu_never_below_step0": summary.eu_never_below_step0,
            "final_eu_a": _jnum(report.hedging.steps[-1].eu_a),
            "final_eu_b": _jnum(report.hedging.steps[-1].eu_b),
        },
        "public_belief": {
            "proposition": list(report.model.sort_worlds(report.public_belief_proposition)),
            "worlds": list(report.model.sort_worlds(report.public_belief_worlds)),
            "holds": report.public_belief,
        },
    }


def render_report_json(report: RunReport) -> str:
    return _dumps(report_payload(report))


def render_report_csv(report: RunReport) -> str:
    """The dialogue trace as CSV: one row per conversation step."""
    lines = ["time,signal,live,posterior"]
    for step in report.dialogue:
        posterior = ";".join(fmt_float(step.posterior[w]) for w in step.live)
        signal = "" if step.signal is None else step.signal.text
        lines.append(f"{step.time},{signal},{';'.join(step.live)},{posterior}")
    return "\n".join(lines) + "\n"


def render_dialogue_jsonl(report: RunReport) -> str:
    """The dialogue trace as JSON lines: one record per step."""
    return "".join(
        json.dumps(_dialogue_record(step)) + "\n" for step in report.dialogue
    )


def render_sweep_csv(rows: list[SweepRow]) -> str:
    lines = ["delta,gamma,p_w1,p_w2,p_w3,eu_a,eu_b,region"]
    for row in rows:
        lines.append(
            ",".join(
                [
                    fmt_float(row.delta),
                    fmt_float(row.gamma),
                    fmt_float(row.p_w1),
                    fmt_float(row.p_w2),
                    fmt_float(row.p_w3),
                    fmt_float(row.eu_a),
                    fmt_float(row.eu_b),
                    row.region,
                ]
            )
        )
    return "\n".join(lines) + "\n"


def render_sweep_json(rows: list[SweepRow]) -> str:
    return _dumps(
        [
            {
                "delta": _jnum(row.delta),
                "gamma": _jnum(row.gamma),
                "p_w1": _jnum(row.p_w1),
                "p_w2": _jnum(row.p_w2),
                "p_w3": _jnum(row.p_w3),
                "eu_a": _jnum(row.eu_a),
                "eu_b": _jnum(row.eu_b),
                "region": row.region,
            }
            for row in rows
        ]
    )


def render_hedging_csv(trace: HedgingTrace) -> str:
    lines = ["n,p_speaker_a,p_listener_a,eu_a,eu_b"]
    for step in trace.steps:
        lines.append(
            ",".join(
                [
                    str(step.n),
                    fmt_float(step.p_speaker_a),
                    fmt_float(step.p_listener_a),
                    fmt_float(step.eu_a),
                    fmt_float(step.eu_b),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def render_hedging_json(trace: HedgingTrace) -> str:
    summary = trace.summary
    return _dumps(
        {
            "delta": _jnum(trace.config.delta),
            "gamma": _jnum(trace.config.gamma),
            "tau": _jnum(trace.config.tau),
            "epsilon": _jnum(trace.config.epsilon),
            "max_steps": trace.max_steps,
            "tolerance": _jnum(trace.tolerance),
            "hesitation": _jnum(trace.hesitation),
            "steps": [
                {
                    "n": step.n,
                    "p_speaker_a": _jnum(step.p_speaker_a),
                    "p_listener_a": _jnum(step.p_listener_a),
                    "eu_a": _jnum(step.eu_a),
                    "eu_b": _jnum(step.eu_b),
                }
                for step in trace.steps
            ],
            "summary": {
                "even_tail": _jnum(summary.even_tail),
                "odd_tail": _jnum(summary.odd_tail),
                "pair_sum_gap": _jnum(summary.pair_sum_gap),
                "pair_sums_converged": summary.pair_sums_converged,
                "pair_sums_descending": summary.pair_sums_descending,
                "eu_never_below_step0": summary.eu_never_below_step0,
            },
        }
    )


def render_frame_csv(frame: FrameReport) -> str:
    witness = "" if frame.witness is None else "({})".format(",".join(frame.witness))
    return (
        "reflexive,symmetric,transitive,witness\n"
        f"{str(frame.reflexive).lower()},{str(frame.symmetric).lower()},"
        f"{str(frame.transitive).lower()},{witness}\n"
    )


def render_frame_json(frame: FrameReport) -> str:
    return _dumps(
        {
            "reflexive": frame.reflexive,
            "symmetric": frame.symmetric,
            "transitive": frame.transitive,
            "witness": None if frame.witness is None else list(frame.witness),
            "summary": frame.summary(),
        }
    )

"""Partitioned possible-worlds models built from forced-march judgment data.

Agents walk a linearly ordered series of states and must judge a vague
predicate (``q`` vs ``qbar``) at every state. Pooling compresses a series
into at most three coarse worlds (all judge q / contested / all judge qbar)
and induces one partition per agent from that agent's judgment pattern.
The doxastic operators (thinks, everyone-thinks, common belief) and the
accessibility relation between worlds live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

Q = "q"
QBAR = "qbar"

#: Valuation keys for the two atoms. Worlds in neither set carry a gap.
PHI = "phi"
NOT_PHI = "not phi"


class InvalidSeriesError(ValueError):
    """A structurally malformed forced-march description."""


class UnknownLabelError(KeyError):
    """An agent or world label that is not part of the model."""


@dataclass(frozen=True)
class SoritesSeries:
    """A forced march over states 1..n with one flip index per agent.

    An agent judges q strictly before its flip index and qbar from the flip
    index on, so per-agent judgments are monotone along the series. Flips
    must lie in [2, n]: everyone judges q at state 1 and qbar at state n.
    """

    n: int
    flips: Mapping[str, int]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 3:
            raise InvalidSeriesError(f"series needs at least 3 states, got n={self.n!r}")
        if not self.flips:
            raise InvalidSeriesError("series needs at least one agent flip")
        for agent, flip in self.flips.items():
            if not isinstance(flip, int) or not 2 <= flip <= self.n:
                raise InvalidSeriesError(
                    f"flip for agent {agent!r} must be an integer in [2, {self.n}], got {flip!r}"
                )
        object.__setattr__(self, "flips", dict(self.flips))

    @property
    def agents(self) -> tuple[str, ...]:
        return tuple(self.flips)

    @property
    def states(self) -> range:
        return range(1, self.n + 1)

    def judges_q(self, agent: str, t: int) -> bool:
        if agent not in self.flips:
            raise UnknownLabelError(f"unknown agent {agent!r}")
        if t not in self.states:
            raise UnknownLabelError(f"state {t!r} outside 1..{self.n}")
        return t < self.flips[agent]

    def judgment(self, agent: str, t: int) -> str:
        return Q if self.judges_q(agent, t) else QBAR

    def judgment_vector(self, t: int) -> tuple[str, ...]:
        """All agents' judgments at state t, in agent order."""
        return tuple(self.judgment(agent, t) for agent in self.agents)


def build_forced_march(n: int, flips: Mapping[str, int]) -> SoritesSeries:
    """Validate and build a forced march from a state count and flip indices."""
    return SoritesSeries(n=n, flips=flips)


@dataclass(frozen=True)
class WorldModel:
    """Worlds, one partition per agent, and extensions for the two atoms.

    ``valuation`` maps the atom keys :data:`PHI` / :data:`NOT_PHI` to the
    world sets where they are true. ``judgments`` and ``members`` are
    provenance from pooling (None for hand-built models): the per-agent
    judgment at each world, and the original states each world pools.
    """

    agents: tuple[str, ...]
    worlds: tuple[str, ...]
    partitions: Mapping[str, tuple[frozenset[str], ...]]
    valuation: Mapping[str, frozenset[str]]
    judgments: Mapping[str, Mapping[str, str]] | None = None
    members: Mapping[str, tuple[int, ...]] | None = None

    def __post_init__(self) -> None:
        if not self.worlds:
            raise ValueError("model needs at least one world")
        if len(set(self.worlds)) != len(self.worlds):
            raise ValueError("duplicate world labels")
        if not self.agents or len(set(self.agents)) != len(self.agents):
            raise ValueError("agents must be non-empty and unique")
        everything = frozenset(self.worlds)
        if set(self.partitions) != set(self.agents):
            raise ValueError("partitions must cover exactly the model's agents")
        for agent, cells in self.partitions.items():
            seen: set[str] = set()
            for cell in cells:
                if not cell:
                    raise ValueError(f"empty partition cell for agent {agent!r}")
                if cell & seen:
                    raise ValueError(f"overlapping partition cells for agent {agent!r}")
                seen |= cell
            if seen != everything:
                raise ValueError(f"partition for agent {agent!r} does not cover the world set")
        for key in (PHI, NOT_PHI):
            if key not in self.valuation:
                raise ValueError(f"valuation must assign {key!r}")
            if not frozenset(self.valuation[key]) <= everything:
                raise ValueError(f"valuation of {key!r} mentions unknown worlds")
        if self.valuation[PHI] & self.valuation[NOT_PHI]:
            raise ValueError("atom extensions overlap (a gap is permitted, overlap is not)")

    @property
    def world_set(self) -> frozenset[str]:
        return frozenset(self.worlds)

    def index(self, world: str) -> int:
        try:
            return self.worlds.index(world)
        except ValueError:
            raise UnknownLabelError(f"unknown world {world!r}") from None

    def cell(self, agent: str, world: str) -> frozenset[str]:
        """The agent's partition cell containing ``world``."""
        if agent not in self.partitions:
            raise UnknownLabelError(f"unknown agent {agent!r}")
        self.index(world)
        for cell in self.partitions[agent]:
            if world in cell:
                return cell
        raise UnknownLabelError(f"world {world!r} missing from {agent!r}'s partition")

    def sort_worlds(self, worlds: Iterable[str]) -> tuple[str, ...]:
        """Order a world subset by the model's world order."""
        return tuple(sorted(worlds, key=self.index))


@dataclass(frozen=True)
class JudgmentProposition:
    """Where one agent judges one way: its extension over the pooled worlds."""

    agent: str
    polarity: str
    extension: frozenset[str]


def pool_states(series: SoritesSeries) -> WorldModel:
    """Pool a forced march into coarse worlds and induce agent partitions.

    The all-q prefix becomes w1 and everything after the last flip becomes
    w3; the stretch from the first flip through the last flip (inclusive,
    so the last-flip state itself sits in the middle pool) is w2. Empty
    pools are dropped (only w3 can be empty, when some flip is at n).

    An agent judges a pooled world the way it judges that pool's earliest
    state; a partition cell groups the worlds the agent judges alike. The
    atoms hold where the judgment is unanimous: phi at all-q worlds,
    not-phi at all-qbar worlds, a gap at contested ones.
    """
    lo = min(series.flips.values())
    hi = max(series.flips.values())
    pools = [
        ("w1", tuple(range(1, lo))),
        ("w2", tuple(range(lo, hi + 1))),
        ("w3", tuple(range(hi + 1, series.n + 1))),
    ]
    pools = [(name, states) for name, states in pools if states]
    worlds = tuple(name for name, _ in pools)
    members = {name: states for name, states in pools}
    judgments = {
        agent: {name: series.judgment(agent, states[0]) for name, states in pools}
        for agent in series.agents
    }
    partitions: dict[str, tuple[frozenset[str], ...]] = {}
    for agent in series.agents:
        cells = [
            frozenset(w for w in worlds if judgments[agent][w] == value)
            for value in (Q, QBAR)
        ]
        cells = [cell for cell in cells if cell]
        cells.sort(key=lambda cell: min(worlds.index(w) for w in cell))
        partitions[agent] = tuple(cells)
    valuation = {
        PHI: frozenset(
            w for w in worlds if all(judgments[a][w] == Q for a in series.agents)
        ),
        NOT_PHI: frozenset(
            w for w in worlds if all(judgments[a][w] == QBAR for a in series.agents)
        ),
    }
    return WorldModel(
        agents=series.agents,
        worlds=worlds,
        partitions=partitions,
        valuation=valuation,
        judgments=judgments,
        members=members,
    )


def judgment_proposition(model: WorldModel, agent: str, polarity: str) -> JudgmentProposition:
    """The set of pooled worlds where ``agent`` judges ``polarity``."""
    if polarity not in (Q, QBAR):
        raise ValueError(f"polarity must be {Q!r} or {QBAR!r}, got {polarity!r}")
    if model.judgments is None:
        raise ValueError("model carries no judgment data (not built by pooling)")
    if agent not in model.judgments:
        raise UnknownLabelError(f"unknown agent {agent!r}")
    extension = frozenset(
        w for w, value in model.judgments[agent].items() if value == polarity
    )
    return JudgmentProposition(agent=agent, polarity=polarity, extension=extension)


def _world_subset(model: WorldModel, worlds: Iterable[str]) -> frozenset[str]:
    subset = frozenset(worlds)
    stray = subset - model.world_set
    if stray:
        raise UnknownLabelError(f"unknown worlds {sorted(stray)!r}")
    return subset


def thinks(model: WorldModel, agent: str, prop: Iterable[str], world: str) -> bool:
    """True when every world the agent cannot tell apart from ``world`` is in ``prop``."""
    prop_set = _world_subset(model, prop)
    return model.cell(agent, world) <= prop_set


def everyone_thinks(
    model: WorldModel, prop: Iterable[str], restriction: Iterable[str] | None = None
) -> frozenset[str]:
    """Worlds inside the restriction where every agent thinks ``prop``.

    Cells are cut down to the restriction first, so belief is evaluated
    against the live possibilities only; worlds whose restricted cell is
    empty cannot occur (every live world sits in its own cell).
    """
    prop_set = _world_subset(model, prop)
    live = model.world_set if restriction is None else _world_subset(model, restriction)
    return frozenset(
        w
        for w in live
        if all((model.cell(agent, w) & live) <= prop_set for agent in model.agents)
    )


def common_belief(
    model: WorldModel, prop: Iterable[str], restriction: Iterable[str] | None = None
) -> frozenset[str]:
    """The worlds where ``prop`` is public: everyone thinks it, everyone
    thinks everyone thinks it, and so on.

    Computed as the greatest fixpoint of the everyone-thinks operator at or
    below ``prop``. Each pass can only shrink the candidate set (every live
    world belongs to its own restricted cell), so iteration terminates.
    """
    live = model.world_set if restriction is None else _world_subset(model, restriction)
    current = _world_subset(model, prop) & live
    while True:
        shrunk = everyone_thinks(model, current, live)
        if shrunk == current:
            return current
        current = shrunk


def accessible(model: WorldModel, world: str, other: str) -> bool:
    """True when some agent's cell contains both worlds."""
    model.index(other)
    return any(other in model.cell(agent, world) for agent in model.agents)

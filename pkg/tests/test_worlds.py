import random

import pytest

from hedgesim.worlds import (
    NOT_PHI,
    PHI,
    Q,
    QBAR,
    InvalidSeriesError,
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


def random_series(rng, max_n=50, max_agents=5):
    n = rng.randint(3, max_n)
    agents = rng.randint(2, max_agents)
    flips = {f"a{i}": rng.randint(2, n) for i in range(agents)}
    return build_forced_march(n, flips)


# --- forced march -----------------------------------------------------------


def test_forced_march_judgments():
    series = build_forced_march(5, {"S": 4, "L": 2})
    assert [series.judgment("S", t) for t in series.states] == [Q, Q, Q, QBAR, QBAR]
    assert [series.judgment("L", t) for t in series.states] == [Q, QBAR, QBAR, QBAR, QBAR]


def test_forced_march_identical_flips_no_disagreement():
    series = build_forced_march(3, {"S": 2, "L": 2})
    for t in series.states:
        vector = series.judgment_vector(t)
        assert len(set(vector)) == 1


def test_forced_march_disagreement_window():
    series = build_forced_march(10, {"S": 7, "L": 3})
    disagree = [t for t in series.states if len(set(series.judgment_vector(t))) > 1]
    assert disagree == [3, 4, 5, 6]
    # earlier flipper says qbar there, later flipper still says q
    for t in disagree:
        assert series.judgment("L", t) == QBAR
        assert series.judgment("S", t) == Q


def test_forced_march_judgments_monotone_random():
    rng = random.Random(4242)
    for _ in range(100):
        series = random_series(rng)
        for agent in series.agents:
            flips_seen = [series.judges_q(agent, t) for t in series.states]
            assert flips_seen == sorted(flips_seen, reverse=True)
            assert flips_seen[0] is True and flips_seen[-1] is False


@pytest.mark.parametrize(
    "n,flips",
    [
        (2, {"S": 2}),
        (3, {}),
        (5, {"S": 1}),
        (5, {"S": 6}),
        (5, {"S": 4, "L": 0}),
        (5, {"S": 2.5}),
    ],
)
def test_forced_march_rejects_malformed(n, flips):
    with pytest.raises(InvalidSeriesError):
        build_forced_march(n, flips)


def test_forced_march_unknown_lookups():
    series = build_forced_march(5, {"S": 4})
    with pytest.raises(UnknownLabelError):
        series.judges_q("nobody", 1)
    with pytest.raises(UnknownLabelError):
        series.judges_q("S", 6)


# --- pooling ----------------------------------------------------------------


def test_pool_canonical_shape(canonical_model):
    model = canonical_model
    assert model.worlds == ("w1", "w2", "w3")
    assert model.members == {"w1": (1,), "w2": (2, 3, 4), "w3": (5,)}
    assert model.partitions["S"] == (frozenset({"w1", "w2"}), frozenset({"w3"}))
    assert model.partitions["L"] == (frozenset({"w1"}), frozenset({"w2", "w3"}))
    assert model.valuation[PHI] == frozenset({"w1"})
    assert model.valuation[NOT_PHI] == frozenset({"w3"})


def test_pool_swapped_flips_mirrors_canonical():
    model = pool_states(build_forced_march(5, {"S": 2, "L": 4}))
    assert model.partitions["L"] == (frozenset({"w1", "w2"}), frozenset({"w3"}))
    assert model.partitions["S"] == (frozenset({"w1"}), frozenset({"w2", "w3"}))


def test_pool_identical_flips():
    # Shared flip state pools to a singleton w2 where everyone already judges
    # qbar, so each partition is {w1} vs {w2, w3} and both non-phi worlds are
    # in the negative atom's extension.
    model = pool_states(build_forced_march(5, {"S": 3, "L": 3}))
    assert model.worlds == ("w1", "w2", "w3")
    assert model.members["w2"] == (3,)
    for agent in model.agents:
        assert model.partitions[agent] == (frozenset({"w1"}), frozenset({"w2", "w3"}))
    assert model.valuation[PHI] == frozenset({"w1"})
    assert model.valuation[NOT_PHI] == frozenset({"w2", "w3"})


def test_pool_many_agents_three_worlds():
    model = pool_states(build_forced_march(12, {"a": 3, "b": 5, "c": 8, "d": 10}))
    assert model.worlds == ("w1", "w2", "w3")
    assert model.members == {
        "w1": (1, 2),
        "w2": (3, 4, 5, 6, 7, 8, 9, 10),
        "w3": (11, 12),
    }
    assert model.valuation[PHI] == frozenset({"w1"})
    assert model.valuation[NOT_PHI] == frozenset({"w3"})


def test_pool_flip_at_last_state_drops_empty_pool():
    model = pool_states(build_forced_march(5, {"S": 5, "L": 2}))
    assert model.worlds == ("w1", "w2")
    assert model.members == {"w1": (1,), "w2": (2, 3, 4, 5)}


def test_pooling_soundness_random():
    rng = random.Random(20240917)
    for _ in range(300):
        series = random_series(rng)
        model = pool_states(series)
        lo = min(series.flips.values())
        hi = max(series.flips.values())
        all_q = {t for t in series.states if set(series.judgment_vector(t)) == {Q}}
        all_qbar = {t for t in series.states if set(series.judgment_vector(t)) == {QBAR}}
        assert set(model.members["w1"]) == all_q == set(range(1, lo))
        if "w3" in model.worlds:
            assert set(model.members["w3"]) == all_qbar - {hi}
        else:
            assert all_qbar == {hi}
        assert set(model.members["w2"]) == set(series.states) - all_q - (all_qbar - {hi})
        # two-agent middle pools are judgment-homogeneous except the last flip state
        if len(series.agents) == 2:
            vectors = {series.judgment_vector(t) for t in model.members["w2"] if t != hi}
            assert len(vectors) <= 1


def test_partition_validity_random():
    rng = random.Random(7)
    for _ in range(200):
        model = pool_states(random_series(rng))
        everything = set(model.worlds)
        for agent in model.agents:
            cells = model.partitions[agent]
            union = set()
            for cell in cells:
                assert cell and not (cell & union)
                union |= cell
            assert union == everything


def test_model_validation_rejects_bad_partitions():
    with pytest.raises(ValueError):
        WorldModel(
            agents=("S",),
            worlds=("w1", "w2"),
            partitions={"S": (frozenset({"w1"}),)},
            valuation={PHI: frozenset(), NOT_PHI: frozenset()},
        )
    with pytest.raises(ValueError):
        WorldModel(
            agents=("S",),
            worlds=("w1",),
            partitions={"S": (frozenset({"w1"}),)},
            valuation={PHI: frozenset({"w1"}), NOT_PHI: frozenset({"w1"})},
        )


# --- doxastic operators -----------------------------------------------------


def test_thinks_examples(canonical_model):
    assert thinks(canonical_model, "S", {"w1", "w2"}, "w1") is True
    assert thinks(canonical_model, "L", {"w1", "w2"}, "w2") is False
    for agent in canonical_model.agents:
        for world in canonical_model.worlds:
            assert thinks(canonical_model, agent, canonical_model.worlds, world) is True


def test_thinks_errors(canonical_model):
    with pytest.raises(UnknownLabelError):
        thinks(canonical_model, "nobody", {"w1"}, "w1")
    with pytest.raises(UnknownLabelError):
        thinks(canonical_model, "S", {"w1"}, "w9")
    with pytest.raises(UnknownLabelError):
        thinks(canonical_model, "S", {"w9"}, "w1")


def test_thinks_monotone_random():
    rng = random.Random(99)
    for _ in range(100):
        model = pool_states(random_series(rng, max_n=20, max_agents=4))
        worlds = list(model.worlds)
        small = {w for w in worlds if rng.random() < 0.5}
        large = small | {w for w in worlds if rng.random() < 0.5}
        for agent in model.agents:
            for world in worlds:
                if thinks(model, agent, small, world):
                    assert thinks(model, agent, large, world)


def test_common_belief_examples(canonical_model):
    assert common_belief(canonical_model, {"w2", "w3"}) == frozenset()
    assert common_belief(canonical_model, {"w2", "w3"}, {"w3"}) == frozenset({"w3"})
    assert common_belief(canonical_model, canonical_model.worlds) == frozenset(canonical_model.worlds)
    assert common_belief(canonical_model, {"w3"}) == frozenset()
    assert common_belief(canonical_model, {"w3"}, {"w3"}) == frozenset({"w3"})


def test_common_belief_is_fixpoint_random():
    rng = random.Random(123)
    for _ in range(100):
        model = pool_states(random_series(rng, max_n=20, max_agents=4))
        worlds = list(model.worlds)
        prop = {w for w in worlds if rng.random() < 0.6}
        live = {w for w in worlds if rng.random() < 0.8} or set(worlds)
        result = common_belief(model, prop, live)
        assert result <= (prop & live)
        assert everyone_thinks(model, result, live) == result


def test_everyone_thinks_restriction(canonical_model):
    # with all worlds live, nobody can publicise {w3}; restricted to {w3} it holds
    assert everyone_thinks(canonical_model, {"w3"}) == frozenset()
    assert everyone_thinks(canonical_model, {"w3"}, {"w3"}) == frozenset({"w3"})


# --- accessibility ----------------------------------------------------------


def test_accessible_examples(canonical_model):
    assert accessible(canonical_model, "w1", "w2") is True
    assert accessible(canonical_model, "w1", "w3") is False
    for world in canonical_model.worlds:
        assert accessible(canonical_model, world, world) is True


def test_accessibility_reflexive_symmetric_random():
    rng = random.Random(5)
    for _ in range(100):
        model = pool_states(random_series(rng, max_n=20, max_agents=4))
        for u in model.worlds:
            assert accessible(model, u, u)
            for v in model.worlds:
                assert accessible(model, u, v) == accessible(model, v, u)


def test_canonical_transitivity_failure(canonical_model):
    assert accessible(canonical_model, "w1", "w2")
    assert accessible(canonical_model, "w2", "w3")
    assert not accessible(canonical_model, "w1", "w3")


# --- judgment propositions --------------------------------------------------


def test_judgment_proposition(canonical_model):
    q_side = judgment_proposition(canonical_model, "S", Q)
    qbar_side = judgment_proposition(canonical_model, "S", QBAR)
    assert q_side.extension == frozenset({"w1", "w2"})
    assert qbar_side.extension == frozenset({"w3"})
    assert q_side.extension | qbar_side.extension == canonical_model.world_set
    assert not q_side.extension & qbar_side.extension


def test_judgment_proposition_errors(canonical_model):
    with pytest.raises(UnknownLabelError):
        judgment_proposition(canonical_model, "nobody", Q)
    with pytest.raises(ValueError):
        judgment_proposition(canonical_model, "S", "maybe")
    bare = WorldModel(
        agents=("S",),
        worlds=("w1",),
        partitions={"S": (frozenset({"w1"}),)},
        valuation={PHI: frozenset({"w1"}), NOT_PHI: frozenset()},
    )
    with pytest.raises(ValueError):
        judgment_proposition(bare, "S", Q)

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bncover import (
    Label,
    VassConfig,
    VassSpec,
    add_receives,
    complete_receives,
    finite_spec,
    strip_receives,
    vass_covered_by_initial,
    vass_leq,
    vass_min_enabling,
    vass_pre_basis,
    vass_successors,
)
from bncover.vass import VassTransition

from conftest import cfg, random_vass


def test_relay_broadcast_a_successor(relay):
    assert vass_successors(relay, cfg("q0", 1), Label.broadcast("a")) == (cfg("q1", 0),)


def test_no_broadcast_a_from_q1(relay):
    assert vass_successors(relay, cfg("q1", 0), Label.broadcast("a")) == ()


def test_successors_match_declaration_scan():
    rng = random.Random(3)
    for _ in range(30):
        spec = random_vass(rng)
        config = VassConfig(
            rng.choice(spec.states), tuple(rng.randint(0, 2) for _ in range(spec.dim))
        )
        label = rng.choice([t.label for t in spec.transitions])
        expected = []
        for t in spec.transitions:
            if t.source == config.state and t.label == label:
                updated = tuple(u + v for u, v in zip(config.counters, t.delta))
                if all(x >= 0 for x in updated):
                    expected.append(VassConfig(t.target, updated))
        assert list(vass_successors(spec, config, label)) == expected


def test_relay_pre_basis_of_broadcast_d(relay):
    out = vass_pre_basis(relay, Label.broadcast("d"), (cfg("q5", 0),))
    assert out == (cfg("q3", 1),)


def test_pre_basis_of_empty_is_empty(relay):
    assert vass_pre_basis(relay, Label.broadcast("d"), ()) == ()


def test_pre_basis_matches_truncated_membership():
    # up(pre_basis(l, b)) must equal {c : some l-successor of c is in up(b)}
    rng = random.Random(17)
    for _ in range(25):
        spec = random_vass(rng, max_dim=1)
        if spec.dim != 1:
            continue
        label = rng.choice([t.label for t in spec.transitions])
        target = VassConfig(rng.choice(spec.states), (rng.randint(0, 2),))
        basis = vass_pre_basis(spec, label, (target,))
        for state in spec.states:
            for counter in range(7):
                c = VassConfig(state, (counter,))
                in_pre = any(
                    vass_leq(target, succ) for succ in vass_successors(spec, c, label)
                )
                in_basis_up = any(vass_leq(b, c) for b in basis)
                assert in_pre == in_basis_up, (spec, label, target, c)


def test_relay_min_enabling_broadcast_a(relay):
    assert vass_min_enabling(relay, Label.broadcast("a")) == (cfg("q0", 1),)


def test_min_enabling_letter_without_broadcasts(lone_receiver):
    assert vass_min_enabling(lone_receiver, Label.broadcast("a")) == ()


def test_min_enabling_is_tight():
    # every returned config fires; nothing strictly below does (enabling is
    # upward closed, so single-coordinate decrements cover all of "below")
    rng = random.Random(23)
    for _ in range(25):
        spec = random_vass(rng)
        for letter in spec.alphabet:
            label = Label.broadcast(letter)
            for c in vass_min_enabling(spec, label):
                assert vass_successors(spec, c, label)
                for i, x in enumerate(c.counters):
                    if x == 0:
                        continue
                    lower = VassConfig(
                        c.state, c.counters[:i] + (x - 1,) + c.counters[i + 1 :]
                    )
                    assert not vass_successors(spec, lower, label), (spec, c, lower)


def test_strip_leaves_only_broadcasts(relay):
    stripped = strip_receives(relay)
    active = list(stripped.active_transitions())
    assert len(active) == 4
    assert all(t.label.is_broadcast for t in active)
    assert {t.label.letter for t in active} == {"a", "b", "c", "d"}


def test_add_receives_idempotent(relay):
    stripped = strip_receives(relay)
    once = add_receives(stripped, "b")
    twice = add_receives(once, "b")
    assert once == twice
    assert list(once.active_transitions()) == list(twice.active_transitions())


def test_strip_then_add_all_round_trips(relay):
    spec = strip_receives(relay)
    for letter in relay.alphabet:
        spec = add_receives(spec, letter)
    assert set(spec.active_transitions()) == set(relay.active_transitions())


def test_add_receives_on_full_model_is_noop(relay):
    assert add_receives(relay, "a") == relay


def test_add_receives_unknown_letter(relay):
    with pytest.raises(ValueError):
        add_receives(relay, "z")


def test_completion_totalizes_receives(relay_raw):
    done = complete_receives(relay_raw, "sink")
    assert "sink" in done.states
    have = {
        (t.source, t.label.letter)
        for t in done.transitions
        if not t.label.is_broadcast
    }
    for s in done.states:
        for x in done.alphabet:
            assert (s, x) in have
    # the dead state only loops back to itself
    for t in done.transitions:
        if t.source == "sink":
            assert t.target == "sink" and not t.label.is_broadcast
            assert t.delta == (0,)


def test_completion_preserves_explicit_receives(relay_raw):
    done = complete_receives(relay_raw, "sink")
    assert vass_successors(done, cfg("q6", 1), Label.receive("a")) == (cfg("q7", 2),)


def test_covered_by_initial(relay):
    assert vass_covered_by_initial(relay, cfg("q0", 1))
    assert vass_covered_by_initial(relay, cfg("q0", 0))
    assert not vass_covered_by_initial(relay, cfg("q0", 2))
    assert not vass_covered_by_initial(relay, cfg("q1", 0))


counters = st.tuples(st.integers(0, 5), st.integers(0, 5))
triples = st.tuples(
    st.builds(VassConfig, st.sampled_from("pq"), counters),
    st.builds(VassConfig, st.sampled_from("pq"), counters),
    st.builds(VassConfig, st.sampled_from("pq"), counters),
)


@given(triples)
def test_leq_is_a_partial_order(abc):
    a, b, c = abc
    assert vass_leq(a, a)
    if vass_leq(a, b) and vass_leq(b, a):
        assert a == b
    if vass_leq(a, b) and vass_leq(b, c):
        assert vass_leq(a, c)


def test_long_streams_contain_an_increasing_pair():
    rng = random.Random(99)
    for _ in range(5):
        stream = [
            VassConfig(rng.choice("pq"), (rng.randint(0, 40), rng.randint(0, 40)))
            for _ in range(1000)
        ]
        assert any(
            vass_leq(stream[i], stream[j])
            for i in range(len(stream))
            for j in range(i + 1, min(i + 60, len(stream)))
        )


def test_dimension_validation():
    with pytest.raises(ValueError):
        VassSpec(("a",), 2, (("a", (0,)),), ())
    with pytest.raises(ValueError):
        VassSpec(
            ("a",), 1, (("a", (0,)),),
            (VassTransition("a", Label.broadcast("x"), (), "a"),),
        )
    with pytest.raises(ValueError):
        VassConfig("a", (-1,))


def test_finite_spec_is_dimension_zero():
    spec = finite_spec(["x", "y"], ["x"], [("x", Label.broadcast("m"), "y")])
    assert spec.dim == 0
    assert vass_successors(spec, VassConfig("x"), Label.broadcast("m")) == (VassConfig("y"),)

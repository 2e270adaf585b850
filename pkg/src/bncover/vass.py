"""Finite-state and counter-vector process models with broadcast and
receive transition labels.

A specification lists control states, a counter dimension, initial
configurations, and labelled transitions carrying integer update vectors.
A transition fires when the updated counters stay nonnegative.
Configurations are ordered by equal control state and componentwise
comparison of counters; a finite-state process is the dimension-zero
special case.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .order import minimize


@dataclass(frozen=True)
class Label:
    """Transition label: broadcast (``!!``) or receive (``??``) of a letter."""

    sigil: str
    letter: str

    def __post_init__(self):
        if self.sigil not in ("!!", "??"):
            raise ValueError(f"label sigil must be '!!' or '??', got {self.sigil!r}")
        if not self.letter:
            raise ValueError("label letter must be nonempty")

    @property
    def is_broadcast(self) -> bool:
        return self.sigil == "!!"

    @classmethod
    def broadcast(cls, letter: str) -> "Label":
        return cls("!!", letter)

    @classmethod
    def receive(cls, letter: str) -> "Label":
        return cls("??", letter)

    @classmethod
    def parse(cls, text: str) -> "Label":
        return cls(text[:2], text[2:])

    def __str__(self) -> str:
        return self.sigil + self.letter


@dataclass(frozen=True)
class VassConfig:
    """One process configuration: control state plus counter values."""

    state: str
    counters: tuple[int, ...] = ()

    def __post_init__(self):
        if any(c < 0 for c in self.counters):
            raise ValueError(f"counters must stay nonnegative: {self.counters}")

    def __str__(self) -> str:
        if not self.counters:
            return self.state
        return f"{self.state}({','.join(str(c) for c in self.counters)})"


def vass_leq(c1: VassConfig, c2: VassConfig) -> bool:
    return (
        c1.state == c2.state
        and len(c1.counters) == len(c2.counters)
        and all(a <= b for a, b in zip(c1.counters, c2.counters))
    )


@dataclass(frozen=True)
class VassTransition:
    source: str
    label: Label
    delta: tuple[int, ...]
    target: str

    def __str__(self) -> str:
        return f"{self.source} -{self.label}-> {self.target}"


@dataclass(frozen=True)
class VassSpec:
    """Counter process specification.

    ``initial`` pairs each initial control state with its starting counter
    vector.  ``active_receives`` narrows which receive letters are enabled:
    ``None`` enables every declared receive, a set enables exactly those
    letters (broadcast transitions are always enabled).  The full declared
    transition list is kept so disabled receives can be re-enabled later.
    """

    states: tuple[str, ...]
    dim: int
    initial: tuple[tuple[str, tuple[int, ...]], ...]
    transitions: tuple[VassTransition, ...]
    active_receives: Optional[frozenset[str]] = None

    def __post_init__(self):
        seen = set()
        for s in self.states:
            if s in seen:
                raise ValueError(f"duplicate state {s!r}")
            seen.add(s)
        if not self.initial:
            raise ValueError("at least one initial configuration is required")
        for state, vector in self.initial:
            if state not in seen:
                raise ValueError(f"initial state {state!r} is not declared")
            if len(vector) != self.dim:
                raise ValueError(f"initial vector {vector} does not have dimension {self.dim}")
            if any(x < 0 for x in vector):
                raise ValueError(f"initial vector {vector} must be nonnegative")
        for t in self.transitions:
            if t.source not in seen or t.target not in seen:
                raise ValueError(f"transition {t} references an undeclared state")
            if len(t.delta) != self.dim:
                raise ValueError(f"transition {t} has delta of wrong dimension")

    @property
    def alphabet(self) -> tuple[str, ...]:
        """Letters in order of first appearance among declared transitions."""
        out: list[str] = []
        for t in self.transitions:
            if t.label.letter not in out:
                out.append(t.label.letter)
        return tuple(out)

    @property
    def labels(self) -> tuple[Label, ...]:
        """Active transition labels in order of first appearance."""
        out: list[Label] = []
        for t in self.active_transitions():
            if t.label not in out:
                out.append(t.label)
        return tuple(out)

    def active_transitions(self) -> Iterator[VassTransition]:
        for t in self.transitions:
            if (
                t.label.is_broadcast
                or self.active_receives is None
                or t.label.letter in self.active_receives
            ):
                yield t


def finite_spec(states, initial_states, transitions) -> VassSpec:
    """Finite-state process as a dimension-zero counter model.

    ``transitions`` are ``(source, label, target)`` triples.
    """
    return VassSpec(
        states=tuple(states),
        dim=0,
        initial=tuple((s, ()) for s in initial_states),
        transitions=tuple(VassTransition(s, l, (), t) for s, l, t in transitions),
    )


def vass_successors(spec: VassSpec, config: VassConfig, label: Label) -> tuple[VassConfig, ...]:
    """All one-step successors of ``config`` under ``label``, declaration order."""
    out = []
    for t in spec.active_transitions():
        if t.source != config.state or t.label != label:
            continue
        updated = tuple(u + v for u, v in zip(config.counters, t.delta))
        if all(x >= 0 for x in updated):
            out.append(VassConfig(t.target, updated))
    return tuple(out)


def vass_pre_basis(spec: VassSpec, label: Label, basis: Sequence[VassConfig]) -> tuple[VassConfig, ...]:
    """Minimal configurations with a ``label`` transition into the upward
    closure of ``basis``.

    For a transition with update ``v`` into ``(q, u)``-or-above, the least
    firing counters are ``max(u - v, -v, 0)`` componentwise.
    """
    out = []
    for t in spec.active_transitions():
        if t.label != label:
            continue
        for c in basis:
            if c.state != t.target:
                continue
            w = tuple(max(u - v, -v, 0) for u, v in zip(c.counters, t.delta))
            out.append(VassConfig(t.source, w))
    return minimize(out, vass_leq)


def vass_min_enabling(spec: VassSpec, label: Label) -> tuple[VassConfig, ...]:
    """Minimal configurations at which some ``label`` transition fires.

    Each transition contributes its source state with counters
    ``max(0, -delta)``; the union is minimized.
    """
    out = [
        VassConfig(t.source, tuple(max(0, -v) for v in t.delta))
        for t in spec.active_transitions()
        if t.label == label
    ]
    return minimize(out, vass_leq)


def strip_receives(spec):
    """Copy of the model with every receive transition disabled."""
    return dataclasses.replace(spec, active_receives=frozenset())


def add_receives(spec, letter: str):
    """Copy of the model with the declared ``??letter`` transitions enabled again.

    Idempotent; enabling on a fully-enabled model is a no-op.
    """
    if letter not in spec.alphabet:
        raise ValueError(f"unknown letter {letter!r}")
    if spec.active_receives is None:
        return spec
    return dataclasses.replace(spec, active_receives=spec.active_receives | {letter})


def complete_receives(spec: VassSpec, dead_state: str) -> VassSpec:
    """Totalize receives through a dead state.

    Every (state, letter) pair without an explicit receive transition gets
    one into ``dead_state`` with zero update; the dead state in particular
    ends up with zero-update self-loops for every letter.
    """
    states = spec.states if dead_state in spec.states else spec.states + (dead_state,)
    zero = (0,) * spec.dim
    have = {(t.source, t.label.letter) for t in spec.transitions if not t.label.is_broadcast}
    extra = tuple(
        VassTransition(s, Label.receive(x), zero, dead_state)
        for s in states
        for x in spec.alphabet
        if (s, x) not in have
    )
    return dataclasses.replace(spec, states=states, transitions=spec.transitions + extra)


def vass_initial_configs(spec: VassSpec) -> tuple[VassConfig, ...]:
    return tuple(VassConfig(s, v) for s, v in spec.initial)


def vass_covered_by_initial(spec: VassSpec, config: VassConfig) -> bool:
    return any(
        state == config.state and all(a <= b for a, b in zip(config.counters, vector))
        for state, vector in spec.initial
    )


class VassSpace:
    """Ordered-space view of a counter model, pluggable into saturation."""

    def __init__(self, spec: VassSpec):
        self.spec = spec

    @property
    def labels(self) -> tuple[Label, ...]:
        return self.spec.labels

    def leq(self, c1, c2) -> bool:
        return vass_leq(c1, c2)

    def covered_by_initial(self, config) -> bool:
        return vass_covered_by_initial(self.spec, config)

    def pre_basis_for_label(self, label, basis):
        return vass_pre_basis(self.spec, label, basis)

    def successors(self, config, label):
        return vass_successors(self.spec, config, label)

    def min_enabling(self, label):
        return vass_min_enabling(self.spec, label)

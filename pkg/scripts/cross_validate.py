#!/usr/bin/env python3
"""Random cross-validation sweeps between independent engines.

Three checks, each between routes that share no decision logic:
backward saturation against bounded forward search, the rewiring decider
against plain coverability on broadcast-only models, and the rewiring
decider against forward exploration on small node counts.
"""

import argparse
import pathlib
import random
import sys

sys.path.insert(0, str(pathlib.Path(__file__).parent.parent / "src"))
sys.path.insert(0, str(pathlib.Path(__file__).parent.parent / "tests"))

from bncover import (
    PdsConfig,
    Reconfigurable,
    VassConfig,
    VassSpace,
    backward_coverability,
    explore,
    pds_coverable,
    rbn_coverable,
)
from conftest import random_finite, random_pushdown, random_vass
from oracles import forward_cover


def sweep_backward_vs_forward(rng, rounds):
    agreed = skipped = 0
    for _ in range(rounds):
        spec = random_vass(rng)
        target = VassConfig(
            rng.choice(spec.states), tuple(rng.choice((0, 1)) for _ in range(spec.dim))
        )
        covered, complete = forward_cover(spec, target)
        verdict = backward_coverability(VassSpace(spec), target)
        if covered:
            assert verdict.coverable, (spec, target)
            agreed += 1
        elif complete:
            assert not verdict.coverable, (spec, target)
            agreed += 1
        else:
            skipped += 1
    return agreed, skipped


def sweep_rewiring_vs_plain(rng, rounds):
    for _ in range(rounds):
        spec = random_vass(rng, broadcast_only=True)
        target = VassConfig(
            rng.choice(spec.states), tuple(rng.choice((0, 1)) for _ in range(spec.dim))
        )
        plain = backward_coverability(VassSpace(spec), target)
        assert rbn_coverable(spec, target).coverable == plain.coverable, (spec, target)
    return rounds, 0


def sweep_explore_vs_rewiring(rng, rounds):
    positives = 0
    for _ in range(rounds):
        spec = random_finite(rng)
        for state in spec.states:
            target = VassConfig(state)
            if any(
                explore(spec, Reconfigurable(), n, 12, target) is not None
                for n in range(1, 5)
            ):
                assert rbn_coverable(spec, target).coverable, (spec, target)
                positives += 1
    return positives, 0


def sweep_pushdown_vs_forward(rng, rounds):
    agreed = skipped = 0
    for _ in range(rounds):
        spec = random_pushdown(rng)
        stack = "".join(rng.choice(spec.stack_alphabet) for _ in range(rng.randint(0, 2)))
        target = PdsConfig(rng.choice(spec.states), stack)
        covered, complete = forward_cover(spec, target, counter_cap=7, depth_cap=16)
        verdict = pds_coverable(spec, target)
        if covered:
            assert verdict.coverable, (spec, target)
            agreed += 1
        elif complete:
            assert not verdict.coverable, (spec, target)
            agreed += 1
        else:
            skipped += 1
    return agreed, skipped


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rounds", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = random.Random(args.seed)

    for name, sweep in [
        ("backward vs bounded-forward", sweep_backward_vs_forward),
        ("rewiring vs plain (broadcast-only)", sweep_rewiring_vs_plain),
        ("explore-positive vs rewiring", sweep_explore_vs_rewiring),
        ("pushdown vs bounded-forward", sweep_pushdown_vs_forward),
    ]:
        agreed, skipped = sweep(rng, args.rounds)
        note = f", {skipped} skipped (bounds hit)" if skipped else ""
        print(f"{name}: {agreed} agreements over {args.rounds} rounds{note}")


if __name__ == "__main__":
    main()

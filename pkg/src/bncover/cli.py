"""Command-line front end: verify, explore, replay.

    bncover verify model.bn --report out.json
    bncover explore model.bn --nodes 3 --depth 9 --witness run.json
    bncover replay model.bn --witness run.json

Exit status: 0 when every query completed, 2 when some query exhausted its
resource limits, 1 on input errors (and on a failed replay).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from .explore import explore, replay
from .graphs import Clique, PathBounded, Reconfigurable
from .modelfile import ModelError, ModelFile, Query, parse_model
from .order import ResourceExhausted, ResourceLimits
from .rbn import WitnessExtractionFailed, rbn_coverable, rbn_witness
from .report import QueryReport, Report, report_to_json, run_from_json, run_to_json
from .static_cover import diam_deg_coverable, static_coverable, static_witness_run

VERDICT_COVERABLE = "coverable"
VERDICT_NOT = "not-coverable"
VERDICT_EXHAUSTED = "resource-exhausted"


def _query_class(query: Query):
    if query.semantics == "path-bounded":
        return PathBounded(query.params[0])
    if query.semantics == "clique":
        return Clique()
    raise ValueError(query.semantics)


def run_query(
    model: ModelFile,
    query: Query,
    index: int,
    defaults: ResourceLimits,
    want_witness: bool = False,
) -> QueryReport:
    spec = model.process
    target = query.target(spec)
    limits = ResourceLimits(
        max_basis=query.max_basis if query.max_basis is not None else defaults.max_basis,
        max_iters=query.max_iters if query.max_iters is not None else defaults.max_iters,
    )
    started = time.perf_counter()
    witness = None
    trace_rows = sweeps = inner = iterations = basis_size = None
    try:
        if query.semantics == "rbn":
            result = rbn_coverable(spec, target, limits)
            verdict = VERDICT_COVERABLE if result.coverable else VERDICT_NOT
            iterations = result.verdict.iterations
            basis_size = len(result.verdict.basis)
            sweeps = len(result.trace.rounds)
            inner = result.trace.total_queries
            trace_rows = tuple((r.unlocked, len(r.queries)) for r in result.trace.rounds)
            if want_witness and result.coverable:
                try:
                    witness = rbn_witness(spec, target, result.trace)
                except WitnessExtractionFailed:
                    witness = None
        elif query.semantics == "diam-deg":
            k, d, n_max = query.params
            verdict_obj = diam_deg_coverable(spec, target, k, d, n_max, limits)
            verdict = VERDICT_COVERABLE if verdict_obj.coverable else VERDICT_NOT
            iterations = verdict_obj.iterations
            basis_size = len(verdict_obj.basis)
            if want_witness and verdict_obj.coverable:
                from .graphs import DiamDeg

                try:
                    witness = static_witness_run(spec, verdict_obj, DiamDeg(k, d))
                except RuntimeError:
                    witness = None
        else:
            cls = _query_class(query)
            verdict_obj = static_coverable(spec, target, cls, limits)
            verdict = VERDICT_COVERABLE if verdict_obj.coverable else VERDICT_NOT
            iterations = verdict_obj.iterations
            basis_size = len(verdict_obj.basis)
            if want_witness and verdict_obj.coverable:
                try:
                    witness = static_witness_run(spec, verdict_obj, cls)
                except RuntimeError:
                    witness = None
    except ResourceExhausted:
        verdict = VERDICT_EXHAUSTED
    elapsed = time.perf_counter() - started
    return QueryReport(
        index=index,
        state=query.state,
        vector=query.vector,
        stack=query.stack,
        semantics=query.semantics_text,
        verdict=verdict,
        time_s=round(elapsed, 6),
        iterations=iterations,
        basis_size=basis_size,
        sweeps=sweeps,
        inner_queries=inner,
        trace=trace_rows,
        witness=witness,
    )


def run_queries(
    model: ModelFile,
    model_name: str = "<model>",
    defaults: Optional[ResourceLimits] = None,
    want_witness: bool = False,
) -> Report:
    """One verdict per query, in declaration order."""
    defaults = defaults or ResourceLimits()
    results = tuple(
        run_query(model, query, i, defaults, want_witness)
        for i, query in enumerate(model.queries)
    )
    return Report(model_name, results)


def _load_model(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return None
    try:
        return parse_model(text)
    except ModelError as exc:
        print(f"{path}:{exc}", file=sys.stderr)
        return None


def _limits_from_args(args) -> ResourceLimits:
    base = ResourceLimits()
    return ResourceLimits(
        max_basis=args.max_basis if args.max_basis is not None else base.max_basis,
        max_iters=args.max_iters if args.max_iters is not None else base.max_iters,
    )


def _cmd_verify(args) -> int:
    model = _load_model(args.model)
    if model is None:
        return 1
    report = run_queries(model, args.model, _limits_from_args(args), args.witness)
    for r in report.results:
        print(f"query {r.index}: cover {r.target_text} [{r.semantics}] -> {r.verdict} ({r.time_s:.3f}s)")
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report_to_json(report))
        print(f"report written to {args.report}")
    if any(r.verdict == VERDICT_EXHAUSTED for r in report.results):
        return 2
    return 0


def _semantics_of(query: Query):
    if query.semantics == "rbn":
        return Reconfigurable()
    if query.semantics == "diam-deg":
        from .graphs import DiamDeg

        return DiamDeg(query.params[0], query.params[1])
    return _query_class(query)


def _cmd_explore(args) -> int:
    model = _load_model(args.model)
    if model is None:
        return 1
    found = None
    for i, query in enumerate(model.queries):
        target = query.target(model.process)
        try:
            run = explore(
                model.process,
                _semantics_of(query),
                args.nodes,
                args.depth,
                target,
                counter_cap=args.counter_cap,
            )
        except ResourceExhausted as exc:
            print(f"query {i}: exploration exhausted ({exc})")
            return 2
        if run is None:
            print(
                f"query {i}: no covering run within {args.nodes} nodes, depth "
                f"{args.depth}, counter cap {args.counter_cap} (absence proves nothing)"
            )
        else:
            print(
                f"query {i}: covering run found, {len(run) - 1} steps on "
                f"{run[0].graph.n} nodes (counter cap {args.counter_cap})"
            )
            if found is None:
                found = run
    if found is not None and args.witness:
        with open(args.witness, "w") as fh:
            json.dump(run_to_json(found), fh, indent=2)
        print(f"witness written to {args.witness}")
    return 0


def _cmd_replay(args) -> int:
    model = _load_model(args.model)
    if model is None:
        return 1
    try:
        with open(args.witness) as fh:
            run = run_from_json(json.load(fh))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: bad witness file: {exc}", file=sys.stderr)
        return 1
    outcome = replay(model.process, run)
    if outcome:
        print(f"witness of {len(run) - 1} steps replays cleanly")
        return 0
    print(f"witness rejected at step {outcome.failed_at}: {outcome.reason}")
    return 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="bncover",
        description="coverability checking for broadcast networks of infinite-state processes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the model's queries")
    p_verify.add_argument("model")
    p_verify.add_argument("--report", help="write a JSON report here")
    p_verify.add_argument("--max-basis", type=int, default=None)
    p_verify.add_argument("--max-iters", type=int, default=None)
    p_verify.add_argument("--witness", action="store_true",
                          help="attempt witness extraction for positive verdicts")
    p_verify.set_defaults(fn=_cmd_verify)

    p_explore = sub.add_parser("explore", help="bounded forward search for covering runs")
    p_explore.add_argument("model")
    p_explore.add_argument("--nodes", type=int, required=True)
    p_explore.add_argument("--depth", type=int, required=True)
    p_explore.add_argument("--counter-cap", type=int, default=8)
    p_explore.add_argument("--witness", help="write the first witness run here")
    p_explore.set_defaults(fn=_cmd_explore)

    p_replay = sub.add_parser("replay", help="validate a witness run against the model")
    p_replay.add_argument("model")
    p_replay.add_argument("--witness", required=True)
    p_replay.set_defaults(fn=_cmd_replay)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())

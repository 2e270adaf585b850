"""Machine-readable reports and witness-run serialization.

Both formats are JSON objects whose first field names the format version;
readers reject unknown versions and unknown fields, so the schemas stay
stable.  A witness run serializes each step with the graph it reaches;
configurations carry either counters or a stack, which is how the reader
tells the two process families apart.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .explore import RunStep
from .graphs import LabelledGraph
from .pushdown import PdsConfig
from .vass import VassConfig

REPORT_FORMAT = "bncover-report/1"
WITNESS_FORMAT = "bncover-witness/1"


def _config_to_json(config) -> dict:
    if isinstance(config, VassConfig):
        return {"state": config.state, "counters": list(config.counters)}
    if isinstance(config, PdsConfig):
        return {"state": config.state, "stack": config.stack}
    raise TypeError(f"cannot serialize {type(config).__name__}")


def _config_from_json(data: dict):
    keys = set(data)
    if keys == {"state", "counters"}:
        return VassConfig(data["state"], tuple(data["counters"]))
    if keys == {"state", "stack"}:
        return PdsConfig(data["state"], data["stack"])
    raise ValueError(f"bad configuration record: {sorted(keys)}")


def _graph_to_json(graph: LabelledGraph) -> dict:
    return {
        "vertices": graph.n,
        "edges": sorted([a, b] for a, b in graph.edges),
        "labels": [_config_to_json(l) for l in graph.labels],
    }


def _graph_from_json(data: dict) -> LabelledGraph:
    _expect_keys(data, {"vertices", "edges", "labels"})
    return LabelledGraph(
        data["vertices"],
        frozenset(tuple(e) for e in data["edges"]),
        tuple(_config_from_json(l) for l in data["labels"]),
    )


def run_to_json(run) -> dict:
    steps = []
    for step in run:
        entry: dict = {"kind": step.kind, "graph": _graph_to_json(step.graph)}
        if step.vertex is not None:
            entry["vertex"] = step.vertex
        if step.letter is not None:
            entry["letter"] = step.letter
        steps.append(entry)
    return {"format": WITNESS_FORMAT, "steps": steps}


def run_from_json(data: dict):
    _expect_keys(data, {"format", "steps"})
    if data["format"] != WITNESS_FORMAT:
        raise ValueError(f"unsupported witness format {data.get('format')!r}")
    steps = []
    for entry in data["steps"]:
        _expect_keys(entry, {"kind", "graph"}, optional={"vertex", "letter"})
        steps.append(
            RunStep(
                entry["kind"],
                _graph_from_json(entry["graph"]),
                entry.get("vertex"),
                entry.get("letter"),
            )
        )
    return tuple(steps)


def _expect_keys(data: dict, required: set, optional: set = frozenset()):
    keys = set(data)
    missing = required - keys
    unknown = keys - required - optional
    if missing or unknown:
        raise ValueError(
            f"bad record: missing {sorted(missing)}, unknown {sorted(unknown)}"
        )


@dataclass(frozen=True)
class QueryReport:
    index: int
    state: str
    vector: Optional[tuple[int, ...]]
    stack: Optional[str]
    semantics: str
    verdict: str  # "coverable" | "not-coverable" | "resource-exhausted"
    time_s: float
    iterations: Optional[int] = None
    basis_size: Optional[int] = None
    sweeps: Optional[int] = None
    inner_queries: Optional[int] = None
    trace: Optional[tuple] = None  # ((unlocked letters...), query count) per sweep
    witness: Optional[tuple] = None  # run steps

    @property
    def target_text(self) -> str:
        if self.stack is not None:
            return f"{self.state}[{self.stack}]"
        if self.vector:
            return f"{self.state}({','.join(str(v) for v in self.vector)})"
        return self.state


@dataclass(frozen=True)
class Report:
    model: str
    results: tuple[QueryReport, ...]


_RESULT_KEYS = {
    "index", "state", "vector", "stack", "semantics", "verdict", "time_s",
    "iterations", "basis_size", "sweeps", "inner_queries", "trace", "witness",
}


def report_to_json(report: Report) -> str:
    results = []
    for r in report.results:
        entry = {
            "index": r.index,
            "state": r.state,
            "vector": list(r.vector) if r.vector is not None else None,
            "stack": r.stack,
            "semantics": r.semantics,
            "verdict": r.verdict,
            "time_s": r.time_s,
            "iterations": r.iterations,
            "basis_size": r.basis_size,
            "sweeps": r.sweeps,
            "inner_queries": r.inner_queries,
            "trace": [[list(u), q] for u, q in r.trace] if r.trace is not None else None,
            "witness": run_to_json(r.witness) if r.witness is not None else None,
        }
        results.append(entry)
    payload = {"format": REPORT_FORMAT, "model": report.model, "results": results}
    return json.dumps(payload, indent=2)


def report_from_json(text: str) -> Report:
    data = json.loads(text)
    _expect_keys(data, {"format", "model", "results"})
    if data["format"] != REPORT_FORMAT:
        raise ValueError(f"unsupported report format {data.get('format')!r}")
    results = []
    for entry in data["results"]:
        _expect_keys(entry, _RESULT_KEYS)
        results.append(
            QueryReport(
                index=entry["index"],
                state=entry["state"],
                vector=tuple(entry["vector"]) if entry["vector"] is not None else None,
                stack=entry["stack"],
                semantics=entry["semantics"],
                verdict=entry["verdict"],
                time_s=entry["time_s"],
                iterations=entry["iterations"],
                basis_size=entry["basis_size"],
                sweeps=entry["sweeps"],
                inner_queries=entry["inner_queries"],
                trace=tuple((tuple(u), q) for u, q in entry["trace"])
                if entry["trace"] is not None
                else None,
                witness=run_from_json(entry["witness"])
                if entry["witness"] is not None
                else None,
            )
        )
    return Report(data["model"], tuple(results))

"""Report model with deterministic text and structured renderings.

The structured form is a stable JSON tree (keys: "quantity", "lo", "hi",
"steps", "rule", "anchor", "witness", ...) with "inf" as the literal token
for an infinite bound; rendering the same report twice is byte-identical, and
parse_structured inverts render_structured.  Timing data is kept out of the
canonical bytes so determinism survives; pass include_timings to embed it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .graph import DerivationStep, InputAssertion


def step_to_json(step: DerivationStep) -> dict:
    return {
        "index": step.index,
        "rule": step.rule,
        "anchor": step.anchor,
        "node": step.node,
        "quantity": step.quantity,
        "old": step.old.to_json(),
        "new": step.new.to_json(),
        "premises": [
            {"node": p.node, "quantity": p.quantity, **p.interval.to_json()}
            for p in step.premises
        ],
        "conditions": list(step.conditions),
    }


def assertion_to_json(a: InputAssertion) -> dict:
    return {"node": a.node, "quantity": a.quantity, **a.interval.to_json(),
            "source": a.source}


@dataclass
class Report:
    """Per-query results plus warnings; results are JSON-ready dicts."""

    field: str
    status: str = "ok"  # "ok" | "contradiction"
    results: list[dict] = dc_field(default_factory=list)
    warnings: list[str] = dc_field(default_factory=list)
    inputs: list[dict] = dc_field(default_factory=list)
    contradiction: dict | None = None
    timings: dict = dc_field(default_factory=dict, compare=False)

    def to_json(self, include_timings: bool = False) -> dict:
        out = {
            "format": "tcbivar-report",
            "version": 1,
            "field": self.field,
            "status": self.status,
            "results": self.results,
            "warnings": self.warnings,
            "inputs": self.inputs,
        }
        if self.contradiction is not None:
            out["contradiction"] = self.contradiction
        if include_timings:
            out["timings"] = self.timings
        return out


def render_structured(report: Report, include_timings: bool = False) -> bytes:
    data = json.dumps(report.to_json(include_timings=include_timings),
                      indent=2, ensure_ascii=True)
    return (data + "\n").encode("utf-8")


def parse_structured(blob: bytes) -> Report:
    data = json.loads(blob.decode("utf-8"))
    if data.get("format") != "tcbivar-report":
        raise ValueError("not a structured report")
    return Report(
        field=data["field"],
        status=data["status"],
        results=data["results"],
        warnings=data["warnings"],
        inputs=data["inputs"],
        contradiction=data.get("contradiction"),
        timings=data.get("timings", {}),
    )


def _fmt_bound(value) -> str:
    return str(value)


def _render_steps(lines: list[str], steps: list[dict], indent: str) -> None:
    for s in steps:
        old = f"[{_fmt_bound(s['old']['lo'])}, {_fmt_bound(s['old']['hi'])}]"
        new = f"[{_fmt_bound(s['new']['lo'])}, {_fmt_bound(s['new']['hi'])}]"
        lines.append(f"{indent}[{s['rule']}] {s['quantity']}({s['node']}):"
                     f" {old} -> {new}")
        lines.append(f"{indent}      {s['anchor']}")
        if s["premises"]:
            prem = "; ".join(
                f"{p['quantity']}({p['node']}) = [{_fmt_bound(p['lo'])},"
                f" {_fmt_bound(p['hi'])}]" for p in s["premises"])
            lines.append(f"{indent}      from {prem}")
        if s["conditions"]:
            lines.append(f"{indent}      given {'; '.join(s['conditions'])}")


def render_text(report: Report) -> bytes:
    """Human-readable derivation narrative."""
    lines: list[str] = [f"field {report.field}", f"status {report.status}"]
    for w in report.warnings:
        lines.append(f"warning: {w}")
    for result in report.results:
        kind = result["query"]
        if kind == "bounds":
            lines.append(f"bounds {result['quantity']} ="
                         f" [{_fmt_bound(result['lo'])}, {_fmt_bound(result['hi'])}]")
            if result["steps"]:
                lines.append("  derivation:")
                _render_steps(lines, result["steps"], "    ")
            else:
                lines.append("  (input assertions only)")
        elif kind == "lcp":
            lines.append(f"lcp({result['pair']}): lcp = {result['value']}"
                         "  (cup-length of the difference-class span)")
            if result["witness"]:
                lines.append(f"  witness classes: {', '.join(result['witness'])}")
                lines.append(f"  witness product: {result['witness_product']}")
        elif kind == "explain":
            lines.append(f"explain {result['quantity']}:")
            if result["steps"]:
                _render_steps(lines, result["steps"], "  ")
            else:
                lines.append("  (input assertions only)")
        elif kind == "facts":
            lines.append("facts:")
            for f in result["facts"]:
                lines.append(f"  {f['quantity']}({f['node']}) = [{_fmt_bound(f['lo'])},"
                             f" {_fmt_bound(f['hi'])}]  ({f['source']})")
    if report.contradiction is not None:
        lines.append(f"contradiction: {report.contradiction['message']}")
        lines.append("trace:")
        _render_steps(lines, report.contradiction["trace"], "  ")
        for a in report.contradiction.get("assertions", []):
            lines.append(f"  input {a['quantity']}({a['node']}) = [{_fmt_bound(a['lo'])},"
                         f" {_fmt_bound(a['hi'])}]  ({a['source']})")
    return ("\n".join(lines) + "\n").encode("utf-8")

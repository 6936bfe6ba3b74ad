"""JSON encoding of graphs, points, divisors, sets, certificates and results.

Rationals are written as ``"p/q"`` strings. Dictionaries are emitted with a
fixed key order so output is diff-friendly.
"""
from __future__ import annotations

import json
from typing import Any

from .divisor import Divisor, FiringCertificate, FiringStep
from .engine import ReductionResult, TraceEntry
from .errors import InputError
from .graph import MetricGraph, Model, PointRef, as_rational, build_graph, format_rational, normalize_point
from .minmax import ErrorProfile
from .topology import AdmissibleSet, spset


def graph_to_json(graph: MetricGraph) -> dict:
    return {
        "vertices": list(graph.vertices),
        "edges": [
            {"id": e.id, "ends": list(e.ends), "length": format_rational(e.length)} for e in graph.edges
        ],
    }


def graph_from_json(data) -> MetricGraph:
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise InputError("graph JSON needs 'vertices' and 'edges'")
    return build_graph(data)


def point_to_json(p: PointRef) -> dict:
    if p.is_vertex:
        return {"vertex": p.vertex}
    return {"edge": p.edge, "offset": format_rational(p.offset)}


def point_from_json(graph: MetricGraph, data) -> PointRef:
    if not isinstance(data, dict):
        raise InputError(f"point must be an object, got {data!r}")
    if "vertex" in data:
        v = str(data["vertex"])
        if v not in graph.valency:
            raise InputError(f"unknown vertex {v!r}")
        return PointRef.at(v)
    if "edge" in data and "offset" in data:
        return normalize_point(graph, str(data["edge"]), as_rational(data["offset"]))
    raise InputError(f"point needs 'vertex' or 'edge'+'offset': {data!r}")


def divisor_to_json(D: Divisor) -> list:
    return [{**point_to_json(p), "coeff": c} for p, c in D.items()]


def divisor_from_json(graph: MetricGraph, data) -> Divisor:
    if not isinstance(data, list):
        raise InputError("divisor JSON must be a list")
    entries = []
    for rec in data:
        if not isinstance(rec, dict) or "coeff" not in rec:
            raise InputError(f"divisor entry needs 'coeff': {rec!r}")
        coeff = rec["coeff"]
        if isinstance(coeff, bool) or not isinstance(coeff, int):
            raise InputError(f"coefficient must be an integer: {rec!r}")
        entries.append((point_from_json(graph, rec), coeff))
    return Divisor(graph, entries)


def set_to_json(S: AdmissibleSet) -> dict:
    return {
        "model_points": [point_to_json(p) for p in S.model.points],
        "I": [v.label for v in sorted(S.I)],
        "J": sorted(S.J, key=lambda eid: (eid.split("#")[0], int(eid.split("#")[1]))),
        "spset": [point_to_json(p) for p in spset(S)],
    }


def _label_to_point(graph: MetricGraph, label: str) -> PointRef:
    if "@" in label:
        edge, off = label.split("@", 1)
        return normalize_point(graph, edge, as_rational(off))
    return PointRef.at(label)


def set_from_json(graph: MetricGraph, data) -> AdmissibleSet:
    if not isinstance(data, dict):
        raise InputError("set JSON must be an object")
    model = Model(graph, [point_from_json(graph, p) for p in data.get("model_points", [])])
    I = [_label_to_point(graph, str(x)) for x in data.get("I", [])]
    J = [str(x) for x in data.get("J", [])]
    return AdmissibleSet(model, I, J)


def certificate_to_json(cert: FiringCertificate) -> list:
    out = []
    for step in cert.steps:
        rec = {"set": set_to_json(step.S), "eps": format_rational(step.eps)}
        if step.sign != 1:
            rec["sign"] = step.sign
        out.append(rec)
    return out


def certificate_from_json(graph: MetricGraph, data) -> FiringCertificate:
    if not isinstance(data, list):
        raise InputError("certificate JSON must be a list")
    steps = []
    for rec in data:
        if not isinstance(rec, dict) or "set" not in rec or "eps" not in rec:
            raise InputError(f"certificate step needs 'set' and 'eps': {rec!r}")
        sign = rec.get("sign", 1)
        if sign not in (1, -1):
            raise InputError(f"sign must be 1 or -1: {rec!r}")
        steps.append(FiringStep(set_from_json(graph, rec["set"]), as_rational(rec["eps"]), sign))
    return FiringCertificate(tuple(steps))


def profile_to_json(profile: ErrorProfile) -> dict:
    return {
        "max_error": profile.max_error,
        "minmax": None if profile.minmax.is_empty else set_to_json(profile.minmax),
        "is_break": profile.is_break_signal,
    }


def profile_from_json(graph: MetricGraph, data) -> ErrorProfile:
    minmax = data.get("minmax")
    S = set_from_json(graph, minmax) if minmax is not None else AdmissibleSet.empty(graph.trivial_model)
    return ErrorProfile(int(data["max_error"]), S, bool(data["is_break"]))


def result_to_json(result: ReductionResult) -> dict:
    out: dict[str, Any] = {
        "semibreak": divisor_to_json(result.semibreak),
        "break_divisor": divisor_to_json(result.break_divisor),
        "certificate": certificate_to_json(result.certificate),
        "iterations": result.iterations,
    }
    if result.trace is not None:
        out["trace"] = [
            {
                "max_error": t.max_error,
                "minmax": None if t.minmax.is_empty else set_to_json(t.minmax),
                "case": t.case,
                "branch_count": t.branch_count,
                "total": divisor_to_json(t.total),
            }
            for t in result.trace
        ]
    return out


def _trace_from_json(graph: MetricGraph, data):
    entries = []
    for rec in data:
        minmax = rec.get("minmax")
        S = set_from_json(graph, minmax) if minmax is not None else AdmissibleSet.empty(graph.trivial_model)
        entries.append(
            TraceEntry(
                max_error=int(rec["max_error"]),
                minmax=S,
                case=rec.get("case"),
                branch_count=int(rec["branch_count"]),
                total=divisor_from_json(graph, rec["total"]),
            )
        )
    return tuple(entries)


def result_from_json(graph: MetricGraph, data) -> ReductionResult:
    return ReductionResult(
        semibreak=divisor_from_json(graph, data["semibreak"]),
        break_divisor=divisor_from_json(graph, data["break_divisor"]),
        certificate=certificate_from_json(graph, data["certificate"]),
        iterations=int(data["iterations"]),
        trace=_trace_from_json(graph, data["trace"]) if "trace" in data else None,
    )


def dumps(obj) -> str:
    return json.dumps(obj, indent=2)

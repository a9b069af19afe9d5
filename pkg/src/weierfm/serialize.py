"""JSON codecs for every value the package exposes.

Design rules:

* rationals are strings, ``"z"`` for integers and ``"p/q"`` in lowest
  terms otherwise, never JSON numbers (bit-exact round-trips);
* vectors of rationals are lists of such strings;
* enums serialize to their value strings;
* classes over a surface model serialize without embedding the model;
  the matching ``*_from_json`` takes the model as a parameter.

Schemas (all keys required unless marked optional):

  SurfaceModel        {picard_rank: int, gram: [[int]], canonical: vec,
                       k_trivial: bool, omega_class: vec}
  SurfaceClass        {r: rat, d: vec, s: rat}
  ThreefoldClass      {alpha: SurfaceClass, beta: SurfaceClass}
  DivisorClassX       {a: rat, delta: vec}
  Polarization        {t: rat, s: rat, h: vec}
  LineBundleX         {m: int, twist: vec}
  TruncatedChar       {ch0: rat, ch1: DivisorClassX}
  TransformResult     {char: TruncatedChar, wit: str, locally_free: bool}
  SheafScenario       {n: int, c: int, wit: str, dim_shift: int}
  Conclusion          {kind: str, statement: str, via_dimension_only: bool}
  TermRef             {side: str, pos: [int, int], label: str}
  DerivedRelation     {kind: str, degree: int, ...} with kind-specific
                      fields: Identification {left, right: TermRef},
                      ForcedZero {term: TermRef},
                      ShortExact {sub, mid, quot: TermRef},
                      Forbidden {reason: str}
  DestabilizerCandidate {r: int, a: rat, delta: vec, e: int}
  EffectivityProxy    {a_nonneg: bool, pairing: rat}
  TraceStep           {name: str, value: rat, requirement: str,
                       satisfied: bool}
  StabilityReport     {candidate, verdict: str, target_slope: rat,
                       candidate_slope: rat, proxy, fiber_degree: rat,
                       trace: [TraceStep],
                       inadmissible_reasons: [str]}
  ScanResult          {any_violation: bool, candidate_count: int,
                       verdict_counts: {str: int}, reports: [...]}
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import singledispatch
from typing import Any

from .duality import (
    Conclusion,
    ConclusionKind,
    DerivedRelation,
    Forbidden,
    ForcedZero,
    Identification,
    ScenarioSolution,
    SheafScenario,
    ShortExact,
    Side,
    TermRef,
)
from .fm import (
    KernelChoice,
    LineBundleX,
    Polarization,
    TransformResult,
    TruncatedChar,
    WitType,
)
from .rationals import format_rational, parse_rational
from .ring import DivisorClassX, SurfaceClass, SurfaceModel, ThreefoldClass
from .stability import (
    DestabilizerCandidate,
    EffectivityProxy,
    ScanResult,
    StabilityReport,
    TraceStep,
    TransformStabilityReport,
    Verdict,
)


def _vec(values) -> list[str]:
    return [format_rational(v) for v in values]


def _unvec(values) -> tuple[Fraction, ...]:
    return tuple(parse_rational(v) for v in values)


@singledispatch
def to_jsonable(obj: Any) -> Any:
    raise TypeError(f"no JSON form registered for {type(obj).__name__}")


@to_jsonable.register
def _(obj: Fraction) -> str:
    return format_rational(obj)


@to_jsonable.register
def _(obj: SurfaceModel) -> dict:
    return {
        "picard_rank": obj.picard_rank,
        "gram": [list(row) for row in obj.gram],
        "canonical": _vec(obj.canonical),
        "k_trivial": obj.k_trivial,
        "omega_class": _vec(obj.omega_class),
    }


@to_jsonable.register
def _(obj: SurfaceClass) -> dict:
    return {"r": format_rational(obj.r), "d": _vec(obj.d), "s": format_rational(obj.s)}


@to_jsonable.register
def _(obj: ThreefoldClass) -> dict:
    return {"alpha": to_jsonable(obj.alpha), "beta": to_jsonable(obj.beta)}


@to_jsonable.register
def _(obj: DivisorClassX) -> dict:
    return {"a": format_rational(obj.a), "delta": _vec(obj.delta)}


@to_jsonable.register
def _(obj: Polarization) -> dict:
    return {
        "t": format_rational(obj.t),
        "s": format_rational(obj.s),
        "h": _vec(obj.h),
    }


@to_jsonable.register
def _(obj: LineBundleX) -> dict:
    return {"m": obj.m, "twist": _vec(obj.twist)}


@to_jsonable.register
def _(obj: TruncatedChar) -> dict:
    return {"ch0": format_rational(obj.ch0), "ch1": to_jsonable(obj.ch1)}


@to_jsonable.register
def _(obj: TransformResult) -> dict:
    return {
        "char": to_jsonable(obj.char),
        "wit": obj.wit.value,
        "locally_free": obj.locally_free,
    }


@to_jsonable.register
def _(obj: WitType) -> str:
    return obj.value


@to_jsonable.register
def _(obj: KernelChoice) -> str:
    return obj.value


@to_jsonable.register
def _(obj: SheafScenario) -> dict:
    return {"n": obj.n, "c": obj.c, "wit": obj.wit.value, "dim_shift": obj.dim_shift}


@to_jsonable.register
def _(obj: Conclusion) -> dict:
    return {
        "kind": obj.kind.value,
        "statement": obj.statement,
        "via_dimension_only": obj.via_dimension_only,
    }


@to_jsonable.register
def _(obj: TermRef) -> dict:
    return {"side": obj.side.value, "pos": list(obj.pos), "label": obj.label}


@to_jsonable.register
def _(obj: Identification) -> dict:
    return {
        "kind": "Identification",
        "degree": obj.degree,
        "left": to_jsonable(obj.left),
        "right": to_jsonable(obj.right),
    }


@to_jsonable.register
def _(obj: ForcedZero) -> dict:
    return {"kind": "ForcedZero", "degree": obj.degree, "term": to_jsonable(obj.term)}


@to_jsonable.register
def _(obj: ShortExact) -> dict:
    return {
        "kind": "ShortExact",
        "degree": obj.degree,
        "sub": to_jsonable(obj.sub),
        "mid": to_jsonable(obj.mid),
        "quot": to_jsonable(obj.quot),
    }


@to_jsonable.register
def _(obj: Forbidden) -> dict:
    return {"kind": "Forbidden", "degree": obj.degree, "reason": obj.reason}


@to_jsonable.register
def _(obj: ScenarioSolution) -> dict:
    return {
        "scenario": to_jsonable(obj.scenario),
        "left_degeneration_page": obj.left_page,
        "right_degeneration_page": obj.right_page,
        "relations": [to_jsonable(r) for r in obj.relations],
        "conclusion": to_jsonable(obj.conclusion),
    }


@to_jsonable.register
def _(obj: DestabilizerCandidate) -> dict:
    return {
        "r": obj.r,
        "a": format_rational(obj.a),
        "delta": _vec(obj.delta),
        "e": obj.e,
    }


@to_jsonable.register
def _(obj: EffectivityProxy) -> dict:
    return {"a_nonneg": obj.a_nonneg, "pairing": format_rational(obj.pairing)}


@to_jsonable.register
def _(obj: TraceStep) -> dict:
    return {
        "name": obj.name,
        "value": format_rational(obj.value),
        "requirement": obj.requirement,
        "satisfied": obj.satisfied,
    }


@to_jsonable.register
def _(obj: StabilityReport) -> dict:
    return {
        "candidate": to_jsonable(obj.candidate),
        "verdict": obj.verdict.value,
        "target_slope": format_rational(obj.target_slope),
        "candidate_slope": format_rational(obj.candidate_slope),
        "proxy": to_jsonable(obj.proxy),
        "fiber_degree": format_rational(obj.fiber_deg),
        "trace": [to_jsonable(step) for step in obj.trace],
        "inadmissible_reasons": list(obj.inadmissible_reasons),
    }


@to_jsonable.register
def _(obj: ScanResult) -> dict:
    return {
        "any_violation": obj.any_violation,
        "candidate_count": obj.candidate_count,
        "verdict_counts": obj.verdict_counts(),
        "reports": [to_jsonable(r) for r in obj.reports],
    }


@to_jsonable.register
def _(obj: TransformStabilityReport) -> dict:
    scan = to_jsonable(obj.scan)
    return {
        "line_bundle": to_jsonable(obj.line_bundle),
        "transform": to_jsonable(obj.transform),
        "transform_slope": format_rational(obj.transform_slope),
        "search_rank": obj.search_rank,
        "target_slope": format_rational(obj.target_slope),
        "stable": obj.stable,
        "any_violation": obj.scan.any_violation,
        "candidate_count": obj.scan.candidate_count,
        "verdict_counts": scan["verdict_counts"],
        "duality_step": (
            to_jsonable(obj.duality_step) if obj.duality_step is not None else None
        ),
        "reduction": list(obj.reduction),
    }


def dumps(obj: Any, indent: int | None = 2) -> str:
    return json.dumps(to_jsonable(obj), ensure_ascii=False, indent=indent)


# -- parsers ----------------------------------------------------------------


def surface_model_from_json(data: dict) -> SurfaceModel:
    return SurfaceModel(
        picard_rank=int(data["picard_rank"]),
        gram=tuple(tuple(int(x) for x in row) for row in data["gram"]),
        canonical=_unvec(data["canonical"]),
        k_trivial=bool(data["k_trivial"]),
        omega_class=_unvec(data["omega_class"]),
    )


def surface_class_from_json(data: dict, model: SurfaceModel) -> SurfaceClass:
    return SurfaceClass(
        model, parse_rational(data["r"]), _unvec(data["d"]), parse_rational(data["s"])
    )


def threefold_class_from_json(data: dict, model: SurfaceModel) -> ThreefoldClass:
    return ThreefoldClass(
        surface_class_from_json(data["alpha"], model),
        surface_class_from_json(data["beta"], model),
    )


def divisor_class_from_json(data: dict, model: SurfaceModel) -> DivisorClassX:
    return DivisorClassX(model, parse_rational(data["a"]), _unvec(data["delta"]))


def polarization_from_json(data: dict, model: SurfaceModel) -> Polarization:
    return Polarization(
        model,
        parse_rational(data["t"]),
        parse_rational(data["s"]),
        _unvec(data["h"]),
    )


def line_bundle_from_json(data: dict, model: SurfaceModel) -> LineBundleX:
    return LineBundleX(model, int(data["m"]), _unvec(data["twist"]))


def truncated_char_from_json(data: dict, model: SurfaceModel) -> TruncatedChar:
    return TruncatedChar(
        parse_rational(data["ch0"]), divisor_class_from_json(data["ch1"], model)
    )


def transform_result_from_json(data: dict, model: SurfaceModel) -> TransformResult:
    return TransformResult(
        truncated_char_from_json(data["char"], model),
        WitType(data["wit"]),
        bool(data["locally_free"]),
    )


def scenario_from_json(data: dict) -> SheafScenario:
    return SheafScenario(
        n=int(data["n"]),
        c=int(data["c"]),
        wit=WitType(data["wit"]),
        dim_shift=int(data["dim_shift"]),
    )


def conclusion_from_json(data: dict) -> Conclusion:
    return Conclusion(
        ConclusionKind(data["kind"]),
        data["statement"],
        bool(data["via_dimension_only"]),
    )


def term_ref_from_json(data: dict) -> TermRef:
    return TermRef(Side(data["side"]), tuple(data["pos"]), data["label"])


def relation_from_json(data: dict) -> DerivedRelation:
    kind = data["kind"]
    degree = int(data["degree"])
    if kind == "Identification":
        return Identification(
            degree, term_ref_from_json(data["left"]), term_ref_from_json(data["right"])
        )
    if kind == "ForcedZero":
        return ForcedZero(degree, term_ref_from_json(data["term"]))
    if kind == "ShortExact":
        return ShortExact(
            degree,
            term_ref_from_json(data["sub"]),
            term_ref_from_json(data["mid"]),
            term_ref_from_json(data["quot"]),
        )
    if kind == "Forbidden":
        return Forbidden(degree, data["reason"])
    raise ValueError(f"unknown relation kind {kind!r}")


def candidate_from_json(data: dict) -> DestabilizerCandidate:
    return DestabilizerCandidate(
        r=int(data["r"]),
        a=parse_rational(data["a"]),
        delta=_unvec(data["delta"]),
        e=int(data["e"]),
    )


def effectivity_proxy_from_json(data: dict) -> EffectivityProxy:
    return EffectivityProxy(bool(data["a_nonneg"]), parse_rational(data["pairing"]))


def trace_step_from_json(data: dict) -> TraceStep:
    return TraceStep(
        data["name"],
        parse_rational(data["value"]),
        data["requirement"],
        bool(data["satisfied"]),
    )


def stability_report_from_json(data: dict) -> StabilityReport:
    return StabilityReport(
        candidate=candidate_from_json(data["candidate"]),
        verdict=Verdict(data["verdict"]),
        target_slope=parse_rational(data["target_slope"]),
        candidate_slope=parse_rational(data["candidate_slope"]),
        proxy=effectivity_proxy_from_json(data["proxy"]),
        fiber_deg=parse_rational(data["fiber_degree"]),
        trace=tuple(trace_step_from_json(s) for s in data["trace"]),
        inadmissible_reasons=tuple(data["inadmissible_reasons"]),
    )


def scan_result_from_json(data: dict) -> ScanResult:
    return ScanResult(
        reports=tuple(stability_report_from_json(r) for r in data["reports"]),
        any_violation=bool(data["any_violation"]),
    )

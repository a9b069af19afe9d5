import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weierfm import (
    Conclusion,
    ConclusionKind,
    DestabilizerCandidate,
    EnumerationBounds,
    Forbidden,
    ForcedZero,
    Identification,
    LineBundleX,
    Polarization,
    SheafScenario,
    ShortExact,
    Side,
    TruncatedChar,
    WitType,
    certify,
    duality_decision,
    enumerate_candidates,
    solve_scenario,
    transform_char,
)
from weierfm.duality import TermRef, left_label, right_label
from weierfm.stability import EffectivityProxy, TraceStep
from weierfm import serialize


def rt(obj, parser, *args):
    """Round-trip through real JSON text and compare both ends bit-exactly."""
    text = json.dumps(serialize.to_jsonable(obj))
    back = parser(json.loads(text), *args)
    assert back == obj
    assert json.dumps(serialize.to_jsonable(back)) == text
    return back


def test_fraction_strings_are_canonical():
    assert serialize.to_jsonable(Fraction(4, 8)) == "1/2"
    assert serialize.to_jsonable(Fraction(-4, 2)) == "-2"
    assert json.loads(serialize.dumps(Fraction(1, 3), indent=None)) == "1/3"


def test_surface_model_round_trip(k3, demo):
    for model in (k3.model, demo.model):
        rt(model, serialize.surface_model_from_json)


def test_surface_and_threefold_class_round_trip(demo):
    model = demo.model
    u = model.surface(Fraction(1, 2), (Fraction(-3), Fraction(7, 5)), Fraction(2))
    rt(u, serialize.surface_class_from_json, model)
    x = model.theta() + model.fiber().scale(Fraction(5, 3))
    rt(x, serialize.threefold_class_from_json, model)


def test_divisor_and_polarization_round_trip(k3):
    rt(k3.model.divisor_x(a=Fraction(-1, 2), delta=(3,)),
       serialize.divisor_class_from_json, k3.model)
    pol = Polarization(k3.model, Fraction(2), Fraction(1, 2), k3.ample)
    rt(pol, serialize.polarization_from_json, k3.model)


def test_line_bundle_and_char_round_trip(demo):
    lb = LineBundleX(demo.model, -3, (Fraction(1, 2), Fraction(0)))
    rt(lb, serialize.line_bundle_from_json, demo.model)
    result = transform_char(lb)
    rt(result.char, serialize.truncated_char_from_json, demo.model)
    rt(result, serialize.transform_result_from_json, demo.model)


def test_scenario_and_conclusion_round_trip():
    scenario = SheafScenario(3, 2, WitType.WIT1, -1)
    rt(scenario, serialize.scenario_from_json)
    rt(duality_decision(scenario), serialize.conclusion_from_json)
    flagged = Conclusion(ConclusionKind.DUAL_IS_WIT1, "x", via_dimension_only=True)
    assert rt(flagged, serialize.conclusion_from_json).via_dimension_only


def test_each_relation_kind_round_trips():
    lref = TermRef(Side.LEFT, (0, 1), left_label(0, 1))
    rref = TermRef(Side.RIGHT, (1, 0), right_label(1, 0))
    rref2 = TermRef(Side.RIGHT, (2, -1), right_label(2, -1))
    rt(TermRef(Side.LEFT, (0, 3), left_label(0, 3)), serialize.term_ref_from_json)
    rt(Identification(1, lref, rref), serialize.relation_from_json)
    rt(ForcedZero(0, rref), serialize.relation_from_json)
    rt(ShortExact(1, rref, lref, rref2), serialize.relation_from_json)
    rt(Forbidden(2, "nothing survives"), serialize.relation_from_json)


def test_unknown_relation_kind_is_rejected():
    with pytest.raises(ValueError):
        serialize.relation_from_json({"kind": "Mystery", "degree": 0})


def test_solution_serializes_one_way():
    payload = serialize.to_jsonable(solve_scenario(SheafScenario(3, 1, WitType.WIT0, 1)))
    assert payload["left_degeneration_page"] == 2
    assert payload["right_degeneration_page"] == 2
    assert payload["conclusion"]["kind"] == "DualIdentification"
    kinds = [r["kind"] for r in payload["relations"]]
    assert "Identification" in kinds and "ShortExact" in kinds
    for relation in payload["relations"]:
        serialize.relation_from_json(relation)  # every entry stays parseable


def test_stability_objects_round_trip(k3_pol):
    candidate = DestabilizerCandidate(1, Fraction(1, 2), (Fraction(-2),), 1)
    rt(candidate, serialize.candidate_from_json)
    rt(EffectivityProxy(True, Fraction(-8)), serialize.effectivity_proxy_from_json)
    rt(TraceStep("effectivity step", Fraction(-3, 2), "<= 0", True),
       serialize.trace_step_from_json)
    report = certify(2, k3_pol, candidate)
    rt(report, serialize.stability_report_from_json)
    scan = enumerate_candidates(
        2, k3_pol, EnumerationBounds(a_max=Fraction(1), delta_max=Fraction(0))
    )
    rt(scan, serialize.scan_result_from_json)


def test_transform_stability_report_shape(k3, k3_pol):
    from weierfm import transform_stability

    report = transform_stability(
        LineBundleX(k3.model, 3), k3_pol,
        EnumerationBounds(a_max=Fraction(1), delta_max=Fraction(0)),
    )
    payload = serialize.to_jsonable(report)
    assert payload["search_rank"] == 3
    assert payload["stable"] is True
    assert payload["duality_step"]["kind"] == "DualIdentification"
    assert payload["candidate_count"] == payload["verdict_counts"]["Certified"] + \
        payload["verdict_counts"]["Inadmissible"] + payload["verdict_counts"]["Violation"]
    json.dumps(payload)


def test_unregistered_types_fail_loudly():
    with pytest.raises(TypeError):
        serialize.to_jsonable(object())


@given(st.fractions())
def test_fraction_round_trip_property(q):
    from weierfm.rationals import parse_rational

    text = json.dumps(serialize.to_jsonable(q))
    assert parse_rational(json.loads(text)) == q


@given(st.integers(-30, 30), st.fractions(max_denominator=6))
def test_char_round_trip_property(k3, m, x):
    char = TruncatedChar(Fraction(m), k3.model.divisor_x(a=x, delta=(x + 1,)))
    rt(char, serialize.truncated_char_from_json, k3.model)

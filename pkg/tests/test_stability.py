from fractions import Fraction

import pytest

from weierfm import (
    ConclusionKind,
    DestabilizerCandidate,
    EnumerationBounds,
    HypothesisViolationError,
    LineBundleX,
    ModelMismatchError,
    Polarization,
    SurfaceModel,
    Verdict,
    WitType,
    candidate_slope,
    certify,
    enumerate_candidates,
    target_slope,
    transform_stability,
)
from weierfm.stability import candidate_grid

HALF = Fraction(1, 2)


def cand(r=1, a=0, delta=(0,), e=0):
    return DestabilizerCandidate(r, Fraction(a), tuple(map(Fraction, delta)), e)


# -- targets -------------------------------------------------------------------


def test_target_slope_oracles(k3, k3_pol, enriques):
    assert target_slope(2, k3_pol) == 2
    pol = Polarization(enriques.model, Fraction(1), Fraction(3), enriques.ample)
    assert target_slope(1, pol) == 18


def test_target_slope_closed_form(k3):
    for n in (1, 2, 3, 5):
        for s in (HALF, Fraction(1), Fraction(2)):
            pol = Polarization(k3.model, Fraction(3), s, k3.ample)
            assert target_slope(n, pol) == s * s * 4 / n


def test_target_slope_requires_trivial_canonical(demo):
    pol = Polarization(demo.model, Fraction(1), Fraction(1), demo.ample)
    with pytest.raises(HypothesisViolationError):
        target_slope(2, pol)


def test_target_slope_validates_n(k3_pol):
    with pytest.raises(ValueError):
        target_slope(0, k3_pol)
    with pytest.raises(ValueError):
        target_slope(True, k3_pol)


# -- candidate slopes -----------------------------------------------------------


def test_candidate_slope_oracle(k3_pol):
    assert candidate_slope(cand(r=2, a=2, delta=(1,), e=0), k3_pol) == -8


def test_candidate_slope_scales_quadratically(k3_pol):
    c = cand(r=1, a=1, delta=(2,), e=1)
    base = candidate_slope(c, k3_pol)
    assert candidate_slope(c, k3_pol.scaled(3)) == 9 * base


def test_candidate_slope_checks_delta_length(k3_pol):
    with pytest.raises(ModelMismatchError):
        candidate_slope(cand(delta=(0, 0)), k3_pol)


def test_candidate_validation():
    with pytest.raises(ValueError):
        DestabilizerCandidate(0, Fraction(0), (Fraction(0),), 0)
    with pytest.raises(ValueError):
        DestabilizerCandidate(1, Fraction(0), (Fraction(0),), 2)
    with pytest.raises(TypeError):
        DestabilizerCandidate(1, 0.5, (Fraction(0),), 0)


# -- certification ----------------------------------------------------------------


def test_certified_candidate(k3_pol):
    report = certify(2, k3_pol, cand(r=1, a=1, delta=(0,), e=1))
    assert report.verdict is Verdict.CERTIFIED
    assert report.candidate_slope == 0
    assert report.target_slope == 2
    assert report.fiber_deg == 0
    assert report.inadmissible_reasons == ()
    assert all(step.satisfied for step in report.trace)


def test_trace_decomposition_sums_to_rank_times_slope(k3_pol):
    for c in (cand(r=1, a=1, e=1), cand(r=2, a=2, delta=(1,), e=0),
              cand(r=3, a=HALF, delta=(-1,), e=1)):
        report = certify(4, k3_pol, c)
        total = sum(step.value for step in report.trace)
        assert total == c.r * report.candidate_slope


def test_trace_step_names(k3_pol):
    report = certify(2, k3_pol, cand(r=1, a=1, e=1))
    assert [s.name for s in report.trace] == [
        "fiber-degree step",
        "effectivity step",
        "section-part step",
    ]
    assert [s.requirement for s in report.trace] == ["<= 0", "<= 0", "== 0"]


def test_positive_fiber_degree_is_inadmissible(k3_pol):
    report = certify(2, k3_pol, cand(r=1, a=0, e=1))
    assert report.verdict is Verdict.INADMISSIBLE
    assert report.fiber_deg == 1
    assert any("fiber degree" in reason for reason in report.inadmissible_reasons)


def test_fractional_fiber_degree_is_inadmissible(k3_pol):
    report = certify(2, k3_pol, cand(r=1, a=HALF, e=0))
    assert report.verdict is Verdict.INADMISSIBLE
    assert any("not an integer" in reason for reason in report.inadmissible_reasons)


def test_negative_pairing_is_inadmissible(k3_pol):
    report = certify(2, k3_pol, cand(r=1, a=1, delta=(-1,), e=0))
    assert report.verdict is Verdict.INADMISSIBLE
    assert report.proxy.pairing == -4
    assert not report.proxy.admissible


def test_rank_window_is_enforced(k3_pol):
    report = certify(2, k3_pol, cand(r=2, a=1, e=1))
    assert report.verdict is Verdict.INADMISSIBLE
    assert any("rank" in reason for reason in report.inadmissible_reasons)


def test_negative_a_is_inadmissible(k3_pol):
    report = certify(2, k3_pol, cand(r=1, a=-1, e=0))
    assert report.verdict is Verdict.INADMISSIBLE
    assert not report.proxy.a_nonneg


def test_verdicts_are_scale_invariant(k3_pol):
    candidates = [cand(r=1, a=a, delta=(d,), e=e)
                  for a in (0, 1, 2) for d in (-1, 0, 2) for e in (0, 1)]
    for c in candidates:
        plain = certify(3, k3_pol, c)
        scaled = certify(3, k3_pol.scaled(2), c)
        assert plain.verdict is scaled.verdict
        assert scaled.candidate_slope == 4 * plain.candidate_slope
        assert scaled.target_slope == 4 * plain.target_slope


def test_certification_needs_trivial_canonical(demo):
    pol = Polarization(demo.model, Fraction(1), Fraction(1), demo.ample)
    with pytest.raises(HypothesisViolationError):
        certify(2, pol, DestabilizerCandidate(1, Fraction(0), pol.model.zero_vector(), 0))


# -- enumeration -------------------------------------------------------------------


def test_grid_shape_and_order(k3):
    bounds = EnumerationBounds(a_max=Fraction(1), delta_max=Fraction(1))
    grid = candidate_grid(3, 1, bounds)
    # r in {1, 2}, a in {0, 1/2, 1}, delta in {-1, 0, 1}, e in {0, 1}
    assert len(grid) == 2 * 3 * 3 * 2
    assert grid[0] == DestabilizerCandidate(1, Fraction(0), (Fraction(-1),), 0)
    assert grid[1] == DestabilizerCandidate(1, Fraction(0), (Fraction(-1),), 1)
    assert grid[-1] == DestabilizerCandidate(2, Fraction(1), (Fraction(1),), 1)


def test_enumeration_oracle(k3_pol):
    bounds = EnumerationBounds(a_max=Fraction(2), delta_max=Fraction(2))
    scan = enumerate_candidates(2, k3_pol, bounds)
    assert scan.candidate_count == 50
    assert not scan.any_violation
    counts = scan.verdict_counts()
    assert counts["Violation"] == 0
    assert counts["Certified"] + counts["Inadmissible"] == 50
    for report in scan.reports:
        if report.verdict is not Verdict.INADMISSIBLE:
            assert report.candidate_slope <= 0 < report.target_slope


def test_rank_one_search_has_no_candidates(k3_pol):
    scan = enumerate_candidates(1, k3_pol)
    assert scan.candidate_count == 0
    assert not scan.any_violation


def test_worker_sharding_is_invisible(k3_pol):
    bounds = EnumerationBounds(a_max=Fraction(2), delta_max=Fraction(1))
    lone = enumerate_candidates(3, k3_pol, bounds, workers=1)
    pooled = enumerate_candidates(3, k3_pol, bounds, workers=3)
    assert lone == pooled
    with pytest.raises(ValueError):
        enumerate_candidates(3, k3_pol, bounds, workers=0)


def test_bounds_validation():
    with pytest.raises(ValueError):
        EnumerationBounds(a_max=Fraction(-1))
    with pytest.raises(ValueError):
        EnumerationBounds(a_step=Fraction(0))


# -- the pipeline --------------------------------------------------------------------


def small_bounds():
    return EnumerationBounds(a_max=Fraction(1), delta_max=Fraction(1))


def test_direct_pipeline_for_negative_m(k3, k3_pol):
    report = transform_stability(LineBundleX(k3.model, -2), k3_pol, small_bounds())
    assert report.search_rank == 2
    assert report.transform.wit is WitType.WIT1
    assert report.transform_slope == 2
    assert report.target_slope == 2
    assert report.stable
    assert report.duality_step is None
    assert any("direct certification" in line for line in report.reduction)


def test_positive_m_routes_through_duality(k3, k3_pol):
    report = transform_stability(LineBundleX(k3.model, 2), k3_pol, small_bounds())
    assert report.search_rank == 2
    assert report.duality_step is not None
    assert report.duality_step.kind is ConclusionKind.DUAL_IDENTIFICATION
    assert report.duality_step.statement == "ι*(Φ^0(E^D)) ⊗ p*L = (Φ^1E)^D"
    assert any("reduces to m = -2" in line for line in report.reduction)
    assert report.stable


def test_twists_are_stripped_with_a_note(k3, k3_pol):
    report = transform_stability(
        LineBundleX(k3.model, -2, (Fraction(3),)), k3_pol, small_bounds()
    )
    assert any("twist stripped" in line for line in report.reduction)
    assert report.stable


def test_rank_zero_bundle_is_refused(k3, k3_pol):
    with pytest.raises(HypothesisViolationError):
        transform_stability(LineBundleX(k3.model, 0), k3_pol, small_bounds())


def test_pipeline_needs_a_k_trivial_threefold(k3_pol):
    skew = SurfaceModel(1, ((4,),), (0,), True, (2,))
    pol = Polarization(skew, Fraction(1), Fraction(1), (Fraction(1),))
    with pytest.raises(HypothesisViolationError):
        transform_stability(LineBundleX(skew, -2), pol, small_bounds())
    # the scan itself only cares about the base surface
    assert not enumerate_candidates(2, pol, small_bounds()).any_violation


def test_pipeline_refuses_mixed_models(k3, enriques, k3_pol):
    with pytest.raises(ModelMismatchError):
        transform_stability(LineBundleX(enriques.model, -2), k3_pol, small_bounds())


def test_pipeline_refuses_nontrivial_canonical(demo):
    pol = Polarization(demo.model, Fraction(1), Fraction(1), demo.ample)
    with pytest.raises(HypothesisViolationError):
        transform_stability(LineBundleX(demo.model, -2), pol, small_bounds())

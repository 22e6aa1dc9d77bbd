import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate
from structlog.testing import capture_logs

from hcn.analysis import (
    AnalysisService,
    QuadratureSpec,
    coverage_tier,
    integrate_1d,
    interference_ratio,
    rate_tier,
    rate_tier_integral,
)
from hcn.errors import DomainError, NumericalError
from hcn.model import ModelService, NetworkParams, TierDerived, TierParams
from hcn.specfun import z_kernel

NOISY = 1e6  # mW; SNR ~ 10-20 at typical serving distances of the 30/24 dBm scenario


def _single(alpha, density=100.0, noise=0.0):
    return NetworkParams([TierParams(1000.0, density)], alpha, 300.0, noise_power=noise)


@pytest.mark.parametrize("tau", [0.25, 1.0, 4.0])
@pytest.mark.parametrize("alpha", [3.5, 4.0])
def test_full_load_coverage_closed_form(tau, alpha):
    params = _single(alpha)
    value = coverage_tier(params, ModelService.full_load(params), 0, tau)
    assert value == pytest.approx(1.0 / (1.0 + z_kernel(tau, alpha)), abs=1e-8)


@pytest.mark.parametrize("tau", [0.25, 1.0, 4.0])
@pytest.mark.parametrize("alpha", [3.5, 4.0])
def test_partial_load_coverage_closed_form(tau, alpha):
    params = _single(alpha)
    half = [TierDerived(association_prob=1.0, idle_prob=0.5, active_density=50.0)]
    value = coverage_tier(params, half, 0, tau)
    assert value == pytest.approx(1.0 / (1.0 + 0.5 * z_kernel(tau, alpha)), abs=1e-8)


def test_coverage_tau_1_alpha_4():
    params = _single(4.0)
    assert coverage_tier(params, ModelService.full_load(params), 0, 1.0) == pytest.approx(0.560099, abs=1e-6)


def test_zero_threshold_is_always_covered(two_tier_params):
    derived = ModelService.derive(two_tier_params)
    assert coverage_tier(two_tier_params, derived, 0, 0.0) == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(DomainError):
        coverage_tier(two_tier_params, derived, 0, -1.0)


def test_noisy_coverage_matches_direct_distance_integral():
    alpha, tau, lam, power, noise = 4.0, 1.0, 1.0, 1.0, 0.5
    params = NetworkParams([TierParams(power, lam)], alpha, 300.0, noise_power=noise)
    z = z_kernel(tau, alpha)

    def integrand(r):
        return (math.exp(-tau * noise * r ** alpha / power - math.pi * lam * (1 + z) * r * r)
                * 2 * math.pi * lam * r)

    expected, _ = integrate.quad(integrand, 0.0, math.inf, epsabs=1e-13, epsrel=1e-11)
    assert coverage_tier(params, ModelService.full_load(params), 0, tau) == pytest.approx(expected, abs=1e-8)


def test_noise_only_lowers_coverage(make_two_tier):
    quiet = make_two_tier(200.0)
    noisy = make_two_tier(200.0, noise_power=NOISY)
    for i in range(2):
        clean = coverage_tier(quiet, ModelService.derive(quiet), i, 1.0)
        with_noise = coverage_tier(noisy, ModelService.derive(noisy), i, 1.0)
        assert with_noise < clean


def test_interference_limited_tiers_share_coverage(make_two_tier):
    """Without noise the interference ratio is the same seen from every tier."""
    params = make_two_tier(300.0)
    derived = ModelService.derive(params)
    assert interference_ratio(params, derived, 0) == pytest.approx(interference_ratio(params, derived, 1), rel=1e-12)
    report = AnalysisService.coverage_overall(params, derived, 1.0)
    assert report.per_tier_conditional[0] == pytest.approx(report.per_tier_conditional[1], abs=1e-9)
    assert report.interference_limited


def test_identical_tiers_get_identical_coverage():
    params = NetworkParams([TierParams(500.0, 80.0), TierParams(500.0, 80.0)], 3.75, 300.0, noise_power=NOISY)
    report = AnalysisService.coverage_overall(params, ModelService.derive(params), 1.0)
    assert report.per_tier_conditional[0] == pytest.approx(report.per_tier_conditional[1], rel=1e-12)


def test_overall_is_association_weighted_sum(make_two_tier):
    params = make_two_tier(200.0, noise_power=NOISY)
    derived = ModelService.derive(params)
    report = AnalysisService.coverage_overall(params, derived, 1.0)
    expected = sum(d.association_prob * c for d, c in zip(derived, report.per_tier_conditional))
    assert report.overall == pytest.approx(expected, rel=1e-14)
    assert report.per_tier_weighted == pytest.approx(
        [d.association_prob * c for d, c in zip(derived, report.per_tier_conditional)])
    assert not report.interference_limited


def test_power_scaling_invariance_without_noise(make_two_tier):
    params = make_two_tier(300.0)
    scaled = params.scaled_powers(1000.0)
    before = AnalysisService.coverage_overall(params, ModelService.derive(params), 2.0)
    after = AnalysisService.coverage_overall(scaled, ModelService.derive(scaled), 2.0)
    assert after.overall == pytest.approx(before.overall, abs=1e-10)


def test_fewer_active_interferers_never_lower_coverage(make_two_tier):
    params = make_two_tier(200.0, noise_power=NOISY)
    derived = ModelService.derive(params)
    thinned = [TierDerived(d.association_prob, d.idle_prob, d.active_density * 0.5) for d in derived]
    for i in range(2):
        assert coverage_tier(params, thinned, i, 1.0) >= coverage_tier(params, derived, i, 1.0)


def test_halving_tolerances_changes_little(make_two_tier):
    params = make_two_tier(200.0, noise_power=NOISY)
    derived = ModelService.derive(params)
    quad = QuadratureSpec()
    for i in range(2):
        coarse = coverage_tier(params, derived, i, 1.0, quad)
        fine = coverage_tier(params, derived, i, 1.0, quad.halved())
        assert fine == pytest.approx(coarse, abs=1e-7)


def test_fully_loaded_baseline_is_density_invariant():
    expected = 1.0 / (1.0 + z_kernel(1.0, 3.75))
    for density in (10.0, 100.0, 1000.0):
        report = AnalysisService.fully_loaded_baseline(_single(3.75, density), "coverage", tau=1.0)
        assert report.overall == pytest.approx(expected, abs=1e-8)


def test_baseline_needs_threshold_for_coverage(two_tier_params):
    with pytest.raises(DomainError):
        AnalysisService.fully_loaded_baseline(two_tier_params, "coverage")
    with pytest.raises(DomainError):
        AnalysisService.fully_loaded_baseline(two_tier_params, "energy")


def test_idle_mode_coverage_rises_with_density_while_baseline_stays_flat(fig3_sweep):
    imc, baseline = [], []
    for params in fig3_sweep:
        imc.append(AnalysisService.coverage_overall(params, ModelService.derive(params), 1.0).overall)
        baseline.append(AnalysisService.fully_loaded_baseline(params, "coverage", tau=1.0).overall)
    assert all(b > a for a, b in zip(imc, imc[1:]))
    assert max(baseline) - min(baseline) < 1e-6
    assert all(i >= b for i, b in zip(imc, baseline))


def test_weighted_tier_rates_follow_density(fig3_sweep):
    reports = [AnalysisService.rate_overall(p, ModelService.derive(p)) for p in fig3_sweep]
    tier1 = [r.per_tier_weighted[0] for r in reports]
    tier2 = [r.per_tier_weighted[1] for r in reports]
    assert all(b < a for a, b in zip(tier1, tier1[1:]))
    assert all(b > a for a, b in zip(tier2, tier2[1:]))
    for r in reports:
        assert r.mean_ue_rate == pytest.approx(sum(r.per_tier_weighted), rel=1e-14)
        assert not r.truncated


def test_tier_area_rates_follow_density(fig3_sweep):
    reports = [AnalysisService.rate_overall(p, ModelService.derive(p)) for p in fig3_sweep]
    tier1 = [r.per_tier_area_rate[0] for r in reports]
    tier2 = [r.per_tier_area_rate[1] for r in reports]
    assert tier1[-1] < tier1[0]
    assert all(b > a for a, b in zip(tier2, tier2[1:]))
    for r in reports:
        assert r.area_rate_density == pytest.approx(sum(r.per_tier_area_rate), rel=1e-14)


@pytest.mark.parametrize("lambda_2", [100.0, 300.0, 500.0])
@pytest.mark.parametrize("noise", [0.0, NOISY])
def test_rate_equals_integrated_coverage(make_two_tier, lambda_2, noise):
    params = make_two_tier(lambda_2, noise_power=noise)
    derived = ModelService.derive(params)
    for i in range(2):
        def weight(tau):
            return coverage_tier(params, derived, i, tau) / (1.0 + tau) / math.log(2.0)

        head, _ = integrate.quad(weight, 0.0, 1.0, epsabs=1e-11, epsrel=1e-10, limit=200)
        tail, _ = integrate.quad(weight, 1.0, math.inf, epsabs=1e-11, epsrel=1e-10, limit=500)
        assert rate_tier(params, derived, i) == pytest.approx(head + tail, abs=1e-6)


def test_single_tier_rate_summary(single_tier_params):
    derived = ModelService.derive(single_tier_params)
    report = AnalysisService.rate_overall(single_tier_params, derived)
    assert report.mean_ue_rate == pytest.approx(report.per_tier_rate[0])
    assert report.area_rate_density == pytest.approx(derived[0].active_density * report.per_tier_rate[0])
    assert report.t_max == 40.0


def test_rate_tail_is_accounted_for(single_tier_params):
    full = ModelService.full_load(single_tier_params)
    corrected = rate_tier_integral(single_tier_params, full, 0)
    plain = rate_tier_integral(single_tier_params, full, 0, QuadratureSpec(tail_correction=False))
    assert corrected.tail > 0.0
    assert not corrected.truncated
    assert plain.truncated
    assert corrected.value == pytest.approx(plain.value + corrected.tail)


def test_rate_without_interference_or_noise_is_truncated(single_tier_params):
    silent = [TierDerived(association_prob=1.0, idle_prob=1.0, active_density=0.0)]
    with capture_logs() as logs:
        result = rate_tier_integral(single_tier_params, silent, 0)
    assert result.truncated
    assert result.value == pytest.approx(40.0, rel=1e-9)
    assert any(e["event"] == "rate.truncated" for e in logs)


def test_interference_ratio_checks_lengths(two_tier_params):
    with pytest.raises(DomainError):
        interference_ratio(two_tier_params, ModelService.derive(two_tier_params)[:1], 0)


def test_quadrature_failure_raises():
    quad = QuadratureSpec(max_subdivisions=1)
    with pytest.raises(NumericalError):
        integrate_1d(lambda x: math.sin(200.0 * x) * math.sqrt(x), 0.0, 10.0, quad)


def test_quadrature_spec_validation():
    with pytest.raises(DomainError):
        QuadratureSpec(relative_tolerance=0.0)
    with pytest.raises(DomainError):
        QuadratureSpec(t_max=0.0)
    assert QuadratureSpec().horizon == pytest.approx(-math.log(1e-12))


TAUS = [0.01, 0.05, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 200.0]


@st.composite
def scenarios(draw, noisy=True):
    m = draw(st.integers(min_value=1, max_value=3))
    tiers = [
        TierParams(draw(st.floats(min_value=1.0, max_value=1e5)), draw(st.floats(min_value=1.0, max_value=300.0)))
        for _ in range(m)
    ]
    noise = draw(st.one_of(st.just(0.0), st.floats(min_value=1e-3, max_value=1e8))) if noisy else 0.0
    return NetworkParams(
        tiers,
        alpha=draw(st.floats(min_value=3.0, max_value=5.0)),
        ue_density=draw(st.floats(min_value=100.0, max_value=2000.0)),
        noise_power=noise,
    )


@settings(max_examples=100, deadline=None)
@given(params=scenarios(), tau=st.floats(min_value=0.0, max_value=1e3))
def test_coverage_is_a_probability(params, tau):
    report = AnalysisService.coverage_overall(params, ModelService.derive(params), tau)
    assert all(0.0 <= c <= 1.0 + 1e-12 for c in report.per_tier_conditional)
    assert 0.0 <= report.overall <= 1.0 + 1e-12


@settings(max_examples=100, deadline=None)
@given(params=scenarios())
def test_coverage_decreases_with_threshold(params):
    derived = ModelService.derive(params)
    for i in range(params.num_tiers):
        values = [coverage_tier(params, derived, i, tau) for tau in TAUS]
        assert all(b <= a + 1e-9 for a, b in zip(values, values[1:]))


@settings(max_examples=100, deadline=None)
@given(params=scenarios(noisy=False))
def test_rate_matches_threshold_integral_of_coverage(params):
    """Without noise, conditional coverage is 1 / (1 + kappa Z(tau)); integrate it over tau directly."""
    derived = ModelService.derive(params)
    for i in range(params.num_tiers):
        kappa = interference_ratio(params, derived, i)

        def weight(tau):
            return 1.0 / (1.0 + kappa * z_kernel(tau, params.alpha)) / (1.0 + tau) / math.log(2.0)

        head, _ = integrate.quad(weight, 0.0, 1.0, epsabs=1e-12, epsrel=1e-11, limit=200)
        tail, _ = integrate.quad(weight, 1.0, math.inf, epsabs=1e-12, epsrel=1e-11, limit=500)
        assert rate_tier(params, derived, i) == pytest.approx(head + tail, rel=1e-6)


@settings(max_examples=100, deadline=None)
@given(params=scenarios(noisy=False), factor=st.floats(min_value=1e-3, max_value=1e3),
       tau=st.floats(min_value=0.01, max_value=100.0))
def test_power_rescaling_invariance_without_noise(params, factor, tau):
    scaled = params.scaled_powers(factor)
    before_cov = AnalysisService.coverage_overall(params, ModelService.derive(params), tau)
    after_cov = AnalysisService.coverage_overall(scaled, ModelService.derive(scaled), tau)
    assert after_cov.per_tier_conditional == pytest.approx(before_cov.per_tier_conditional, abs=1e-12)
    before_rate = AnalysisService.rate_overall(params, ModelService.derive(params))
    after_rate = AnalysisService.rate_overall(scaled, ModelService.derive(scaled))
    assert after_rate.per_tier_rate == pytest.approx(before_rate.per_tier_rate, abs=1e-12)
    assert after_rate.mean_ue_rate == pytest.approx(before_rate.mean_ue_rate, abs=1e-12)

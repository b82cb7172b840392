import json
import math

import pytest

import explomax as em


def canonical_sample():
    # one observation per component, no censoring, B = ln(1 + x2) = 1
    return em.CensoredSample(obs1=[1.0], obs2=[math.e - 1.0], n=2, censor_time=2.0)


def test_distribution_values():
    assert em.exp_pdf(0.0, 2.0) == pytest.approx(2.0)
    assert em.lomax_cdf(1.0, 1.0, 1.0) == pytest.approx(0.5)
    params = em.Params(theta1=10.0, theta2=10.0, p=0.4, delta=1.0)
    assert em.mixture_pdf(0.0, params) == pytest.approx(10.0)
    assert em.mixture_cdf(0.4, params) == pytest.approx(0.97193077662434167, rel=1e-12)


def test_parameter_validation():
    with pytest.raises(ValueError):
        em.Params(theta1=-1.0, theta2=1.0, p=0.5)
    with pytest.raises(ValueError):
        em.Params(theta1=1.0, theta2=1.0, p=1.0)


def test_ml_fit_uncensored_closed_form():
    sample = em.CensoredSample(obs1=[0.25, 0.1, 0.4], obs2=[0.2, 0.35], n=5, censor_time=0.5)
    fit = em.ml_fit(sample, 1.0)
    s1 = 0.75
    s2 = math.log1p(0.2) + math.log1p(0.35)
    assert fit.params.theta1 == pytest.approx(3.0 / s1, abs=1e-8)
    assert fit.params.theta2 == pytest.approx(2.0 / s2, abs=1e-8)
    assert fit.params.p == pytest.approx(0.6, abs=1e-8)
    assert fit.report.converged


def test_bayes_closed_canonical_values():
    e_uniform = em.build_expansion(canonical_sample(), 1.0, em.Prior.uniform)
    est = em.bayes_self(e_uniform)
    assert (est.theta1, est.theta2, est.p) == pytest.approx((2.0, 2.0, 0.5), rel=1e-10)
    var = em.posterior_variance(e_uniform)
    assert var[0] == pytest.approx(2.0, rel=1e-8)
    assert var[2] == pytest.approx(0.05, rel=1e-8)

    e_jeffreys = em.build_expansion(canonical_sample(), 1.0, em.Prior.jeffreys)
    est_j = em.bayes_self(e_jeffreys)
    assert (est_j.theta1, est_j.theta2, est_j.p) == pytest.approx((1.0, 1.0, 0.5), rel=1e-10)


def test_improper_posterior_raises():
    one_sided = em.CensoredSample(obs1=[], obs2=[0.2, 0.3], n=4, censor_time=0.5)
    with pytest.raises(em.ImproperPosterior):
        em.build_expansion(one_sided, 1.0, em.Prior.jeffreys)


def test_gelf_domain():
    sample = em.CensoredSample(obs1=[0.3], obs2=[0.2], n=4, censor_time=0.5)
    expansion = em.build_expansion(sample, 1.0, em.Prior.jeffreys)
    with pytest.raises(em.GelfDomainError):
        em.bayes_gelf(expansion, 1.2)


def test_importance_sampling_tracks_closed_form():
    rng = em.RandomStream(12)
    truth = em.Params(theta1=10.0, theta2=10.0, p=0.4, delta=1.0)
    sample = em.generate_censored_sample(truth, 50, 0.4, rng)
    exact = em.bayes_self(em.build_expansion(sample, 1.0, em.Prior.uniform))
    draws = em.is_draws(sample, 1.0, em.Prior.uniform, 50000, em.RandomStream(99))
    est = em.is_estimate(draws, em.LossSpec.self())
    assert est.theta1 == pytest.approx(exact.theta1, rel=0.05)
    assert est.p == pytest.approx(exact.p, rel=0.05)
    assert 0 < em.effective_sample_size(draws) <= 50000


def test_predictive_interval_roots():
    expansion = em.build_expansion(canonical_sample(), 1.0, em.Prior.uniform)
    summary = em.predictive_interval(expansion, 0.5)
    assert em.predictive_cdf(summary.lower, expansion) == pytest.approx(0.25, abs=1e-9)
    assert em.predictive_cdf(summary.median, expansion) == pytest.approx(0.5, abs=1e-9)
    assert em.predictive_cdf(summary.upper, expansion) == pytest.approx(0.75, abs=1e-9)
    assert summary.lower < summary.median < summary.upper


def test_study_is_deterministic_and_json_shaped():
    truth = em.Params(theta1=10.0, theta2=10.0, p=0.4, delta=1.0)
    cfg = em.StudyConfig(
        true_params=truth,
        n=30,
        censor_time=0.4,
        reps=8,
        seed=5,
        estimators=[
            em.EstimatorSpec(em.Method.ml),
            em.EstimatorSpec(em.Method.bayes_closed, em.Prior.uniform, em.LossSpec.self()),
            em.EstimatorSpec(em.Method.bayes_is, em.Prior.jeffreys, em.LossSpec.gelf(1.2)),
        ],
        is_samples=100,
    )
    a = em.run_study(cfg)
    b = em.run_study(cfg, threads=4)
    assert a.to_json() == b.to_json()
    report = json.loads(a.to_json())
    assert report["config"]["seed"] == 5
    assert len(report["estimators"]) == 3
    for row in report["estimators"]:
        assert row["used"] + row["skipped"] == 8
        assert set(row["estimates"]) == {"theta1", "theta2", "p"}

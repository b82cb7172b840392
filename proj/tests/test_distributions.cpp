#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "explomax/distributions.hpp"
#include "support/quadrature.hpp"

using namespace explomax;

namespace {

Params random_params(RandomStream& rng) {
    return Params{0.2 + 20.0 * rng.uniform(), 0.2 + 20.0 * rng.uniform(),
                  0.05 + 0.9 * rng.uniform(), 0.1 + 5.0 * rng.uniform()};
}

}  // namespace

TEST_SUITE("distributions") {

TEST_CASE("component density values") {
    CHECK(exp_pdf(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(exp_pdf(0.0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(exp_pdf(1.0, 1.0) == doctest::Approx(0.36787944117144233).epsilon(1e-12));
    CHECK(lomax_pdf(0.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lomax_cdf(1.0, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(lomax_pdf(1.0, 2.0, 1.0) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(exp_pdf(-0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(exp_pdf(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(lomax_pdf(1.0, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(lomax_pdf(1.0, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(mixture_pdf(1.0, Params{1.0, 1.0, 0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(mixture_pdf(1.0, Params{1.0, 1.0, 1.0, 1.0}), std::domain_error);
}

TEST_CASE("lomax survives extreme shape/scale") {
    // the real-data scale: theta2 ~ 149, delta ~ 28397; delta^theta2 overflows
    // unless evaluated in log space
    const double v = lomax_pdf(100.0, 149.370, 28397.0);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
}

TEST_CASE("mixture at the origin is the convex combination of rates") {
    const Params params{10.0, 10.0, 0.4, 1.0};
    CHECK(mixture_pdf(0.0, params) == doctest::Approx(10.0).epsilon(1e-13));
    CHECK(mixture_cdf(0.0, params) == doctest::Approx(0.0));
}

TEST_CASE("mixture cdf matches quadrature of the pdf") {
    const Params params{10.0, 10.0, 0.4, 1.0};
    const double by_quad = testsup::adaptive_gk15_scalar(
        [&](double x) { return mixture_pdf(x, params); }, 0.0, 0.4, 1e-12, 1e-14);
    CHECK(mixture_cdf(0.4, params) == doctest::Approx(by_quad).epsilon(1e-10));
    CHECK(mixture_cdf(0.4, params) == doctest::Approx(0.97193077662434167).epsilon(1e-12));
}

TEST_CASE("pdf is the stated convex combination at random points") {
    RandomStream rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const Params params = random_params(rng);
        const double x = 3.0 * rng.uniform();
        const double direct = params.p * exp_pdf(x, params.theta1) +
                              (1.0 - params.p) * lomax_pdf(x, params.theta2, params.delta);
        CHECK(mixture_pdf(x, params) == doctest::Approx(direct).epsilon(1e-14));
    }
}

TEST_CASE("pdf integrates to one with an analytic tail bound") {
    RandomStream rng(202);
    for (int trial = 0; trial < 20; ++trial) {
        const Params params = random_params(rng);
        const double cut = 30.0 / std::min(params.theta1, 1.0);
        const double body = testsup::adaptive_gk15_scalar(
            [&](double x) { return mixture_pdf(x, params); }, 0.0, cut, 1e-11, 1e-13, 16,
            8000);
        // analytic survival mass beyond the cut
        const double tail = params.p * std::exp(-params.theta1 * cut) +
                            (1.0 - params.p) *
                                std::pow(1.0 + cut / params.delta, -params.theta2);
        CHECK(body + tail == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("cdf is nondecreasing, 0 at the origin, 1 in the limit") {
    RandomStream rng(303);
    const Params params = random_params(rng);
    double prev = 0.0;
    CHECK(mixture_cdf(0.0, params) == 0.0);
    for (int i = 1; i <= 500; ++i) {
        const double x = 0.05 * i;
        const double f = mixture_cdf(x, params);
        CHECK(f >= prev);
        prev = f;
    }
    CHECK(mixture_cdf(1e9, params) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("numerical derivative of cdf matches pdf") {
    RandomStream rng(404);
    const Params params{10.0, 10.0, 0.4, 1.0};
    for (int i = 0; i < 100; ++i) {
        const double x = 0.001 + 2.0 * rng.uniform();
        const double h = 1e-6 * std::max(1.0, x);
        const double fd = (mixture_cdf(x + h, params) - mixture_cdf(x - h, params)) / (2 * h);
        CHECK(fd == doctest::Approx(mixture_pdf(x, params)).epsilon(1e-6));
    }
}

TEST_CASE("quantiles invert the component cdfs") {
    CHECK(lomax_quantile(0.5, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
    RandomStream rng(505);
    for (int i = 0; i < 30; ++i) {
        const double u = rng.uniform();
        CHECK(exp_cdf(exp_quantile(u, 3.0), 3.0) == doctest::Approx(u).epsilon(1e-12));
        CHECK(lomax_cdf(lomax_quantile(u, 2.5, 0.7), 2.5, 0.7) ==
              doctest::Approx(u).epsilon(1e-12));
    }
}

TEST_CASE("sampling: label frequency follows the mixing proportion") {
    const Params params{2.0, 3.0, 0.35, 1.0};
    RandomStream rng(606);
    const auto draws = mixture_sample(params, 1000, rng);
    int ones = 0;
    for (const auto& d : draws) ones += d.component == 1 ? 1 : 0;
    CHECK(std::abs(ones / 1000.0 - params.p) < 4.0 / std::sqrt(1000.0));
}

TEST_CASE("sampling: KS distance against the cdf at n = 1e5") {
    const Params params{10.0, 10.0, 0.4, 1.0};
    RandomStream rng(707);
    auto draws = mixture_sample(params, 100000, rng);
    std::vector<double> times(draws.size());
    std::transform(draws.begin(), draws.end(), times.begin(),
                   [](const LabeledTime& d) { return d.time; });
    std::sort(times.begin(), times.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double f = mixture_cdf(times[i], params);
        ks = std::max(ks, std::abs(f - double(i) / times.size()));
        ks = std::max(ks, std::abs(f - double(i + 1) / times.size()));
    }
    CHECK(ks < 0.01);
}

TEST_CASE("sampling is deterministic given the seed") {
    const Params params{2.0, 3.0, 0.35, 1.0};
    RandomStream a(42), b(42);
    const auto da = mixture_sample(params, 50, a);
    const auto db = mixture_sample(params, 50, b);
    for (std::size_t i = 0; i < da.size(); ++i) {
        CHECK(da[i].time == db[i].time);
        CHECK(da[i].component == db[i].component);
    }
}

}  // TEST_SUITE

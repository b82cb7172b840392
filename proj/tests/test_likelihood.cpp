#include <array>
#include <cmath>

#include "doctest.h"

#include "explomax/likelihood.hpp"
#include "support/oracles.hpp"

using namespace explomax;

namespace {

const Params kPaperTruth{10.0, 10.0, 0.4, 1.0};

Params random_point(RandomStream& rng) {
    return Params{1.0 + 18.0 * rng.uniform(), 1.0 + 18.0 * rng.uniform(),
                  0.1 + 0.8 * rng.uniform(), 1.0};
}

}  // namespace

TEST_SUITE("likelihood") {

TEST_CASE("single fully-observed exponential point") {
    CensoredSample s{{1.0}, {}, 1, 1.0};
    const Params params{1.0, 5.0, 0.5, 1.0};
    CHECK(log_likelihood_direct(params, s) ==
          doctest::Approx(-1.6931471805599453).epsilon(1e-13));
}

TEST_CASE("frozen term-by-term evaluation of the censored likelihood") {
    // n = 3, obs1 = {0.1}, obs2 = {0.2}, T = 0.4, theta1 = theta2 = 10,
    // delta = 1, p = 0.4; expected value computed independently with
    // 40-digit arithmetic.
    CensoredSample s{{0.1}, {0.2}, 3, 0.4};
    CHECK(log_likelihood_direct(kPaperTruth, s) ==
          doctest::Approx(-3.4005648507917444).epsilon(1e-13));
}

TEST_CASE("uncensored sample leaves no censoring term") {
    CensoredSample s{{0.3, 0.1}, {0.2}, 3, 0.5};
    RandomStream rng(11);
    for (int i = 0; i < 5; ++i) {
        const Params params = random_point(rng);
        const double expect = std::log(params.p) * 2 + 2 * std::log(params.theta1) -
                              params.theta1 * 0.4 + std::log(1 - params.p) +
                              std::log(params.theta2) -
                              (params.theta2 + 1.0) * std::log(1.2);
        CHECK(log_likelihood_direct(params, s) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("binomial theorem identity for the expanded censor factor") {
    const double T = 0.4, delta = 1.0, th1 = 10.0, th2 = 10.0, p = 0.4;
    const double C = p * std::exp(-th1 * T) + (1 - p) * std::pow(1 + T / delta, -th2);
    double sum = 0.0;
    for (int k = 0; k <= 2; ++k) {
        const double binom = k == 1 ? 2.0 : 1.0;
        sum += binom * std::pow(p, k) * std::exp(-th1 * T * k) * std::pow(1 - p, 2 - k) *
               std::pow(1 + T / delta, -th2 * (2 - k));
    }
    CHECK(C * C == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("expanded minus direct is constant in the parameters") {
    RandomStream rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        const auto sample =
            testsup::random_censored_sample(rng, 5 + int(rng.uniform() * 6), kPaperTruth, 0.4);
        double first = 0.0;
        for (int j = 0; j < 5; ++j) {
            const Params point = random_point(rng);
            const double diff =
                log_likelihood_expanded(point, sample) - log_likelihood_direct(point, sample);
            if (j == 0)
                first = diff;
            else
                CHECK(std::abs(diff - first) < 1e-9);
        }
    }
}

TEST_CASE("uncensored expanded form collapses to a single term") {
    CensoredSample s{{0.3, 0.1}, {0.2}, 3, 0.5};
    RandomStream rng(33);
    const Params a = random_point(rng), b = random_point(rng);
    const double da = log_likelihood_expanded(a, s) - log_likelihood_direct(a, s);
    const double db = log_likelihood_expanded(b, s) - log_likelihood_direct(b, s);
    CHECK(da == doctest::Approx(db).epsilon(1e-12));
}

TEST_CASE("score vanishes at the uncensored closed-form point") {
    CensoredSample s{{0.25, 0.1, 0.4}, {0.2, 0.35}, 5, 0.5};
    const double S1 = 0.75, S2 = std::log1p(0.2) + std::log1p(0.35);
    const Params point{3.0 / S1, 2.0 / S2, 3.0 / 5.0, 1.0};
    const auto g = score(point, s);
    CHECK(g[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    CHECK(g[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    CHECK(g[2] == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
}

TEST_CASE("score matches finite differences of the direct log-likelihood") {
    RandomStream rng(44);
    for (int trial = 0; trial < 50; ++trial) {
        const auto sample =
            testsup::random_censored_sample(rng, 20 + int(rng.uniform() * 30), kPaperTruth, 0.4);
        const Params point = random_point(rng);
        const auto analytic = score(point, sample);
        const auto fd = testsup::fd_gradient3(
            [&](std::array<double, 3> x) {
                return log_likelihood_direct(Params{x[0], x[1], x[2], 1.0}, sample);
            },
            {point.theta1, point.theta2, point.p});
        for (int i = 0; i < 3; ++i)
            CHECK(analytic[i] ==
                  doctest::Approx(fd[i]).epsilon(1e-5).scale(std::abs(fd[i]) + 1.0));
    }
}

TEST_CASE("observed information: off-diagonals vanish without censoring") {
    CensoredSample s{{0.25, 0.1, 0.4}, {0.2, 0.35}, 5, 0.5};
    RandomStream rng(55);
    const Params point = random_point(rng);
    const auto info = observed_information(point, s);
    CHECK(info.i12 == 0.0);
    CHECK(info.i13 == 0.0);
    CHECK(info.i23 == 0.0);
}

TEST_CASE("the (3.8) bracket simplification is the squared log") {
    const double delta = 1.0, t = 0.4;
    const double expanded = std::pow(std::log(delta), 2) -
                            2.0 * std::log(delta) * std::log(delta + t) +
                            std::pow(std::log(delta + t), 2);
    const double simplified = std::pow(std::log1p(t / delta), 2);
    CHECK(expanded == doctest::Approx(simplified).epsilon(1e-14));
    CHECK(simplified == doctest::Approx(0.11321356601688150).epsilon(1e-12));
}

TEST_CASE("observed information matches finite differences of the score") {
    RandomStream rng(66);
    for (int trial = 0; trial < 20; ++trial) {
        const auto sample =
            testsup::random_censored_sample(rng, 20 + int(rng.uniform() * 30), kPaperTruth, 0.4);
        const Params point = random_point(rng);
        const auto info = observed_information(point, sample);
        // negated Hessian: column j of info == -d score / d x_j
        for (int j = 0; j < 3; ++j) {
            std::array<double, 3> x{point.theta1, point.theta2, point.p};
            const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
            auto xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            const auto sp = score(Params{xp[0], xp[1], xp[2], 1.0}, sample);
            const auto sm = score(Params{xm[0], xm[1], xm[2], 1.0}, sample);
            for (int i = 0; i < 3; ++i) {
                const double fd = -(sp[i] - sm[i]) / (2.0 * h);
                CHECK(info(i, j) ==
                      doctest::Approx(fd).epsilon(1e-4).scale(std::abs(fd) + 1.0));
            }
        }
    }
}

TEST_CASE("information matrix is symmetric by construction") {
    RandomStream rng(77);
    const auto sample = testsup::random_censored_sample(rng, 40, kPaperTruth, 0.4);
    const auto info = observed_information(random_point(rng), sample);
    const auto m = info.to_array();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(m[i][j] == m[j][i]);
}

TEST_CASE("ml_fit returns the uncensored closed forms exactly") {
    RandomStream rng(88);
    for (int trial = 0; trial < 10; ++trial) {
        auto sample = testsup::random_censored_sample(rng, 12, kPaperTruth, 0.4, 2, 2);
        sample.n = sample.r();  // declare every unit failed
        const auto fit = ml_fit(sample, 1.0);
        double S1 = 0.0, S2 = 0.0;
        for (double x : sample.obs1) S1 += x;
        for (double x : sample.obs2) S2 += std::log1p(x);
        CHECK(fit.params.theta1 == doctest::Approx(sample.r1() / S1).epsilon(1e-8));
        CHECK(fit.params.theta2 == doctest::Approx(sample.r2() / S2).epsilon(1e-8));
        CHECK(fit.params.p ==
              doctest::Approx(double(sample.r1()) / sample.r()).epsilon(1e-8));
        CHECK(fit.report.converged);
    }
}

TEST_CASE("ml_fit reaches stationarity on censored samples") {
    RandomStream rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        const auto sample =
            testsup::random_censored_sample(rng, 30 + int(rng.uniform() * 170), kPaperTruth, 0.4);
        const auto fit = ml_fit(sample, 1.0);
        const auto g = score(fit.params, sample);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(g[i]) < 1e-8);
        CHECK(fit.report.converged);
        CHECK(fit.report.information_positive_definite);
    }
}

TEST_CASE("ml_fit estimate sits within three standard errors of the truth") {
    RandomStream rng(111);
    const auto sample = testsup::random_censored_sample(rng, 100, kPaperTruth, 0.4);
    const auto fit = ml_fit(sample, 1.0);
    const auto var = ml_variances(fit.params, sample);
    CHECK(std::abs(fit.params.theta1 - 10.0) < 3.0 * std::sqrt(var[0]));
    CHECK(std::abs(fit.params.theta2 - 10.0) < 3.0 * std::sqrt(var[1]));
    CHECK(std::abs(fit.params.p - 0.4) < 3.0 * std::sqrt(var[2]));
}

TEST_CASE("ml_fit beats a feasibility grid around the solution") {
    RandomStream rng(122);
    const auto sample = testsup::random_censored_sample(rng, 60, kPaperTruth, 0.4);
    const auto fit = ml_fit(sample, 1.0);
    const double best = log_likelihood_direct(fit.params, sample);
    for (int a = 0; a < 10; ++a)
        for (int b = 0; b < 10; ++b)
            for (int c = 0; c < 10; ++c) {
                const Params point{fit.params.theta1 * (0.7 + 0.6 * a / 9.0),
                                   fit.params.theta2 * (0.7 + 0.6 * b / 9.0),
                                   std::clamp(fit.params.p * (0.7 + 0.6 * c / 9.0), 1e-6,
                                              1.0 - 1e-6),
                                   1.0};
                CHECK(log_likelihood_direct(point, sample) <= best + 1e-10);
            }
}

TEST_CASE("ml_fit refuses samples with an empty component") {
    CensoredSample s{{}, {0.2, 0.3}, 5, 0.5};
    CHECK_THROWS_AS(ml_fit(s, 1.0), NoFailures);
    CensoredSample s2{{0.2, 0.3}, {}, 5, 0.5};
    CHECK_THROWS_AS(ml_fit(s2, 1.0), NoFailures);
}

TEST_CASE("ml_variances: uncensored closed forms") {
    CensoredSample s{{0.25, 0.1, 0.4}, {0.2, 0.35}, 5, 0.5};
    const double S1 = 0.75, S2 = std::log1p(0.2) + std::log1p(0.35);
    const Params point{3.0 / S1, 2.0 / S2, 0.6, 1.0};
    const auto var = ml_variances(point, s);
    CHECK(var[0] == doctest::Approx(point.theta1 * point.theta1 / 3.0).epsilon(1e-10));
    CHECK(var[1] == doctest::Approx(point.theta2 * point.theta2 / 2.0).epsilon(1e-10));
    const double p = point.p, q = 1 - p;
    CHECK(var[2] ==
          doctest::Approx(p * p * q * q / (3.0 * q * q + 2.0 * p * p)).epsilon(1e-10));
}

TEST_CASE("ml_variances matches the inverse finite-difference Hessian") {
    RandomStream rng(133);
    const auto sample = testsup::random_censored_sample(rng, 80, kPaperTruth, 0.4);
    const auto fit = ml_fit(sample, 1.0);
    const auto var = ml_variances(fit.params, sample);

    // finite-difference Hessian of the log-likelihood, inverted via the info
    // machinery check: compare against diag of inverse of -H_fd
    std::array<std::array<double, 3>, 3> h{};
    const std::array<double, 3> x{fit.params.theta1, fit.params.theta2, fit.params.p};
    for (int j = 0; j < 3; ++j) {
        const double step = 1e-5 * std::max(1.0, std::abs(x[j]));
        auto xp = x, xm = x;
        xp[j] += step;
        xm[j] -= step;
        const auto sp = score(Params{xp[0], xp[1], xp[2], 1.0}, sample);
        const auto sm = score(Params{xm[0], xm[1], xm[2], 1.0}, sample);
        for (int i = 0; i < 3; ++i) h[i][j] = -(sp[i] - sm[i]) / (2.0 * step);
    }
    const double c11 = h[1][1] * h[2][2] - h[1][2] * h[2][1];
    const double c22 = h[0][0] * h[2][2] - h[0][2] * h[2][0];
    const double c33 = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    const double det = h[0][0] * c11 - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
                       h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
    CHECK(var[0] == doctest::Approx(c11 / det).epsilon(1e-3));
    CHECK(var[1] == doctest::Approx(c22 / det).epsilon(1e-3));
    CHECK(var[2] == doctest::Approx(c33 / det).epsilon(1e-3));
}

}  // TEST_SUITE

#include "explomax/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "explomax/distributions.hpp"
#include "explomax/log_space.hpp"

namespace explomax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Censoring-term intermediates shared by the score and the information
// matrix. eC = exp(-theta1 T)/C and gC = (1 + T/delta)^(-theta2)/C are
// formed as exp of log differences so they stay finite under extreme
// parameter scales.
struct CensorTerms {
    int m = 0;        // n - r
    double T = 0.0;   // censor time
    double L = 0.0;   // ln(1 + T/delta)
    double eC = 0.0;  // exponential survival over mixture survival
    double gC = 0.0;  // Lomax survival over mixture survival
};

CensorTerms censor_terms(const Params& params, const SuffStats& s) {
    CensorTerms c;
    c.m = s.censored();
    c.T = s.T;
    c.L = std::log1p(s.T / params.delta);
    if (c.m > 0) {
        const double logC = log_mixture_survival(s.T, params);
        c.eC = std::exp(-params.theta1 * s.T - logC);
        c.gC = std::exp(-params.theta2 * c.L - logC);
    }
    return c;
}

double log_likelihood_from_stats(const Params& params, const SuffStats& s) {
    const double q = 1.0 - params.p;
    // -(theta2+1) sum ln(x_2j + delta) rewritten as -theta2 S2 - S2 - r2 ln delta.
    double l = s.r1 * std::log(params.p) + s.r1 * std::log(params.theta1) -
               params.theta1 * s.S1 + s.r2 * std::log(q) + s.r2 * std::log(params.theta2) -
               params.theta2 * s.S2 - s.S2 - s.r2 * std::log(params.delta);
    if (s.censored() > 0) l += s.censored() * log_mixture_survival(s.T, params);
    return l;
}

std::array<double, 3> score_from_stats(const Params& params, const SuffStats& s) {
    const double q = 1.0 - params.p;
    const CensorTerms c = censor_terms(params, s);
    return {s.r1 / params.theta1 - s.S1 - c.m * params.p * c.T * c.eC,
            s.r2 / params.theta2 - s.S2 - c.m * q * c.L * c.gC,
            s.r1 / params.p - s.r2 / q + c.m * (c.eC - c.gC)};
}

InfoMatrix information_from_stats(const Params& params, const SuffStats& s) {
    const double p = params.p;
    const double q = 1.0 - p;
    const CensorTerms c = censor_terms(params, s);
    const double m = double(c.m);
    InfoMatrix info;
    info.i11 = s.r1 / (params.theta1 * params.theta1) - m * p * c.T * c.T * c.eC +
               m * (p * c.T * c.eC) * (p * c.T * c.eC);
    info.i22 = s.r2 / (params.theta2 * params.theta2) - m * q * c.L * c.L * c.gC +
               m * (q * c.L * c.gC) * (q * c.L * c.gC);
    info.i33 = s.r1 / (p * p) + s.r2 / (q * q) + m * (c.eC - c.gC) * (c.eC - c.gC);
    info.i12 = m * p * q * c.T * c.L * c.eC * c.gC;
    info.i13 = m * c.T * c.eC * c.gC;
    info.i23 = -m * c.L * c.eC * c.gC;
    return info;
}

using Mat3 = std::array<std::array<double, 3>, 3>;

bool cholesky3(const Mat3& a, Mat3& lower) {
    Mat3 l{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = a[i][j];
            for (int k = 0; k < j; ++k) sum -= l[i][k] * l[j][k];
            if (i == j) {
                if (!(sum > 0.0)) return false;
                l[i][i] = std::sqrt(sum);
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    lower = l;
    return true;
}

std::array<double, 3> cholesky_solve3(const Mat3& lower, const std::array<double, 3>& b) {
    std::array<double, 3> y{}, x{};
    for (int i = 0; i < 3; ++i) {
        double sum = b[i];
        for (int k = 0; k < i; ++k) sum -= lower[i][k] * y[k];
        y[i] = sum / lower[i][i];
    }
    for (int i = 2; i >= 0; --i) {
        double sum = y[i];
        for (int k = i + 1; k < 3; ++k) sum -= lower[k][i] * x[k];
        x[i] = sum / lower[i][i];
    }
    return x;
}

double inf_norm3(const std::array<double, 3>& v) {
    return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

}  // namespace

double InfoMatrix::operator()(int row, int col) const {
    const int i = std::min(row, col);
    const int j = std::max(row, col);
    if (i == 0 && j == 0) return i11;
    if (i == 1 && j == 1) return i22;
    if (i == 2 && j == 2) return i33;
    if (i == 0 && j == 1) return i12;
    if (i == 0 && j == 2) return i13;
    return i23;
}

std::array<std::array<double, 3>, 3> InfoMatrix::to_array() const {
    return {{{i11, i12, i13}, {i12, i22, i23}, {i13, i23, i33}}};
}

double log_likelihood_direct(const Params& params, const CensoredSample& sample) {
    params.validate();
    return log_likelihood_from_stats(params, SuffStats::from(sample, params.delta));
}

double log_likelihood_expanded(const Params& params, const CensoredSample& sample) {
    params.validate();
    const SuffStats s = SuffStats::from(sample, params.delta);
    const int m = s.censored();
    const double q = 1.0 - params.p;
    const double LT = std::log1p(s.T / params.delta);
    std::vector<double> terms(m + 1);
    for (int k = 0; k <= m; ++k) {
        terms[k] = log_binom(m, k) - params.theta1 * (s.S1 + s.T * k) +
                   (k + s.r1) * std::log(params.p) + (s.n - k - s.r1) * std::log(q) -
                   params.theta2 * (s.S2 + (m - k) * LT);
    }
    return s.r1 * std::log(params.theta1) + s.r2 * std::log(params.theta2) +
           log_sum_exp(terms);
}

std::array<double, 3> score(const Params& params, const CensoredSample& sample) {
    params.validate();
    return score_from_stats(params, SuffStats::from(sample, params.delta));
}

InfoMatrix observed_information(const Params& params, const CensoredSample& sample) {
    params.validate();
    return information_from_stats(params, SuffStats::from(sample, params.delta));
}

FitResult ml_fit(const CensoredSample& sample, double delta, std::optional<Params> init) {
    const SuffStats s = SuffStats::from(sample, delta);
    if (s.r1 == 0 || s.r2 == 0)
        throw NoFailures("ml_fit requires at least one observed failure per component");

    Params cur;
    if (init) {
        cur = *init;
        cur.delta = delta;
        cur.validate();
    } else {
        cur = Params{s.r1 / s.S1, s.r2 / s.S2, double(s.r1) / double(s.r1 + s.r2), delta};
    }

    // z = (log theta1, log theta2, logit p)
    std::array<double, 3> z = {std::log(cur.theta1), std::log(cur.theta2),
                               std::log(cur.p / (1.0 - cur.p))};
    const auto to_params = [&](const std::array<double, 3>& zz) {
        return Params{std::exp(zz[0]), std::exp(zz[1]), 1.0 / (1.0 + std::exp(-zz[2])), delta};
    };

    constexpr double kTol = 1e-9;
    constexpr int kMaxIter = 200;
    FitReport report;
    double ll = log_likelihood_from_stats(cur, s);

    for (int iter = 0; iter < kMaxIter; ++iter) {
        report.iterations = iter;
        const auto sc = score_from_stats(cur, s);
        const std::array<double, 3> jac = {cur.theta1, cur.theta2, cur.p * (1.0 - cur.p)};
        const std::array<double, 3> gz = {jac[0] * sc[0], jac[1] * sc[1], jac[2] * sc[2]};
        report.grad_norm = inf_norm3(sc);
        if (report.grad_norm < kTol && inf_norm3(gz) < kTol) {
            report.converged = true;
            break;
        }

        // Hessian of l in z-coordinates: J H J + chain terms on the diagonal.
        const InfoMatrix info = information_from_stats(cur, s);
        Mat3 neg_hz{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) neg_hz[i][j] = jac[i] * info(i, j) * jac[j];
        neg_hz[0][0] -= sc[0] * cur.theta1;
        neg_hz[1][1] -= sc[1] * cur.theta2;
        neg_hz[2][2] -= sc[2] * jac[2] * (1.0 - 2.0 * cur.p);

        // Ascent direction: solve (-Hz) d = gz, ridging until positive definite.
        Mat3 lower{};
        double ridge = 0.0;
        const double scale =
            std::max({std::abs(neg_hz[0][0]), std::abs(neg_hz[1][1]), std::abs(neg_hz[2][2]), 1.0});
        Mat3 a = neg_hz;
        while (!cholesky3(a, lower)) {
            ridge = (ridge == 0.0) ? 1e-8 * scale : ridge * 10.0;
            a = neg_hz;
            for (int i = 0; i < 3; ++i) a[i][i] += ridge;
            if (ridge > 1e12 * scale)
                throw NonConvergence("ml_fit: could not form an ascent direction", cur, report);
        }
        std::array<double, 3> step = cholesky_solve3(lower, gz);

        // Clamp the step so exp/logit stay in range.
        const double step_norm = inf_norm3(step);
        if (step_norm > 10.0)
            for (double& v : step) v *= 10.0 / step_norm;

        bool moved = false;
        if (step_norm < 1e-5) {
            // Quadratic endgame: the likelihood change is below rounding
            // noise, so a line search cannot certify progress. Take the full
            // Newton step.
            for (int i = 0; i < 3; ++i) z[i] += step[i];
            cur = to_params(z);
            ll = log_likelihood_from_stats(cur, s);
            continue;
        }

        // Backtracking Armijo line search on the log-likelihood.
        const double slope = gz[0] * step[0] + gz[1] * step[1] + gz[2] * step[2];
        double alpha = 1.0;
        for (int half = 0; half < 60; ++half) {
            const std::array<double, 3> zn = {z[0] + alpha * step[0], z[1] + alpha * step[1],
                                              z[2] + alpha * step[2]};
            const Params cand = to_params(zn);
            if (cand.is_valid()) {
                const double ll_new = log_likelihood_from_stats(cand, s);
                if (std::isfinite(ll_new) && ll_new >= ll + 1e-4 * alpha * slope) {
                    z = zn;
                    cur = cand;
                    ll = ll_new;
                    moved = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if (!moved) {
            // Progress stalled at numerical precision; accept if stationary.
            report.converged = report.grad_norm < 1e-8;
            break;
        }
    }

    if (!report.converged) {
        const auto sc = score_from_stats(cur, s);
        report.grad_norm = inf_norm3(sc);
        if (report.grad_norm >= 1e-8)
            throw NonConvergence("ml_fit: iteration cap reached before stationarity", cur,
                                 report);
        report.converged = true;
    }

    Mat3 lower{};
    report.information_positive_definite =
        cholesky3(information_from_stats(cur, s).to_array(), lower);
    return FitResult{cur, report};
}

std::array<double, 3> ml_variances(const Params& params, const CensoredSample& sample) {
    params.validate();
    const InfoMatrix info = observed_information(params, sample);
    const Mat3 a = info.to_array();
    // Adjugate inverse of the symmetric 3x3.
    const double c11 = a[1][1] * a[2][2] - a[1][2] * a[2][1];
    const double c12 = a[1][0] * a[2][2] - a[1][2] * a[2][0];
    const double c13 = a[1][0] * a[2][1] - a[1][1] * a[2][0];
    const double det = a[0][0] * c11 - a[0][1] * c12 + a[0][2] * c13;
    const double scale = std::max({std::abs(a[0][0]), std::abs(a[1][1]), std::abs(a[2][2])});
    if (!(std::abs(det) > 1e-14 * scale * scale * scale))
        throw SingularInformation("observed information matrix is numerically singular");
    const double c22 = a[0][0] * a[2][2] - a[0][2] * a[2][0];
    const double c33 = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    return {c11 / det, c22 / det, c33 / det};
}

}  // namespace explomax

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace explomax {

// log(exp(a) + exp(b)) without overflow; tolerates -inf arguments.
inline double log_sum_exp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

inline double log_sum_exp(std::span<const double> vals) {
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : vals) hi = std::max(hi, v);
    if (!std::isfinite(hi)) return hi;
    double sum = 0.0;
    for (double v : vals) sum += std::exp(v - hi);
    return hi + std::log(sum);
}

// ln binom(n, k) as a log-gamma difference; exact enough for n in the
// thousands, immune to factorial overflow.
inline double log_binom(int n, int k) {
    return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
           std::lgamma(double(n - k) + 1.0);
}

inline double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace explomax

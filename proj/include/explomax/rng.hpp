#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace explomax {

// Seeded random stream with hand-rolled variate transforms.
//
// All transforms (uniform, normal, gamma, beta) are implemented here rather
// than through std::*_distribution so that a given seed produces the same
// draws on every platform and standard library. Gamma variates use the
// Marsaglia-Tsang rejection sampler, exact for all shapes.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    // Independent substream derived from (this stream's seed, index).
    // Substreams of distinct indices never share state with each other or
    // with the parent.
    RandomStream substream(std::uint64_t index) const {
        return RandomStream(splitmix64(seed_ + (index + 1) * 0x9E3779B97F4A7C15ull));
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_raw() { return engine_(); }

    // Uniform on (0, 1): 53-bit mantissa, zero excluded.
    double uniform() {
        while (true) {
            const double u = double(engine_() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    // Standard normal via the Marsaglia polar method.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    // Gamma(shape, rate). Marsaglia-Tsang for shape >= 1; the boost
    // u^(1/shape) trick maps shape < 1 onto it.
    double gamma(double shape, double rate) {
        if (!(shape > 0.0) || !(rate > 0.0))
            throw std::invalid_argument("gamma: shape and rate must be positive");
        if (shape < 1.0) {
            const double g = gamma(shape + 1.0, 1.0);
            return g * std::pow(uniform(), 1.0 / shape) / rate;
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        while (true) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
        }
    }

    double beta(double a, double b) {
        const double x = gamma(a, 1.0);
        const double y = gamma(b, 1.0);
        return x / (x + y);
    }

  private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace explomax

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace explomax {

// Type-I right-censored sample with known component membership of the
// observed failures. Units surviving past censor_time contribute only the
// count n - r1 - r2; their labels are unknown.
struct CensoredSample {
    std::vector<double> obs1;  // failure times from the exponential component
    std::vector<double> obs2;  // failure times from the Lomax component
    int n = 0;                 // total units on test
    double censor_time = 0.0;  // T

    int r1() const { return int(obs1.size()); }
    int r2() const { return int(obs2.size()); }
    int r() const { return r1() + r2(); }
    int censored() const { return n - r(); }

    void validate() const {
        if (n < 1) throw std::invalid_argument("n must be at least 1");
        if (!(censor_time > 0.0)) throw std::invalid_argument("censor time must be positive");
        if (r() > n)
            throw std::invalid_argument("observed failures exceed the number of units on test");
        for (double t : obs1)
            if (!(t > 0.0 && t <= censor_time))
                throw std::invalid_argument("component-1 failure time outside (0, T]");
        for (double t : obs2)
            if (!(t > 0.0 && t <= censor_time))
                throw std::invalid_argument("component-2 failure time outside (0, T]");
    }
};

// Sufficient statistics of the censored likelihood.
// S1 = sum of component-1 failure times, S2 = sum of ln(1 + x/delta) over
// component-2 failures.
struct SuffStats {
    double S1 = 0.0;
    double S2 = 0.0;
    int r1 = 0;
    int r2 = 0;
    int n = 0;
    double T = 0.0;
    double delta = 1.0;

    int censored() const { return n - r1 - r2; }

    static SuffStats from(const CensoredSample& sample, double delta) {
        if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
        sample.validate();
        SuffStats s;
        s.r1 = sample.r1();
        s.r2 = sample.r2();
        s.n = sample.n;
        s.T = sample.censor_time;
        s.delta = delta;
        for (double t : sample.obs1) s.S1 += t;
        for (double t : sample.obs2) s.S2 += std::log1p(t / delta);
        return s;
    }
};

}  // namespace explomax

#pragma once

#include "explomax/expansion.hpp"

namespace explomax {

// Equal-tail predictive summary for one future observation.
struct PredictiveSummary {
    double median = 0.0;
    double lower = 0.0;   // L, predictive CDF = alpha/2
    double upper = 0.0;   // U, predictive CDF = 1 - alpha/2
    double alpha = 0.0;
    Prior prior = Prior::uniform;
};

// Posterior predictive density of a future lifetime, the two-branch
// (exponential-origin + Lomax-origin) mixture evaluated in log space.
double predictive_pdf(double y, const PosteriorExpansion& expansion);

// Closed-form term-by-term integral of predictive_pdf over [0, y].
double predictive_cdf(double y, const PosteriorExpansion& expansion);

// L, median and U solved from the predictive CDF by bracketing bisection;
// absolute CDF tolerance 1e-10. alpha must lie in (0, 1).
PredictiveSummary predictive_interval(const PosteriorExpansion& expansion, double alpha);

}  // namespace explomax

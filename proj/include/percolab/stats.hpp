#pragma once

#include <cstdint>
#include <vector>

namespace percolab {

struct EstimateWithCI {
    uint64_t successes = 0;
    uint64_t trials = 0;
    double estimate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double confidence = 0.95;

    double half_width() const { return 0.5 * (ci_hi - ci_lo); }
};

struct MeanWithCI {
    double mean = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    uint64_t trials = 0;
    double confidence = 0.95;
};

// Inverse standard normal CDF (Acklam's rational approximation, |rel err| < 1.2e-9).
double inverse_normal_cdf(double p);

// Wilson score interval clamped to [0,1]; lo is exactly 0 when successes == 0
// and hi exactly 1 when successes == trials.
void wilson_interval(uint64_t successes, uint64_t trials, double confidence,
                     double* lo, double* hi);

EstimateWithCI make_estimate(uint64_t successes, uint64_t trials, double confidence = 0.95);

// Normal-approximation CI for a sample mean.
MeanWithCI make_mean_estimate(const std::vector<double>& samples, double confidence = 0.95);

// |p1 - p2| <= k * sqrt(se1^2 + se2^2) with binomial standard errors.
bool estimates_agree(const EstimateWithCI& a, const EstimateWithCI& b, double k_sigma);

// Least-squares slope of y against x.
double regression_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace percolab

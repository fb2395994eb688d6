#include "percolab/stats.hpp"

#include <algorithm>
#include <cmath>

#include "percolab/common.hpp"

namespace percolab {

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ConfigError("inverse_normal_cdf: p outside (0,1)");

    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};

    const double plow = 0.02425;
    double q, r, x;
    if (p < plow) {
        q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        q = p - 0.5;
        r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    return x;
}

void wilson_interval(uint64_t successes, uint64_t trials, double confidence,
                     double* lo, double* hi) {
    if (trials == 0 || successes > trials) throw ConfigError("wilson_interval: bad counts");
    const double z = inverse_normal_cdf(0.5 + 0.5 * confidence);
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    *lo = std::max(0.0, center - half);
    *hi = std::min(1.0, center + half);
    if (successes == 0) *lo = 0.0;
    if (successes == trials) *hi = 1.0;
}

EstimateWithCI make_estimate(uint64_t successes, uint64_t trials, double confidence) {
    EstimateWithCI e;
    e.successes = successes;
    e.trials = trials;
    e.confidence = confidence;
    e.estimate = trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
    wilson_interval(successes, trials, confidence, &e.ci_lo, &e.ci_hi);
    return e;
}

MeanWithCI make_mean_estimate(const std::vector<double>& samples, double confidence) {
    if (samples.empty()) throw ConfigError("make_mean_estimate: no samples");
    MeanWithCI m;
    m.trials = samples.size();
    m.confidence = confidence;
    double sum = 0.0;
    for (double s : samples) sum += s;
    m.mean = sum / static_cast<double>(samples.size());
    double ss = 0.0;
    for (double s : samples) ss += (s - m.mean) * (s - m.mean);
    const double n = static_cast<double>(samples.size());
    const double sd = n > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    const double z = inverse_normal_cdf(0.5 + 0.5 * confidence);
    m.ci_lo = m.mean - z * sd / std::sqrt(n);
    m.ci_hi = m.mean + z * sd / std::sqrt(n);
    return m;
}

bool estimates_agree(const EstimateWithCI& a, const EstimateWithCI& b, double k_sigma) {
    auto se = [](const EstimateWithCI& e) {
        const double n = static_cast<double>(e.trials);
        return std::sqrt(e.estimate * (1.0 - e.estimate) / n);
    };
    const double joint = std::sqrt(se(a) * se(a) + se(b) * se(b));
    return std::fabs(a.estimate - b.estimate) <= k_sigma * joint;
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ConfigError("regression_slope: need >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace percolab

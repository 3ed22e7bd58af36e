#include "frontier/stats.hpp"

#include <cmath>
#include <limits>

namespace frontier {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

// Asymptotic series for the normal tail, used once erfc underflows
// (z below about -37). log(Phi(z)) ~ log(phi(z)/-z) + log(series).
double tail_series(double z) {
    const double z2 = z * z;
    return 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
}
} // namespace

double norm_pdf(double z) { return std::exp(-0.5 * z * z - kLogSqrt2Pi); }

double norm_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double norm_log_cdf(double z) {
    if (z > 6.0) {
        // Phi(z) close to 1: log(1 - Q) with the small upper tail Q.
        const double q = 0.5 * std::erfc(z * kInvSqrt2);
        return std::log1p(-q);
    }
    if (z > -37.0) {
        return std::log(0.5 * std::erfc(-z * kInvSqrt2));
    }
    return -0.5 * z * z - kLogSqrt2Pi - std::log(-z) + std::log(tail_series(z));
}

double mills_ratio(double z) {
    if (z < -30.0) return -z / tail_series(z);
    return std::exp(-0.5 * z * z - kLogSqrt2Pi - norm_log_cdf(z));
}

double mills_ratio_deriv(double z) {
    const double m = mills_ratio(z);
    return -z * m - m * m;
}

double norm_log_cdf_diff(double lo, double hi) {
    if (lo > 0.0) {
        // Work in the lower tail: Phi(hi)-Phi(lo) = Phi(-lo)-Phi(-hi).
        const double a = norm_log_cdf(-lo);
        const double b = norm_log_cdf(-hi);
        return a + std::log1p(-std::exp(b - a));
    }
    const double a = norm_log_cdf(hi);
    const double b = norm_log_cdf(lo);
    return a + std::log1p(-std::exp(b - a));
}

namespace {
// Continued-fraction core for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kFpMin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}
} // namespace

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double lnfront = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(lnfront);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * betacf(a, b, x) / a;
    }
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
    if (!std::isfinite(t)) return 0.0;
    if (t == 0.0) return 1.0;
    const double x = df / (df + t * t);
    return incomplete_beta(0.5 * df, 0.5, x);
}

double normal_two_sided_p(double z) {
    if (!std::isfinite(z)) return 0.0;
    return std::erfc(std::fabs(z) * kInvSqrt2);
}

} // namespace frontier

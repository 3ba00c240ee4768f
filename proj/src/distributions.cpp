#include "ksp/distributions.hpp"

#include <cmath>
#include <stdexcept>

namespace ksp::distributions {

namespace {

constexpr double kPi = 3.14159265358979323846;

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace

double KolmogorovCdf::direct_series(double x) const {
    // 1 + 2 * sum_{k>=1} (-1)^k exp(-2 k^2 x^2); alternating with decreasing
    // terms, so truncation error is bounded by the first dropped term.
    double sum = 1.0;
    for (int k = 1; k < 1000; ++k) {
        const double term = 2.0 * std::exp(-2.0 * k * k * x * x);
        if (term < truncation_tolerance / 2.0) break;
        sum += (k % 2 == 0) ? term : -term;
    }
    return sum;
}

double KolmogorovCdf::transformed_series(double x) const {
    const double prefactor = std::sqrt(2.0 * kPi) / x;
    const double c = kPi * kPi / (8.0 * x * x);
    double sum = 0.0;
    for (int k = 1; k < 1000; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double term = std::exp(-odd * odd * c);
        if (prefactor * term < truncation_tolerance / 2.0) break;
        sum += term;
    }
    return prefactor * sum;
}

double KolmogorovCdf::operator()(double x) const {
    if (!std::isfinite(x)) throw std::invalid_argument("kolmogorov_cdf: non-finite argument");
    if (truncation_tolerance <= 0.0)
        throw std::invalid_argument("kolmogorov_cdf: tolerance must be > 0");
    if (x <= 0.0) return 0.0;
    const double v = x < crossover_threshold ? transformed_series(x) : direct_series(x);
    return clamp01(v);
}

double KolmogorovCdf::quantile(double p) const {
    if (!std::isfinite(p) || p <= 0.0 || p >= 1.0)
        throw std::invalid_argument("kolmogorov_quantile: p must be in (0,1)");
    double lo = 1e-6, hi = 10.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if ((*this)(mid) < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13) break;
    }
    return 0.5 * (lo + hi);
}

double kolmogorov_cdf(double x) { return KolmogorovCdf{}(x); }

double kolmogorov_quantile(double p) { return KolmogorovCdf{}.quantile(p); }

double half_normal_cdf(double x, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("half_normal_cdf: sigma must be > 0");
    if (!std::isfinite(x)) throw std::invalid_argument("half_normal_cdf: non-finite argument");
    if (x <= 0.0) return 0.0;
    return std::erf(x / (sigma * std::sqrt(2.0)));
}

double lil_constant(double a, PowerClass power_class) {
    if (!(a > 1.0)) throw std::invalid_argument("lil_constant: requires a > 1");
    const bool is_integer = std::isfinite(a) && a == std::floor(a);
    switch (power_class) {
        case PowerClass::integer_two:
            if (a != 2.0) throw std::invalid_argument("lil_constant: flag 'two' requires a = 2");
            return std::sqrt(84.0) / 9.0;
        case PowerClass::integer_even_ge4: {
            if (!is_integer || a < 4.0 || std::fmod(a, 2.0) != 0.0)
                throw std::invalid_argument("lil_constant: flag requires an even integer a >= 4");
            return std::sqrt((a + 1.0) * a * (a - 2.0)) / std::sqrt(2.0 * std::pow(a - 1.0, 3));
        }
        case PowerClass::integer_odd_ge3: {
            if (!is_integer || a < 3.0 || std::fmod(a, 2.0) != 1.0)
                throw std::invalid_argument("lil_constant: flag requires an odd integer a >= 3");
            return std::sqrt(a + 1.0) / std::sqrt(2.0 * (a - 1.0));
        }
        case PowerClass::no_rational_power:
            if (is_integer)
                throw std::invalid_argument(
                    "lil_constant: an integer base has rational powers; flag inconsistent");
            return 1.0 / std::sqrt(2.0);
    }
    throw std::logic_error("unreachable");
}

}  // namespace ksp::distributions

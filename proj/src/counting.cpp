#include "ksp/counting.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "ksp/distributions.hpp"

namespace ksp::counting {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

Sample::Sample(std::vector<double> values, double lo, double hi)
    : values_(std::move(values)), lo_(lo), hi_(hi) {
    if (values_.empty()) throw std::invalid_argument("Sample: needs at least one value");
    if (!(lo_ < hi_)) throw std::invalid_argument("Sample: requires lo < hi");
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("Sample: non-finite value");
        if (v < lo_ || v > hi_) throw std::invalid_argument("Sample: value outside domain");
    }
    std::sort(values_.begin(), values_.end());
}

TheoreticalCdf TheoreticalCdf::continuous_uniform(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("continuous_uniform: requires lo < hi");
    TheoreticalCdf c(Kind::continuous_uniform);
    c.lo_ = lo;
    c.hi_ = hi;
    return c;
}

TheoreticalCdf TheoreticalCdf::discrete_uniform(std::uint64_t n_points) {
    if (n_points == 0) throw std::invalid_argument("discrete_uniform: needs N >= 1");
    if (n_points > 10'000'000)
        throw std::invalid_argument("discrete_uniform: support of N > 1e7 points not supported");
    TheoreticalCdf c(Kind::discrete_uniform);
    c.n_points_ = n_points;
    c.points_.reserve(n_points);
    c.cum_.reserve(n_points);
    for (std::uint64_t j = 0; j < n_points; ++j) {
        c.points_.push_back(static_cast<double>(j));
        c.cum_.push_back(static_cast<double>(j + 1) / static_cast<double>(n_points));
    }
    c.cum_.back() = 1.0;
    return c;
}

TheoreticalCdf TheoreticalCdf::bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli: p must be in [0,1]");
    TheoreticalCdf c(Kind::bernoulli);
    c.p_ = p;
    c.points_ = {0.0, 1.0};
    c.cum_ = {1.0 - p, 1.0};
    return c;
}

TheoreticalCdf TheoreticalCdf::step(std::vector<double> points, std::vector<double> masses) {
    if (points.empty() || points.size() != masses.size())
        throw std::invalid_argument("step: points and masses must match and be nonempty");
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i])) throw std::invalid_argument("step: non-finite point");
        if (i > 0 && !(points[i] > points[i - 1]))
            throw std::invalid_argument("step: jump points must be strictly increasing");
        if (!(masses[i] > 0.0)) throw std::invalid_argument("step: masses must be positive");
        total += masses[i];
    }
    if (std::fabs(total - 1.0) > 1e-9)
        throw std::invalid_argument("step: masses must sum to 1");
    TheoreticalCdf c(Kind::step_function);
    c.points_ = std::move(points);
    c.cum_.resize(c.points_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < masses.size(); ++i) {
        acc += masses[i];
        c.cum_[i] = acc;
    }
    c.cum_.back() = 1.0;
    return c;
}

double TheoreticalCdf::prob(double x) const {
    if (kind_ == Kind::continuous_uniform) {
        if (x <= lo_) return 0.0;
        if (x >= hi_) return 1.0;
        return (x - lo_) / (hi_ - lo_);
    }
    // discrete kinds: P(X <= x) = cumulative mass of the last jump point <= x
    auto it = std::upper_bound(points_.begin(), points_.end(), x);
    if (it == points_.begin()) return 0.0;
    return cum_[static_cast<std::size_t>(it - points_.begin()) - 1];
}

double TheoreticalCdf::prob_left(double x) const {
    if (kind_ == Kind::continuous_uniform) return prob(x);
    auto it = std::lower_bound(points_.begin(), points_.end(), x);
    if (it == points_.begin()) return 0.0;
    return cum_[static_cast<std::size_t>(it - points_.begin()) - 1];
}

double TheoreticalCdf::support_lo() const {
    return kind_ == Kind::continuous_uniform ? lo_ : points_.front();
}

double TheoreticalCdf::support_hi() const {
    return kind_ == Kind::continuous_uniform ? hi_ : points_.back();
}

std::uint64_t empirical_count(const Sample& sample, double x) {
    const auto& v = sample.values();
    return static_cast<std::uint64_t>(std::upper_bound(v.begin(), v.end(), x) - v.begin());
}

StochasticityReport stochasticity_parameter(const Sample& sample, const TheoreticalCdf& cdf) {
    const auto& values = sample.values();
    if (values.front() < cdf.support_lo() || values.back() > cdf.support_hi())
        throw std::invalid_argument("stochasticity_parameter: sample outside the CDF's support");

    const auto n = static_cast<double>(sample.size());
    std::vector<double> candidates = values;
    const auto& jumps = cdf.jump_points();
    candidates.insert(candidates.end(), jumps.begin(), jumps.end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    StochasticityReport report;
    report.n = sample.size();
    double best = -1.0;
    std::size_t below = 0;  // #{values < x} maintained while sweeping
    for (double x : candidates) {
        while (below < values.size() && values[below] < x) ++below;
        std::size_t at = below;
        while (at < values.size() && values[at] == x) ++at;  // #{values <= x}
        const double dev_right = std::fabs(static_cast<double>(at) - n * cdf.prob(x));
        const double dev_left = std::fabs(static_cast<double>(below) - n * cdf.prob_left(x));
        if (dev_right > best) {
            best = dev_right;
            report.argsup = x;
            report.side = SupSide::right_value;
        }
        if (dev_left > best) {
            best = dev_left;
            report.argsup = x;
            report.side = SupSide::left_limit;
        }
    }
    report.sup_deviation = best;
    report.lambda = best / std::sqrt(n);
    report.phi_of_lambda = distributions::kolmogorov_cdf(report.lambda);
    return report;
}

double star_discrepancy(const Sample& sample) {
    if (sample.lo() < 0.0 || sample.hi() > 1.0)
        throw std::invalid_argument("star_discrepancy: sample must live on [0,1]");
    const auto& v = sample.values();
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double rank = static_cast<double>(i + 1);
        d = std::max(d, rank / n - v[i]);
        d = std::max(d, v[i] - (rank - 1.0) / n);
    }
    return d;
}

double weyl_sum(const Sample& sample, long long h) {
    if (h == 0) throw std::invalid_argument("weyl_sum: h must be nonzero");
    if (sample.lo() < 0.0 || sample.hi() > 1.0)
        throw std::invalid_argument("weyl_sum: sample must live on [0,1]");
    std::complex<double> acc(0.0, 0.0);
    for (double x : sample.values()) {
        const double angle = kTwoPi * static_cast<double>(h) * x;
        acc += std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return std::abs(acc) / static_cast<double>(sample.size());
}

double PiecewiseLinear::operator()(double x) const {
    if (xs.size() < 2 || xs.size() != ys.size())
        throw std::invalid_argument("PiecewiseLinear: needs matching xs/ys with >= 2 points");
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const auto i = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

double PiecewiseLinear::integral01() const {
    double acc = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i)
        acc += 0.5 * (ys[i] + ys[i - 1]) * (xs[i] - xs[i - 1]);
    return acc;
}

double PiecewiseLinear::integral01_squared() const {
    // f linear on each segment, so f^2 integrates to (a^2 + ab + b^2)/3 * dx.
    double acc = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double a = ys[i - 1], b = ys[i];
        acc += (a * a + a * b + b * b) / 3.0 * (xs[i] - xs[i - 1]);
    }
    return acc;
}

double PiecewiseLinear::total_variation() const {
    double acc = 0.0;
    for (std::size_t i = 1; i < ys.size(); ++i) acc += std::fabs(ys[i] - ys[i - 1]);
    return acc;
}

KoksmaResult koksma_gap(const Sample& sample, const PiecewiseLinear& f, double total_variation) {
    const double actual = f.total_variation();
    if (std::fabs(actual - total_variation) > 1e-9 * std::max(1.0, actual))
        throw std::invalid_argument("koksma_gap: supplied variation does not match f");
    if (actual == 0.0) return {0.0, 0.0};  // constant function integrates exactly
    double mean = 0.0;
    for (double x : sample.values()) mean += f(x);
    mean /= static_cast<double>(sample.size());
    const double gap = std::fabs(mean - f.integral01());
    return {gap, actual * star_discrepancy(sample)};
}

}  // namespace ksp::counting

#include "ksp/simulate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "ksp/errors.hpp"
#include "ksp/parallel.hpp"
#include "ksp/sequences.hpp"

namespace ksp::simulate {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

double ks_distance(std::span<const double> sorted_values,
                   const std::function<double(double)>& cdf) {
    if (sorted_values.empty()) throw std::invalid_argument("ks_distance: empty sample");
    const double n = static_cast<double>(sorted_values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted_values.size(); ++i) {
        const double f = cdf(sorted_values[i]);
        const double rank = static_cast<double>(i + 1);
        d = std::max(d, rank / n - f);
        d = std::max(d, f - (rank - 1.0) / n);
    }
    return d;
}

BridgePath sample_bridge(std::span<const double> grid, std::uint64_t seed) {
    if (grid.size() < 2 || grid.front() != 0.0 || grid.back() != 1.0)
        throw std::invalid_argument("sample_bridge: grid must run from 0 to 1");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("sample_bridge: grid must be strictly increasing");

    auto gen = rng::Xoshiro256pp::substream(seed, 0);
    BridgePath path;
    path.seed = seed;
    path.times.assign(grid.begin(), grid.end());
    path.values.resize(grid.size());
    std::vector<double> w(grid.size(), 0.0);
    for (std::size_t i = 1; i < grid.size(); ++i)
        w[i] = w[i - 1] + gen.normal() * std::sqrt(grid[i] - grid[i - 1]);
    const double w1 = w.back();
    path.values[0] = 0.0;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
        path.values[i] = w[i] - grid[i] * w1;
    path.values.back() = 0.0;  // pinned exactly by the representation
    return path;
}

EmpiricalCdfEstimate discrete_bridge_max(std::uint64_t N, std::uint64_t trials,
                                         std::uint64_t seed, unsigned workers) {
    if (N < 2) throw std::invalid_argument("discrete_bridge_max: N must be >= 2");
    if (trials == 0) throw std::invalid_argument("discrete_bridge_max: trials must be >= 1");
    EmpiricalCdfEstimate est;
    est.trials = trials;
    est.seed = seed;
    est.sorted_values.resize(trials);
    const double dt = 1.0 / static_cast<double>(N);
    const double sqrt_dt = std::sqrt(dt);
    parallel_for(trials, workers, [&](std::uint64_t r) {
        auto gen = rng::Xoshiro256pp::substream(seed, r);
        double w = 0.0;
        std::vector<double> partial(N - 1);
        for (std::uint64_t m = 1; m < N; ++m) {
            w += gen.normal() * sqrt_dt;
            partial[m - 1] = w;
        }
        const double w1 = w + gen.normal() * sqrt_dt;
        double mx = 0.0;
        for (std::uint64_t m = 1; m < N; ++m) {
            const double b = partial[m - 1] - static_cast<double>(m) * dt * w1;
            mx = std::max(mx, std::fabs(b));
        }
        est.sorted_values[r] = mx;
    });
    std::sort(est.sorted_values.begin(), est.sorted_values.end());
    return est;
}

double bernoulli_lambda_one(std::uint64_t n, const std::function<std::uint64_t()>& next_word) {
    if (n == 0) throw std::invalid_argument("bernoulli_lambda: n must be >= 1");
    std::uint64_t ones = 0;
    std::uint64_t remaining = n;
    while (remaining >= 64) {
        ones += static_cast<std::uint64_t>(std::popcount(next_word()));
        remaining -= 64;
    }
    if (remaining > 0) {
        const std::uint64_t mask = (remaining == 64) ? ~0ULL : ((1ULL << remaining) - 1);
        ones += static_cast<std::uint64_t>(std::popcount(next_word() & mask));
    }
    const double sum = static_cast<double>(ones);
    return std::fabs(sum - static_cast<double>(n) / 2.0) / std::sqrt(static_cast<double>(n));
}

std::vector<std::uint8_t> bernoulli_bits(std::uint64_t n, rng::Xoshiro256pp& gen) {
    std::vector<std::uint8_t> bits;
    bits.reserve(n);
    std::uint64_t word = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (i % 64 == 0) word = gen.next();
        bits.push_back(static_cast<std::uint8_t>((word >> (i % 64)) & 1));
    }
    return bits;
}

EmpiricalCdfEstimate bernoulli_lambda(std::uint64_t n, std::uint64_t trials, std::uint64_t seed,
                                      unsigned workers) {
    if (trials == 0) throw std::invalid_argument("bernoulli_lambda: trials must be >= 1");
    EmpiricalCdfEstimate est;
    est.trials = trials;
    est.seed = seed;
    est.sorted_values.resize(trials);
    parallel_for(trials, workers, [&](std::uint64_t r) {
        auto gen = rng::Xoshiro256pp::substream(seed, r);
        est.sorted_values[r] = bernoulli_lambda_one(n, [&gen]() { return gen.next(); });
    });
    std::sort(est.sorted_values.begin(), est.sorted_values.end());
    return est;
}

EmpiricalProcess::EmpiricalProcess(counting::Sample sample, counting::TheoreticalCdf cdf)
    : sample_(std::move(sample)), cdf_(std::move(cdf)),
      sup_abs_(counting::stochasticity_parameter(sample_, cdf_).lambda) {
    breakpoints_ = sample_.values();
    const auto& jumps = cdf_.jump_points();
    breakpoints_.insert(breakpoints_.end(), jumps.begin(), jumps.end());
    std::sort(breakpoints_.begin(), breakpoints_.end());
    breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()),
                       breakpoints_.end());
}

double EmpiricalProcess::eval(double x) const {
    const double n = static_cast<double>(sample_.size());
    return (static_cast<double>(counting::empirical_count(sample_, x)) - n * cdf_.prob(x)) /
           std::sqrt(n);
}

double EmpiricalProcess::eval_left(double x) const {
    const auto& v = sample_.values();
    const auto below = std::lower_bound(v.begin(), v.end(), x) - v.begin();
    const double n = static_cast<double>(sample_.size());
    return (static_cast<double>(below) - n * cdf_.prob_left(x)) / std::sqrt(n);
}

CovarianceForms covariance_identity(const CovarianceSpec& spec) {
    const std::size_t m = spec.coeffs.size();
    if (m == 0 || spec.thresholds.size() != m)
        throw std::invalid_argument("covariance_identity: coeffs/thresholds must match, m >= 1");
    for (std::size_t i = 0; i < m; ++i) {
        if (!std::isfinite(spec.coeffs[i]) || !std::isfinite(spec.thresholds[i]))
            throw std::invalid_argument("covariance_identity: non-finite spec");
        if (spec.thresholds[i] < 0.0 || spec.thresholds[i] > 1.0)
            throw std::invalid_argument("covariance_identity: thresholds must lie in [0,1]");
        if (i > 0 && !(spec.thresholds[i] > spec.thresholds[i - 1]))
            throw std::invalid_argument("covariance_identity: thresholds strictly increasing");
    }
    const auto& b = spec.coeffs;
    const auto& t = spec.thresholds;

    // integral form: the integrand sum_k b_k (1_{[0,t_k]} - t_k) is constant
    // on each segment between consecutive thresholds.
    const double center = [&] {
        double c = 0.0;
        for (std::size_t k = 0; k < m; ++k) c += b[k] * t[k];
        return c;
    }();
    double integral = 0.0;
    double suffix = 0.0;
    for (std::size_t k = 0; k < m; ++k) suffix += b[k];
    double left_edge = 0.0;
    for (std::size_t k = 0; k <= m; ++k) {
        const double right_edge = (k < m) ? t[k] : 1.0;
        const double value = suffix - center;  // on (left_edge, right_edge)
        integral += value * value * (right_edge - left_edge);
        left_edge = right_edge;
        if (k < m) suffix -= b[k];
    }

    double closed = 0.0;
    for (std::size_t k = 0; k < m; ++k) closed += b[k] * b[k] * t[k] * (1.0 - t[k]);
    for (std::size_t k1 = 0; k1 < m; ++k1)
        for (std::size_t k2 = k1 + 1; k2 < m; ++k2)
            closed += 2.0 * b[k1] * b[k2] * t[k1] * (1.0 - t[k2]);

    double bridge = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const double lo = std::min(t[i], t[j]);
            const double hi = std::max(t[i], t[j]);
            bridge += b[i] * b[j] * lo * (1.0 - hi);
        }

    return {integral, closed, bridge};
}

counting::PiecewiseLinear normalized_cosine(std::size_t segments) {
    if (segments < 8) throw std::invalid_argument("normalized_cosine: needs >= 8 segments");
    counting::PiecewiseLinear f;
    f.xs.resize(segments + 1);
    f.ys.resize(segments + 1);
    for (std::size_t i = 0; i <= segments; ++i) {
        f.xs[i] = static_cast<double>(i) / static_cast<double>(segments);
        f.ys[i] = std::cos(kTwoPi * f.xs[i]);
    }
    f.ys.back() = f.ys.front();  // exact 1-periodicity
    const double mean = f.integral01();
    for (auto& y : f.ys) y -= mean;
    const double scale = 1.0 / std::sqrt(f.integral01_squared());
    for (auto& y : f.ys) y *= scale;
    return f;
}

EmpiricalCdfEstimate fukuyama_clt_probe(const CltProbeConfig& config) {
    if (config.n == 0 || config.num_starts == 0)
        throw std::invalid_argument("clt_probe: n and num_starts must be >= 1");
    if (!(config.a.no_rational_power() || config.assume_no_rational_power))
        throw std::invalid_argument(
            "clt_probe: the base must have no rational power (or be explicitly asserted so)");
    if (std::fabs(config.f.integral01()) > 1e-12)
        throw std::invalid_argument("clt_probe: f must have zero mean (|integral| <= 1e-12)");
    if (std::fabs(config.f.integral01_squared() - 1.0) > 1e-9)
        throw std::invalid_argument("clt_probe: f must have unit second moment (tol 1e-9)");

    sequences::GeometricRealSpec policy;
    policy.ratio = config.a;
    policy.start = mp::RealSpec::rational(mp::Bigint(1), mp::Bigint(2));  // A < 1
    policy.length = config.n;
    policy.output_bits = 64;
    policy.precision_ceiling_bits = config.precision_ceiling_bits;
    const std::int64_t p = sequences::required_precision_bits(policy);
    if (p > config.precision_ceiling_bits)
        throw resource_limit_error("clt_probe: required precision " + std::to_string(p) +
                                   " bits exceeds the ceiling");
    const mp::Fixed ratio(config.a.enclosure(p).lo, p);

    EmpiricalCdfEstimate est;
    est.trials = config.num_starts;
    est.seed = config.seed;
    est.sorted_values.resize(config.num_starts);
    const double root_n = std::sqrt(static_cast<double>(config.n));
    parallel_for(config.num_starts, config.workers, [&](std::uint64_t r) {
        auto gen = rng::Xoshiro256pp::substream(config.seed, r);
        mp::Fixed start(gen.bits(p), p);  // A uniform on [0,1)
        auto terms = sequences::lacunary_orbit(start, ratio, config.n, p, 72, false);
        double sum = 0.0;
        for (const auto& term : terms) sum += config.f(term.to_double());
        est.sorted_values[r] = sum / root_n;
    });
    std::sort(est.sorted_values.begin(), est.sorted_values.end());
    return est;
}

}  // namespace ksp::simulate

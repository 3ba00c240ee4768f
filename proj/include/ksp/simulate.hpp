#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ksp/constants.hpp"
#include "ksp/counting.hpp"
#include "ksp/rng.hpp"

namespace ksp::simulate {

// One-sample Kolmogorov-Smirnov distance between sorted values and a CDF.
double ks_distance(std::span<const double> sorted_values,
                   const std::function<double(double)>& cdf);

struct BridgePath {
    std::vector<double> times;   // includes 0 and 1
    std::vector<double> values;  // exactly 0 at both endpoints
    std::uint64_t seed = 0;
};

// W sampled by independent Gaussian increments on the grid, then
// B(t) = W(t) - t W(1). Deterministic in the seed.
BridgePath sample_bridge(std::span<const double> grid, std::uint64_t seed);

struct EmpiricalCdfEstimate {
    std::vector<double> sorted_values;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;

    double ks_distance_to(const std::function<double(double)>& cdf) const {
        return ks_distance(sorted_values, cdf);
    }
};

// max_{m=1..N-1} |B(m/N)| replicated `trials` times; each path is built once
// on the full grid. Results are independent of the worker count.
EmpiricalCdfEstimate discrete_bridge_max(std::uint64_t N, std::uint64_t trials,
                                         std::uint64_t seed, unsigned workers = 1);

// |sum z - n/2| / sqrt(n) over n fair bits, replicated.
EmpiricalCdfEstimate bernoulli_lambda(std::uint64_t n, std::uint64_t trials, std::uint64_t seed,
                                      unsigned workers = 1);
// Single replication from an arbitrary word source (testable kernel).
double bernoulli_lambda_one(std::uint64_t n, const std::function<std::uint64_t()>& next_word);
// The bits behind one replication, in draw order (for cross-checks).
std::vector<std::uint8_t> bernoulli_bits(std::uint64_t n, rng::Xoshiro256pp& gen);

// G_n(X) = (C_n(X) - C_0(X)) / sqrt(n) as an explicit step description.
class EmpiricalProcess {
  public:
    EmpiricalProcess(counting::Sample sample, counting::TheoreticalCdf cdf);
    double eval(double x) const;
    double eval_left(double x) const;
    // Identical to stochasticity_parameter(...).lambda by construction.
    double sup_abs() const { return sup_abs_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }

  private:
    counting::Sample sample_;
    counting::TheoreticalCdf cdf_;
    std::vector<double> breakpoints_;
    double sup_abs_;
};

struct CovarianceSpec {
    std::vector<double> coeffs;      // b_1..b_m
    std::vector<double> thresholds;  // 0 <= t_1 < ... < t_m <= 1
};

struct CovarianceForms {
    double integral_form;  // exact piecewise integration of (sum b_k I_{[0,t_k]})^2
    double closed_form;    // sum b_k^2 t_k(1-t_k) + 2 sum_{k1<k2} b_k1 b_k2 t_k1 (1-t_k2)
    double bridge_form;    // E(sum b_k B(t_k))^2 from Cov(B(s),B(t)) = s(1-t)
};

CovarianceForms covariance_identity(const CovarianceSpec& spec);

// Piecewise-linear approximation of sqrt(2) cos(2 pi y) on `segments` pieces,
// recentred and rescaled so the mean is exactly 0 and the second moment 1.
counting::PiecewiseLinear normalized_cosine(std::size_t segments);

struct CltProbeConfig {
    counting::PiecewiseLinear f;  // 1-periodic via [0,1] values; f(0) should equal f(1)
    mp::RealSpec a = mp::RealSpec::named(mp::NamedReal::e);
    bool assume_no_rational_power = false;
    std::uint64_t n = 256;
    std::uint64_t num_starts = 1000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::int64_t precision_ceiling_bits = 1'000'000;
};

// Law of (1/sqrt(n)) sum_x f(a^x A) over uniform starts A; the certified-CLT
// hypothesis (zero mean, unit second moment, bounded variation) is checked.
EmpiricalCdfEstimate fukuyama_clt_probe(const CltProbeConfig& config);

}  // namespace ksp::simulate

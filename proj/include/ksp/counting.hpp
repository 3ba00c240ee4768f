#pragma once

#include <cstdint>
#include <vector>

namespace ksp::counting {

// A finite multiset of reals together with its ambient interval. Values are
// stored sorted; they must already be reduced into [lo, hi].
class Sample {
  public:
    Sample(std::vector<double> values, double lo, double hi);

    const std::vector<double>& values() const { return values_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    std::size_t size() const { return values_.size(); }

  private:
    std::vector<double> values_;
    double lo_;
    double hi_;
};

// The hypothesized law C0 is compared against. Continuous uniform, discrete
// uniform on {0..N-1}, Bernoulli, or an arbitrary finite step CDF.
class TheoreticalCdf {
  public:
    static TheoreticalCdf continuous_uniform(double lo, double hi);
    static TheoreticalCdf discrete_uniform(std::uint64_t n_points);
    static TheoreticalCdf bernoulli(double p);
    // points strictly increasing, masses positive and summing to 1.
    static TheoreticalCdf step(std::vector<double> points, std::vector<double> masses);

    double prob(double x) const;       // P(X <= x)
    double prob_left(double x) const;  // P(X < x)
    bool is_continuous() const { return kind_ == Kind::continuous_uniform; }
    const std::vector<double>& jump_points() const { return points_; }
    double support_lo() const;
    double support_hi() const;

  private:
    enum class Kind { continuous_uniform, discrete_uniform, bernoulli, step_function };
    TheoreticalCdf(Kind k) : kind_(k) {}
    Kind kind_;
    double lo_ = 0.0, hi_ = 1.0;        // continuous uniform
    std::uint64_t n_points_ = 0;        // discrete uniform
    double p_ = 0.5;                    // bernoulli
    std::vector<double> points_;        // jump points (discrete kinds)
    std::vector<double> cum_;           // cumulative masses at jump points
};

enum class SupSide { left_limit, right_value };

struct StochasticityReport {
    std::size_t n = 0;
    double sup_deviation = 0.0;  // F_n = sup_X |C_n(X) - C_0(X)|
    double lambda = 0.0;         // F_n / sqrt(n)
    double argsup = 0.0;         // smallest X attaining the sup
    SupSide side = SupSide::right_value;
    double phi_of_lambda = 0.0;
};

// #{m : x_m <= X}; the right-continuous empirical counting function.
std::uint64_t empirical_count(const Sample& sample, double x);

// Exact sup of |C_n - C_0| over the whole line: both one-sided values are
// evaluated at every jump of either curve, which is where a piecewise
// monotone difference attains its extrema.
StochasticityReport stochasticity_parameter(const Sample& sample, const TheoreticalCdf& cdf);

// Closed form max_i max(i/n - x_(i), x_(i) - (i-1)/n) over order statistics;
// the sample must live on [0,1].
double star_discrepancy(const Sample& sample);

// |(1/n) sum_m exp(2 pi i h x_m)| for integer h != 0.
double weyl_sum(const Sample& sample, long long h);

// Piecewise-linear function on [0,1]; breakpoints cover the whole interval.
struct PiecewiseLinear {
    std::vector<double> xs;
    std::vector<double> ys;

    double operator()(double x) const;
    double integral01() const;
    double integral01_squared() const;
    double total_variation() const;
};

struct KoksmaResult {
    double gap;    // |mean f(x_m) - integral of f|
    double bound;  // total variation * star discrepancy
};

KoksmaResult koksma_gap(const Sample& sample, const PiecewiseLinear& f, double total_variation);

}  // namespace ksp::counting

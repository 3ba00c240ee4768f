#pragma once

namespace ksp::distributions {

// Limit distribution of the stochasticity parameter for continuous laws:
// Phi(x) = sum_{k=-inf}^{inf} (-1)^k exp(-2 k^2 x^2), x > 0.
//
// The raw alternating series cancels catastrophically for small x, so below
// crossover_threshold the Jacobi-theta transform
//   Phi(x) = (sqrt(2 pi)/x) * sum_{k>=1} exp(-(2k-1)^2 pi^2 / (8 x^2))
// is used instead. Both series are truncated when the next term drops below
// truncation_tolerance/2, giving a certified absolute error.
struct KolmogorovCdf {
    double truncation_tolerance = 1e-12;
    double crossover_threshold = 1.0;

    double operator()(double x) const;
    double quantile(double p) const;  // bisection on [1e-6, 10]

    // The two evaluation routes, exposed so the overlap region can be checked.
    double direct_series(double x) const;
    double transformed_series(double x) const;
};

double kolmogorov_cdf(double x);
double kolmogorov_quantile(double p);

// CDF of |Z| for Z ~ N(0, sigma^2); zero for x <= 0.
double half_normal_cdf(double x, double sigma);

// Case dispatch for the law-of-the-iterated-logarithm constant of the
// lacunary sequence a^x A mod 1 (Fukuyama's table).
enum class PowerClass {
    integer_two,        // a = 2
    integer_even_ge4,   // even integer a >= 4
    integer_odd_ge3,    // odd integer a >= 3
    no_rational_power,  // a > 1 and a^x irrational for all x >= 1
};

double lil_constant(double a, PowerClass power_class);

}  // namespace ksp::distributions

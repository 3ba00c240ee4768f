#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ksp/constants.hpp"
#include "ksp/mp.hpp"

namespace ksp::contfrac {

struct Convergent {
    mp::Bigint p;
    mp::Bigint q;
};

struct Expansion {
    mp::Bigint a0;                        // floor(k)
    std::vector<mp::Bigint> quotients;    // a_1, a_2, ... all >= 1
    std::vector<Convergent> convergents;  // p_i/q_i starting at p_0/q_0 = a0/1
    bool terminated = false;              // rational input, expansion complete
    bool truncated = false;               // certified precision ran out before max_terms
    std::int64_t source_precision_bits = 0;
};

// Continued fraction of k. Rational inputs run the exact Euclid algorithm and
// terminate; irrational inputs run the Gauss-map iteration on a certified
// dyadic enclosure of k, emitting a quotient only while both enclosure
// endpoints agree on its integer part (then truncated is set).
// precision_bits == 0 picks a default scaled to max_terms.
Expansion expand(const mp::RealSpec& k, std::size_t max_terms, std::int64_t precision_bits = 0);

// Fold the expansion back into the exact rational of its last convergent.
std::pair<mp::Bigint, mp::Bigint> fold(const Expansion& e);

// Gauss-Kuzmin mass log2(1 + 1/(j(j+2))) of partial-quotient value j.
double gauss_kuzmin_mass(std::uint64_t j);

struct FrequencyTable {
    std::uint64_t j_max = 0;
    std::vector<double> empirical;    // index j-1 holds the frequency of value j
    double empirical_overflow = 0.0;  // mass of quotients > j_max
    std::vector<double> theoretical;
    double theoretical_overflow = 0.0;
    std::uint64_t total_quotients = 0;
};

// Pools the partial quotients of one or more expansions (a0 excluded);
// requires at least 1000 quotients in total.
FrequencyTable gauss_kuzmin_frequencies(std::span<const Expansion> expansions,
                                        std::uint64_t j_max);

// Rigorous upper bound on n * D_n^* of {k}, {2k}, ..., {nk} of the classical
// Ostrowski type: 3 * sum of the partial quotients through the first
// denominator exceeding n. For terminated (rational) expansions with n past
// the final denominator q, one full period contributes exactly q*D_q = 1, so
// floor(n/q) is added on top of the partial-block bound.
double discrepancy_bound(const Expansion& e, std::uint64_t n);

// Exact n * D_n^* of {k x}, x = 1..n, via 192-bit fixed-point accumulation.
double scaled_discrepancy_of_multiples(const mp::RealSpec& k, std::uint64_t n);

struct RateTrajectory {
    std::vector<double> r_values;  // n D_n^* / ((log n)(log log n)^{1+eps})
    double max_r = 0.0;
    bool increasing_top_half = false;  // suggests an exceptional k
};

struct RateReport {
    std::vector<std::uint64_t> grid;
    double epsilon = 0.0;
    std::vector<RateTrajectory> per_k;
    std::size_t flagged = 0;  // count of increasing_top_half
};

// Diagnostic for the metric discrepancy rate: almost-everywhere statements
// are not decidable on a finite grid, so this only reports trajectories.
RateReport metric_rate_check(std::span<const mp::RealSpec> k_samples, double epsilon,
                             std::vector<std::uint64_t> n_grid);

}  // namespace ksp::contfrac

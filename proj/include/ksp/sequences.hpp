#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ksp/constants.hpp"
#include "ksp/counting.hpp"
#include "ksp/mp.hpp"

namespace ksp::sequences {

inline constexpr std::int64_t kDefaultPrecisionCeilingBits = 1'000'000;

// k*x + offset reduced mod N for x = 1..n (or 0..n-1 with from_zero).
// The modulus and offset must be rational; the step may be any RealSpec.
struct ArithmeticSpec {
    mp::RealSpec step;
    mp::RealSpec modulus = mp::RealSpec::integer(1);
    std::uint64_t length = 0;
    mp::RealSpec offset = mp::RealSpec::integer(0);
    bool from_zero = false;
};

counting::Sample arithmetic_mod(const ArithmeticSpec& spec);

// Integer geometric progression a^x * A mod N with exact modular arithmetic.
struct GeometricIntSpec {
    std::uint64_t ratio = 2;    // 1 < a < N
    std::uint64_t start = 1;    // A
    std::uint64_t modulus = 0;  // N
    std::uint64_t length = 0;   // n
    bool from_zero = false;
};

std::vector<std::uint64_t> geometric_int_terms(const GeometricIntSpec& spec);
counting::Sample geometric_int_mod(const GeometricIntSpec& spec);

struct PeriodResult {
    std::uint64_t period = 0;     // least T with a^{x+T} A = a^x A for all x >= preperiod
    std::uint64_t preperiod = 0;  // least such x threshold, counting from x = 0 (the start A)
};

PeriodResult multiplicative_period(std::uint64_t a, std::uint64_t A, std::uint64_t N);

// Real geometric (lacunary) sequence a^x * A mod N under the precision policy
//   p = ceil(n log2 a) + max(0, ceil(log2(A/N + 1))) + output_bits + 32.
// The power is carried as a full product (the integer part grows like a^x and
// cannot be reduced away for real a), with the fraction truncated to p bits
// after each multiplication; n truncations amplified by at most a^n stay below
// the 32 guard bits.
struct GeometricRealSpec {
    mp::RealSpec ratio;                   // a > 1
    mp::RealSpec start;                   // A > 0
    mp::RealSpec modulus = mp::RealSpec::integer(1);  // N > 0, rational
    std::uint64_t length = 0;
    std::int64_t output_bits = 64;
    std::int64_t precision_ceiling_bits = kDefaultPrecisionCeilingBits;
    bool from_zero = false;
};

std::int64_t required_precision_bits(const GeometricRealSpec& spec);

// Core iteration: start_over_mod = A/N in [0, 2^k), ratio at working_bits
// fraction bits. Returns fractional parts of a^x A / N, trimmed to keep_bits.
std::vector<mp::Fixed> lacunary_orbit(const mp::Fixed& start_over_mod, const mp::Fixed& ratio,
                                      std::uint64_t n, std::int64_t working_bits,
                                      std::int64_t keep_bits, bool from_zero);

std::vector<mp::Fixed> geometric_real_terms(const GeometricRealSpec& spec);
counting::Sample geometric_real_mod(const GeometricRealSpec& spec);

// n pseudorandom values uniform on [lo, hi), deterministic in the seed.
counting::Sample iid_uniform(std::uint64_t n, double lo, double hi, std::uint64_t seed);

// Occurrences of `block` fully inside the first n base-b digits of A in [0,1).
// Two routes: direct digit-string scan, and the indicator sum
// sum_m 1_{[v/b^l, (v+1)/b^l)}({b^m A}); always equal, and checked.
std::uint64_t digit_block_count(const mp::Fixed& A, std::uint32_t base, const std::string& block,
                                std::uint64_t n);
std::uint64_t digit_block_count_scan(const mp::Fixed& A, std::uint32_t base,
                                     const std::string& block, std::uint64_t n);
std::uint64_t digit_block_count_indicator(const mp::Fixed& A, std::uint32_t base,
                                          const std::string& block, std::uint64_t n);

}  // namespace ksp::sequences

#include "ksp/sequences.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "ksp/errors.hpp"
#include "ksp/rng.hpp"

namespace ksp::sequences {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// log2 of a RealSpec, within +-1; only feeds the precision policy.
double approx_log2(const mp::RealSpec& r) {
    if (r.is_rational()) {
        auto [num, den] = r.as_ratio();
        if (num.is_zero()) return -1e9;
        return static_cast<double>(num.bit_length()) - static_cast<double>(den.bit_length());
    }
    return std::log2(r.to_double());
}

}  // namespace

counting::Sample arithmetic_mod(const ArithmeticSpec& spec) {
    if (spec.length == 0) throw std::invalid_argument("arithmetic_mod: length must be >= 1");
    if (!spec.modulus.is_rational())
        throw std::invalid_argument("arithmetic_mod: modulus must be rational");
    auto [mod_num, mod_den] = spec.modulus.as_ratio();
    if (mod_num.sign() <= 0) throw std::invalid_argument("arithmetic_mod: modulus must be > 0");
    const double N = spec.modulus.to_double();

    std::vector<double> out;
    out.reserve(spec.length);
    const std::uint64_t x0 = spec.from_zero ? 0 : 1;

    if (spec.step.is_rational() && spec.offset.is_rational()) {
        // Exact path: v_x = offset + k*x as a fraction over L = od*kq, reduced
        // modulo N by exact integer arithmetic.
        auto [kp, kq] = spec.step.as_ratio();
        auto [op, od] = spec.offset.as_ratio();
        mp::Bigint L = od * kq;
        mp::Bigint period = mod_num * L;                       // N in units of 1/(L*mod_den)
        mp::Bigint increment = (kp * od * mod_den) % period;   // k in the same units
        mp::Bigint acc = (op * kq * mod_den + increment * static_cast<unsigned long>(x0)) % period;
        const double scale = 1.0 / (L.to_double() * mod_den.to_double());
        for (std::uint64_t i = 0; i < spec.length; ++i) {
            out.push_back(acc.to_double() * scale);
            acc += increment;
            if (acc >= period) acc -= period;
        }
    } else {
        // Fixed-point path: accumulate frac(k/N) mod 1 at 192 bits; addition
        // modulo one is exact, so only the initial truncation matters.
        constexpr std::int64_t kBits = 192;
        const std::int64_t guard = kBits + 64;
        mp::Enclosure k_enc = spec.step.enclosure(guard);
        mp::Bigint delta_mant = ((k_enc.lo * mod_den) / mod_num) >> (guard - kBits);
        mp::Fixed delta = mp::Fixed(delta_mant, kBits).frac();
        mp::Fixed u(mp::Bigint(0), kBits);
        if (!spec.offset.is_rational() || spec.offset.as_ratio().first.sign() != 0) {
            mp::Enclosure o_enc = spec.offset.enclosure(guard);
            mp::Bigint u_mant = ((o_enc.lo * mod_den) / mod_num) >> (guard - kBits);
            u = mp::Fixed(u_mant, kBits).frac();
        }
        for (std::uint64_t i = 0; i < x0; ++i) u = u.add(delta).frac();
        for (std::uint64_t i = 0; i < spec.length; ++i) {
            out.push_back(u.to_double() * N);
            u = u.add(delta).frac();
        }
    }
    return counting::Sample(std::move(out), 0.0, N);
}

std::vector<std::uint64_t> geometric_int_terms(const GeometricIntSpec& spec) {
    if (spec.length == 0) throw std::invalid_argument("geometric_int: length must be >= 1");
    if (spec.modulus < 2 || spec.ratio <= 1 || spec.ratio >= spec.modulus)
        throw std::invalid_argument("geometric_int: requires 1 < a < N");
    std::vector<std::uint64_t> terms;
    terms.reserve(spec.length);
    std::uint64_t t = spec.start % spec.modulus;
    if (!spec.from_zero) t = mulmod(t, spec.ratio, spec.modulus);
    for (std::uint64_t i = 0; i < spec.length; ++i) {
        terms.push_back(t);
        t = mulmod(t, spec.ratio, spec.modulus);
    }
    return terms;
}

counting::Sample geometric_int_mod(const GeometricIntSpec& spec) {
    auto terms = geometric_int_terms(spec);
    std::vector<double> vals(terms.begin(), terms.end());
    return counting::Sample(std::move(vals), 0.0, static_cast<double>(spec.modulus));
}

PeriodResult multiplicative_period(std::uint64_t a, std::uint64_t A, std::uint64_t N) {
    if (N < 2 || a <= 1)
        throw std::invalid_argument("multiplicative_period: requires a > 1 and N >= 2");
    std::unordered_map<std::uint64_t, std::uint64_t> first_seen;
    first_seen.reserve(64);
    std::uint64_t t = A % N;
    std::uint64_t step = 0;
    while (true) {
        auto [it, inserted] = first_seen.emplace(t, step);
        if (!inserted) return {step - it->second, it->second};
        t = mulmod(t, a, N);
        ++step;
    }
}

std::int64_t required_precision_bits(const GeometricRealSpec& spec) {
    const double log2_a = approx_log2(spec.ratio);
    const double log2_start_term =
        std::log2(spec.start.to_double() / spec.modulus.to_double() + 1.0);
    const double p = std::ceil(static_cast<double>(spec.length) * log2_a) +
                     std::max(0.0, std::ceil(log2_start_term)) +
                     static_cast<double>(spec.output_bits) + 32.0;
    if (!(p < 9e18)) return INT64_MAX;
    return static_cast<std::int64_t>(p);
}

std::vector<mp::Fixed> lacunary_orbit(const mp::Fixed& start_over_mod, const mp::Fixed& ratio,
                                      std::uint64_t n, std::int64_t working_bits,
                                      std::int64_t keep_bits, bool from_zero) {
    std::vector<mp::Fixed> out;
    out.reserve(n);
    mp::Fixed t = start_over_mod.rescaled(working_bits);
    if (from_zero) {
        out.push_back(t.frac().rescaled(keep_bits));
        if (out.size() == n) return out;
    }
    for (std::uint64_t i = out.size(); i < n; ++i) {
        t = t.mul(ratio, working_bits);
        out.push_back(t.frac().rescaled(keep_bits));
    }
    return out;
}

namespace {

// Shared driver: iterates t = a^x A at p fraction bits (the integer part is
// carried in full, since for real a the product cannot be reduced modulo N)
// and yields the exact dyadic residue (t mod N) * 2^p / N_den per term. For
// integer specs every step is exact, so the residues are exact integers.
struct RealOrbit {
    std::vector<mp::Bigint> numerators;  // u_x = numerators[x] / denominator in [0,1)
    mp::Bigint denominator;              // N_num * 2^p
    mp::Bigint mod_den;
    std::int64_t precision_bits = 0;
};

RealOrbit geometric_real_orbit(const GeometricRealSpec& spec) {
    if (spec.length == 0) throw std::invalid_argument("geometric_real: length must be >= 1");
    if (!spec.modulus.is_rational())
        throw std::invalid_argument("geometric_real: modulus must be rational");
    auto [mod_num, mod_den] = spec.modulus.as_ratio();
    if (mod_num.sign() <= 0) throw std::invalid_argument("geometric_real: modulus must be > 0");
    if (spec.ratio.is_rational()) {
        auto [rn, rd] = spec.ratio.as_ratio();
        if (rn <= rd) throw std::invalid_argument("geometric_real: ratio must be > 1");
    }
    if (spec.start.is_rational() && spec.start.as_ratio().first.sign() <= 0)
        throw std::invalid_argument("geometric_real: start must be > 0");

    const std::int64_t p = required_precision_bits(spec);
    if (p > spec.precision_ceiling_bits)
        throw resource_limit_error("geometric_real: required precision " + std::to_string(p) +
                                   " bits exceeds the ceiling of " +
                                   std::to_string(spec.precision_ceiling_bits) +
                                   " (raise the ceiling to proceed)");

    const mp::Fixed ratio(spec.ratio.enclosure(p).lo, p);
    mp::Fixed t = [&]() {
        if (spec.start.is_rational()) {
            auto [sn, sd] = spec.start.as_ratio();
            return mp::Fixed::from_ratio(sn, sd, p);
        }
        return mp::Fixed(spec.start.enclosure(p).lo, p);
    }();

    RealOrbit orbit;
    orbit.precision_bits = p;
    orbit.mod_den = mod_den;
    orbit.denominator = mod_num << static_cast<std::uint64_t>(p);
    orbit.numerators.reserve(spec.length);

    // Integer ratios admit an exact mod-N reduction every step (a * kN is a
    // multiple of N only when a is an integer), which keeps the state at a
    // constant size instead of letting the integer part grow like a^x.
    std::uint64_t int_ratio = 0;
    if (spec.ratio.is_rational()) {
        auto [rn, rd] = spec.ratio.as_ratio();
        if (rd == mp::Bigint(1) && rn.fits_u64()) int_ratio = rn.to_u64();
    }
    if (int_ratio != 0) {
        mp::Bigint residue = (t.mantissa() * mod_den) % orbit.denominator;
        auto emit = [&]() { orbit.numerators.push_back(residue); };
        if (spec.from_zero) emit();
        while (orbit.numerators.size() < spec.length) {
            residue = (residue * static_cast<unsigned long>(int_ratio)) % orbit.denominator;
            emit();
        }
        return orbit;
    }

    auto emit = [&]() { orbit.numerators.push_back((t.mantissa() * mod_den) % orbit.denominator); };
    if (spec.from_zero) emit();
    while (orbit.numerators.size() < spec.length) {
        t = t.mul(ratio, p);
        emit();
    }
    return orbit;
}

}  // namespace

std::vector<mp::Fixed> geometric_real_terms(const GeometricRealSpec& spec) {
    RealOrbit orbit = geometric_real_orbit(spec);
    const std::int64_t keep = std::min<std::int64_t>(orbit.precision_bits, spec.output_bits + 16);
    std::vector<mp::Fixed> terms;
    terms.reserve(orbit.numerators.size());
    for (const auto& num : orbit.numerators)
        terms.push_back(mp::Fixed::from_ratio(num, orbit.denominator, keep));
    return terms;
}

counting::Sample geometric_real_mod(const GeometricRealSpec& spec) {
    RealOrbit orbit = geometric_real_orbit(spec);
    // value = (u_x) * N = numerator / (mod_den * 2^p), exact for integer specs
    const double den = orbit.mod_den.to_double();
    std::vector<double> vals;
    vals.reserve(orbit.numerators.size());
    for (const auto& num : orbit.numerators) {
        auto [d, e] = num.to_double_2exp();
        vals.push_back(std::ldexp(d, static_cast<int>(e - orbit.precision_bits)) / den);
    }
    const double N = spec.modulus.to_double();
    return counting::Sample(std::move(vals), 0.0, N);
}

counting::Sample iid_uniform(std::uint64_t n, double lo, double hi, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("iid_uniform: n must be >= 1");
    if (!(lo < hi)) throw std::invalid_argument("iid_uniform: requires lo < hi");
    auto rng = rng::Xoshiro256pp::substream(seed, 0);
    std::vector<double> vals;
    vals.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) vals.push_back(lo + rng.uniform01() * (hi - lo));
    return counting::Sample(std::move(vals), lo, hi);
}

namespace {

int digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
    return -1;
}

void check_digit_args(const mp::Fixed& A, std::uint32_t base, const std::string& block,
                      std::uint64_t n) {
    if (base < 2 || base > 36) throw std::invalid_argument("digit_block_count: base in [2,36]");
    if (block.empty()) throw std::invalid_argument("digit_block_count: empty block");
    if (n == 0) throw std::invalid_argument("digit_block_count: n must be >= 1");
    for (char c : block) {
        const int d = digit_value(c);
        if (d < 0 || static_cast<std::uint32_t>(d) >= base)
            throw std::invalid_argument("digit_block_count: block digit out of range for base");
    }
    if (!A.floor().is_zero()) throw std::invalid_argument("digit_block_count: A must be in [0,1)");
    const double needed = static_cast<double>(n) * std::log2(static_cast<double>(base)) + 64.0;
    if (static_cast<double>(A.frac_bits()) < needed)
        throw resource_limit_error("digit_block_count: A needs >= " +
                                   std::to_string(static_cast<std::int64_t>(needed)) +
                                   " fraction bits");
}

}  // namespace

std::uint64_t digit_block_count_scan(const mp::Fixed& A, std::uint32_t base,
                                     const std::string& block, std::uint64_t n) {
    check_digit_args(A, base, block, n);
    const std::uint64_t l = block.size();
    if (l > n) return 0;
    std::vector<int> digits;
    digits.reserve(n);
    mp::Fixed y = A.frac();
    for (std::uint64_t i = 0; i < n; ++i) {
        y = y.mul_u64(base);  // exact: integer multiplier
        digits.push_back(static_cast<int>(y.floor().to_u64()));
        y = y.frac();
    }
    std::vector<int> target;
    for (char c : block) target.push_back(digit_value(c));
    std::uint64_t count = 0;
    for (std::uint64_t start = 0; start + l <= n; ++start) {
        bool match = true;
        for (std::uint64_t j = 0; j < l && match; ++j) match = digits[start + j] == target[j];
        if (match) ++count;
    }
    return count;
}

std::uint64_t digit_block_count_indicator(const mp::Fixed& A, std::uint32_t base,
                                          const std::string& block, std::uint64_t n) {
    check_digit_args(A, base, block, n);
    const std::uint64_t l = block.size();
    if (l > n) return 0;
    mp::Bigint v(0);
    for (char c : block) v = v * static_cast<unsigned long>(base) +
                             mp::Bigint(static_cast<long>(digit_value(c)));
    const mp::Bigint b_pow_l = mp::Bigint::pow(mp::Bigint(static_cast<long>(base)),
                                               static_cast<unsigned long>(l));
    const std::uint64_t fb = static_cast<std::uint64_t>(A.frac_bits());
    // 1_{[v/b^l, (v+1)/b^l)}(y) decided exactly: y*b^l compared against
    // [v, v+1) scaled by 2^fb, all in integers.
    const mp::Bigint lo_bound = v << fb;
    const mp::Bigint hi_bound = (v + mp::Bigint(1)) << fb;
    std::uint64_t count = 0;
    mp::Fixed y = A.frac();
    for (std::uint64_t m = 0; m + l <= n; ++m) {
        mp::Bigint scaled = y.mantissa() * b_pow_l;
        if (lo_bound <= scaled && scaled < hi_bound) ++count;
        y = y.mul_u64(base).frac();  // {b^{m+1} A}, exact
    }
    return count;
}

std::uint64_t digit_block_count(const mp::Fixed& A, std::uint32_t base, const std::string& block,
                                std::uint64_t n) {
    const std::uint64_t scan = digit_block_count_scan(A, base, block, n);
    const std::uint64_t indicator = digit_block_count_indicator(A, base, block, n);
    if (scan != indicator)
        throw std::logic_error("digit_block_count: scan and indicator routes disagree");
    return scan;
}

}  // namespace ksp::sequences

#pragma once

#include <gmp.h>

#include <cstdint>
#include <span>
#include <string>
#include <utility>

namespace ksp::mp {

// RAII wrapper around GMP's mpz_t with the handful of operations the
// project needs. Nonnegative in almost all uses; sign is supported.
class Bigint {
  public:
    Bigint() { mpz_init(z_); }
    Bigint(long v) { mpz_init_set_si(z_, v); }                    // NOLINT: implicit by design
    Bigint(unsigned long v) { mpz_init_set_ui(z_, v); }           // NOLINT
    Bigint(int v) : Bigint(static_cast<long>(v)) {}               // NOLINT
    explicit Bigint(const std::string& decimal);

    Bigint(const Bigint& o) { mpz_init_set(z_, o.z_); }
    Bigint(Bigint&& o) noexcept {
        mpz_init(z_);
        mpz_swap(z_, o.z_);
    }
    Bigint& operator=(const Bigint& o) {
        if (this != &o) mpz_set(z_, o.z_);
        return *this;
    }
    Bigint& operator=(Bigint&& o) noexcept {
        mpz_swap(z_, o.z_);
        return *this;
    }
    ~Bigint() { mpz_clear(z_); }

    static Bigint from_words(std::span<const std::uint64_t> little_endian);
    static Bigint pow2(std::uint64_t k);  // 2^k
    static Bigint pow(const Bigint& base, unsigned long exp);

    bool is_zero() const { return mpz_sgn(z_) == 0; }
    int sign() const { return mpz_sgn(z_); }
    std::size_t bit_length() const { return is_zero() ? 0 : mpz_sizeinbase(z_, 2); }
    bool fits_u64() const;
    std::uint64_t to_u64() const;
    double to_double() const { return mpz_get_d(z_); }
    // mantissa in [0.5, 1) and exponent with value = mantissa * 2^exp; exact for zero.
    std::pair<double, long> to_double_2exp() const;
    std::string str() const;

    friend Bigint operator+(const Bigint& a, const Bigint& b);
    friend Bigint operator-(const Bigint& a, const Bigint& b);
    friend Bigint operator*(const Bigint& a, const Bigint& b);
    friend Bigint operator*(const Bigint& a, unsigned long b);
    friend Bigint operator<<(const Bigint& a, std::uint64_t k);
    friend Bigint operator>>(const Bigint& a, std::uint64_t k);  // floor
    Bigint& operator+=(const Bigint& b) {
        mpz_add(z_, z_, b.z_);
        return *this;
    }
    Bigint& operator-=(const Bigint& b) {
        mpz_sub(z_, z_, b.z_);
        return *this;
    }
    Bigint& operator*=(const Bigint& b) {
        mpz_mul(z_, z_, b.z_);
        return *this;
    }

    // Floor division; remainder has the divisor's sign (nonnegative for our uses).
    static std::pair<Bigint, Bigint> divmod(const Bigint& num, const Bigint& den);
    friend Bigint operator/(const Bigint& a, const Bigint& b);
    friend Bigint operator%(const Bigint& a, const Bigint& b);

    Bigint isqrt() const;  // floor(sqrt), requires nonnegative
    static Bigint gcd(const Bigint& a, const Bigint& b);

    int compare(const Bigint& o) const { return mpz_cmp(z_, o.z_); }
    friend bool operator==(const Bigint& a, const Bigint& b) { return a.compare(b) == 0; }
    friend bool operator!=(const Bigint& a, const Bigint& b) { return a.compare(b) != 0; }
    friend bool operator<(const Bigint& a, const Bigint& b) { return a.compare(b) < 0; }
    friend bool operator<=(const Bigint& a, const Bigint& b) { return a.compare(b) <= 0; }
    friend bool operator>(const Bigint& a, const Bigint& b) { return a.compare(b) > 0; }
    friend bool operator>=(const Bigint& a, const Bigint& b) { return a.compare(b) >= 0; }

    mpz_srcptr raw() const { return z_; }
    mpz_ptr raw() { return z_; }

  private:
    mpz_t z_;
};

// Nonnegative fixed-point real: value = mantissa / 2^frac_bits.
// All rounding is truncation toward zero, so a Fixed built from a value v
// satisfies value() <= v < value() + 2^-frac_bits when built exactly enough.
class Fixed {
  public:
    Fixed() : mant_(), frac_bits_(0) {}
    Fixed(Bigint mantissa, std::int64_t frac_bits)
        : mant_(std::move(mantissa)), frac_bits_(frac_bits) {}

    static Fixed from_integer(std::uint64_t v, std::int64_t frac_bits);
    // floor(num/den * 2^frac_bits); den > 0, num >= 0.
    static Fixed from_ratio(const Bigint& num, const Bigint& den, std::int64_t frac_bits);

    const Bigint& mantissa() const { return mant_; }
    std::int64_t frac_bits() const { return frac_bits_; }
    bool is_zero() const { return mant_.is_zero(); }

    // Truncating multiply: floor(a*b * 2^out_frac_bits).
    Fixed mul(const Fixed& other, std::int64_t out_frac_bits) const;
    Fixed mul_u64(std::uint64_t m) const;
    Fixed add(const Fixed& other) const;
    Fixed sub(const Fixed& other) const;  // requires *this >= other
    // Change precision; truncates when reducing, exact when extending.
    Fixed rescaled(std::int64_t frac_bits) const;

    Bigint floor() const { return mant_ >> static_cast<std::uint64_t>(frac_bits_); }
    Fixed frac() const;  // fractional part, exact

    int compare(const Fixed& other) const;
    friend bool operator<(const Fixed& a, const Fixed& b) { return a.compare(b) < 0; }
    friend bool operator<=(const Fixed& a, const Fixed& b) { return a.compare(b) <= 0; }
    friend bool operator==(const Fixed& a, const Fixed& b) { return a.compare(b) == 0; }

    double to_double() const;

  private:
    Bigint mant_;
    std::int64_t frac_bits_;
};

}  // namespace ksp::mp

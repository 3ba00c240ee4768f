#include "ksp/mp.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

namespace ksp::mp {

Bigint::Bigint(const std::string& decimal) {
    if (mpz_init_set_str(z_, decimal.c_str(), 10) != 0) {
        mpz_clear(z_);
        throw std::invalid_argument("not a decimal integer: '" + decimal + "'");
    }
}

Bigint Bigint::from_words(std::span<const std::uint64_t> little_endian) {
    Bigint r;
    if (!little_endian.empty()) {
        mpz_import(r.z_, little_endian.size(), -1 /*LSW first*/, sizeof(std::uint64_t),
                   0 /*native endian*/, 0, little_endian.data());
    }
    return r;
}

Bigint Bigint::pow2(std::uint64_t k) {
    Bigint r;
    mpz_setbit(r.z_, k);
    return r;
}

Bigint Bigint::pow(const Bigint& base, unsigned long exp) {
    Bigint r;
    mpz_pow_ui(r.z_, base.z_, exp);
    return r;
}

bool Bigint::fits_u64() const {
    return mpz_sgn(z_) >= 0 && mpz_sizeinbase(z_, 2) <= 64;
}

std::uint64_t Bigint::to_u64() const {
    if (!fits_u64()) throw std::overflow_error("Bigint does not fit in uint64");
    std::uint64_t out = 0;
    size_t count = 0;
    mpz_export(&out, &count, -1, sizeof(std::uint64_t), 0, 0, z_);
    return out;
}

std::pair<double, long> Bigint::to_double_2exp() const {
    long exp = 0;
    double d = mpz_get_d_2exp(&exp, z_);
    return {d, exp};
}

std::string Bigint::str() const {
    char* s = mpz_get_str(nullptr, 10, z_);
    std::string out(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, std::strlen(s) + 1);
    return out;
}

Bigint operator+(const Bigint& a, const Bigint& b) {
    Bigint r;
    mpz_add(r.z_, a.z_, b.z_);
    return r;
}

Bigint operator-(const Bigint& a, const Bigint& b) {
    Bigint r;
    mpz_sub(r.z_, a.z_, b.z_);
    return r;
}

Bigint operator*(const Bigint& a, const Bigint& b) {
    Bigint r;
    mpz_mul(r.z_, a.z_, b.z_);
    return r;
}

Bigint operator*(const Bigint& a, unsigned long b) {
    Bigint r;
    mpz_mul_ui(r.z_, a.z_, b);
    return r;
}

Bigint operator<<(const Bigint& a, std::uint64_t k) {
    Bigint r;
    mpz_mul_2exp(r.z_, a.z_, k);
    return r;
}

Bigint operator>>(const Bigint& a, std::uint64_t k) {
    Bigint r;
    mpz_fdiv_q_2exp(r.z_, a.z_, k);
    return r;
}

std::pair<Bigint, Bigint> Bigint::divmod(const Bigint& num, const Bigint& den) {
    if (den.is_zero()) throw std::invalid_argument("division by zero");
    Bigint q, r;
    mpz_fdiv_qr(q.z_, r.z_, num.z_, den.z_);
    return {std::move(q), std::move(r)};
}

Bigint operator/(const Bigint& a, const Bigint& b) {
    if (b.is_zero()) throw std::invalid_argument("division by zero");
    Bigint r;
    mpz_fdiv_q(r.z_, a.z_, b.z_);
    return r;
}

Bigint operator%(const Bigint& a, const Bigint& b) {
    if (b.is_zero()) throw std::invalid_argument("division by zero");
    Bigint r;
    mpz_fdiv_r(r.z_, a.z_, b.z_);
    return r;
}

Bigint Bigint::isqrt() const {
    if (sign() < 0) throw std::invalid_argument("isqrt of negative value");
    Bigint r;
    mpz_sqrt(r.z_, z_);
    return r;
}

Bigint Bigint::gcd(const Bigint& a, const Bigint& b) {
    Bigint r;
    mpz_gcd(r.z_, a.z_, b.z_);
    return r;
}

Fixed Fixed::from_integer(std::uint64_t v, std::int64_t frac_bits) {
    Bigint m = Bigint::from_words(std::span<const std::uint64_t>(&v, 1));
    return Fixed(m << static_cast<std::uint64_t>(frac_bits), frac_bits);
}

Fixed Fixed::from_ratio(const Bigint& num, const Bigint& den, std::int64_t frac_bits) {
    if (den.sign() <= 0) throw std::invalid_argument("from_ratio: denominator must be > 0");
    if (num.sign() < 0) throw std::invalid_argument("from_ratio: negative value");
    return Fixed((num << static_cast<std::uint64_t>(frac_bits)) / den, frac_bits);
}

Fixed Fixed::mul(const Fixed& other, std::int64_t out_frac_bits) const {
    const std::int64_t total = frac_bits_ + other.frac_bits_;
    if (out_frac_bits > total)
        throw std::invalid_argument("mul: requested precision exceeds operand precision");
    Bigint prod = mant_ * other.mant_;
    return Fixed(prod >> static_cast<std::uint64_t>(total - out_frac_bits), out_frac_bits);
}

Fixed Fixed::mul_u64(std::uint64_t m) const {
    Bigint factor = Bigint::from_words(std::span<const std::uint64_t>(&m, 1));
    return Fixed(mant_ * factor, frac_bits_);
}

Fixed Fixed::add(const Fixed& other) const {
    const std::int64_t fb = std::max(frac_bits_, other.frac_bits_);
    Bigint a = mant_ << static_cast<std::uint64_t>(fb - frac_bits_);
    Bigint b = other.mant_ << static_cast<std::uint64_t>(fb - other.frac_bits_);
    return Fixed(a + b, fb);
}

Fixed Fixed::sub(const Fixed& other) const {
    const std::int64_t fb = std::max(frac_bits_, other.frac_bits_);
    Bigint a = mant_ << static_cast<std::uint64_t>(fb - frac_bits_);
    Bigint b = other.mant_ << static_cast<std::uint64_t>(fb - other.frac_bits_);
    if (a < b) throw std::invalid_argument("Fixed::sub would go negative");
    return Fixed(a - b, fb);
}

Fixed Fixed::rescaled(std::int64_t frac_bits) const {
    if (frac_bits == frac_bits_) return *this;
    if (frac_bits > frac_bits_)
        return Fixed(mant_ << static_cast<std::uint64_t>(frac_bits - frac_bits_), frac_bits);
    return Fixed(mant_ >> static_cast<std::uint64_t>(frac_bits_ - frac_bits), frac_bits);
}

Fixed Fixed::frac() const {
    Bigint r;
    mpz_fdiv_r_2exp(r.raw(), mant_.raw(), static_cast<mp_bitcnt_t>(frac_bits_));
    return Fixed(std::move(r), frac_bits_);
}

int Fixed::compare(const Fixed& other) const {
    const std::int64_t fb = std::max(frac_bits_, other.frac_bits_);
    Bigint a = mant_ << static_cast<std::uint64_t>(fb - frac_bits_);
    Bigint b = other.mant_ << static_cast<std::uint64_t>(fb - other.frac_bits_);
    return a.compare(b);
}

double Fixed::to_double() const {
    auto [d, exp] = mant_.to_double_2exp();
    return std::ldexp(d, static_cast<int>(exp - frac_bits_));
}

}  // namespace ksp::mp

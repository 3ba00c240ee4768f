#include "ksp/constants.hpp"

#include <mpfr.h>

#include <cctype>
#include <stdexcept>

namespace ksp::mp {

namespace {

// e and pi via MPFR with directed rounding: round-down and round-up passes
// bracket the true value, so the integer enclosure is certified.
Enclosure mpfr_enclosure(NamedReal which, std::int64_t frac_bits) {
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(frac_bits + 16);
    mpfr_t lo, hi;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    if (which == NamedReal::pi) {
        mpfr_const_pi(lo, MPFR_RNDD);
        mpfr_const_pi(hi, MPFR_RNDU);
    } else {
        mpfr_set_ui(lo, 1, MPFR_RNDN);
        mpfr_set_ui(hi, 1, MPFR_RNDN);
        mpfr_exp(lo, lo, MPFR_RNDD);
        mpfr_exp(hi, hi, MPFR_RNDU);
    }
    mpfr_mul_2ui(lo, lo, static_cast<unsigned long>(frac_bits), MPFR_RNDD);
    mpfr_mul_2ui(hi, hi, static_cast<unsigned long>(frac_bits), MPFR_RNDU);
    Enclosure enc{Bigint(), Bigint(), frac_bits};
    mpfr_get_z(enc.lo.raw(), lo, MPFR_RNDD);
    mpfr_get_z(enc.hi.raw(), hi, MPFR_RNDU);
    mpfr_clear(lo);
    mpfr_clear(hi);
    return enc;
}

bool looks_numeric(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.' && c != '/' && c != '-')
            return false;
    return true;
}

}  // namespace

Enclosure named_real_enclosure(NamedReal which, std::int64_t frac_bits) {
    if (frac_bits < 1) throw std::invalid_argument("enclosure precision must be >= 1 bit");
    const auto fb = static_cast<std::uint64_t>(frac_bits);
    switch (which) {
        case NamedReal::sqrt2: {
            // floor(sqrt(2 * 4^fb)) = floor(sqrt2 * 2^fb); 2*4^fb is never a square.
            Bigint lo = (Bigint(2) << (2 * fb)).isqrt();
            return Enclosure{lo, lo + Bigint(1), frac_bits};
        }
        case NamedReal::phi: {
            Bigint s = (Bigint(5) << (2 * fb)).isqrt();
            Bigint lo = (s + Bigint::pow2(fb)) >> 1;
            return Enclosure{lo, lo + Bigint(1), frac_bits};
        }
        case NamedReal::e:
        case NamedReal::pi:
            return mpfr_enclosure(which, frac_bits);
    }
    throw std::logic_error("unreachable");
}

RealSpec RealSpec::rational(Bigint num, Bigint den) {
    if (den.sign() <= 0) throw std::invalid_argument("rational: denominator must be > 0");
    if (num.sign() < 0) throw std::invalid_argument("rational: negative values unsupported");
    Bigint g = Bigint::gcd(num, den);
    if (!g.is_zero() && g != Bigint(1)) {
        num = num / g;
        den = den / g;
    }
    if (num.is_zero()) den = Bigint(1);
    return RealSpec(Ratio{std::move(num), std::move(den)});
}

std::optional<RealSpec> RealSpec::parse(const std::string& text) {
    if (text == "e") return named(NamedReal::e);
    if (text == "pi") return named(NamedReal::pi);
    if (text == "sqrt2") return named(NamedReal::sqrt2);
    if (text == "phi") return named(NamedReal::phi);
    if (!looks_numeric(text)) return std::nullopt;
    try {
        if (auto slash = text.find('/'); slash != std::string::npos) {
            Bigint num(text.substr(0, slash));
            Bigint den(text.substr(slash + 1));
            return rational(std::move(num), std::move(den));
        }
        if (auto dot = text.find('.'); dot != std::string::npos) {
            std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            if (digits.empty()) return std::nullopt;
            const auto places = text.size() - dot - 1;
            Bigint den = Bigint::pow(Bigint(10), static_cast<unsigned long>(places));
            return rational(Bigint(digits), std::move(den));
        }
        return rational(Bigint(text), Bigint(1));
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::optional<NamedReal> RealSpec::named_value() const {
    if (const auto* n = std::get_if<NamedReal>(&value_)) return *n;
    return std::nullopt;
}

std::pair<Bigint, Bigint> RealSpec::as_ratio() const {
    const auto* r = std::get_if<Ratio>(&value_);
    if (!r) throw std::logic_error("as_ratio on a non-rational RealSpec");
    return {r->num, r->den};
}

bool RealSpec::no_rational_power() const {
    if (const auto* n = std::get_if<NamedReal>(&value_)) {
        switch (*n) {
            case NamedReal::e:
            case NamedReal::pi:
            case NamedReal::phi:  // phi^x = F_x*phi + F_{x-1}, irrational for all x >= 1
                return true;
            case NamedReal::sqrt2:
                return false;
        }
    }
    return false;
}

Enclosure RealSpec::enclosure(std::int64_t frac_bits) const {
    if (const auto* n = std::get_if<NamedReal>(&value_))
        return named_real_enclosure(*n, frac_bits);
    const auto& r = std::get<Ratio>(value_);
    auto [q, rem] = Bigint::divmod(r.num << static_cast<std::uint64_t>(frac_bits), r.den);
    Bigint hi = rem.is_zero() ? q : q + Bigint(1);
    return Enclosure{std::move(q), std::move(hi), frac_bits};
}

Fixed RealSpec::lower_bound(std::int64_t frac_bits) const {
    return Fixed(enclosure(frac_bits).lo, frac_bits);
}

double RealSpec::to_double() const {
    return lower_bound(128).to_double();
}

std::int64_t RealSpec::integer_bits() const {
    if (const auto* r = std::get_if<Ratio>(&value_)) {
        Bigint q = r->num / r->den;
        return static_cast<std::int64_t>(q.bit_length());
    }
    return 2;  // all named constants are below 4
}

std::string RealSpec::text() const {
    if (const auto* n = std::get_if<NamedReal>(&value_)) {
        switch (*n) {
            case NamedReal::sqrt2: return "sqrt2";
            case NamedReal::phi: return "phi";
            case NamedReal::e: return "e";
            case NamedReal::pi: return "pi";
        }
    }
    const auto& r = std::get<Ratio>(value_);
    if (r.den == Bigint(1)) return r.num.str();
    return r.num.str() + "/" + r.den.str();
}

}  // namespace ksp::mp

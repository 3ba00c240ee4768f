#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "ksp/mp.hpp"

namespace ksp::mp {

enum class NamedReal { sqrt2, phi, e, pi };

// Certified dyadic enclosure lo/2^fb <= x <= hi/2^fb with hi - lo <= 2.
struct Enclosure {
    Bigint lo;
    Bigint hi;
    std::int64_t frac_bits;
};

Enclosure named_real_enclosure(NamedReal which, std::int64_t frac_bits);

// A real-valued parameter given symbolically: a named constant, an exact
// rational, or a decimal literal. Materializable at any precision, so the
// consumer (not the parser) decides how many bits it needs.
class RealSpec {
  public:
    RealSpec() : value_(Ratio{Bigint(0), Bigint(1)}) {}  // the rational 0
    static RealSpec named(NamedReal n) { return RealSpec(n); }
    static RealSpec rational(Bigint num, Bigint den);  // den > 0, reduced on construction
    static RealSpec integer(std::int64_t v) { return rational(Bigint(static_cast<long>(v)), 1); }
    // Accepts "e", "pi", "sqrt2", "phi", "p/q", integer and decimal literals.
    static std::optional<RealSpec> parse(const std::string& text);

    bool is_rational() const { return std::holds_alternative<Ratio>(value_); }
    bool is_named() const { return std::holds_alternative<NamedReal>(value_); }
    std::optional<NamedReal> named_value() const;
    // Only valid for rational specs.
    std::pair<Bigint, Bigint> as_ratio() const;

    // No positive integer power of the value is rational. True for e, pi and
    // the golden ratio; false for sqrt2 and every rational.
    bool no_rational_power() const;

    Enclosure enclosure(std::int64_t frac_bits) const;
    Fixed lower_bound(std::int64_t frac_bits) const;  // floor to frac_bits
    double to_double() const;
    // Bits of the integer part, >= 0; used by precision policies.
    std::int64_t integer_bits() const;
    std::string text() const;  // canonical form for metadata

  private:
    struct Ratio {
        Bigint num;
        Bigint den;
    };
    explicit RealSpec(NamedReal n) : value_(n) {}
    explicit RealSpec(Ratio r) : value_(std::move(r)) {}
    std::variant<NamedReal, Ratio> value_;
};

}  // namespace ksp::mp

#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace kannan {

/// Exact rational number. Every distance and coefficient in the library is
/// carried in this type; floats only appear in display-only renderings.
using Rational = mpq_class;

/// Parses "p/q", "-p/q" or an integer string into a canonical rational.
/// Throws ArgumentError on anything else (including q = 0).
Rational parse_rational(std::string_view text);

/// Renders as "p/q", or as a bare integer when the denominator is 1.
std::string to_string(const Rational& value);

/// Integer power with a non-negative exponent.
Rational pow(const Rational& base, unsigned long exponent);

/// A minimal feasible coefficient: either an exact rational or +infinity
/// (the class inequality cannot hold for any finite coefficient).
class Coefficient {
 public:
  Coefficient() : value_(Rational(0)) {}
  explicit Coefficient(Rational value) : value_(std::move(value)) {}

  static Coefficient infinite() {
    Coefficient c;
    c.value_.reset();
    return c;
  }

  /// Ratio with the 0/0 -> 0 and positive/0 -> infinite conventions.
  static Coefficient ratio(const Rational& numerator,
                           const Rational& denominator);

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  const Rational& value() const;

  /// Strict comparison against a finite bound; infinite is never below.
  bool less_than(const Rational& bound) const {
    return is_finite() && *value_ < bound;
  }
  bool at_most(const Rational& bound) const {
    return is_finite() && *value_ <= bound;
  }

  friend bool operator==(const Coefficient& a, const Coefficient& b);
  friend std::strong_ordering operator<=>(const Coefficient& a,
                                          const Coefficient& b);

 private:
  std::optional<Rational> value_;
};

/// "p/q" or "inf".
std::string to_string(const Coefficient& value);

/// Decimal approximation, display only.
double approx(const Rational& value);

}  // namespace kannan

#include "kannan/rational.hpp"

#include <cctype>

#include "kannan/errors.hpp"

namespace kannan {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ArgumentError("not a rational: '" + std::string(text) + "'");
  }
  Rational value;
  value.get_num().set_str(std::string(num), 10);
  value.get_den().set_str(std::string(den), 10);
  if (value.get_den() == 0) {
    throw ArgumentError("zero denominator: '" + std::string(text) + "'");
  }
  value.canonicalize();
  if (text.front() == '-') value = -value;
  return value;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

Rational pow(const Rational& base, unsigned long exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  out.canonicalize();
  return out;
}

Coefficient Coefficient::ratio(const Rational& numerator,
                               const Rational& denominator) {
  if (denominator == 0) {
    return numerator == 0 ? Coefficient() : Coefficient::infinite();
  }
  return Coefficient(numerator / denominator);
}

const Rational& Coefficient::value() const {
  if (!value_) throw DomainError("coefficient is infinite");
  return *value_;
}

bool operator==(const Coefficient& a, const Coefficient& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return a.is_infinite() && b.is_infinite();
  }
  return *a.value_ == *b.value_;
}

std::strong_ordering operator<=>(const Coefficient& a, const Coefficient& b) {
  if (a.is_infinite()) {
    return b.is_infinite() ? std::strong_ordering::equal
                           : std::strong_ordering::greater;
  }
  if (b.is_infinite()) return std::strong_ordering::less;
  const int c = cmp(*a.value_, *b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const Coefficient& value) {
  return value.is_infinite() ? "inf" : to_string(value.value());
}

double approx(const Rational& value) { return value.get_d(); }

}  // namespace kannan

#include "wmp/rational.hpp"

#include <cctype>
#include <limits>

namespace wmp {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.remove_prefix(1);
  }
  Rational value;
  auto slash = body.find('/');
  auto dot = body.find('.');
  if (slash != std::string_view::npos) {
    auto n = body.substr(0, slash), d = body.substr(slash + 1);
    if (!all_digits(n) || !all_digits(d)) throw Error("malformed rational '" + std::string(text) + "'");
    Integer den{std::string(d)};
    if (den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    value = Rational(Integer(std::string(n)), den);
  } else if (dot != std::string_view::npos) {
    auto whole = body.substr(0, dot), frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      throw Error("malformed rational '" + std::string(text) + "'");
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole));
    Integer f = frac.empty() ? Integer(0) : Integer(std::string(frac));
    value = Rational(w * scale + f, scale);
  } else {
    if (!all_digits(body)) throw Error("malformed rational '" + std::string(text) + "'");
    value = Rational(Integer(std::string(body)));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
  if (den_of(q) == 1) return num_of(q).str();
  return num_of(q).str() + "/" + den_of(q).str();
}

Integer num_of(const Rational& q) { return boost::multiprecision::numerator(q); }
Integer den_of(const Rational& q) { return boost::multiprecision::denominator(q); }

std::int64_t to_int64(const Integer& z) {
  if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min())
    throw Error("integer " + z.str() + " does not fit in 64 bits");
  return z.convert_to<std::int64_t>();
}

Integer lcm_of(const Integer& a, const Integer& b) {
  return boost::multiprecision::lcm(a, b);
}

}  // namespace wmp

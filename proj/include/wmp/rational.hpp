#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wmp {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// accepts "a/b", "a", or a plain decimal such as "0.25"
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

Integer num_of(const Rational& q);
Integer den_of(const Rational& q);
std::int64_t to_int64(const Integer& z);
Integer lcm_of(const Integer& a, const Integer& b);

}  // namespace wmp

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace sidonkit {

// Exact counts (energies, tuple counts) can exceed 128 bits once k grows.
using BigInt = boost::multiprecision::cpp_int;

BigInt big_pow(const BigInt& base, unsigned exp);
// log2 of a positive big integer, accurate to double precision.
double log2_big(const BigInt& x);
std::string to_string(const BigInt& x);
// Accepts decimal strings only.
BigInt parse_bigint(std::string_view text);

// Exact nonnegative rational used for the structure parameters delta, eps.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  // "0.0625", "1/16", "1" -> exact rational.
  static Rational parse(std::string_view text);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

bool operator<(const Rational& a, const Rational& b);
inline bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }

// Smallest integer M with M >= n^{r}; exact.
std::uint64_t ceil_rational_power(std::uint64_t n, const Rational& r);

// Exact test  value <= n^{k + r}  via  value^{den} <= n^{k*den + num}.
bool le_power(const BigInt& value, std::uint64_t n, std::uint64_t k, const Rational& r);

// Upward-nudged floating helpers: results never fall below the exact value.
double up(double x);
double sqrt_up(double x);
double pow_up(double base, double exponent);

}  // namespace sidonkit

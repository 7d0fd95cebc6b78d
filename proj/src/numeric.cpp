#include "sidonkit/numeric.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "sidonkit/core.hpp"

namespace sidonkit {

BigInt big_pow(const BigInt& base, unsigned exp) { return boost::multiprecision::pow(base, exp); }

double log2_big(const BigInt& x) {
  if (x <= 0) return -std::numeric_limits<double>::infinity();
  const std::size_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 60) return std::log2(static_cast<double>(static_cast<std::uint64_t>(x)));
  const std::size_t shift = bits - 60;
  const BigInt top = x >> shift;
  return std::log2(static_cast<double>(static_cast<std::uint64_t>(top))) +
         static_cast<double>(shift);
}

std::string to_string(const BigInt& x) { return x.str(); }

BigInt parse_bigint(std::string_view text) {
  if (text.empty()) throw Error(Errc::kMalformedInput, "empty integer");
  BigInt out = 0;
  bool neg = false;
  std::size_t i = 0;
  if (text[0] == '-') {
    neg = true;
    i = 1;
  }
  if (i == text.size()) throw Error(Errc::kMalformedInput, "bad integer '" + std::string(text) + "'");
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '9') {
      throw Error(Errc::kMalformedInput, "bad integer '" + std::string(text) + "'");
    }
    out = out * 10 + (c - '0');
  }
  return neg ? BigInt(-out) : out;
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0) throw Error(Errc::kInvalidArgument, "rational must be nonnegative");
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  return {num / g, den / g};
}

Rational Rational::parse(std::string_view text) {
  auto bad = [&] { return Error(Errc::kInvalidArgument, "bad rational '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    try {
      return make(std::stoll(std::string(text.substr(0, slash))),
                  std::stoll(std::string(text.substr(slash + 1))));
    } catch (const std::logic_error&) {
      throw bad();
    }
  }
  std::int64_t num = 0, den = 1;
  bool seen_dot = false, any_digit = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_dot) throw bad();
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9') throw bad();
    any_digit = true;
    if (num > (std::numeric_limits<std::int64_t>::max() - 9) / 10 || den > 1'000'000'000'000'000LL) {
      throw bad();
    }
    num = num * 10 + (c - '0');
    if (seen_dot) den *= 10;
  }
  if (!any_digit) throw bad();
  return make(num, den);
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

std::uint64_t ceil_rational_power(std::uint64_t n, const Rational& r) {
  if (n <= 1 || r.num == 0) return 1;
  // M^{den} >= n^{num}
  const BigInt target = big_pow(BigInt(n), static_cast<unsigned>(r.num));
  auto guess = static_cast<std::uint64_t>(
      std::floor(std::pow(static_cast<long double>(n), static_cast<long double>(r.to_double()))));
  if (guess == 0) guess = 1;
  while (guess > 1 && big_pow(BigInt(guess - 1), static_cast<unsigned>(r.den)) >= target) --guess;
  while (big_pow(BigInt(guess), static_cast<unsigned>(r.den)) < target) ++guess;
  return guess;
}

bool le_power(const BigInt& value, std::uint64_t n, std::uint64_t k, const Rational& r) {
  const auto den = static_cast<unsigned>(r.den);
  const auto rhs_exp = static_cast<unsigned>(k * static_cast<std::uint64_t>(r.den) +
                                             static_cast<std::uint64_t>(r.num));
  return big_pow(value, den) <= big_pow(BigInt(n), rhs_exp);
}

double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

double sqrt_up(double x) { return up(std::sqrt(x)); }

double pow_up(double base, double exponent) {
  // std::pow is not correctly rounded; two ulps cover libm error.
  return up(up(std::pow(base, exponent)));
}

}  // namespace sidonkit

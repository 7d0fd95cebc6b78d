#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sidonkit/core.hpp"
#include "sidonkit/numeric.hpp"

using namespace sidonkit;

TEST_CASE("compose in each ambient") {
  CHECK(compose(AmbientSpec::integers(), CompositionMode::kDifference, 7, 3) == Element(4));
  CHECK(compose(AmbientSpec::prime_field(13), CompositionMode::kProduct, 5, 8) == Element(1));
  CHECK(compose(AmbientSpec::prime_square_plane(5), CompositionMode::kSum, {4, 3}, {2, 4}) ==
        Element(1, 2));
  CHECK(compose(AmbientSpec::integers_mod(10), CompositionMode::kDifference, 3, 7) == Element(6));
  CHECK(compose(AmbientSpec::prime_field(13), CompositionMode::kRatio, 1, 5) == Element(8));
  // 6 / -4 = -3/2
  CHECK(compose(AmbientSpec::integers(), CompositionMode::kRatio, 6, -4) == Element(-3, 2));
}

TEST_CASE("compose errors") {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::kInvalidArgument;
  };
  CHECK(code_of([] { compose(AmbientSpec::prime_field(7), CompositionMode::kRatio, 3, 0); }) ==
        Errc::kDivisionByZero);
  CHECK(code_of([] {
          compose(AmbientSpec::prime_square_plane(5), CompositionMode::kProduct, {1, 1}, {1, 1});
        }) == Errc::kUnsupportedMode);
  CHECK(code_of([] {
          compose(AmbientSpec::integers(), CompositionMode::kProduct, 1LL << 40, 1LL << 40);
        }) == Errc::kOverflowBudgetExceeded);
  CHECK(code_of([] { AmbientSpec::prime_field(15); }) == Errc::kInvalidArgument);
  CHECK(code_of([] { AmbientSpec::integers_mod(1); }) == Errc::kInvalidArgument);
}

TEST_CASE("primality and modular helpers") {
  std::vector<std::int64_t> primes;
  for (std::int64_t n = 0; n < 200; ++n)
    if (is_prime(n)) primes.push_back(n);
  CHECK(primes.size() == 46);
  CHECK(is_prime(2305843009213693951LL));
  CHECK_FALSE(is_prime(3215031751LL));  // strong pseudoprime to bases 2,3,5,7
  CHECK(mod_pow(5, 3, 31) == 1);
  CHECK(mod_inverse(5, 13) == 8);
}

TEST_CASE("ground set canonical form") {
  GroundSet a = GroundSet::integers({3, 1, 0, 1});
  CHECK(a.size() == 3);
  CHECK(a[0] == Element(0));
  CHECK(a[2] == Element(3));
  CHECK_THROWS_AS(GroundSet(AmbientSpec::integers(), {1, 1}, DuplicatePolicy::kReject), Error);
  CHECK_THROWS_AS(GroundSet(AmbientSpec::prime_field(13), {13}), Error);
  CHECK_THROWS_AS(GroundSet(AmbientSpec::integers(), {Element(1, 2)}), Error);
}

TEST_CASE("set_compose examples") {
  CHECK(set_compose(GroundSet::integers({0, 1}), GroundSet::integers({0, 2}), CompositionMode::kSum) ==
        GroundSet::integers({0, 1, 2, 3}));
  auto s = GroundSet::integers({0, 1, 3});
  CHECK(set_compose(s, s, CompositionMode::kDifference) == GroundSet::interval(-3, 3));
  auto m = GroundSet::integers({1, 2, 4});
  CHECK(set_compose(m, m, CompositionMode::kProduct) == GroundSet::integers({1, 2, 4, 8, 16}));
  CHECK_THROWS_AS(set_compose(s, oracle::as_set({0, 1}, 7), CompositionMode::kSum), Error);
}

TEST_CASE("affine_image examples") {
  auto s = GroundSet::integers({0, 1, 3});
  CHECK(affine_image(s, 2, 0) == GroundSet::integers({0, 2, 6}));
  CHECK(affine_image(s, 1, 5) == GroundSet::integers({5, 6, 8}));
  CHECK(affine_image(s, 2, 1) == GroundSet::integers({1, 3, 7}));
  CHECK(affine_image(s, 1, 0) == s);
  CHECK_THROWS_AS(affine_image(s, 0, 0), Error);
}

TEST_CASE("sumset cardinality range") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 100; ++it) {
    auto a = oracle::as_set(oracle::random_subset(rng, -20, 20, 1 + rng() % 7));
    auto b = oracle::as_set(oracle::random_subset(rng, -20, 20, 1 + rng() % 7));
    auto sum = set_compose(a, b, CompositionMode::kSum);
    CHECK(sum.size() >= std::max(a.size(), b.size()));
    CHECK(sum.size() <= a.size() * b.size());
    CHECK(set_compose(a, GroundSet::integers({0}), CompositionMode::kSum) == a);
  }
}

TEST_CASE("intersection_size") {
  auto a = GroundSet::interval(0, 4);
  std::vector<Element> shifts{1, 2};
  CHECK(intersection_size(a, shifts) == 3);
  CHECK(intersection_size(a, {}) == 5);
  std::vector<Element> far{10};
  CHECK(intersection_size(GroundSet::integers({0, 1}), far) == 0);
}

TEST_CASE("rational parsing and exact power comparison") {
  CHECK(Rational::parse("0.0625") == Rational::make(1, 16));
  CHECK(Rational::parse("1/4") == Rational::make(1, 4));
  CHECK(Rational::parse("1") == Rational::make(1, 1));
  CHECK_THROWS(Rational::parse("abc"));
  // 64^{2.5} = 32768
  CHECK(le_power(32768, 64, 2, Rational::make(1, 2)));
  CHECK_FALSE(le_power(32769, 64, 2, Rational::make(1, 2)));
  CHECK(ceil_rational_power(64, Rational::make(1, 8)) == 2);
  CHECK(ceil_rational_power(65, Rational::make(1, 2)) == 9);
  CHECK(ceil_rational_power(64, Rational::make(1, 2)) == 8);
}

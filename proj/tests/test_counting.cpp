#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sidonkit/counting.hpp"

using namespace sidonkit;

namespace {

std::uint64_t big(const BigInt& v) { return static_cast<std::uint64_t>(v); }

}  // namespace

TEST_CASE("histogram examples") {
  auto s = GroundSet::integers({0, 1, 3});
  RepHistogram h(s, s, CompositionMode::kDifference);
  CHECK(h.count(0) == 3);
  for (std::int64_t x : {-3, -2, -1, 1, 2, 3}) CHECK(h.count(x) == 1);
  CHECK(h.total() == 9);

  auto one = GroundSet::integers({0});
  RepHistogram h1(one, one, CompositionMode::kDifference);
  CHECK(h1.support_size() == 1);
  CHECK(h1.count(0) == 1);

  auto m = GroundSet::integers({1, 2, 4});
  RepHistogram hp(m, m, CompositionMode::kProduct);
  CHECK(hp.count(1) == 1);
  CHECK(hp.count(2) == 2);
  CHECK(hp.count(4) == 3);
  CHECK(hp.count(8) == 2);
  CHECK(hp.count(16) == 1);
  CHECK(hp.support_size() == 5);
}

TEST_CASE("energy examples") {
  CHECK(energy_k(GroundSet::integers({5}), 3).value == 1);
  CHECK(energy_k(GroundSet::integers({0, 1, 2}), 2).value == 19);
  CHECK(energy_k(GroundSet::integers({0, 1, 2}), 3).value == 45);
  CHECK(energy_k(GroundSet::integers({0, 1, 3}), 2, CompositionMode::kSum).value == 15);
  CHECK_THROWS_AS(energy_k(GroundSet::integers({0, 1}), 0), Error);
}

TEST_CASE("energy prime examples") {
  CHECK(energy_prime_k(GroundSet::integers({0, 1}), 2) == 0);
  CHECK(energy_prime_k(GroundSet::integers({0, 1, 2, 3}), 2) == 8);
  auto a = GroundSet::integers({0, 2, 3, 7, 11});
  CHECK(energy_prime_k(a, 1) == 20);
  CHECK(energy_prime_k_enumerate(GroundSet::integers({0, 1, 2, 3}), 2) == 8);
}

TEST_CASE("energy and energy prime against tuple enumeration") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 60; ++it) {
    const bool modular = it % 2 == 1;
    const std::int64_t mod = modular ? 13 : 0;
    auto v = modular ? oracle::random_subset(rng, 0, 12, 1 + rng() % 8)
                     : oracle::random_subset(rng, -15, 15, 1 + rng() % 8);
    auto a = oracle::as_set(v, mod);
    for (unsigned k = 2; k <= 3; ++k) {
      CHECK(big(energy_k(a, k).value) == oracle::energy(v, k, mod));
      CHECK(big(energy_k(a, k, CompositionMode::kSum).value) == oracle::sum_energy(v, k, mod));
      CHECK(big(energy_prime_k(a, k)) == oracle::energy_prime(v, k, mod));
    }
  }
}

TEST_CASE("sum-mode energy prime against enumeration") {
  std::mt19937_64 rng(33);
  for (int it = 0; it < 40; ++it) {
    auto v = oracle::random_subset(rng, 0, 20, 1 + rng() % 8);
    auto a = oracle::as_set(v);
    for (unsigned k = 2; k <= 3; ++k) {
      // All-distinct sum tuples, counted directly.
      std::uint64_t want = 0;
      oracle::for_each_tuple(v, 2 * k, [&](const oracle::Vec& t, const auto& idx) {
        std::set<std::size_t> d(idx.begin(), idx.end());
        if (d.size() != idx.size()) return;
        for (unsigned j = 1; j < k; ++j)
          if (t[2 * j] + t[2 * j + 1] != t[0] + t[1]) return;
        ++want;
      });
      CHECK(big(energy_prime_k(a, k, DistinctReading::kAllEntries, CompositionMode::kSum)) == want);
    }
  }
}

TEST_CASE("within-pair reading") {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 30; ++it) {
    auto v = oracle::random_subset(rng, 0, 20, 2 + rng() % 6);
    auto a = oracle::as_set(v);
    std::uint64_t want = 0;
    oracle::for_each_tuple(v, 4, [&](const oracle::Vec& t, const auto&) {
      want += (t[0] != t[1] && t[0] - t[1] == t[2] - t[3]);
    });
    CHECK(big(energy_prime_k(a, 2, DistinctReading::kWithinPair)) == want);
    CHECK(big(energy_prime_k_enumerate(a, 2, DistinctReading::kWithinPair)) == want);
  }
}

TEST_CASE("chains and cycles in large sets match enumeration") {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 10; ++it) {
    auto a = oracle::as_set(oracle::random_subset(rng, 0, 11, 9), 12);
    CHECK(energy_prime_k(a, 3) == energy_prime_k_enumerate(a, 3));
    CHECK(energy_prime_k(a, 4) == energy_prime_k_enumerate(a, 4));
  }
  auto interval = GroundSet::interval(0, 11);
  CHECK(energy_prime_k(interval, 2) == energy_prime_k_enumerate(interval, 2));
  CHECK(energy_prime_k(interval, 3) == energy_prime_k_enumerate(interval, 3));
}

TEST_CASE("identity properties") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 80; ++it) {
    auto v = oracle::random_subset(rng, -40, 40, 1 + rng() % 12);
    auto a = oracle::as_set(v);
    RepHistogram h(a, a, CompositionMode::kDifference);
    CHECK(h.total() == a.size() * a.size());
    CHECK(h.count(0) == a.size());
    for (const auto& e : h.entries()) CHECK(h.count(-e.value.x) == e.count);
    CHECK(energy_k(a, 2).value == energy_k(a, 2, CompositionMode::kSum).value);
    const BigInt n = a.size();
    for (unsigned k = 2; k <= 4; ++k) {
      const auto ek = energy_k(a, k).value;
      const auto prev = energy_k(a, k - 1).value;
      const auto next = energy_k(a, k + 1).value;
      CHECK(next <= n * ek);
      CHECK(ek * ek <= prev * next);
      CHECK(big_pow(n, k) <= ek);
      CHECK(ek <= big_pow(n, k + 1));
      CHECK(energy_prime_k(a, k) <= ek);
    }
    CHECK(energy_prime_k(a, 1) == n * (n - 1));
    for (std::int64_t s : {-3, 2, 7}) {
      CHECK(energy_k(affine_image(a, s, 5), 3).value == energy_k(a, 3).value);
    }
  }
}

TEST_CASE("kappa") {
  auto r = energy_k(GroundSet::interval(0, 9), 2);
  CHECK(r.kappa > 0.0);
  CHECK(r.kappa <= 1.0);
  CHECK(kappa_of(100, 10, 2) == doctest::Approx(0.0));
}

TEST_CASE("common energy") {
  auto ab = GroundSet::integers({0, 1});
  CHECK(common_energy(ab, ab) == 6);
  auto b = GroundSet::integers({2, 5, 9, 10});
  CHECK(common_energy(GroundSet::integers({0}), b) == 4);
  auto s = GroundSet::integers({0, 1, 3});
  CHECK(common_energy(s, s) == 15);
  std::mt19937_64 rng(2);
  for (int it = 0; it < 30; ++it) {
    auto x = oracle::random_subset(rng, 0, 30, 1 + rng() % 8);
    auto y = oracle::random_subset(rng, 0, 30, 1 + rng() % 8);
    CHECK(big(common_energy(oracle::as_set(x), oracle::as_set(y))) == oracle::common_energy(x, y));
  }
}

TEST_CASE("popular level set") {
  auto a = GroundSet::interval(0, 3);
  CHECK(popular_level_set(a, 2) == GroundSet::integers({-1, 0, 1}));
  CHECK(popular_level_set(a, 2, false) == GroundSet::integers({-1, 1}));
  CHECK(popular_level_set(a, 4).empty());
}

TEST_CASE("dyadic best level") {
  auto d = dyadic_best_level(GroundSet::interval(0, 3), 1);
  CHECK(d.delta == 2);
  CHECK(d.level == GroundSet::integers({-1, 0, 1}));
  CHECK(d.score == 12);

  auto sidon = dyadic_best_level(GroundSet::integers({0, 1, 3, 7}), 1);
  CHECK(sidon.level.contains(0));

  auto single = dyadic_best_level(GroundSet::integers({4}), 2);
  CHECK(single.delta == 1);
  CHECK(single.level == GroundSet::integers({0}));

  std::mt19937_64 rng(6);
  for (int it = 0; it < 40; ++it) {
    auto a = oracle::as_set(oracle::random_subset(rng, 0, 60, 2 + rng() % 20));
    for (unsigned l = 1; l <= 4; ++l) {
      auto best = dyadic_best_level(a, l);
      const auto e = energy_k(a, l + 1).value;
      unsigned logn = 0;
      while ((std::size_t{1} << logn) < a.size()) ++logn;
      // ceil(log2 n) classes carry counts in (1, n]; the count-one mass is at
      // most n^2, below the class holding r(0) = n.
      CHECK(best.score * big_pow(2, l + 1) * (logn + 1) >= e);
      CHECK(best.score == big_pow(best.delta, l + 1) * best.level.size());
    }
  }
}

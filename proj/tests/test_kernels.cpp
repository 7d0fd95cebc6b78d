#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sidonkit/kernels.hpp"

using namespace sidonkit;

namespace {

void check_same(const PairHistogram& a, const PairHistogram& b) {
  REQUIRE(a.entries.size() == b.entries.size());
  CHECK(a.skipped == b.skipped);
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].value == b.entries[i].value);
    CHECK(a.entries[i].count == b.entries[i].count);
  }
}

GroundSet random_set(std::mt19937_64& rng, const AmbientSpec& amb, std::size_t size) {
  std::vector<Element> e;
  const std::int64_t m = amb.is_finite() ? amb.modulus() : 1'000'000;
  std::uniform_int_distribution<std::int64_t> d(amb.is_finite() ? 0 : -m, m - 1);
  for (std::size_t i = 0; i < size; ++i) {
    if (amb.is_plane())
      e.emplace_back(d(rng), d(rng));
    else
      e.emplace_back(d(rng));
  }
  return GroundSet(amb, e);
}

}  // namespace

TEST_CASE("serial and parallel histograms agree") {
  std::mt19937_64 rng(5);
  const std::vector<AmbientSpec> ambients{AmbientSpec::integers(), AmbientSpec::integers_mod(60),
                                          AmbientSpec::prime_field(101),
                                          AmbientSpec::prime_square_plane(7)};
  for (const auto& amb : ambients) {
    for (int it = 0; it < 20; ++it) {
      auto a = random_set(rng, amb, 1 + rng() % 40);
      auto b = random_set(rng, amb, 1 + rng() % 40);
      for (auto mode : {CompositionMode::kDifference, CompositionMode::kSum, CompositionMode::kProduct,
                        CompositionMode::kRatio}) {
        if (!amb.supports(mode)) continue;
        if (mode == CompositionMode::kRatio && amb.kind() == AmbientKind::kIntegers) continue;
        check_same(serial::pair_histogram(a, b, mode, true), parallel::pair_histogram(a, b, mode, true));
      }
      auto so = serial::translate_overlaps(a, b);
      auto po = parallel::translate_overlaps(a, b);
      CHECK(so == po);
    }
  }
}

TEST_CASE("sparse path over wide integer spans") {
  std::mt19937_64 rng(9);
  for (int it = 0; it < 10; ++it) {
    auto a = oracle::as_set(oracle::random_subset(rng, -(1LL << 40), 1LL << 40, 200));
    for (auto mode : {CompositionMode::kDifference, CompositionMode::kSum}) {
      auto s = serial::pair_histogram(a, a, mode, false);
      auto p = parallel::pair_histogram(a, a, mode, false);
      check_same(s, p);
    }
  }
}

TEST_CASE("integer ratio histogram keys are reduced fractions") {
  auto a = GroundSet::integers({-2, 1, 2, 4});
  auto s = serial::pair_histogram(a, a, CompositionMode::kRatio, false);
  auto p = parallel::pair_histogram(a, a, CompositionMode::kRatio, false);
  check_same(s, p);
  std::uint64_t ones = 0;
  for (const auto& e : p.entries)
    if (e.value == Element(1, 1)) ones = e.count;
  CHECK(ones == 4);
}

TEST_CASE("power sums agree") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 30; ++it) {
    auto a = oracle::as_set(oracle::random_subset(rng, 0, 200, 2 + rng() % 60));
    auto h = parallel::pair_histogram(a, a, CompositionMode::kDifference, false);
    for (unsigned k = 1; k <= 6; ++k) CHECK(serial::power_sum(h.entries, k) == parallel::power_sum(h.entries, k));
  }
}

TEST_CASE("ratio by zero") {
  auto a = GroundSet::integers({0, 1, 2});
  CHECK_THROWS_AS(parallel::pair_histogram(a, a, CompositionMode::kRatio, false), Error);
  auto h = parallel::pair_histogram(a, a, CompositionMode::kRatio, true);
  CHECK(h.skipped == 3);
}

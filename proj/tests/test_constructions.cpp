#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sidonkit/bounds.hpp"
#include "sidonkit/constructions.hpp"
#include "sidonkit/io.hpp"
#include "sidonkit/kernels.hpp"
#include "sidonkit/sidon.hpp"

using namespace sidonkit;

namespace {

// Serializes every set of the report, parses it back and recomputes.
nlohmann::json roundtrip_measure(const ConstructionReport& r) {
  ConstructionReport copy;
  copy.name = r.name;
  copy.parameters = nlohmann::json::parse(r.parameters.dump());
  copy.set = parse_set(serialize_set(r.set, SetFormat::kText, provenance_of(r))).set;
  for (const auto& [k, v] : r.parts) copy.parts[k] = parse_set(serialize_set(v, SetFormat::kJson)).set;
  return remeasure(copy);
}

}  // namespace

TEST_CASE("Sidon base") {
  CHECK(sidon_base(50) == GroundSet::integers({0, 11, 24, 34, 41}));
  CHECK(sidon_base(4) == GroundSet::integers({0, 1, 3}));
  for (std::int64_t n : {50, 500, 5000, 17, 100000}) {
    auto s = sidon_base(n);
    CHECK_FALSE(verify_multiplicity(s, 1));
    CHECK(s[s.size() - 1].x <= n);
  }
  CHECK(sidon_base(5000).size() == 47);
  CHECK_THROWS_AS(sidon_base(2), Error);
}

TEST_CASE("Linstrom-type sets") {
  auto r = linstrom_like(2, 32, GroundSet::integers({0, 1, 3, 7}));
  CHECK(r.set == GroundSet::integers({0, 1, 2, 3, 6, 7, 14, 15}));
  CHECK(r.measured["max_r_far"] == 2);
  CHECK(r.measured["max_r_near"] == 5);
  CHECK(r.status == ConstructionStatus::kAnomaly);
  CHECK_FALSE(r.notes.empty());

  auto built = linstrom_like(2, 32);
  CHECK(built.measured["size_is_g_times_base"].get<bool>());
  CHECK(built.measured["max_r_far"].get<std::uint64_t>() <= 2);

  auto one = linstrom_like(1, 50);
  CHECK(one.set == sidon_base(49));
  CHECK(one.status == ConstructionStatus::kPass);

  for (std::int64_t g : {2, 3}) {
    for (std::int64_t n : {100, 1000}) {
      auto x = linstrom_like(g, n);
      CHECK(x.measured["max_r_far"].get<std::uint64_t>() <= static_cast<std::uint64_t>(g));
      CHECK(x.status != ConstructionStatus::kFail);
      CHECK(x.measured["max_element"].get<std::int64_t>() < n);
    }
  }
  CHECK_THROWS_AS(linstrom_like(3, 8), Error);
}

TEST_CASE("geometric sum-product example") {
  auto r = geometric_sumproduct_example(2, 2);
  CHECK(r.parts.at("Gamma") == GroundSet::integers({1, 2, 4}));
  CHECK(r.parts.at("H") == GroundSet::integers({8, 64}));
  CHECK(r.set.size() == 18);
  CHECK(r.measured["additive_bound"].get<double>() == doctest::Approx(3 * std::sqrt(6.0) + 6));
  CHECK(r.measured["sid_additive"].get<double>() <= 13);
  CHECK(r.measured["multiplicative_cover_holds"].get<bool>());
  CHECK(r.status == ConstructionStatus::kPass);

  for (std::int64_t b : {2, 3}) {
    for (std::int64_t n : {1, 2, 3}) {
      auto x = geometric_sumproduct_example(b, n);
      CHECK(x.set.size() == static_cast<std::size_t>(n * (n + 1) * (n + 1)));
      CHECK(x.status == ConstructionStatus::kPass);
    }
  }
  CHECK(geometric_sumproduct_example(2, 1).set.size() == 4);
  CHECK_THROWS_AS(geometric_sumproduct_example(10, 6), Error);
}

TEST_CASE("hyperbola family") {
  auto r = hyperbola_family(13, 2, 0);
  CHECK(r.set.size() == 25);
  CHECK(r.measured["max_pairwise_intersection"] == 1);

  // single parabola against a brute-force count
  auto single = hyperbola_family(13, 1, 0);
  std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> counts;
  for (const Element& x : single.set.elements())
    for (const Element& y : single.set.elements())
      if (x != y) ++counts[{(x.x - y.x + 13) % 13, (x.y - y.y + 13) % 13}];
  std::uint64_t best = 0;
  for (const auto& [k, v] : counts) best = std::max(best, v);
  CHECK(single.measured["max_r"] == best);

  CHECK_THROWS_AS(hyperbola_family(13, 2, 11), Error);  // t + 2 = 13
  CHECK_THROWS_AS(hyperbola_family(12, 2, 0), Error);

  auto searched = hyperbola_family(101, 3);
  CHECK(searched.set.size() == 301);
  CHECK(searched.measured["max_r"].get<std::uint64_t>() <= 34);
  CHECK(searched.status == ConstructionStatus::kPass);
  set_threads(1);
  auto serial = hyperbola_family(101, 3);
  set_threads(0);
  CHECK(serial.parameters["t"] == searched.parameters["t"]);
}

TEST_CASE("prime field multiplicative example") {
  auto r = fp_mult_example(31, 3, 7);
  CHECK(r.parts.at("Gamma").size() == 3);
  CHECK(r.parts.at("Gamma") == GroundSet(AmbientSpec::prime_field(31), {Element{1}, Element{5}, Element{25}}));
  CHECK(r.set.size() <= 27);
  CHECK(r.measured["identity_holds"].get<bool>());
  CHECK(r.status == ConstructionStatus::kPass);

  auto trivial = fp_mult_example(31, 1, 3);
  CHECK(trivial.set.size() == 1);

  CHECK_THROWS_AS(fp_mult_example(31, 4), Error);
  CHECK_THROWS_AS(fp_mult_example(31, 15), Error);  // two cosets only
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto x = fp_mult_example(101, 5, seed);
    CHECK(x.measured["identity_holds"].get<bool>());
    CHECK(fp_mult_example(101, 5, seed).set == x.set);
  }
}

TEST_CASE("measured statistics survive serialization") {
  std::vector<ConstructionReport> reports = {
      linstrom_like(2, 100),
      linstrom_like(2, 32, GroundSet::integers({0, 1, 3, 7})),
      geometric_sumproduct_example(2, 2),
      geometric_sumproduct_example(3, 3),
      hyperbola_family(13, 2),
      fp_mult_example(31, 3, 1),
  };
  for (const auto& r : reports) {
    CHECK(roundtrip_measure(r) == r.measured);
    CHECK(remeasure(r) == r.measured);
  }
}

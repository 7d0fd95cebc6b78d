#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sidonkit/constructions.hpp"
#include "sidonkit/counting.hpp"
#include "sidonkit/io.hpp"
#include "sidonkit/structure.hpp"

using namespace sidonkit;

namespace {

const Rational kHalf = Rational::make(1, 2);
const Rational kQuarter = Rational::make(1, 4);

StructureCertificate roundtrip(const StructureCertificate& c) {
  return certificate_from_json(nlohmann::json::parse(to_json(c).dump()));
}

}  // namespace

TEST_CASE("random set gives small energy at k = 2") {
  std::mt19937_64 rng(5);
  auto a = oracle::as_set(oracle::random_subset(rng, 0, 1'000'000, 64));
  auto c = energy_gap_decompose(a, kHalf, kQuarter);
  REQUIRE(c.kind == CertificateKind::kSmallEnergy);
  CHECK(c.small->k == 2);
  CHECK(c.small->below_threshold);
  CHECK(c.small->energy < 131072);
  CHECK(verify_certificate(a, c).ok);
  CHECK(verify_certificate(a, roundtrip(c)).ok);
}

TEST_CASE("progression gives a popular core") {
  auto a = GroundSet::interval(0, 63);
  auto c = energy_gap_decompose(a, kHalf, kQuarter);
  REQUIRE(c.kind == CertificateKind::kPopularCore);
  CHECK_FALSE(c.popular->core.empty());
  CHECK(2 * c.popular->core_mass >= c.popular->mass);
  CHECK(c.m == 2);  // ceil(64^{1/8})
  auto v = verify_certificate(a, c);
  CHECK(v.ok);
  CHECK(verify_certificate(a, roundtrip(c)).ok);

  // tampering is caught
  auto bad = c;
  bad.popular->mass += 1;
  CHECK_FALSE(verify_certificate(a, bad).ok);
  auto bad2 = c;
  bad2.trace[0].energy += 1;
  CHECK_FALSE(verify_certificate(a, bad2).ok);
  CHECK_FALSE(verify_certificate(GroundSet::interval(0, 62), c).ok);
}

TEST_CASE("smallest admissible input") {
  auto a = GroundSet::integers({0, 1, 5, 11});
  auto c = energy_gap_decompose(a, kHalf, kQuarter);
  CHECK_FALSE(c.trace.empty());
  CHECK(verify_certificate(a, roundtrip(c)).ok);
  CHECK_THROWS_AS(energy_gap_decompose(GroundSet::integers({0, 1, 2}), kHalf, kQuarter), Error);
  CHECK_THROWS_AS(energy_gap_decompose(a, kQuarter, kHalf), Error);
}

TEST_CASE("decomposition terminates within the loop bound") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 30; ++it) {
    oracle::Vec v;
    const int shape = it % 3;
    if (shape == 0) {
      v = oracle::random_subset(rng, 0, 200, 4 + rng() % 40);
    } else if (shape == 1) {
      const std::int64_t step = 1 + static_cast<std::int64_t>(rng() % 5);
      for (std::int64_t i = 0; i < 4 + static_cast<std::int64_t>(rng() % 40); ++i) v.push_back(i * step);
    } else {
      for (std::int64_t i = 0; i < 20; ++i) v.push_back(i);
      for (std::int64_t x : oracle::random_subset(rng, 1000, 5000, 20)) v.push_back(x);
    }
    auto a = oracle::as_set(v);
    const Rational eps = Rational::make(1, 1 + static_cast<std::int64_t>(rng() % 8));
    auto c = energy_gap_decompose(a, Rational::make(1, 1), eps);
    const std::size_t bound = static_cast<std::size_t>((2 * eps.den + eps.num - 1) / eps.num) + 2;
    CHECK(c.trace.size() <= bound);
    CHECK(verify_certificate(a, roundtrip(c)).ok);
    auto r = rigid_from_core(a, c);
    if (r.rigid) {
      CHECK(r.rigid->disjoint);
      CHECK(verify_certificate(a, roundtrip(r)).ok);
    }
  }
}

TEST_CASE("popular symmetry set") {
  auto a = GroundSet::interval(0, 9);
  CHECK(popular_symmetry_set(a, 8) == GroundSet::integers({-2, -1, 1, 2}));
  CHECK(popular_symmetry_set(a, 11).empty());
  CHECK(popular_symmetry_set(GroundSet::integers({0, 1, 3, 7}), 2).empty());
  std::mt19937_64 rng(2);
  for (int it = 0; it < 20; ++it) {
    auto v = oracle::random_subset(rng, 0, 30, 2 + rng() % 12);
    auto s = oracle::as_set(v);
    const std::uint64_t theta = 1 + rng() % 4;
    auto t = popular_symmetry_set(s, theta);
    auto counts = oracle::difference_counts(v);
    for (const auto& [d, c] : counts) {
      if (d != 0) CHECK(t.contains(Element(d)) == (c >= theta));
    }
  }
}

TEST_CASE("rigid structure on a progression") {
  auto a = GroundSet::interval(0, 63);
  auto c = rigid_structure(a, kHalf, kQuarter);
  REQUIRE(c.kind == CertificateKind::kRigidStructure);
  CHECK(c.rigid->doubling < 4.0);
  CHECK(2 * c.rigid->covered >= a.size());
  CHECK(c.rigid->disjoint);
  CHECK(verify_certificate(a, roundtrip(c)).ok);

  // Sidon input passes through as small energy
  auto s = sidon_base(2 * 37 * 37);
  s = s.with_elements(std::vector<Element>(s.elements().begin(), s.elements().begin() + 32));
  auto sc = rigid_structure(s, kHalf, kQuarter);
  CHECK(sc.kind == CertificateKind::kSmallEnergy);
  CHECK(sc.small->energy == 2 * 32 * 32 - 32);
}

TEST_CASE("pipeline: additive branch on powers of two") {
  std::vector<std::int64_t> v;
  for (int i = 0; i < 40; ++i) v.push_back(std::int64_t{1} << i);
  auto a = GroundSet::integers(v);
  PipelineOptions opts;
  opts.seed = 3;
  auto r = sum_product_pipeline(a, opts);
  CHECK(r.branch == PipelineBranch::kAdditiveSmallEnergy);
  CHECK(r.extraction.verified);
  CHECK(r.extraction.subset.size() >= 36);
  auto j = to_json(r, opts);
  CHECK(verify_pipeline_report(a, nlohmann::json::parse(j.dump())).ok);
}

TEST_CASE("pipeline: multiplicative branch on an interval") {
  auto a = GroundSet::interval(1, 512);
  PipelineOptions opts;
  opts.seed = 7;
  for (auto src : {CoreSource::kRigid, CoreSource::kPopularCore}) {
    opts.source = src;
    auto r = sum_product_pipeline(a, opts);
    CHECK(r.branch == PipelineBranch::kMultiplicativeAfterStructure);
    CHECK(r.extraction.verified);
    CHECK(r.extraction.mode == CompositionMode::kProduct);
    auto j = to_json(r, opts);
    auto v = verify_pipeline_report(a, nlohmann::json::parse(j.dump()));
    CHECK(v.ok);
    // a forged subset is rejected
    j["extraction"]["subset"] = set_to_json(a);
    CHECK_FALSE(verify_pipeline_report(a, j).ok);
  }
}

TEST_CASE("pipeline edge cases") {
  auto one = GroundSet::integers({1});
  auto r = sum_product_pipeline(one);
  CHECK(r.degenerate);
  CHECK(r.extraction.subset == one);
  CHECK(verify_pipeline_report(one, to_json(r, {})).ok);

  auto field = GroundSet(AmbientSpec::prime_field(101), {Element{1}, Element{2}, Element{3}, Element{5},
                                                         Element{7}, Element{11}, Element{13}, Element{17},
                                                         Element{19}, Element{23}, Element{29}});
  CHECK_THROWS_AS(sum_product_pipeline(field), Error);
  auto small = GroundSet(AmbientSpec::prime_field(101), {Element{0}, Element{1}, Element{2}, Element{3}, Element{4}});
  auto fr = sum_product_pipeline(small);
  CHECK(fr.extraction.verified);
  CHECK(verify_pipeline_report(small, to_json(fr, {})).ok);
  CHECK_THROWS_AS(sum_product_pipeline(GroundSet(AmbientSpec::integers_mod(10), {Element{1}})), Error);
}

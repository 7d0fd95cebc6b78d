#include <random>

#include "doctest.h"
#include "sidonkit/io.hpp"

using namespace sidonkit;

namespace {

Errc code_of(std::string_view text, DuplicatePolicy policy = DuplicatePolicy::kReject) {
  try {
    parse_set(text, policy);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::kInvalidArgument;
}

std::string message_of(std::string_view text) {
  try {
    parse_set(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("json parse sorts") {
  auto p = parse_set(R"({"ambient":{"kind":"integers"},"elements":[3,1,0]})");
  CHECK(p.set == GroundSet::integers({0, 1, 3}));
}

TEST_CASE("parse errors") {
  CHECK(code_of(R"({"ambient":{"kind":"prime-field","p":13},"elements":[13]})") ==
        Errc::kNonCanonicalElement);
  CHECK(code_of(R"({"ambient":{"kind":"integers"},"elements":[1,2,1]})") == Errc::kDuplicateElement);
  CHECK(code_of(R"({"ambient":{"kind":"ring"},"elements":[]})") == Errc::kMalformedInput);
  CHECK(code_of(R"({"ambient":{"kind":"integers"},"elements":[1.5]})") == Errc::kMalformedInput);
  CHECK(code_of("{\n  \"ambient\": {\"kind\":\"integers\"},\n  \"elements\": [1,,2]\n}") ==
        Errc::kMalformedInput);
  CHECK(message_of("{\n  \"ambient\": {\"kind\":\"integers\"},\n  \"elements\": [1,,2]\n}").find("line 3") !=
        std::string::npos);
  CHECK(code_of("# ambient: integers\n1\nx\n") == Errc::kMalformedInput);
  CHECK(message_of("# ambient: integers\n1\nx\n").find("line 3") != std::string::npos);
  CHECK(code_of("1\n2\n") == Errc::kMalformedInput);
  CHECK(code_of("# ambient: prime-field p=12\n1\n") == Errc::kMalformedInput);
}

TEST_CASE("duplicates dedupe under the flag") {
  auto p = parse_set("# ambient: integers\n4\n4\n2\n", DuplicatePolicy::kDedupe);
  CHECK(p.set == GroundSet::integers({2, 4}));
  CHECK(p.warnings.size() == 1);
}

TEST_CASE("text format with plane and provenance") {
  auto p = parse_set("# ambient: prime-square-plane p=5\n# label: demo\n# provenance: {\"name\":\"x\"}\n1,2\n0,4\n");
  CHECK(p.set.ambient() == AmbientSpec::prime_square_plane(5));
  CHECK(p.set[0] == Element(0, 4));
  CHECK(p.set.label() == "demo");
  REQUIRE(p.provenance);
  CHECK((*p.provenance)["name"] == "x");
}

TEST_CASE("round trip on random sets") {
  std::mt19937_64 rng(12);
  const std::vector<AmbientSpec> ambients{AmbientSpec::integers(), AmbientSpec::integers_mod(30),
                                          AmbientSpec::prime_field(31), AmbientSpec::prime_square_plane(11)};
  for (int it = 0; it < 100; ++it) {
    const auto& amb = ambients[it % ambients.size()];
    std::vector<Element> e;
    const std::size_t n = rng() % 20;
    for (std::size_t i = 0; i < n; ++i) {
      if (amb.kind() == AmbientKind::kIntegers)
        e.emplace_back(static_cast<std::int64_t>(rng() % 2001) - 1000);
      else if (amb.is_plane())
        e.emplace_back(static_cast<std::int64_t>(rng() % 11), static_cast<std::int64_t>(rng() % 11));
      else
        e.emplace_back(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(amb.modulus())));
    }
    GroundSet s(amb, e);
    for (auto fmt : {SetFormat::kJson, SetFormat::kText}) {
      const std::string text = serialize_set(s, fmt);
      const auto back = parse_set(text);
      CHECK(back.set == s);
      CHECK(serialize_set(back.set, fmt) == text);
    }
  }
}

TEST_CASE("digest is stable and content sensitive") {
  CHECK(set_digest(GroundSet::integers({0, 1})) == set_digest(GroundSet::integers({1, 0})));
  CHECK(set_digest(GroundSet::integers({0, 1})) != set_digest(GroundSet::integers({0, 2})));
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sidonkit/core.hpp"

namespace sidonkit {

enum class Verdict { kHolds, kViolated, kUnmeasured };
std::string_view verdict_name(Verdict v);

// Bound values are rounded upward, so a reported bound never falls below
// the exact one.
struct BoundReport {
  std::string name;
  nlohmann::json inputs = nlohmann::json::object();
  double bound = 0.0;
  std::optional<double> measured;
  Verdict verdict = Verdict::kUnmeasured;
  nlohmann::json details = nlohmann::json::object();
};

nlohmann::json to_json(const BoundReport& r);

// sigma^{-1} min{ c sqrt(k b) + b, b sqrt(k c) + c } for |B| = b, |C| = c.
double sumset_bound_value(std::uint64_t b, std::uint64_t c, std::uint64_t k, std::uint64_t sigma = 1);

// With `a`, checks r_{B+C}(x) >= sigma on A (PreconditionFailed otherwise)
// and compares against the exact maximum when |A| <= cap.
BoundReport sumset_sidon_upper(const GroundSet& b, const GroundSet& c, std::uint64_t k, std::uint64_t sigma = 1,
                               const std::optional<GroundSet>& a = std::nullopt, std::size_t cap = 40);

// D = A - A and S = A + A: the bounds for Sid_k(D) and Sid_k(S) through the
// sigma form with sigma = |A|, plus exact checks of r_{D-D}(d) >= |A| and
// r_{D+S}(s) >= |A|.
BoundReport diffset_bounds(const GroundSet& a, std::uint64_t k, std::size_t cap = 40);

enum class SizeSetting { kFiniteGroup, kSegment };

// Upper bounds for |S| with S in the intersection family B°_k[g], either in
// a group of order N or in {0, ..., N-1}.
BoundReport bfamily_size_upper(std::uint64_t n, unsigned k, std::uint64_t g, SizeSetting setting);

// Embeds S ⊆ [0, N-1] into Z/(N+u) with u = floor(N^{3/4} g^{-1/4}) and checks,
// in exact arithmetic, r_{S-S}(x) <= g on 0 < |x| <= u and
// |S|^2 u^2 / (N+u) <= E(S, I) < |S| u + g u^2 for I = {1, ..., u}.
BoundReport segment_embedding_audit(const GroundSet& s, std::uint64_t n, std::uint64_t g);

// |X + Y| = |X| |Y|.
bool co_sidon_check(const GroundSet& x, const GroundSet& y);

// Verifies |S_{X_1} ∩ (S_{X_2}+z_1) ∩ ... ∩ (S_{X_l}+z_{l-1})| < k for all
// pairwise distinct nonzero z with a nonempty intersection, where
// S_X = ∩_{x∈X} (S + x). Hypotheses failing raise PreconditionFailed.
BoundReport heritability_slice(const GroundSet& s, const std::vector<GroundSet>& shift_sets, unsigned k,
                               std::uint64_t g);

// For S in B°_2[2] in a group without elements of order two: every
// S_w = S ∩ (S + w), w != 0, is Sidon. Checked over w ∈ (S - S) \ {0}.
BoundReport heritability_sw(const GroundSet& s);

// |nA - mA| <= (|A+A| / |A|)^{n+m} |A|, compared exactly.
BoundReport plunnecke_audit(const GroundSet& a, unsigned n, unsigned m,
                            std::uint64_t element_budget = 20'000'000);

}  // namespace sidonkit

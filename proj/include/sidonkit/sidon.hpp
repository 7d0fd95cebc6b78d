#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "sidonkit/core.hpp"
#include "sidonkit/numeric.hpp"

namespace sidonkit {

// Intersection form: |S ∩ (S+x_1) ∩ ... ∩ (S+x_g)| < k for distinct nonzero x_i.
struct BFamilyParams {
  unsigned k = 2;
  std::uint64_t g = 1;
};

struct ViolationWitness {
  enum class Kind { kMultiplicity, kIntersection };
  Kind kind = Kind::kMultiplicity;
  // Multiplicity form.
  Element value;
  std::uint64_t count = 0;
  // Intersection form: g shifts and the full intersection (at least k elements).
  std::vector<Element> shifts;
  std::vector<Element> elements;
};

// Largest count over non-identity values of r_{S∘S}; identity per
// identity_value(). Ties resolve to the smallest value.
struct MultiplicityStat {
  std::uint64_t max_count = 0;
  std::optional<Element> argmax;
};
MultiplicityStat max_multiplicity(const GroundSet& s, CompositionMode mode);

// nullopt when every non-identity value has count <= g.
std::optional<ViolationWitness> verify_multiplicity(const GroundSet& s, std::uint64_t g,
                                                    CompositionMode mode = CompositionMode::kDifference);

// Throws CapExceeded when C(|S|, k) > budget.
std::optional<ViolationWitness> verify_bfamily(const GroundSet& s, BFamilyParams params,
                                               std::uint64_t budget = 100'000'000);

// Re-checks a witness against the set; true iff it shows a violation.
bool witness_holds(const GroundSet& s, const ViolationWitness& w, std::uint64_t g, CompositionMode mode,
                   unsigned k = 2);

struct ExactResult {
  std::size_t size = 0;
  GroundSet witness;
  std::uint64_t nodes = 0;
};

// Maximum |B|, B ⊆ A, with every non-identity count of r_{B∘B} at most k.
// Branch and bound; CapExceeded if |A| > cap or the node budget runs out.
ExactResult sid_k_exact(const GroundSet& a, std::uint64_t k,
                        CompositionMode mode = CompositionMode::kDifference, std::size_t cap = 40,
                        std::uint64_t node_budget = 2'000'000'000);

// Inclusion-maximal subset from randomized greedy insertion.
GroundSet sid_k_greedy(const GroundSet& a, std::uint64_t k,
                       CompositionMode mode = CompositionMode::kDifference, std::uint64_t seed = 0);

struct ExtractionResult {
  GroundSet subset;
  CompositionMode mode = CompositionMode::kDifference;
  unsigned k = 2;
  std::uint64_t certified_bound = 0;  // 3k-3 for differences, 2k-2 otherwise
  double q = 1.0;
  BigInt energy_prime = 0;  // E'_k used for q
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t best_trial = 0;
  std::uint64_t sampled = 0;    // |A_*| in the best trial
  std::uint64_t deletions = 0;  // repair deletions in the best trial
  std::vector<std::uint64_t> trial_sizes;
  bool verified = false;
};

std::uint64_t certified_bound(CompositionMode mode, unsigned k);

// Random sampling with q = min(1, (|A| / (2 E'_k))^{1/(2k-1)}) followed by
// a repair loop; returns the largest verified subset over all trials.
// Modes: difference, sum, product (product requires 0 ∉ A).
ExtractionResult extract_random(const GroundSet& a, unsigned k,
                                CompositionMode mode = CompositionMode::kDifference,
                                std::uint64_t seed = 0, std::uint64_t trials = 20);

// Trial seed used by extract_random.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

struct DenseCoreReport {
  unsigned g = 1;
  GroundSet core;
  BigInt energy_full = 0;  // E_{g+1}(A)
  BigInt energy_core = 0;  // E_{g+1}(A_*)
  double ratio = 0.0;
  bool floor_holds = false;  // E_{g+1}(A_*) >= 4^{-(g+1)^2} E_{g+1}(A)
};

// A_* = {a : sum_{x∈A} r_{A-A}(x-a)^g >= E_{g+1}(A) / (2|A|)}.
DenseCoreReport dense_core_extract(const GroundSet& a, unsigned g);

nlohmann::json to_json(const ViolationWitness& w, const AmbientSpec& ambient);
nlohmann::json to_json(const ExtractionResult& r);
nlohmann::json to_json(const DenseCoreReport& r);

}  // namespace sidonkit

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sidonkit/core.hpp"
#include "sidonkit/kernels.hpp"
#include "sidonkit/numeric.hpp"

namespace sidonkit {

// Exact representation function r_{A∘B}. For integer ratio histograms each
// key is a reduced fraction stored as (num, den) in an Element.
class RepHistogram {
 public:
  RepHistogram(const GroundSet& a, const GroundSet& b, CompositionMode mode,
               bool skip_non_invertible = false);

  CompositionMode mode() const noexcept { return mode_; }
  const AmbientSpec& ambient() const noexcept { return ambient_; }
  const std::vector<HistEntry>& entries() const noexcept { return entries_; }
  bool fractional_keys() const noexcept {
    return mode_ == CompositionMode::kRatio && ambient_.kind() == AmbientKind::kIntegers;
  }
  std::uint64_t count(const Element& value) const;
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t skipped() const noexcept { return skipped_; }
  std::uint64_t max_count() const noexcept { return max_count_; }
  std::size_t support_size() const noexcept { return entries_.size(); }
  std::optional<std::string> left_label;
  std::optional<std::string> right_label;

 private:
  CompositionMode mode_;
  AmbientSpec ambient_;
  std::vector<HistEntry> entries_;
  std::uint64_t total_ = 0;
  std::uint64_t skipped_ = 0;
  std::uint64_t max_count_ = 0;
};

// The value exempt from multiplicity limits: 0 for differences, 1 for
// product and ratio, none for sums.
std::optional<Element> identity_value(const AmbientSpec& ambient, CompositionMode mode);

struct EnergyReport {
  unsigned k = 2;
  CompositionMode mode = CompositionMode::kDifference;
  std::size_t set_size = 0;
  BigInt value = 0;
  // log_{|A|}(value) - k; only meaningful for |A| >= 2.
  double kappa = 0.0;
  std::optional<BigInt> distinct_variant_value;
};

double kappa_of(const BigInt& value, std::size_t n, unsigned k);

// sum_x r_{A∘A}(x)^k for difference, sum or product.
EnergyReport energy_k(const GroundSet& a, unsigned k,
                      CompositionMode mode = CompositionMode::kDifference);
BigInt energy_from(const RepHistogram& h, unsigned k);

enum class DistinctReading {
  kAllEntries,  // all 2k entries pairwise distinct
  kWithinPair,  // only x_j != x'_j
};

// Ordered 2k-tuples with x_1-x'_1 = ... = x_k-x'_k (or sums / products for
// the other modes) under the chosen distinctness reading. Exact for any size:
// per value, the representing pairs form paths and cycles and the k-matchings
// are counted by dynamic programming.
BigInt energy_prime_k(const GroundSet& a, unsigned k,
                      DistinctReading reading = DistinctReading::kAllEntries,
                      CompositionMode mode = CompositionMode::kDifference);

// Direct enumeration of A^{2k}; CapExceeded once |A|^{2k} > budget.
BigInt energy_prime_k_enumerate(const GroundSet& a, unsigned k,
                                DistinctReading reading = DistinctReading::kAllEntries,
                                std::uint64_t budget = 400'000'000);

// sum_x r_{A-A}(x) r_{B-B}(x)
BigInt common_energy(const GroundSet& a, const GroundSet& b);

// {x : delta < r_{A-A}(x) <= 2 delta}
GroundSet popular_level_set(const GroundSet& a, std::uint64_t delta, bool include_zero = true);

struct DyadicLevel {
  std::uint64_t delta = 1;
  GroundSet level;
  BigInt score = 0;  // delta^{l+1} |P|
};

// Dyadic class delta in {1, 2, 4, ...} maximizing delta^{l+1}|P_delta|.
DyadicLevel dyadic_best_level(const GroundSet& a, unsigned l);

}  // namespace sidonkit

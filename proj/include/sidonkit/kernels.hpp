#pragma once

// Data-parallel inner loops. Each kernel has a straightforward serial
// reference in `serial::` and an OpenMP version in `parallel::`; the library
// calls the parallel one, tests and the benchmark compare the two. Results of
// both are identical and independent of the thread count.

#include <cstdint>
#include <vector>

#include "sidonkit/core.hpp"
#include "sidonkit/numeric.hpp"

namespace sidonkit {

struct HistEntry {
  Element value;
  std::uint64_t count = 0;
  friend bool operator==(const HistEntry&, const HistEntry&) = default;
};

struct PairHistogram {
  std::vector<HistEntry> entries;  // sorted by value
  std::uint64_t skipped = 0;       // non-invertible ratio pairs
};

namespace serial {

PairHistogram pair_histogram(const GroundSet& a, const GroundSet& b, CompositionMode mode,
                             bool skip_non_invertible = false);

// sum over entries of count^k
BigInt power_sum(const std::vector<HistEntry>& entries, unsigned k);

// out[i] = |A ∩ (P + a_i)|
std::vector<std::uint64_t> translate_overlaps(const GroundSet& a, const GroundSet& p);

}  // namespace serial

namespace parallel {

PairHistogram pair_histogram(const GroundSet& a, const GroundSet& b, CompositionMode mode,
                             bool skip_non_invertible = false);

BigInt power_sum(const std::vector<HistEntry>& entries, unsigned k);

std::vector<std::uint64_t> translate_overlaps(const GroundSet& a, const GroundSet& p);

}  // namespace parallel

int max_threads();
void set_threads(int n);

}  // namespace sidonkit

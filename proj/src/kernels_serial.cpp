#include <map>

#include "sidonkit/kernels.hpp"

namespace sidonkit::serial {

PairHistogram pair_histogram(const GroundSet& a, const GroundSet& b, CompositionMode mode,
                             bool skip_non_invertible) {
  require_same_ambient(a, b);
  PairHistogram out;
  std::map<Element, std::uint64_t> counts;
  for (const Element& x : a.elements()) {
    for (const Element& y : b.elements()) {
      if (mode == CompositionMode::kRatio && y.x == 0 && !a.ambient().is_plane()) {
        if (!skip_non_invertible) throw Error(Errc::kDivisionByZero, "ratio by zero");
        ++out.skipped;
        continue;
      }
      ++counts[compose(a.ambient(), mode, x, y)];
    }
  }
  out.entries.reserve(counts.size());
  for (const auto& [v, c] : counts) out.entries.push_back({v, c});
  return out;
}

BigInt power_sum(const std::vector<HistEntry>& entries, unsigned k) {
  BigInt total = 0;
  for (const HistEntry& e : entries) total += big_pow(BigInt(e.count), k);
  return total;
}

std::vector<std::uint64_t> translate_overlaps(const GroundSet& a, const GroundSet& p) {
  require_same_ambient(a, p);
  std::vector<std::uint64_t> out;
  out.reserve(a.size());
  for (const Element& x : a.elements()) {
    std::uint64_t c = 0;
    for (const Element& q : p.elements()) {
      if (a.contains(compose(a.ambient(), CompositionMode::kSum, x, q))) ++c;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace sidonkit::serial

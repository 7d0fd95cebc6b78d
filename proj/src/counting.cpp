#include "sidonkit/counting.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "omp_guard.hpp"

namespace sidonkit {

RepHistogram::RepHistogram(const GroundSet& a, const GroundSet& b, CompositionMode mode,
                           bool skip_non_invertible)
    : left_label(a.label()), right_label(b.label()), mode_(mode), ambient_(a.ambient()) {
  PairHistogram h = parallel::pair_histogram(a, b, mode, skip_non_invertible);
  entries_ = std::move(h.entries);
  skipped_ = h.skipped;
  for (const HistEntry& e : entries_) {
    total_ += e.count;
    max_count_ = std::max(max_count_, e.count);
  }
}

std::uint64_t RepHistogram::count(const Element& value) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), value,
                             [](const HistEntry& e, const Element& v) { return e.value < v; });
  return (it != entries_.end() && it->value == value) ? it->count : 0;
}

std::optional<Element> identity_value(const AmbientSpec& ambient, CompositionMode mode) {
  switch (mode) {
    case CompositionMode::kDifference: return additive_identity(ambient);
    case CompositionMode::kSum: return std::nullopt;
    case CompositionMode::kProduct:
    case CompositionMode::kRatio:
      if (ambient.kind() == AmbientKind::kIntegers && mode == CompositionMode::kRatio) {
        return Element{1, 1};  // the fraction 1/1
      }
      return Element{1};
  }
  return std::nullopt;
}

double kappa_of(const BigInt& value, std::size_t n, unsigned k) {
  if (n < 2) return 0.0;
  return log2_big(value) / std::log2(static_cast<double>(n)) - static_cast<double>(k);
}

BigInt energy_from(const RepHistogram& h, unsigned k) { return parallel::power_sum(h.entries(), k); }

EnergyReport energy_k(const GroundSet& a, unsigned k, CompositionMode mode) {
  if (k < 1) throw Error(Errc::kInvalidArgument, "energy order k must be at least 1");
  if (a.empty()) throw Error(Errc::kInvalidArgument, "energy of the empty set");
  if (mode == CompositionMode::kRatio) {
    throw Error(Errc::kUnsupportedMode, "energy is defined for difference, sum and product");
  }
  RepHistogram h(a, a, mode);
  EnergyReport r;
  r.k = k;
  r.mode = mode;
  r.set_size = a.size();
  r.value = energy_from(h, k);
  r.kappa = kappa_of(r.value, a.size(), k);
  return r;
}

namespace {

BigInt binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  BigInt out = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    out *= (n - r + i);
    out /= i;
  }
  return out;
}

BigInt falling(std::uint64_t m, unsigned k) {
  if (k > m) return 0;
  BigInt out = 1;
  for (unsigned i = 0; i < k; ++i) out *= (m - i);
  return out;
}

// j-matchings of a path with m edges.
BigInt path_matchings(std::int64_t m, std::int64_t j) {
  return j == 0 ? BigInt(1) : binomial(m - j + 1, j);
}

// j-matchings of a cycle with m edges; m == 2 is a pair of parallel edges.
BigInt cycle_matchings(std::int64_t m, std::int64_t j) {
  if (j == 0) return 1;
  if (m == 2) return j == 1 ? BigInt(2) : BigInt(0);
  return binomial(m - j, j) + binomial(m - j - 1, j - 1);
}

// Ordered k-tuples of pairwise disjoint pairs (x, x - d), x, x - d ∈ A.
BigInt disjoint_difference_tuples(const GroundSet& a, const Element& d, unsigned k) {
  const AmbientSpec& amb = a.ambient();
  std::vector<Element> heads;  // x with x - d ∈ A
  for (const Element& x : a.elements()) {
    if (a.contains(compose(amb, CompositionMode::kDifference, x, d))) heads.push_back(x);
  }
  if (heads.size() < k) return 0;
  auto is_head = [&](const Element& x) { return std::binary_search(heads.begin(), heads.end(), x); };
  std::vector<char> seen(heads.size(), 0);
  auto index_of = [&](const Element& x) {
    return static_cast<std::size_t>(std::lower_bound(heads.begin(), heads.end(), x) - heads.begin());
  };
  std::map<std::int64_t, std::uint64_t> paths, cycles;  // edge count -> multiplicity
  for (std::size_t i = 0; i < heads.size(); ++i) {
    // A path starts at a head with no edge coming in from x + d.
    if (is_head(compose(amb, CompositionMode::kSum, heads[i], d))) continue;
    std::int64_t m = 0;
    Element cur = heads[i];
    while (is_head(cur)) {
      seen[index_of(cur)] = 1;
      ++m;
      cur = compose(amb, CompositionMode::kDifference, cur, d);
    }
    ++paths[m];
  }
  for (std::size_t i = 0; i < heads.size(); ++i) {
    if (seen[i]) continue;
    std::int64_t m = 0;
    Element cur = heads[i];
    while (!seen[index_of(cur)]) {
      seen[index_of(cur)] = 1;
      ++m;
      cur = compose(amb, CompositionMode::kDifference, cur, d);
    }
    ++cycles[m];
  }
  // Truncated product of the per-component matching polynomials.
  std::vector<BigInt> poly(k + 1, 0);
  poly[0] = 1;
  auto absorb = [&](auto&& coeff, std::int64_t m, std::uint64_t times) {
    std::vector<BigInt> comp(k + 1);
    for (unsigned j = 0; j <= k; ++j) comp[j] = coeff(m, j);
    for (std::uint64_t t = 0; t < times; ++t) {
      std::vector<BigInt> next(k + 1, 0);
      for (unsigned i = 0; i <= k; ++i) {
        if (poly[i] == 0) continue;
        for (unsigned j = 0; i + j <= k; ++j) {
          if (comp[j] != 0) next[i + j] += poly[i] * comp[j];
        }
      }
      poly = std::move(next);
    }
  };
  for (const auto& [m, times] : paths) absorb(path_matchings, m, times);
  for (const auto& [m, times] : cycles) absorb(cycle_matchings, m, times);
  return poly[k] * falling(k, k);
}

}  // namespace

BigInt energy_prime_k(const GroundSet& a, unsigned k, DistinctReading reading, CompositionMode mode) {
  if (k < 1) throw Error(Errc::kInvalidArgument, "k must be at least 1");
  if (mode == CompositionMode::kRatio) {
    throw Error(Errc::kUnsupportedMode, "distinct-tuple energy is defined for difference, sum, product");
  }
  if (a.empty()) return 0;
  const AmbientSpec& amb = a.ambient();
  if (mode == CompositionMode::kProduct && a.contains(Element{0})) {
    throw Error(Errc::kPreconditionFailed, "0 has no multiplicative partner; remove it first");
  }
  RepHistogram h(a, a, mode);
  if (mode == CompositionMode::kDifference) {
    const Element zero = additive_identity(amb);
    if (reading == DistinctReading::kWithinPair) {
      BigInt total = 0;
      for (const HistEntry& e : h.entries()) {
        if (e.value != zero) total += big_pow(BigInt(e.count), k);
      }
      return total;
    }
    std::vector<Element> values;
    for (const HistEntry& e : h.entries()) {
      if (e.value != zero && e.count >= k) values.push_back(e.value);
    }
    std::vector<BigInt> per_value(values.size());
    const auto nv = static_cast<std::int64_t>(values.size());
    detail::FirstException guard;
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < nv; ++i) {
      guard.run([&] {
        per_value[static_cast<std::size_t>(i)] =
            disjoint_difference_tuples(a, values[static_cast<std::size_t>(i)], k);
      });
    }
    guard.rethrow();
    BigInt total = 0;
    for (const BigInt& v : per_value) total += v;
    return total;
  }
  // Sums and products: for a value s the map x -> s∘x^{-1} is an involution,
  // so the representing pairs with distinct entries are disjoint unordered pairs.
  std::map<Element, std::uint64_t> diagonal;
  for (const Element& x : a.elements()) ++diagonal[compose(amb, mode, x, x)];
  BigInt total = 0;
  for (const HistEntry& e : h.entries()) {
    auto it = diagonal.find(e.value);
    const std::uint64_t diag = it == diagonal.end() ? 0 : it->second;
    const std::uint64_t off = e.count - diag;  // ordered off-diagonal pairs
    if (reading == DistinctReading::kWithinPair) {
      total += big_pow(BigInt(off), k);
    } else {
      total += falling(off / 2, k) * big_pow(BigInt(2), k);
    }
  }
  return total;
}

BigInt energy_prime_k_enumerate(const GroundSet& a, unsigned k, DistinctReading reading,
                                std::uint64_t budget) {
  const std::size_t n = a.size();
  long double work = std::pow(static_cast<long double>(n), 2.0L * k);
  if (work > static_cast<long double>(budget)) {
    throw Error(Errc::kCapExceeded, "enumeration of |A|^{2k} tuples exceeds the budget");
  }
  const AmbientSpec& amb = a.ambient();
  std::vector<std::size_t> idx(2 * k, 0);
  BigInt count = 0;
  if (n == 0) return 0;
  while (true) {
    bool ok = true;
    if (reading == DistinctReading::kAllEntries) {
      for (std::size_t i = 0; i < idx.size() && ok; ++i) {
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
          if (idx[i] == idx[j]) {
            ok = false;
            break;
          }
        }
      }
    } else {
      for (unsigned j = 0; j < k && ok; ++j) ok = idx[2 * j] != idx[2 * j + 1];
    }
    if (ok) {
      const Element d = compose(amb, CompositionMode::kDifference, a[idx[0]], a[idx[1]]);
      for (unsigned j = 1; j < k && ok; ++j) {
        ok = compose(amb, CompositionMode::kDifference, a[idx[2 * j]], a[idx[2 * j + 1]]) == d;
      }
      if (ok) ++count;
    }
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == n) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return count;
}

BigInt common_energy(const GroundSet& a, const GroundSet& b) {
  require_same_ambient(a, b);
  RepHistogram ha(a, a, CompositionMode::kDifference);
  RepHistogram hb(b, b, CompositionMode::kDifference);
  BigInt total = 0;
  auto i = ha.entries().begin();
  auto j = hb.entries().begin();
  while (i != ha.entries().end() && j != hb.entries().end()) {
    if (i->value < j->value) {
      ++i;
    } else if (j->value < i->value) {
      ++j;
    } else {
      total += BigInt(i->count) * j->count;
      ++i;
      ++j;
    }
  }
  return total;
}

GroundSet popular_level_set(const GroundSet& a, std::uint64_t delta, bool include_zero) {
  if (delta < 1) throw Error(Errc::kInvalidArgument, "delta must be at least 1");
  std::vector<Element> out;
  if (!a.empty()) {
    RepHistogram h(a, a, CompositionMode::kDifference);
    const Element zero = additive_identity(a.ambient());
    for (const HistEntry& e : h.entries()) {
      if (!include_zero && e.value == zero) continue;
      if (e.count > delta && e.count <= 2 * delta) out.push_back(e.value);
    }
  }
  return a.with_elements(std::move(out));
}

DyadicLevel dyadic_best_level(const GroundSet& a, unsigned l) {
  if (l < 1) throw Error(Errc::kInvalidArgument, "l must be at least 1");
  if (a.size() <= 1) {
    // r(0) = 1 lies in no class with integer delta; the only value is 0.
    return {1, a.with_elements({additive_identity(a.ambient())}), 1};
  }
  RepHistogram h(a, a, CompositionMode::kDifference);
  DyadicLevel best{0, a.with_elements({}), -1};
  for (std::uint64_t delta = 1; delta < h.max_count(); delta *= 2) {
    std::vector<Element> level;
    for (const HistEntry& e : h.entries()) {
      if (e.count > delta && e.count <= 2 * delta) level.push_back(e.value);
    }
    BigInt score = big_pow(BigInt(delta), l + 1) * level.size();
    if (score > best.score) best = {delta, a.with_elements(std::move(level)), score};
  }
  return best;
}

}  // namespace sidonkit

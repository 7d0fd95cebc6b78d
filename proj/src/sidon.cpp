#include "sidonkit/sidon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "omp_guard.hpp"
#include "sidonkit/counting.hpp"
#include "sidonkit/io.hpp"

namespace sidonkit {

namespace {

using i128 = __int128;

bool is_identity(const std::optional<Element>& id, const Element& v) { return id && *id == v; }

bool sorted_contains(const std::vector<Element>& v, const Element& e) {
  return std::binary_search(v.begin(), v.end(), e);
}

std::size_t index_of(const std::vector<Element>& v, const Element& e) {
  return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), e) - v.begin());
}

// Serial sort-based histogram of B∘B. Used inside per-trial work, where the
// dense kernels would allocate a full table per thread.
std::vector<HistEntry> local_histogram(const AmbientSpec& amb, const std::vector<Element>& b,
                                       CompositionMode mode) {
  std::vector<Element> values;
  values.reserve(b.size() * b.size());
  for (const Element& x : b)
    for (const Element& y : b) values.push_back(compose(amb, mode, x, y));
  std::sort(values.begin(), values.end());
  std::vector<HistEntry> out;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    out.push_back({values[i], j - i});
    i = j;
  }
  return out;
}

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

MultiplicityStat max_multiplicity(const GroundSet& s, CompositionMode mode) {
  RepHistogram h(s, s, mode, true);
  const auto id = identity_value(s.ambient(), mode);
  MultiplicityStat out;
  for (const HistEntry& e : h.entries()) {
    if (is_identity(id, e.value)) continue;
    if (e.count > out.max_count) {
      out.max_count = e.count;
      out.argmax = e.value;
    }
  }
  return out;
}

std::optional<ViolationWitness> verify_multiplicity(const GroundSet& s, std::uint64_t g,
                                                    CompositionMode mode) {
  if (g < 1) throw Error(Errc::kInvalidArgument, "g must be at least 1");
  const MultiplicityStat stat = max_multiplicity(s, mode);
  if (stat.max_count <= g) return std::nullopt;
  ViolationWitness w;
  w.kind = ViolationWitness::Kind::kMultiplicity;
  w.value = *stat.argmax;
  w.count = stat.max_count;
  return w;
}

std::optional<ViolationWitness> verify_bfamily(const GroundSet& s, BFamilyParams params,
                                               std::uint64_t budget) {
  if (params.k < 2 || params.g < 1) throw Error(Errc::kInvalidArgument, "need k >= 2 and g >= 1");
  const std::size_t n = s.size();
  if (n < params.k) return std::nullopt;
  if (binomial_saturating(n, params.k) > budget) {
    throw Error(Errc::kCapExceeded, "C(" + std::to_string(n) + ", " + std::to_string(params.k) +
                                        ") subsets exceed the enumeration budget");
  }
  const AmbientSpec& amb = s.ambient();
  // shifted[i] = sorted (s_i - S): the shifts x with s_i ∈ S + x.
  std::vector<std::vector<Element>> shifted(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const Element& t : s.elements()) shifted[i].push_back(compose(amb, CompositionMode::kDifference, s[i], t));
    std::sort(shifted[i].begin(), shifted[i].end());
  }
  const std::size_t need = params.g + 1;
  std::optional<std::vector<Element>> found;

  // k-subsets visited largest elements first.
  std::vector<std::vector<Element>> level(params.k + 1);
  auto rec = [&](auto&& self, unsigned depth, std::size_t upper) -> bool {
    if (depth == params.k) {
      found = level[depth];
      return true;
    }
    for (std::size_t i = upper; i-- > params.k - depth - 1;) {
      auto& next = level[depth + 1];
      next.clear();
      if (depth == 0) {
        next = shifted[i];
      } else {
        std::set_intersection(level[depth].begin(), level[depth].end(), shifted[i].begin(), shifted[i].end(),
                              std::back_inserter(next));
      }
      if (next.size() < need) continue;
      if (self(self, depth + 1, i)) return true;
    }
    return false;
  };
  if (!rec(rec, 0, n)) return std::nullopt;

  ViolationWitness w;
  w.kind = ViolationWitness::Kind::kIntersection;
  const Element zero = additive_identity(amb);
  for (const Element& x : *found) {
    if (x == zero) continue;
    w.shifts.push_back(x);
    if (w.shifts.size() == params.g) break;
  }
  std::vector<Element> inter(s.elements().begin(), s.elements().end());
  for (const Element& x : w.shifts) {
    const GroundSet shifted_set = translate(s, x);
    std::vector<Element> next;
    std::set_intersection(inter.begin(), inter.end(), shifted_set.elements().begin(),
                          shifted_set.elements().end(), std::back_inserter(next));
    inter = std::move(next);
  }
  w.elements = std::move(inter);
  return w;
}

bool witness_holds(const GroundSet& s, const ViolationWitness& w, std::uint64_t g, CompositionMode mode,
                   unsigned k) {
  if (w.kind == ViolationWitness::Kind::kMultiplicity) {
    if (is_identity(identity_value(s.ambient(), mode), w.value)) return false;
    RepHistogram h(s, s, mode, true);
    return h.count(w.value) == w.count && w.count > g;
  }
  if (w.shifts.size() != g) return false;
  const Element zero = additive_identity(s.ambient());
  std::vector<Element> sorted_shifts = w.shifts;
  std::sort(sorted_shifts.begin(), sorted_shifts.end());
  if (std::adjacent_find(sorted_shifts.begin(), sorted_shifts.end()) != sorted_shifts.end()) return false;
  if (std::find(sorted_shifts.begin(), sorted_shifts.end(), zero) != sorted_shifts.end()) return false;
  const std::size_t size = intersection_size(s, w.shifts);
  if (size < k) return false;
  for (const Element& e : w.elements) {
    if (!s.contains(e)) return false;
    for (const Element& x : w.shifts) {
      if (!s.contains(compose(s.ambient(), CompositionMode::kDifference, e, x))) return false;
    }
  }
  return w.elements.size() >= k;
}

// ---------------------------------------------------------------------------
// Greedy and exact search

namespace {

// Incremental multiplicity table over the pair values of a fixed ground set.
class PairTable {
 public:
  PairTable(const GroundSet& a, CompositionMode mode) : n_(a.size()), id_(n_ * n_) {
    std::vector<Element> values;
    values.reserve(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) values.push_back(compose(a.ambient(), mode, a[i], a[j]));
    std::vector<Element> distinct = values;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t p = 0; p < values.size(); ++p) {
      id_[p] = static_cast<std::uint32_t>(index_of(distinct, values[p]));
    }
    exempt_.assign(distinct.size(), 0);
    counts_.assign(distinct.size(), 0);
    if (auto id = identity_value(a.ambient(), mode)) {
      auto it = std::lower_bound(distinct.begin(), distinct.end(), *id);
      if (it != distinct.end() && *it == *id) exempt_[static_cast<std::size_t>(it - distinct.begin())] = 1;
    }
  }

  // Adds element i to the members; returns false (and leaves the table
  // unchanged) when some non-exempt count would exceed k.
  bool try_add(std::size_t i, const std::vector<std::size_t>& members, std::uint64_t k) {
    touched_.clear();
    auto bump = [&](std::uint32_t id) {
      ++counts_[id];
      touched_.push_back(id);
    };
    for (std::size_t j : members) {
      bump(id_[i * n_ + j]);
      bump(id_[j * n_ + i]);
    }
    bump(id_[i * n_ + i]);
    for (std::uint32_t id : touched_) {
      if (!exempt_[id] && counts_[id] > k) {
        for (std::uint32_t t : touched_) --counts_[t];
        return false;
      }
    }
    return true;
  }

  void remove(std::size_t i, const std::vector<std::size_t>& members_without_i) {
    for (std::size_t j : members_without_i) {
      --counts_[id_[i * n_ + j]];
      --counts_[id_[j * n_ + i]];
    }
    --counts_[id_[i * n_ + i]];
  }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> id_;
  std::vector<char> exempt_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint32_t> touched_;
};

bool translation_symmetric(const GroundSet& a, CompositionMode mode) {
  if (mode != CompositionMode::kDifference && mode != CompositionMode::kSum) return false;
  if (a.empty()) return false;
  const AmbientSpec& amb = a.ambient();
  if (amb.kind() == AmbientKind::kIntegers) {
    const i128 span = static_cast<i128>(a[a.size() - 1].x) - a[0].x + 1;
    return span == static_cast<i128>(a.size());
  }
  return static_cast<std::int64_t>(a.size()) == amb.order();
}

}  // namespace

GroundSet sid_k_greedy(const GroundSet& a, std::uint64_t k, CompositionMode mode, std::uint64_t seed) {
  if (k < 1) throw Error(Errc::kInvalidArgument, "k must be at least 1");
  PairTable table(a, mode);
  std::vector<std::size_t> order(a.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> members;
  for (std::size_t i : order) {
    if (table.try_add(i, members, k)) members.push_back(i);
  }
  std::vector<Element> out;
  for (std::size_t i : members) out.push_back(a[i]);
  return a.with_elements(std::move(out));
}

ExactResult sid_k_exact(const GroundSet& a, std::uint64_t k, CompositionMode mode, std::size_t cap,
                        std::uint64_t node_budget) {
  if (k < 1) throw Error(Errc::kInvalidArgument, "k must be at least 1");
  if (a.size() > cap) {
    throw Error(Errc::kCapExceeded,
                "|A| = " + std::to_string(a.size()) + " exceeds the exact-search cap " + std::to_string(cap));
  }
  ExactResult result;
  result.witness = a.with_elements({});
  if (a.empty()) return result;

  // Lower bound from a few greedy runs.
  for (std::uint64_t s = 0; s < 8; ++s) {
    GroundSet g = sid_k_greedy(a, k, mode, s);
    if (g.size() > result.size) {
      result.size = g.size();
      result.witness = std::move(g);
    }
  }
  if (result.size == a.size()) return result;

  PairTable table(a, mode);
  std::vector<std::size_t> members;
  std::vector<std::size_t> best_members;
  std::size_t best = result.size;
  std::uint64_t nodes = 0;

  auto rec = [&](auto&& self, std::vector<std::size_t> cand) -> void {
    if (++nodes > node_budget) throw Error(Errc::kCapExceeded, "exact search exceeded its node budget");
    while (!cand.empty()) {
      if (members.size() + cand.size() <= best) return;
      const std::size_t i = cand.front();
      cand.erase(cand.begin());
      if (!table.try_add(i, members, k)) continue;
      members.push_back(i);
      if (members.size() > best) {
        best = members.size();
        best_members = members;
      }
      // Keep only candidates still individually compatible.
      std::vector<std::size_t> next;
      next.reserve(cand.size());
      for (std::size_t c : cand) {
        if (table.try_add(c, members, k)) {
          table.remove(c, members);
          next.push_back(c);
        }
      }
      self(self, std::move(next));
      members.pop_back();
      table.remove(i, members);
    }
  };

  std::vector<std::size_t> cand(a.size());
  std::iota(cand.begin(), cand.end(), 0);
  if (translation_symmetric(a, mode)) {
    // Every admissible B has a translate containing the least element.
    table.try_add(0, members, k);
    members.push_back(0);
    if (best < 1) {
      best = 1;
      best_members = members;
    }
    std::vector<std::size_t> next;
    for (std::size_t c = 1; c < a.size(); ++c) {
      if (table.try_add(c, members, k)) {
        table.remove(c, members);
        next.push_back(c);
      }
    }
    rec(rec, std::move(next));
  } else {
    rec(rec, std::move(cand));
  }
  result.nodes = nodes;
  if (!best_members.empty() && best_members.size() > result.size) {
    std::vector<Element> out;
    for (std::size_t i : best_members) out.push_back(a[i]);
    result.witness = a.with_elements(std::move(out));
    result.size = best_members.size();
  }
  return result;
}

// ---------------------------------------------------------------------------
// Randomized extraction

std::uint64_t certified_bound(CompositionMode mode, unsigned k) {
  return mode == CompositionMode::kDifference ? 3ULL * k - 3 : 2ULL * k - 2;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  auto splitmix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return splitmix(splitmix(seed) ^ trial);
}

namespace {

// Largest number of pairwise disjoint pairs {x, x+d} inside b, found on the
// path/cycle decomposition of x -> x+d. Each edge adds one to the
// participation of both endpoints.
std::uint64_t difference_matching(const AmbientSpec& amb, const std::vector<Element>& b, const Element& d,
                                  std::vector<std::uint64_t>* participation) {
  const std::size_t n = b.size();
  std::vector<std::int64_t> succ(n, -1);
  std::vector<char> has_pred(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Element y = compose(amb, CompositionMode::kSum, b[i], d);
    const std::size_t j = index_of(b, y);
    if (j < n && b[j] == y) {
      succ[i] = static_cast<std::int64_t>(j);
      has_pred[j] = 1;
      if (participation) {
        ++(*participation)[i];
        ++(*participation)[j];
      }
    }
  }
  std::vector<char> seen(n, 0);
  std::uint64_t matching = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (has_pred[i] || succ[i] < 0) continue;
    std::uint64_t m = 0;
    for (std::int64_t x = static_cast<std::int64_t>(i); x >= 0; x = succ[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = 1;
      if (succ[static_cast<std::size_t>(x)] >= 0) ++m;
    }
    matching += (m + 1) / 2;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i] || succ[i] < 0) continue;
    std::uint64_t m = 0;
    std::size_t x = i;
    do {
      seen[x] = 1;
      ++m;
      x = static_cast<std::size_t>(succ[x]);
    } while (x != i);
    matching += m / 2;
  }
  return matching;
}

// Partner y with x∘y = s for sums and products, if it exists in the ambient.
std::optional<Element> partner(const AmbientSpec& amb, CompositionMode mode, const Element& s, const Element& x) {
  if (mode == CompositionMode::kSum) return compose(amb, CompositionMode::kDifference, s, x);
  if (amb.kind() == AmbientKind::kIntegers) {
    if (x.x == 0 || s.x % x.x != 0) return std::nullopt;
    return Element{s.x / x.x};
  }
  if (x.x == 0) return std::nullopt;
  return compose(amb, CompositionMode::kRatio, s, x);
}

std::uint64_t repair(const AmbientSpec& amb, std::vector<Element>& b, unsigned k, CompositionMode mode) {
  const auto id = identity_value(amb, mode);
  const std::uint64_t bound = certified_bound(mode, k);
  std::uint64_t deletions = 0;
  while (b.size() > 1) {
    const auto hist = local_histogram(amb, b, mode);
    std::vector<std::uint64_t> participation(b.size(), 0);
    bool offending = false;
    for (const HistEntry& e : hist) {
      if (is_identity(id, e.value)) continue;
      if (mode == CompositionMode::kDifference) {
        if (e.count < k) continue;
        const Element neg = negate(amb, e.value);
        if (neg < e.value) continue;  // d and -d share their pairs
        if (difference_matching(amb, b, e.value, nullptr) < k) continue;
        difference_matching(amb, b, e.value, &participation);
        offending = true;
      } else {
        // Off-diagonal pairs are disjoint; the diagonal term is also bounded.
        if (e.count <= bound) continue;
        offending = true;
        for (std::size_t i = 0; i < b.size(); ++i) {
          const auto y = partner(amb, mode, e.value, b[i]);
          if (y && sorted_contains(b, *y)) ++participation[i];
        }
      }
    }
    if (!offending) break;
    const auto worst = std::max_element(participation.begin(), participation.end());
    b.erase(b.begin() + (worst - participation.begin()));
    ++deletions;
  }
  return deletions;
}

}  // namespace

ExtractionResult extract_random(const GroundSet& a, unsigned k, CompositionMode mode, std::uint64_t seed,
                                std::uint64_t trials) {
  if (k < 2) throw Error(Errc::kInvalidArgument, "k must be at least 2");
  if (trials < 1) throw Error(Errc::kInvalidArgument, "trials must be at least 1");
  if (mode == CompositionMode::kRatio) throw Error(Errc::kUnsupportedMode, "extraction supports difference, sum, product");
  if (!a.ambient().supports(mode)) throw Error(Errc::kUnsupportedMode, std::string(mode_name(mode)) + " unavailable");
  if (a.empty()) throw Error(Errc::kInvalidArgument, "A must be nonempty");

  ExtractionResult out;
  out.mode = mode;
  out.k = k;
  out.certified_bound = certified_bound(mode, k);
  out.seed = seed;
  out.trials = trials;
  out.energy_prime = energy_prime_k(a, k, DistinctReading::kAllEntries, mode);
  if (out.energy_prime == 0) {
    out.q = 1.0;
  } else {
    const double log_q = (std::log2(static_cast<double>(a.size())) - 1.0 - log2_big(out.energy_prime)) /
                         static_cast<double>(2 * k - 1);
    out.q = std::min(1.0, std::exp2(log_q));
  }

  std::vector<std::vector<Element>> kept(trials);
  std::vector<std::uint64_t> sampled(trials), deletions(trials);
  detail::FirstException guard;
  const auto& elems = a.vector();
  const double q = out.q;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
    guard.run([&] {
      const auto ti = static_cast<std::size_t>(t);
      std::mt19937_64 rng(trial_seed(seed, ti));
      std::vector<Element> b;
      for (const Element& x : elems) {
        if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < q) b.push_back(x);
      }
      sampled[ti] = b.size();
      deletions[ti] = repair(a.ambient(), b, k, mode);
      kept[ti] = std::move(b);
    });
  }
  guard.rethrow();

  std::size_t best = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    out.trial_sizes.push_back(kept[t].size());
    if (kept[t].size() > kept[best].size()) best = t;
  }
  out.best_trial = best;
  out.sampled = sampled[best];
  out.deletions = deletions[best];
  out.subset = a.with_elements(kept[best]);
  if (verify_multiplicity(out.subset, out.certified_bound, mode)) {
    throw Error(Errc::kVerificationFailed, "extracted subset exceeds its certified bound");
  }
  out.verified = true;
  return out;
}

// ---------------------------------------------------------------------------
// Dense core

namespace {

template <class Acc>
std::vector<Acc> inner_sums(const GroundSet& a, const RepHistogram& h, unsigned g) {
  std::vector<Acc> powers(h.entries().size());
  for (std::size_t i = 0; i < powers.size(); ++i) {
    Acc p = 1;
    for (unsigned j = 0; j < g; ++j) p *= static_cast<Acc>(h.entries()[i].count);
    powers[i] = p;
  }
  std::vector<Acc> sums(a.size(), 0);
  const auto& entries = h.entries();
  for (std::size_t i = 0; i < a.size(); ++i) {
    Acc s = 0;
    for (const Element& x : a.elements()) {
      const Element d = compose(a.ambient(), CompositionMode::kDifference, x, a[i]);
      auto it = std::lower_bound(entries.begin(), entries.end(), d,
                                 [](const HistEntry& e, const Element& v) { return e.value < v; });
      s += powers[static_cast<std::size_t>(it - entries.begin())];
    }
    sums[i] = s;
  }
  return sums;
}

}  // namespace

DenseCoreReport dense_core_extract(const GroundSet& a, unsigned g) {
  if (g < 1) throw Error(Errc::kInvalidArgument, "g must be at least 1");
  if (a.empty()) throw Error(Errc::kInvalidArgument, "A must be nonempty");
  DenseCoreReport out;
  out.g = g;
  RepHistogram h(a, a, CompositionMode::kDifference);
  out.energy_full = energy_from(h, g + 1);
  const BigInt threshold_times = out.energy_full;  // compare 2|A| s(a) >= E_{g+1}
  std::vector<Element> core;
  const double bits = (g + 1) * std::log2(static_cast<double>(a.size()) + 1.0);
  if (bits < 120.0) {
    const auto sums = inner_sums<unsigned __int128>(a, h, g);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const unsigned __int128 lhs = sums[i] * 2 * a.size();
      BigInt big_lhs = static_cast<std::uint64_t>(lhs >> 64);
      big_lhs <<= 64;
      big_lhs += static_cast<std::uint64_t>(lhs);
      if (big_lhs >= threshold_times) core.push_back(a[i]);
    }
  } else {
    const auto sums = inner_sums<BigInt>(a, h, g);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (sums[i] * 2 * a.size() >= threshold_times) core.push_back(a[i]);
    }
  }
  out.core = a.with_elements(std::move(core));
  out.energy_core = energy_k(out.core, g + 1).value;
  out.ratio = std::exp2(log2_big(out.energy_core) - log2_big(out.energy_full));
  out.floor_holds = out.energy_core * big_pow(4, (g + 1) * (g + 1)) >= out.energy_full;
  return out;
}

nlohmann::json to_json(const ViolationWitness& w, const AmbientSpec& ambient) {
  nlohmann::json j;
  if (w.kind == ViolationWitness::Kind::kMultiplicity) {
    j["kind"] = "multiplicity";
    j["value"] = element_to_json(w.value, ambient);
    j["count"] = w.count;
  } else {
    j["kind"] = "intersection";
    j["shifts"] = nlohmann::json::array();
    for (const Element& e : w.shifts) j["shifts"].push_back(element_to_json(e, ambient));
    j["elements"] = nlohmann::json::array();
    for (const Element& e : w.elements) j["elements"].push_back(element_to_json(e, ambient));
  }
  return j;
}

nlohmann::json to_json(const ExtractionResult& r) {
  return {
      {"mode", mode_name(r.mode)},
      {"k", r.k},
      {"certified_bound", r.certified_bound},
      {"q", r.q},
      {"energy_prime", to_string(r.energy_prime)},
      {"seed", r.seed},
      {"trials", r.trials},
      {"best_trial", r.best_trial},
      {"sampled", r.sampled},
      {"deletions", r.deletions},
      {"trial_sizes", r.trial_sizes},
      {"size", r.subset.size()},
      {"verified", r.verified},
      {"subset", set_to_json(r.subset)},
  };
}

nlohmann::json to_json(const DenseCoreReport& r) {
  return {
      {"g", r.g},
      {"core_size", r.core.size()},
      {"energy_full", to_string(r.energy_full)},
      {"energy_core", to_string(r.energy_core)},
      {"ratio", r.ratio},
      {"floor_holds", r.floor_holds},
      {"core", set_to_json(r.core)},
  };
}

}  // namespace sidonkit

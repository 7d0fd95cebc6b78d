#include <algorithm>
#include <limits>
#include <optional>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#include <parallel/algorithm>
#endif

#include "sidonkit/kernels.hpp"
#include "omp_guard.hpp"

namespace sidonkit {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

namespace parallel {

namespace {

using i128 = __int128;

// Largest dense counting table (entries) before switching to sort-based
// counting.
constexpr i128 kDenseLimit = i128{1} << 25;

struct DenseLayout {
  std::int64_t offset = 0;  // value of index 0 (scalar kinds)
  std::int64_t size = 0;
};

std::int64_t norm(i128 v, std::int64_t m) {
  i128 r = v % m;
  return static_cast<std::int64_t>(r < 0 ? r + m : r);
}

// Range of x ∘ y over the bounding boxes of A and B for integer ops.
std::optional<std::pair<i128, i128>> integer_range(const GroundSet& a, const GroundSet& b,
                                                   CompositionMode mode) {
  const i128 a_lo = a.elements().front().x, a_hi = a.elements().back().x;
  const i128 b_lo = b.elements().front().x, b_hi = b.elements().back().x;
  switch (mode) {
    case CompositionMode::kDifference: return std::pair{a_lo - b_hi, a_hi - b_lo};
    case CompositionMode::kSum: return std::pair{a_lo + b_lo, a_hi + b_hi};
    case CompositionMode::kProduct: {
      const i128 c[4] = {a_lo * b_lo, a_lo * b_hi, a_hi * b_lo, a_hi * b_hi};
      return std::pair{*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
    }
    case CompositionMode::kRatio: return std::nullopt;
  }
  return std::nullopt;
}

std::optional<DenseLayout> dense_layout(const GroundSet& a, const GroundSet& b,
                                        CompositionMode mode) {
  const AmbientSpec& amb = a.ambient();
  if (amb.is_finite()) {
    if (amb.order() > kDenseLimit) return std::nullopt;
    return DenseLayout{0, amb.order()};
  }
  auto range = integer_range(a, b, mode);
  if (!range) return std::nullopt;
  const auto [lo, hi] = *range;
  constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();
  constexpr i128 kMin = std::numeric_limits<std::int64_t>::min();
  if (lo < kMin || hi > kMax) {
    throw Error(Errc::kOverflowBudgetExceeded, "composition exceeds signed 64-bit range");
  }
  if (hi - lo + 1 > kDenseLimit) return std::nullopt;
  return DenseLayout{static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi - lo + 1)};
}

// Calls body(i, j, value) for pair (a_i, b_j); `value` is a dense index.
template <class Body>
void dense_indices(const GroundSet& a, const GroundSet& b, CompositionMode mode,
                   const DenseLayout& layout, std::vector<std::int64_t>& inv_b, Body&& body) {
  const AmbientSpec& amb = a.ambient();
  const auto& av = a.vector();
  const auto& bv = b.vector();
  const std::int64_t m = amb.modulus();
  const auto na = static_cast<std::int64_t>(av.size());
  const auto nb = static_cast<std::int64_t>(bv.size());
  (void)inv_b;
  if (amb.kind() == AmbientKind::kIntegers) {
    const std::int64_t off = layout.offset;
    switch (mode) {
      case CompositionMode::kDifference:
        body([&](std::int64_t i, std::int64_t j) { return av[i].x - bv[j].x - off; }, na, nb);
        return;
      case CompositionMode::kSum:
        body([&](std::int64_t i, std::int64_t j) { return av[i].x + bv[j].x - off; }, na, nb);
        return;
      case CompositionMode::kProduct:
        body([&](std::int64_t i, std::int64_t j) { return av[i].x * bv[j].x - off; }, na, nb);
        return;
      case CompositionMode::kRatio: break;
    }
  } else if (amb.is_plane()) {
    if (mode == CompositionMode::kDifference) {
      body([&](std::int64_t i, std::int64_t j) {
        return norm(av[i].x - bv[j].x, m) * m + norm(av[i].y - bv[j].y, m);
      }, na, nb);
    } else {
      body([&](std::int64_t i, std::int64_t j) {
        return norm(av[i].x + bv[j].x, m) * m + norm(av[i].y + bv[j].y, m);
      }, na, nb);
    }
    return;
  } else {
    switch (mode) {
      case CompositionMode::kDifference:
        body([&](std::int64_t i, std::int64_t j) { return norm(i128{av[i].x} - bv[j].x, m); }, na, nb);
        return;
      case CompositionMode::kSum:
        body([&](std::int64_t i, std::int64_t j) { return norm(i128{av[i].x} + bv[j].x, m); }, na, nb);
        return;
      case CompositionMode::kProduct:
        body([&](std::int64_t i, std::int64_t j) { return norm(i128{av[i].x} * bv[j].x, m); }, na, nb);
        return;
      case CompositionMode::kRatio:
        body([&](std::int64_t i, std::int64_t j) { return norm(i128{av[i].x} * inv_b[j], m); }, na, nb);
        return;
    }
  }
}

Element dense_value(const AmbientSpec& amb, const DenseLayout& layout, std::int64_t idx) {
  if (amb.is_plane()) return {idx / amb.modulus(), idx % amb.modulus()};
  return {idx + layout.offset};
}

PairHistogram dense_histogram(const GroundSet& a, const GroundSet& b, CompositionMode mode,
                              const DenseLayout& layout, bool skip_non_invertible) {
  PairHistogram out;
  std::vector<std::int64_t> inv_b;
  GroundSet b_eff = b;
  if (mode == CompositionMode::kRatio) {
    std::vector<Element> keep;
    for (const Element& y : b.elements()) {
      if (y.x == 0) {
        if (!skip_non_invertible) throw Error(Errc::kDivisionByZero, "ratio by zero");
        out.skipped += a.size();
        continue;
      }
      keep.push_back(y);
      inv_b.push_back(mod_inverse(y.x, a.ambient().modulus()));
    }
    b_eff = b.with_elements(std::move(keep));
  }
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(layout.size), 0);
  dense_indices(a, b_eff, mode, layout, inv_b, [&](auto index_of, std::int64_t na, std::int64_t nb) {
#ifdef _OPENMP
    const int threads = omp_get_max_threads();
    if (threads > 1 && static_cast<i128>(threads) * layout.size <= kDenseLimit) {
      // Private tables merged at the end; integer sums are order independent.
      std::vector<std::vector<std::uint64_t>> local(static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
      {
        auto& mine = local[static_cast<std::size_t>(omp_get_thread_num())];
        mine.assign(static_cast<std::size_t>(layout.size), 0);
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < na; ++i) {
          for (std::int64_t j = 0; j < nb; ++j) ++mine[static_cast<std::size_t>(index_of(i, j))];
        }
#pragma omp for schedule(static)
        for (std::int64_t v = 0; v < layout.size; ++v) {
          std::uint64_t s = 0;
          for (const auto& t : local) s += t[static_cast<std::size_t>(v)];
          counts[static_cast<std::size_t>(v)] = s;
        }
      }
      return;
    }
    if (threads > 1) {
#pragma omp parallel for schedule(static)
      for (std::int64_t i = 0; i < na; ++i) {
        for (std::int64_t j = 0; j < nb; ++j) {
#pragma omp atomic
          ++counts[static_cast<std::size_t>(index_of(i, j))];
        }
      }
      return;
    }
#endif
    for (std::int64_t i = 0; i < na; ++i) {
      for (std::int64_t j = 0; j < nb; ++j) ++counts[static_cast<std::size_t>(index_of(i, j))];
    }
  });
  for (std::int64_t v = 0; v < layout.size; ++v) {
    if (counts[static_cast<std::size_t>(v)] != 0) {
      out.entries.push_back({dense_value(a.ambient(), layout, v), counts[static_cast<std::size_t>(v)]});
    }
  }
  return out;
}

PairHistogram sorted_histogram(const GroundSet& a, const GroundSet& b, CompositionMode mode,
                               bool skip_non_invertible) {
  PairHistogram out;
  const auto& av = a.vector();
  std::vector<Element> bv;
  for (const Element& y : b.elements()) {
    if (mode == CompositionMode::kRatio && y.x == 0) {
      if (!skip_non_invertible) throw Error(Errc::kDivisionByZero, "ratio by zero");
      out.skipped += a.size();
      continue;
    }
    bv.push_back(y);
  }
  const auto na = static_cast<std::int64_t>(av.size());
  const auto nb = static_cast<std::int64_t>(bv.size());
  std::vector<Element> values(static_cast<std::size_t>(na * nb));
  const AmbientSpec amb = a.ambient();
  detail::FirstException guard;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < na; ++i) {
    guard.run([&] {
      for (std::int64_t j = 0; j < nb; ++j) {
        values[static_cast<std::size_t>(i * nb + j)] = compose(amb, mode, av[i], bv[j]);
      }
    });
  }
  guard.rethrow();
#ifdef _OPENMP
  __gnu_parallel::sort(values.begin(), values.end());
#else
  std::sort(values.begin(), values.end());
#endif
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    out.entries.push_back({values[i], j - i});
    i = j;
  }
  return out;
}

}  // namespace

PairHistogram pair_histogram(const GroundSet& a, const GroundSet& b, CompositionMode mode,
                             bool skip_non_invertible) {
  require_same_ambient(a, b);
  if (!a.ambient().supports(mode)) {
    throw Error(Errc::kUnsupportedMode,
                std::string(mode_name(mode)) + " is not defined on " + a.ambient().name());
  }
  if (a.empty() || b.empty()) return {};
  if (auto layout = dense_layout(a, b, mode)) {
    return dense_histogram(a, b, mode, *layout, skip_non_invertible);
  }
  return sorted_histogram(a, b, mode, skip_non_invertible);
}

BigInt power_sum(const std::vector<HistEntry>& entries, unsigned k) {
  std::uint64_t max_count = 0;
  for (const HistEntry& e : entries) max_count = std::max(max_count, e.count);
  // Group by count value: sum_c c^k * #{entries with count c}.
  std::vector<std::uint64_t> freq(static_cast<std::size_t>(max_count) + 1, 0);
  const auto n = static_cast<std::int64_t>(entries.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
#pragma omp atomic
    ++freq[static_cast<std::size_t>(entries[static_cast<std::size_t>(i)].count)];
  }
  BigInt total = 0;
  for (std::uint64_t c = 1; c <= max_count; ++c) {
    if (freq[c] != 0) total += big_pow(BigInt(c), k) * freq[c];
  }
  return total;
}

std::vector<std::uint64_t> translate_overlaps(const GroundSet& a, const GroundSet& p) {
  require_same_ambient(a, p);
  std::vector<std::uint64_t> out(a.size(), 0);
  if (a.empty() || p.empty()) return out;
  // |A ∩ (P + a)| = r_{A-P}(a)
  const PairHistogram h = pair_histogram(a, p, CompositionMode::kDifference);
  const auto n = static_cast<std::int64_t>(a.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const Element& x = a[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(h.entries.begin(), h.entries.end(), x,
                               [](const HistEntry& e, const Element& v) { return e.value < v; });
    if (it != h.entries.end() && it->value == x) out[static_cast<std::size_t>(i)] = it->count;
  }
  return out;
}

}  // namespace parallel
}  // namespace sidonkit

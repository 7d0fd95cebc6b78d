#include "sidonkit/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "sidonkit/counting.hpp"
#include "sidonkit/io.hpp"
#include "sidonkit/numeric.hpp"
#include "sidonkit/sidon.hpp"

namespace sidonkit {

namespace {

using nlohmann::json;

double binom_double(std::uint64_t n, std::uint64_t k) {
  double r = 1.0;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

void set_verdict(BoundReport& r) {
  if (!r.measured) {
    r.verdict = Verdict::kUnmeasured;
  } else {
    r.verdict = *r.measured <= r.bound ? Verdict::kHolds : Verdict::kViolated;
  }
}

// Smallest count of r_{X∘Y} over the elements of `target`, with the first
// element attaining it.
std::pair<std::uint64_t, std::optional<Element>> min_representation(const GroundSet& x, const GroundSet& y,
                                                                    CompositionMode mode,
                                                                    const GroundSet& target) {
  RepHistogram h(x, y, mode);
  std::uint64_t best = UINT64_MAX;
  std::optional<Element> arg;
  for (const Element& t : target.elements()) {
    const std::uint64_t c = h.count(t);
    if (c < best) {
      best = c;
      arg = t;
    }
  }
  return {best, arg};
}

}  // namespace

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kHolds: return "holds";
    case Verdict::kViolated: return "violated";
    case Verdict::kUnmeasured: return "unmeasured";
  }
  return "?";
}

json to_json(const BoundReport& r) {
  json j;
  j["name"] = r.name;
  j["inputs"] = r.inputs;
  j["bound"] = r.bound;
  j["measured"] = r.measured ? json(*r.measured) : json(nullptr);
  j["verdict"] = verdict_name(r.verdict);
  j["details"] = r.details;
  return j;
}

double sumset_bound_value(std::uint64_t b, std::uint64_t c, std::uint64_t k, std::uint64_t sigma) {
  if (sigma < 1) throw Error(Errc::kInvalidArgument, "sigma must be at least 1");
  auto branch = [k](std::uint64_t x, std::uint64_t y) {
    // y sqrt(k x) + x
    return up(up(static_cast<double>(y) * sqrt_up(static_cast<double>(k) * static_cast<double>(x))) +
              static_cast<double>(x));
  };
  const double m = std::min(branch(b, c), branch(c, b));
  return sigma == 1 ? m : up(m / static_cast<double>(sigma));
}

BoundReport sumset_sidon_upper(const GroundSet& b, const GroundSet& c, std::uint64_t k, std::uint64_t sigma,
                               const std::optional<GroundSet>& a, std::size_t cap) {
  require_same_ambient(b, c);
  if (k < 1) throw Error(Errc::kInvalidArgument, "k must be at least 1");
  BoundReport r;
  r.name = "sumset-sidon-upper";
  r.inputs = {{"B_size", b.size()}, {"C_size", c.size()}, {"k", k}, {"sigma", sigma}};
  r.bound = sumset_bound_value(b.size(), c.size(), k, sigma);
  if (a) {
    require_same_ambient(b, *a);
    r.inputs["A_size"] = a->size();
    if (!a->empty()) {
      auto [least, where] = min_representation(b, c, CompositionMode::kSum, *a);
      r.details["min_r_B_plus_C_on_A"] = least;
      if (least < sigma) {
        throw Error(Errc::kPreconditionFailed,
                    "r_{B+C}(" + to_string(*where, a->ambient()) + ") = " + std::to_string(least) +
                        " < sigma = " + std::to_string(sigma));
      }
    }
    if (a->size() <= cap) {
      const ExactResult ex = sid_k_exact(*a, k, CompositionMode::kDifference, cap);
      r.measured = static_cast<double>(ex.size);
      r.details["witness"] = set_to_json(ex.witness);
    }
  }
  set_verdict(r);
  return r;
}

BoundReport diffset_bounds(const GroundSet& a, std::uint64_t k, std::size_t cap) {
  if (a.empty()) throw Error(Errc::kInvalidArgument, "A must be nonempty");
  const GroundSet d = set_compose(a, a, CompositionMode::kDifference);
  const GroundSet s = set_compose(a, a, CompositionMode::kSum);
  const std::uint64_t n = a.size();
  BoundReport r;
  r.name = "diffset-bounds";
  r.inputs = {{"A_size", n}, {"k", k}};
  r.details["D_size"] = d.size();
  r.details["S_size"] = s.size();

  // Proof facts, checked exactly.
  const auto [dd_min, dd_arg] = min_representation(d, d, CompositionMode::kDifference, d);
  const auto [ds_min, ds_arg] = min_representation(d, s, CompositionMode::kSum, s);
  r.details["min_r_D_minus_D_on_D"] = dd_min;
  r.details["min_r_D_plus_S_on_S"] = ds_min;
  const bool facts = dd_min >= n && ds_min >= n;
  r.details["facts_hold"] = facts;

  // D = A + (-A) and S = A + A give the first form with |B| = |C| = |A|.
  const double first = sumset_bound_value(n, n, k);
  const double d_sigma = sumset_bound_value(d.size(), d.size(), k, n);
  const double s_sigma = sumset_bound_value(d.size(), s.size(), k, n);
  r.details["D_bound_first"] = first;
  r.details["D_bound_sigma"] = d_sigma;
  r.details["S_bound_first"] = first;
  r.details["S_bound_sigma"] = s_sigma;
  r.bound = std::min(first, d_sigma);
  r.details["S_bound"] = std::min(first, s_sigma);

  bool ok = facts;
  if (d.size() <= cap) {
    const auto ex = sid_k_exact(d, k, CompositionMode::kDifference, cap);
    r.measured = static_cast<double>(ex.size);
    r.details["Sid_k_D"] = ex.size;
    ok = ok && static_cast<double>(ex.size) <= r.bound;
  }
  if (s.size() <= cap) {
    const auto ex = sid_k_exact(s, k, CompositionMode::kDifference, cap);
    r.details["Sid_k_S"] = ex.size;
    ok = ok && static_cast<double>(ex.size) <= std::min(first, s_sigma);
  }
  r.verdict = ok ? Verdict::kHolds : Verdict::kViolated;
  return r;
}

BoundReport bfamily_size_upper(std::uint64_t n, unsigned k, std::uint64_t g, SizeSetting setting) {
  if (n < 2) throw Error(Errc::kInvalidArgument, "N must be at least 2");
  if (k < 2 || g < 1) throw Error(Errc::kInvalidArgument, "need k >= 2 and g >= 1");
  BoundReport r;
  r.inputs = {{"N", n}, {"k", k}, {"g", g}};
  const double nd = static_cast<double>(n), gd = static_cast<double>(g), kd = static_cast<double>(k);
  const double g1 = gd + 1.0;
  if (setting == SizeSetting::kFiniteGroup) {
    r.name = "bfamily-size-finite-group";
    if (k == 2) {
      r.bound = up(sqrt_up(gd * nd) + 1.0);
    } else {
      r.bound = up(up(pow_up(kd, 1.0 / g1) * pow_up(nd, gd / g1)) + binom_double(g + 1, 2));
    }
  } else {
    r.name = "bfamily-size-segment";
    if (k == 2) {
      r.bound = up(up(sqrt_up(gd * nd) + pow_up(gd * nd, 0.25)) + 1.0);
    } else {
      const double t1 = up(pow_up(kd, 1.0 / g1) * pow_up(nd, gd / g1));
      const double t2 = up(up(pow_up(binom_double(g + 1, 2), 1.0 / g1) * pow_up(kd, gd / (g1 * g1))) *
                           pow_up(nd, gd * gd / (g1 * g1)));
      r.bound = up(up(t1 + t2) + 1.0);
    }
  }
  return r;
}

BoundReport segment_embedding_audit(const GroundSet& s, std::uint64_t n, std::uint64_t g) {
  if (s.ambient().kind() != AmbientKind::kIntegers) throw Error(Errc::kAmbientMismatch, "S must be a set of integers");
  if (g < 1 || n < 2) throw Error(Errc::kInvalidArgument, "need N >= 2 and g >= 1");
  for (const Element& e : s.elements()) {
    if (e.x < 0 || static_cast<std::uint64_t>(e.x) >= n) {
      throw Error(Errc::kPreconditionFailed, "S must lie in [0, N-1]");
    }
  }
  BoundReport r;
  r.name = "segment-embedding-audit";
  r.inputs = {{"S_size", s.size()}, {"N", n}, {"g", g}};
  r.bound = bfamily_size_upper(n, 2, g, SizeSetting::kSegment).bound;
  r.measured = static_cast<double>(s.size());

  // u = floor(N^{3/4} g^{-1/4}): largest u with g u^4 <= N^3.
  const BigInt n3 = big_pow(BigInt(n), 3);
  std::uint64_t u = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 0.75) /
                                               std::pow(static_cast<double>(g), 0.25));
  while (u > 0 && big_pow(BigInt(u), 4) * g > n3) --u;
  while (big_pow(BigInt(u + 1), 4) * g <= n3) ++u;
  r.details["u"] = u;
  const std::uint64_t m = n + u;
  r.details["modulus"] = m;

  bool ok = static_cast<double>(s.size()) < r.bound;
  if (u > 0) {
    std::vector<Element> embedded, interval;
    for (const Element& e : s.elements()) embedded.emplace_back(e.x);
    for (std::uint64_t i = 1; i <= u; ++i) interval.emplace_back(static_cast<std::int64_t>(i % m));
    const auto amb = AmbientSpec::integers_mod(static_cast<std::int64_t>(m));
    const GroundSet se(amb, embedded), ie(amb, interval);

    RepHistogram h(se, se, CompositionMode::kDifference);
    std::uint64_t window_max = 0;
    for (std::uint64_t x = 1; x <= u; ++x) {
      window_max = std::max(window_max, h.count(static_cast<std::int64_t>(x)));
      window_max = std::max(window_max, h.count(static_cast<std::int64_t>(m - x)));
    }
    r.details["max_r_in_window"] = window_max;
    const BigInt e = common_energy(se, ie);
    r.details["common_energy"] = to_string(e);
    const BigInt sz = s.size();
    const bool lower = sz * sz * u * u <= e * m;
    const bool upper = e < sz * u + BigInt(g) * u * u;
    r.details["lower_inequality"] = lower;
    r.details["upper_inequality"] = upper;
    ok = ok && window_max <= g && lower && upper;
  }
  r.verdict = ok ? Verdict::kHolds : Verdict::kViolated;
  return r;
}

bool co_sidon_check(const GroundSet& x, const GroundSet& y) {
  require_same_ambient(x, y);
  return set_compose(x, y, CompositionMode::kSum).size() == x.size() * y.size();
}

namespace {

GroundSet shifted_intersection(const GroundSet& s, const GroundSet& x) {
  GroundSet out;
  bool first = true;
  for (const Element& v : x.elements()) {
    GroundSet t = translate(s, v);
    out = first ? std::move(t) : set_intersection(out, t);
    first = false;
  }
  if (first) return s;
  return out;
}

}  // namespace

BoundReport heritability_slice(const GroundSet& s, const std::vector<GroundSet>& shift_sets, unsigned k,
                               std::uint64_t g) {
  const std::size_t l = shift_sets.size();
  if (l < 2) throw Error(Errc::kInvalidArgument, "need at least two shift sets");
  for (const auto& x : shift_sets) require_same_ambient(s, x);
  if (verify_bfamily(s, {k, g})) throw Error(Errc::kPreconditionFailed, "S is not in the family B°_k[g]");
  std::uint64_t total = 0;
  for (const auto& x : shift_sets) total += x.size();
  if (total < g + l * (l - 1) / 2 + 1) {
    throw Error(Errc::kPreconditionFailed, "sum of |X_i| is below g + C(l,2) + 1");
  }
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j)
      if (!co_sidon_check(shift_sets[i], shift_sets[j])) {
        throw Error(Errc::kPreconditionFailed,
                    "(X_" + std::to_string(i + 1) + ", X_" + std::to_string(j + 1) + ") is not a co-Sidon pair");
      }

  std::vector<GroundSet> slices;
  for (const auto& x : shift_sets) slices.push_back(shifted_intersection(s, x));
  // Only z_j ∈ S_{X_1} - S_{X_{j+1}} can give a nonempty intersection.
  std::vector<std::vector<Element>> choices;
  const Element zero = additive_identity(s.ambient());
  for (std::size_t j = 1; j < l; ++j) {
    std::vector<Element> c;
    if (!slices[0].empty() && !slices[j].empty()) {
      for (const Element& z : set_compose(slices[0], slices[j], CompositionMode::kDifference).elements())
        if (z != zero) c.push_back(z);
    }
    choices.push_back(std::move(c));
  }

  std::uint64_t checked = 0, worst = 0;
  std::vector<Element> z(l - 1);
  auto rec = [&](auto&& self, std::size_t depth, GroundSet current) -> void {
    if (current.empty()) return;
    if (depth == l - 1) {
      ++checked;
      worst = std::max<std::uint64_t>(worst, current.size());
      return;
    }
    for (const Element& c : choices[depth]) {
      if (std::find(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(depth), c) !=
          z.begin() + static_cast<std::ptrdiff_t>(depth))
        continue;
      z[depth] = c;
      self(self, depth + 1, set_intersection(current, translate(slices[depth + 1], c)));
    }
  };
  rec(rec, 0, slices[0]);

  BoundReport r;
  r.name = "heritability-slice";
  r.inputs = {{"S_size", s.size()}, {"l", l}, {"k", k}, {"g", g}};
  r.bound = static_cast<double>(k) - 1.0;
  r.measured = static_cast<double>(worst);
  r.details["tuples_checked"] = checked;
  set_verdict(r);
  return r;
}

BoundReport heritability_sw(const GroundSet& s) {
  if (!s.ambient().torsion_free_2()) {
    throw Error(Errc::kPreconditionFailed, "the ambient group has elements of order two");
  }
  if (verify_multiplicity(s, 2)) throw Error(Errc::kPreconditionFailed, "S is not in the family B°_2[2]");
  BoundReport r;
  r.name = "heritability-sw";
  r.inputs = {{"S_size", s.size()}};
  r.bound = 1.0;
  const Element zero = additive_identity(s.ambient());
  std::uint64_t checked = 0, worst = 0;
  json failures = json::array();
  for (const Element& w : set_compose(s, s, CompositionMode::kDifference).elements()) {
    if (w == zero) continue;
    const GroundSet sw = set_intersection(s, translate(s, w));
    ++checked;
    const MultiplicityStat st = max_multiplicity(sw, CompositionMode::kDifference);
    worst = std::max(worst, st.max_count);
    if (st.max_count > 1) failures.push_back(element_to_json(w, s.ambient()));
  }
  r.measured = static_cast<double>(worst);
  r.details["shifts_checked"] = checked;
  r.details["failing_shifts"] = failures;
  set_verdict(r);
  return r;
}

BoundReport plunnecke_audit(const GroundSet& a, unsigned n, unsigned m, std::uint64_t element_budget) {
  if (n + m < 1) throw Error(Errc::kInvalidArgument, "need n + m >= 1");
  if (a.empty()) throw Error(Errc::kInvalidArgument, "A must be nonempty");
  auto guard = [&](const GroundSet& x, const GroundSet& y) {
    if (static_cast<double>(x.size()) * static_cast<double>(y.size()) > static_cast<double>(element_budget)) {
      throw Error(Errc::kOverflowBudgetExceeded, "iterated sumset exceeds the element budget");
    }
  };
  const Element zero = additive_identity(a.ambient());
  GroundSet acc = a.with_elements({zero});
  for (unsigned i = 0; i < n; ++i) {
    guard(acc, a);
    acc = set_compose(acc, a, CompositionMode::kSum);
  }
  for (unsigned i = 0; i < m; ++i) {
    guard(acc, a);
    acc = set_compose(acc, a, CompositionMode::kDifference);
  }
  const std::uint64_t doubling = set_compose(a, a, CompositionMode::kSum).size();
  const unsigned e = n + m;
  // |nA - mA| |A|^{e-1} <= |A+A|^e
  const bool holds =
      BigInt(acc.size()) * big_pow(BigInt(a.size()), e - 1) <= big_pow(BigInt(doubling), e);
  BoundReport r;
  r.name = "plunnecke-audit";
  r.inputs = {{"A_size", a.size()}, {"n", n}, {"m", m}};
  r.bound = up(pow_up(static_cast<double>(doubling) / static_cast<double>(a.size()), e) *
               static_cast<double>(a.size()));
  r.measured = static_cast<double>(acc.size());
  r.details["sumset_size"] = doubling;
  r.details["exact_comparison"] = holds;
  r.verdict = holds ? Verdict::kHolds : Verdict::kViolated;
  return r;
}

}  // namespace sidonkit

#include "sidonkit/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "omp_guard.hpp"
#include "sidonkit/bounds.hpp"
#include "sidonkit/counting.hpp"
#include "sidonkit/io.hpp"
#include "sidonkit/sidon.hpp"

namespace sidonkit {

namespace {

using nlohmann::json;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  return compose(AmbientSpec::integers(), CompositionMode::kProduct, a, b).x;
}

std::int64_t checked_pow(std::int64_t base, std::int64_t e) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

// max r_{S-S}(x) over x != 0, split by |x| < g and |x| >= g.
std::pair<std::uint64_t, std::uint64_t> split_multiplicity(const GroundSet& s, std::int64_t g) {
  RepHistogram h(s, s, CompositionMode::kDifference);
  std::uint64_t near = 0, far = 0;
  for (const HistEntry& e : h.entries()) {
    if (e.value.x == 0) continue;
    if (std::abs(e.value.x) < g)
      near = std::max(near, e.count);
    else
      far = std::max(far, e.count);
  }
  return {near, far};
}

std::int64_t primitive_root(std::int64_t p) {
  if (p == 2) return 1;
  std::vector<std::int64_t> factors;
  std::int64_t m = p - 1;
  for (std::int64_t f = 2; f * f <= m; ++f) {
    if (m % f == 0) {
      factors.push_back(f);
      while (m % f == 0) m /= f;
    }
  }
  if (m > 1) factors.push_back(m);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (std::int64_t f : factors) ok = ok && mod_pow(g, (p - 1) / f, p) != 1;
    if (ok) return g;
  }
  throw Error(Errc::kInvalidArgument, "no primitive root");
}

GroundSet parabola_union(std::int64_t p, std::int64_t k, std::int64_t t) {
  std::vector<Element> e;
  for (std::int64_t i = 1; i <= k; ++i) {
    const std::int64_t u = ((t + i) % p + p) % p;
    if (u == 0) throw Error(Errc::kBadShift, "u = " + std::to_string(t + i) + " vanishes mod p");
    const std::int64_t inv = mod_inverse(u, p);
    for (std::int64_t x = 0; x < p; ++x) {
      const auto x2 = static_cast<std::int64_t>(static_cast<__int128>(x) * x % p);
      e.emplace_back(x, static_cast<std::int64_t>(static_cast<__int128>(x2) * inv % p));
    }
  }
  return GroundSet(AmbientSpec::prime_square_plane(p), std::move(e));
}

// max_{x != 0} r_{A-A}(x) in (Z/p)^2 with a flat count table.
std::uint64_t plane_max_multiplicity(const GroundSet& a, std::int64_t p) {
  std::vector<std::uint32_t> counts(static_cast<std::size_t>(p * p), 0);
  for (const Element& x : a.elements()) {
    for (const Element& y : a.elements()) {
      const std::int64_t dx = (x.x - y.x + p) % p, dy = (x.y - y.y + p) % p;
      ++counts[static_cast<std::size_t>(dx * p + dy)];
    }
  }
  counts[0] = 0;
  return *std::max_element(counts.begin(), counts.end());
}

bool admissible_shift(std::int64_t p, std::int64_t k, std::int64_t t) {
  for (std::int64_t i = 1; i <= k; ++i)
    if (((t + i) % p + p) % p == 0) return false;
  return true;
}

json measure_linstrom(const ConstructionReport& r) {
  const std::int64_t g = r.parameters["g"].get<std::int64_t>();
  const GroundSet& base = r.parts.at("base");
  auto [near, far] = split_multiplicity(r.set, g);
  json m;
  m["size"] = r.set.size();
  m["base_size"] = base.size();
  m["base_is_sidon"] = !verify_multiplicity(base, 1).has_value();
  m["size_is_g_times_base"] = r.set.size() == static_cast<std::size_t>(g) * base.size();
  m["max_r_far"] = far;    // over |x| >= g
  m["max_r_near"] = near;  // over 0 < |x| < g
  m["max_r_all"] = std::max(near, far);
  m["max_element"] = r.set.empty() ? 0 : r.set[r.set.size() - 1].x;
  return m;
}

json measure_geometric(const ConstructionReport& r) {
  const std::int64_t n = r.parameters["n"].get<std::int64_t>();
  const std::uint64_t k = r.parameters["k"].get<std::uint64_t>();
  const std::size_t cap = r.parameters["cap"].get<std::size_t>();
  const GroundSet& gamma = r.parts.at("Gamma");
  const GroundSet& h = r.parts.at("H");
  const GroundSet& c = r.parts.at("C");
  const GroundSet& cover = r.parts.at("cover");
  json m;
  m["size"] = r.set.size();
  m["expected_size"] = n * (n + 1) * (n + 1);
  m["Gamma_size"] = gamma.size();
  m["H_size"] = h.size();
  m["C_size"] = c.size();
  m["sums_distinct"] = r.set.size() == gamma.size() * c.size();
  // every a = gamma * c' with c' in 1 + H·Gamma-bar
  bool covered = true;
  for (const Element& a : r.set.elements()) {
    bool found = false;
    for (const Element& g : gamma.elements()) {
      if (a.x % g.x == 0 && cover.contains(a.x / g.x)) {
        found = true;
        break;
      }
    }
    covered = covered && found;
  }
  m["multiplicative_cover_holds"] = covered;
  m["cover_size"] = cover.size();
  m["additive_bound"] = sumset_bound_value(gamma.size(), c.size(), k);
  m["multiplicative_bound"] = sumset_bound_value(gamma.size(), cover.size(), k);
  m["max_r_difference"] = max_multiplicity(r.set, CompositionMode::kDifference).max_count;
  m["max_r_ratio"] = max_multiplicity(r.set, CompositionMode::kRatio).max_count;
  if (r.set.size() <= cap) {
    m["sid_additive"] = sid_k_exact(r.set, k, CompositionMode::kDifference, cap).size;
    m["sid_multiplicative"] = sid_k_exact(r.set, k, CompositionMode::kRatio, cap).size;
  } else {
    m["sid_additive"] = nullptr;
    m["sid_multiplicative"] = nullptr;
  }
  return m;
}

json measure_hyperbola(const ConstructionReport& r) {
  const std::int64_t p = r.parameters["p"].get<std::int64_t>();
  const std::int64_t k = r.parameters["k"].get<std::int64_t>();
  const std::int64_t t = r.parameters["t"].get<std::int64_t>();
  json m;
  m["size"] = r.set.size();
  m["expected_size"] = k * p - k + 1;
  // A_u ∩ A_v = {(0,0)}: x^2/u = x^2/v forces x = 0, so the union has
  // exactly kp - k + 1 points iff the u are distinct and nonzero.
  std::uint64_t overlap_points = 0;
  for (std::int64_t i = 1; i <= k; ++i)
    for (std::int64_t j = i + 1; j <= k; ++j) {
      const GroundSet ai = parabola_union(p, 1, t + i - 1), aj = parabola_union(p, 1, t + j - 1);
      overlap_points = std::max<std::uint64_t>(overlap_points, set_intersection(ai, aj).size());
    }
  m["max_pairwise_intersection"] = k > 1 ? overlap_points : 1;
  const std::uint64_t mult = plane_max_multiplicity(r.set, p);
  m["max_r"] = mult;
  const double target = static_cast<double>(k * k) + 5.0 * std::pow(static_cast<double>(k), 1.5);
  m["target"] = target;
  m["within_target"] = static_cast<double>(mult) <= target;
  return m;
}

json measure_fp(const ConstructionReport& r) {
  const std::uint64_t k = r.parameters["k"].get<std::uint64_t>();
  const GroundSet& gamma = r.parts.at("Gamma");
  const GroundSet& hg = r.parts.at("HGamma");
  const GroundSet& h = r.parts.at("H");
  json m;
  m["size"] = r.set.size();
  m["Gamma_size"] = gamma.size();
  m["HGamma_size"] = hg.size();
  // Gamma (1 + Gamma H)
  const GroundSet one = gamma.with_elements({Element{1}});
  const GroundSet gh = set_compose(gamma, h, CompositionMode::kProduct);
  const GroundSet other = set_compose(gamma, set_compose(one, gh, CompositionMode::kSum), CompositionMode::kProduct);
  m["identity_holds"] = other == r.set;
  const double paper_bound = up(2.0 * sqrt_up(static_cast<double>(k)) * static_cast<double>(gamma.size() * gamma.size()));
  m["bound_2sqrtk_gamma2"] = paper_bound;
  m["sumset_bound"] = sumset_bound_value(gamma.size(), hg.size(), k);
  m["max_r_difference"] = max_multiplicity(r.set, CompositionMode::kDifference).max_count;
  std::vector<Element> nonzero;
  for (const Element& e : r.set.elements())
    if (e.x != 0) nonzero.push_back(e);
  const GroundSet units = r.set.with_elements(nonzero);
  m["max_r_ratio"] = max_multiplicity(units, CompositionMode::kRatio).max_count;
  if (r.set.size() <= 40) {
    m["sid_additive"] = sid_k_exact(r.set, k, CompositionMode::kDifference).size;
    m["sid_multiplicative"] = sid_k_exact(units, k, CompositionMode::kRatio).size;
  } else {
    m["sid_additive"] = nullptr;
    m["sid_multiplicative"] = nullptr;
  }
  return m;
}

}  // namespace

std::string_view status_name(ConstructionStatus s) {
  switch (s) {
    case ConstructionStatus::kPass: return "pass";
    case ConstructionStatus::kFail: return "fail";
    case ConstructionStatus::kAnomaly: return "anomaly";
  }
  return "?";
}

json to_json(const ConstructionReport& r) {
  json j;
  j["name"] = r.name;
  j["parameters"] = r.parameters;
  j["claim"] = r.claim;
  j["status"] = status_name(r.status);
  j["measured"] = r.measured;
  j["notes"] = r.notes;
  j["set"] = set_to_json(r.set);
  json parts = json::object();
  for (const auto& [k, v] : r.parts) parts[k] = set_to_json(v);
  j["parts"] = parts;
  return j;
}

json provenance_of(const ConstructionReport& r) {
  return {{"construction", r.name}, {"parameters", r.parameters}};
}

json remeasure(const ConstructionReport& r) {
  if (r.name == "linstrom") return measure_linstrom(r);
  if (r.name == "geometric") return measure_geometric(r);
  if (r.name == "hyperbola") return measure_hyperbola(r);
  if (r.name == "fpmult") return measure_fp(r);
  if (r.name == "sidon") {
    json m;
    m["size"] = r.set.size();
    m["is_sidon"] = !verify_multiplicity(r.set, 1).has_value();
    return m;
  }
  throw Error(Errc::kInvalidArgument, "unknown construction '" + r.name + "'");
}

GroundSet sidon_base(std::int64_t n) {
  if (n < 3) throw Error(Errc::kInvalidArgument, "N must be at least 3");
  std::int64_t p = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n) / 2.0)) + 1;
  while (p >= 2 && (2 * p * p > n || !is_prime(p))) --p;
  std::vector<Element> e;
  if (p >= 3) {
    for (std::int64_t i = 0; i < p; ++i) e.emplace_back(2 * p * i + (i * i) % p);
  } else {
    e = {0, 1, 3};
  }
  return GroundSet(AmbientSpec::integers(), std::move(e));
}

ConstructionReport linstrom_like(std::int64_t g, std::int64_t n, const std::optional<GroundSet>& base) {
  if (g < 1) throw Error(Errc::kInvalidArgument, "g must be at least 1");
  ConstructionReport r;
  r.name = "linstrom";
  r.parameters = {{"g", g}, {"N", n}, {"hand_supplied_base", base.has_value()}};
  GroundSet a;
  if (base) {
    a = *base;
  } else {
    if (g >= 2 && n < 4 * g) throw Error(Errc::kInvalidArgument, "need N >= 4g");
    a = sidon_base((n - g) / g);
  }
  if (a.ambient().kind() != AmbientKind::kIntegers) throw Error(Errc::kAmbientMismatch, "base must be integers");
  std::vector<Element> digits;
  for (std::int64_t i = 0; i < g; ++i) digits.emplace_back(i);
  r.set = set_compose(affine_image(a, g, 0), a.with_elements(digits), CompositionMode::kSum);
  r.parts["base"] = a;
  r.claim = "max r_{S-S}(x) over |x| >= g is at most g";
  r.measured = measure_linstrom(r);
  const auto far = r.measured["max_r_far"].get<std::uint64_t>();
  const auto all = r.measured["max_r_all"].get<std::uint64_t>();
  if (far > static_cast<std::uint64_t>(g) || !r.measured["base_is_sidon"].get<bool>()) {
    r.status = ConstructionStatus::kFail;
  } else if (all > static_cast<std::uint64_t>(g)) {
    r.status = ConstructionStatus::kAnomaly;
    r.notes.push_back("differences 0 < |x| < g reach multiplicity " + std::to_string(all) +
                      " > g; the unrestricted membership in B°_2[g] fails");
  }
  return r;
}

ConstructionReport geometric_sumproduct_example(std::int64_t base, std::int64_t n, std::uint64_t k,
                                                std::size_t cap) {
  if (base < 2 || n < 1) throw Error(Errc::kInvalidArgument, "need base >= 2 and n >= 1");
  ConstructionReport r;
  r.name = "geometric";
  r.parameters = {{"base", base}, {"n", n}, {"k", k}, {"cap", cap}};
  // The largest element is b^n + b^{n(n+1)+n}; fail early if it cannot fit.
  (void)checked_mul(checked_pow(base, n * (n + 1) + n), 2);
  std::vector<Element> gamma, h, cover;
  for (std::int64_t i = 0; i <= n; ++i) gamma.emplace_back(checked_pow(base, i));
  for (std::int64_t j = 1; j <= n; ++j) h.emplace_back(checked_pow(base, j * (n + 1)));
  const GroundSet g_set(AmbientSpec::integers(), gamma);
  const GroundSet h_set = g_set.with_elements(h);
  const GroundSet c = set_compose(h_set, g_set, CompositionMode::kProduct);
  // 1 + h b^i for |i| <= n; h is divisible by b^{n+1}, so all are integers.
  for (const Element& hv : h) {
    for (std::int64_t i = -n; i <= n; ++i) {
      const std::int64_t term = i >= 0 ? checked_mul(hv.x, checked_pow(base, i)) : hv.x / checked_pow(base, -i);
      cover.emplace_back(term + 1);
    }
  }
  r.set = set_compose(g_set, c, CompositionMode::kSum);
  r.parts["Gamma"] = g_set;
  r.parts["H"] = h_set;
  r.parts["C"] = c;
  r.parts["cover"] = g_set.with_elements(cover);
  r.claim = "|A| = n(n+1)^2; Sid_k of A is bounded through (Gamma, H·Gamma) additively and "
            "through A ⊆ Gamma·(1 + H·Gamma-bar) multiplicatively";
  r.measured = measure_geometric(r);
  const json& m = r.measured;
  bool ok = m["size"] == m["expected_size"] && m["sums_distinct"].get<bool>() &&
            m["multiplicative_cover_holds"].get<bool>();
  if (!m["sid_additive"].is_null()) {
    ok = ok && m["sid_additive"].get<double>() <= m["additive_bound"].get<double>();
    ok = ok && m["sid_multiplicative"].get<double>() <= m["multiplicative_bound"].get<double>();
  }
  r.status = ok ? ConstructionStatus::kPass : ConstructionStatus::kFail;
  r.notes.push_back("exact size is n(n+1)^2, asymptotic to |Gamma|^3");
  return r;
}

ConstructionReport hyperbola_family(std::int64_t p, std::int64_t k, std::optional<std::int64_t> t) {
  if (!is_prime(p)) throw Error(Errc::kInvalidArgument, std::to_string(p) + " is not prime");
  if (k < 1 || k >= p) throw Error(Errc::kInvalidArgument, "need 1 <= k < p");
  ConstructionReport r;
  r.name = "hyperbola";
  std::int64_t chosen = 0;
  if (t) {
    if (!admissible_shift(p, k, *t)) throw Error(Errc::kBadShift, "some u in t + [k] vanishes mod p");
    chosen = ((*t % p) + p) % p;
  } else {
    std::vector<std::uint64_t> score(static_cast<std::size_t>(p), UINT64_MAX);
    detail::FirstException guard;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t s = 0; s < p; ++s) {
      guard.run([&] {
        if (!admissible_shift(p, k, s)) return;
        score[static_cast<std::size_t>(s)] = plane_max_multiplicity(parabola_union(p, k, s), p);
      });
    }
    guard.rethrow();
    const auto best = std::min_element(score.begin(), score.end());
    if (*best == UINT64_MAX) throw Error(Errc::kBadShift, "no admissible shift");
    chosen = best - score.begin();
  }
  r.parameters = {{"p", p}, {"k", k}, {"t", chosen}, {"searched", !t.has_value()}};
  r.set = parabola_union(p, k, chosen);
  r.claim = "|A| = kp - k + 1 and max_{x != 0} r_{A-A}(x) <= k^2 + 5 k^{3/2}";
  r.measured = measure_hyperbola(r);
  const bool ok = r.measured["size"] == r.measured["expected_size"] &&
                  r.measured["max_pairwise_intersection"] == 1 && r.measured["within_target"].get<bool>();
  r.status = ok ? ConstructionStatus::kPass : ConstructionStatus::kFail;
  return r;
}

ConstructionReport fp_mult_example(std::int64_t p, std::int64_t gamma_order, std::uint64_t seed, std::uint64_t k) {
  if (!is_prime(p)) throw Error(Errc::kInvalidArgument, std::to_string(p) + " is not prime");
  if (gamma_order < 1 || (p - 1) % gamma_order != 0) {
    throw Error(Errc::kBadOrder, std::to_string(gamma_order) + " does not divide p - 1");
  }
  const std::int64_t cosets = (p - 1) / gamma_order;
  if (gamma_order > cosets) throw Error(Errc::kBadOrder, "fewer cosets than |Gamma|");
  const AmbientSpec field = AmbientSpec::prime_field(p);
  const std::int64_t root = primitive_root(p);
  const std::int64_t gen = mod_pow(root, cosets, p);
  std::vector<Element> gamma;
  for (std::int64_t i = 0; i < gamma_order; ++i) gamma.emplace_back(mod_pow(gen, i, p));

  std::mt19937_64 rng(seed);
  std::vector<std::int64_t> idx(static_cast<std::size_t>(cosets));
  for (std::int64_t i = 0; i < cosets; ++i) idx[static_cast<std::size_t>(i)] = i;
  std::vector<Element> h;
  for (std::int64_t i = 0; i < gamma_order; ++i) {
    const auto j = static_cast<std::size_t>(i) + static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(cosets - i));
    std::swap(idx[static_cast<std::size_t>(i)], idx[j]);
    const std::int64_t coset_rep = mod_pow(root, idx[static_cast<std::size_t>(i)], p);
    const std::int64_t g = gamma[static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(gamma_order))].x;
    h.emplace_back(static_cast<std::int64_t>(static_cast<__int128>(coset_rep) * g % p));
  }
  ConstructionReport r;
  r.name = "fpmult";
  r.parameters = {{"p", p}, {"gamma_order", gamma_order}, {"seed", seed}, {"k", k}};
  const GroundSet g_set(field, gamma), h_set(field, h);
  const GroundSet hg = set_compose(h_set, g_set, CompositionMode::kProduct);
  r.set = set_compose(g_set, hg, CompositionMode::kSum);
  r.parts["Gamma"] = g_set;
  r.parts["H"] = h_set;
  r.parts["HGamma"] = hg;
  r.claim = "A = Gamma + H·Gamma = Gamma(1 + Gamma·H); k-Sidon subsets have size at most 2 sqrt(k) |Gamma|^2";
  r.measured = measure_fp(r);
  bool ok = r.measured["identity_holds"].get<bool>();
  if (!r.measured["sid_additive"].is_null()) {
    ok = ok && r.measured["sid_additive"].get<double>() <= r.measured["sumset_bound"].get<double>();
  }
  r.status = ok ? ConstructionStatus::kPass : ConstructionStatus::kFail;
  if (gamma_order * gamma_order * gamma_order > p) {
    r.notes.push_back("|Gamma|^3 exceeds p; sums may collide often");
  }
  return r;
}

}  // namespace sidonkit

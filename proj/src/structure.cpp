#include "sidonkit/structure.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "omp_guard.hpp"
#include "sidonkit/counting.hpp"
#include "sidonkit/io.hpp"

namespace sidonkit {

namespace {

using nlohmann::json;

constexpr std::size_t kMaxLevelForGraph = 20000;

unsigned loop_limit(const Rational& eps) {
  // ceil(2/eps) + 2
  const std::int64_t q = (2 * eps.den + eps.num - 1) / eps.num;
  return static_cast<unsigned>(q) + 2;
}

std::uint64_t m_of(std::size_t n, const Rational& eps) {
  return ceil_rational_power(n, Rational::make(eps.num, 2 * eps.den));
}

// c(a) = |A ∩ (X + a)| = r_{A-X}(a) for every a ∈ A, in element order.
std::vector<std::uint64_t> shift_counts(const GroundSet& a, const GroundSet& x) {
  if (x.empty()) return std::vector<std::uint64_t>(a.size(), 0);
  return parallel::translate_overlaps(a, x);
}

PopularCorePart build_core(const GroundSet& a, unsigned l) {
  PopularCorePart p;
  p.l = l;
  DyadicLevel lev = dyadic_best_level(a, l);
  p.delta_level = lev.delta;
  p.level = std::move(lev.level);
  const auto counts = shift_counts(a, p.level);
  for (std::uint64_t c : counts) p.mass += c;
  const std::uint64_t n2 = 2 * a.size();
  std::vector<Element> core;
  p.min_core_count = UINT64_MAX;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (counts[i] * n2 >= p.mass) {
      core.push_back(a[i]);
      p.core_mass += counts[i];
      p.min_core_count = std::min(p.min_core_count, counts[i]);
    }
  }
  if (core.empty()) p.min_core_count = 0;
  p.core = a.with_elements(std::move(core));
  return p;
}

RigidPart build_rigid(const GroundSet& a, const PopularCorePart& pc, std::uint64_t m) {
  const GroundSet& p = pc.level;
  if (p.size() < 2) throw Error(Errc::kEmptyCore, "the popular level has fewer than two elements");
  if (p.size() > kMaxLevelForGraph) {
    throw Error(Errc::kCapExceeded, "popular level of size " + std::to_string(p.size()) + " is too large for the graph");
  }
  // p ~ p' iff 4 M^2 r_{P-P}(p - p') >= |P|
  RepHistogram rpp(p, p, CompositionMode::kDifference);
  const std::uint64_t scale = 4 * m * m;
  const std::size_t np = p.size();
  std::vector<std::uint64_t> degree(np, 0);
  detail::FirstException guard;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t i = 0; i < np; ++i) {
    guard.run([&] {
      std::uint64_t d = 0;
      for (std::size_t j = 0; j < np; ++j) {
        if (j != i && scale * rpp.count(compose(p.ambient(), CompositionMode::kDifference, p[i], p[j])) >= np) ++d;
      }
      degree[i] = d;
    });
  }
  guard.rethrow();
  const std::size_t v = static_cast<std::size_t>(std::max_element(degree.begin(), degree.end()) - degree.begin());
  std::vector<Element> h{p[v]};
  for (std::size_t j = 0; j < np; ++j) {
    if (j != v && scale * rpp.count(compose(p.ambient(), CompositionMode::kDifference, p[v], p[j])) >= np) {
      h.push_back(p[j]);
    }
  }
  RigidPart r;
  r.h = p.with_elements(std::move(h));

  const auto counts = shift_counts(a, r.h);
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  std::vector<std::size_t> w;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (counts[i] * 2 * a.size() >= total) w.push_back(i);
  std::stable_sort(w.begin(), w.end(), [&](std::size_t x, std::size_t y) { return counts[x] > counts[y]; });

  // greedy maximal system of disjoint translates H + z
  std::set<Element> used;
  std::vector<Element> z;
  for (std::size_t i : w) {
    const GroundSet t = translate(r.h, a[i]);
    bool clash = false;
    for (const Element& e : t.elements()) clash = clash || used.count(e) > 0;
    if (clash) continue;
    used.insert(t.elements().begin(), t.elements().end());
    z.push_back(a[i]);
    r.covered += counts[i];
  }
  r.z = a.with_elements(std::move(z));
  r.hh_size = set_compose(r.h, r.h, CompositionMode::kSum).size();
  r.doubling = static_cast<double>(r.hh_size) / static_cast<double>(r.h.size());
  r.zh_size = r.z.size() * r.h.size();
  r.disjoint = used.size() == r.zh_size;
  return r;
}

json trace_json(const std::vector<TraceStep>& trace) {
  json out = json::array();
  for (const auto& t : trace) out.push_back({{"l", t.l}, {"energy", to_string(t.energy)}, {"kappa", t.kappa}});
  return out;
}

void expect(VerifyOutcome& v, bool cond, const std::string& what) {
  if (!cond) {
    v.ok = false;
    v.mismatches.push_back(what);
  }
}

Element zero_of(const GroundSet& a) { return additive_identity(a.ambient()); }

GroundSet without_zero(const GroundSet& a) {
  std::vector<Element> out;
  for (const Element& e : a.elements())
    if (e != zero_of(a)) out.push_back(e);
  return a.with_elements(std::move(out));
}

std::uint64_t ceil_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r < n) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= n) --r;
  return r;
}

}  // namespace

std::string_view certificate_kind_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::kSmallEnergy: return "small-energy";
    case CertificateKind::kPopularCore: return "popular-core";
    case CertificateKind::kRigidStructure: return "rigid-structure";
  }
  return "?";
}

std::string_view branch_name(PipelineBranch b) {
  return b == PipelineBranch::kAdditiveSmallEnergy ? "additive-small-energy" : "multiplicative-after-structure";
}

StructureCertificate energy_gap_decompose(const GroundSet& a, const Rational& delta, const Rational& eps) {
  if (a.size() < 4) throw Error(Errc::kInvalidArgument, "need |A| >= 4");
  if (eps.num <= 0 || delta.num <= 0 || Rational::make(1, 1) < delta || delta < eps) {
    throw Error(Errc::kInvalidArgument, "need 0 < eps <= delta <= 1");
  }
  const std::size_t n = a.size();
  StructureCertificate c;
  c.delta = delta;
  c.eps = eps;
  c.set_size = n;
  c.m = m_of(n, eps);
  const unsigned l_max = loop_limit(eps);
  RepHistogram h(a, a, CompositionMode::kDifference);

  BigInt e_l = energy_from(h, 2);
  for (unsigned l = 2; l <= l_max; ++l) {
    c.trace.push_back({l, e_l, kappa_of(e_l, n, l)});
    if (le_power(e_l, n, l, delta)) {
      c.kind = CertificateKind::kSmallEnergy;
      c.small = SmallEnergyPart{l, e_l, c.trace.back().kappa, true};
      return c;
    }
    const BigInt e_next = energy_from(h, l + 1);
    if (e_next * c.m >= e_l * n) {
      c.kind = CertificateKind::kPopularCore;
      c.popular = build_core(a, l);
      return c;
    }
    e_l = e_next;
  }
  // Ran out of levels; the last comparison already failed.
  const TraceStep& last = c.trace.back();
  c.kind = CertificateKind::kSmallEnergy;
  c.small = SmallEnergyPart{last.l, last.energy, last.kappa, false};
  return c;
}

GroundSet popular_symmetry_set(const GroundSet& a, std::uint64_t theta) {
  if (theta < 1) throw Error(Errc::kInvalidArgument, "theta must be at least 1");
  std::vector<Element> out;
  if (!a.empty()) {
    RepHistogram h(a, a, CompositionMode::kDifference);
    const Element zero = zero_of(a);
    for (const HistEntry& e : h.entries())
      if (e.value != zero && e.count >= theta) out.push_back(e.value);
  }
  return a.with_elements(std::move(out));
}

StructureCertificate rigid_from_core(const GroundSet& a, const StructureCertificate& core) {
  if (core.kind != CertificateKind::kPopularCore) return core;
  StructureCertificate c = core;
  c.kind = CertificateKind::kRigidStructure;
  c.rigid = build_rigid(a, *core.popular, core.m);
  return c;
}

StructureCertificate rigid_structure(const GroundSet& a, const Rational& delta, const Rational& eps) {
  return rigid_from_core(a, energy_gap_decompose(a, delta, eps));
}

GroundSet covered_part(const GroundSet& a, const RigidPart& r) {
  std::set<Element> cover;
  for (const Element& z : r.z.elements()) {
    const GroundSet t = translate(r.h, z);
    cover.insert(t.elements().begin(), t.elements().end());
  }
  std::vector<Element> out;
  for (const Element& e : a.elements())
    if (cover.count(e)) out.push_back(e);
  return a.with_elements(std::move(out));
}

json to_json(const StructureCertificate& c) {
  json j;
  j["format_version"] = kReportFormatVersion;
  j["kind"] = "certificate";
  j["variant"] = certificate_kind_name(c.kind);
  j["delta"] = c.delta.str();
  j["eps"] = c.eps.str();
  j["set_size"] = c.set_size;
  j["M"] = c.m;
  j["max_levels"] = loop_limit(c.eps);
  j["trace"] = trace_json(c.trace);
  if (c.small) {
    j["small_energy"] = {{"k", c.small->k},
                         {"energy", to_string(c.small->energy)},
                         {"threshold_exponent", "k + " + c.delta.str()},
                         {"kappa", c.small->kappa},
                         {"below_threshold", c.small->below_threshold}};
  }
  if (c.popular) {
    const auto& p = *c.popular;
    j["popular_core"] = {{"l", p.l},
                         {"Delta", p.delta_level},
                         {"P", set_to_json(p.level)},
                         {"core", set_to_json(p.core)},
                         {"mass", p.mass},
                         {"theta", {{"num", p.mass}, {"den", 2 * c.set_size}}},
                         {"core_mass", p.core_mass},
                         {"min_core_count", p.min_core_count}};
  }
  if (c.rigid) {
    const auto& r = *c.rigid;
    j["rigid"] = {{"H", set_to_json(r.h)},     {"Z", set_to_json(r.z)},       {"hh_size", r.hh_size},
                  {"doubling", r.doubling},    {"zh_size", r.zh_size},        {"covered", r.covered},
                  {"disjoint", r.disjoint},    {"measured", true}};
  }
  return j;
}

StructureCertificate certificate_from_json(const json& j) {
  try {
    if (j.at("format_version").get<int>() != kReportFormatVersion) {
      throw Error(Errc::kMalformedInput, "unsupported certificate format_version");
    }
    StructureCertificate c;
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "small-energy") {
      c.kind = CertificateKind::kSmallEnergy;
    } else if (variant == "popular-core") {
      c.kind = CertificateKind::kPopularCore;
    } else if (variant == "rigid-structure") {
      c.kind = CertificateKind::kRigidStructure;
    } else {
      throw Error(Errc::kMalformedInput, "unknown certificate variant '" + variant + "'");
    }
    c.delta = Rational::parse(j.at("delta").get<std::string>());
    c.eps = Rational::parse(j.at("eps").get<std::string>());
    c.set_size = j.at("set_size").get<std::size_t>();
    c.m = j.at("M").get<std::uint64_t>();
    for (const auto& t : j.at("trace")) {
      c.trace.push_back({t.at("l").get<unsigned>(), parse_bigint(t.at("energy").get<std::string>()),
                         t.at("kappa").get<double>()});
    }
    if (j.contains("small_energy")) {
      const auto& s = j["small_energy"];
      c.small = SmallEnergyPart{s.at("k").get<unsigned>(), parse_bigint(s.at("energy").get<std::string>()),
                                s.at("kappa").get<double>(), s.at("below_threshold").get<bool>()};
    }
    if (j.contains("popular_core")) {
      const auto& s = j["popular_core"];
      PopularCorePart p;
      p.l = s.at("l").get<unsigned>();
      p.delta_level = s.at("Delta").get<std::uint64_t>();
      p.level = set_from_json(s.at("P"));
      p.core = set_from_json(s.at("core"));
      p.mass = s.at("mass").get<std::uint64_t>();
      p.core_mass = s.at("core_mass").get<std::uint64_t>();
      p.min_core_count = s.at("min_core_count").get<std::uint64_t>();
      c.popular = std::move(p);
    }
    if (j.contains("rigid")) {
      const auto& s = j["rigid"];
      RigidPart r;
      r.h = set_from_json(s.at("H"));
      r.z = set_from_json(s.at("Z"));
      r.hh_size = s.at("hh_size").get<std::uint64_t>();
      r.doubling = s.at("doubling").get<double>();
      r.zh_size = s.at("zh_size").get<std::uint64_t>();
      r.covered = s.at("covered").get<std::uint64_t>();
      r.disjoint = s.at("disjoint").get<bool>();
      c.rigid = std::move(r);
    }
    return c;
  } catch (const json::exception& e) {
    throw Error(Errc::kMalformedInput, std::string("certificate: ") + e.what());
  }
}

VerifyOutcome verify_certificate(const GroundSet& a, const StructureCertificate& c) {
  VerifyOutcome v;
  const std::size_t n = a.size();
  expect(v, c.set_size == n, "set_size");
  if (!v.ok || n < 4) {
    expect(v, n >= 4, "|A| >= 4");
    return v;
  }
  expect(v, c.m == m_of(n, c.eps), "M");
  const unsigned l_max = loop_limit(c.eps);
  expect(v, !c.trace.empty() && c.trace.size() <= l_max - 1, "trace length");
  if (!v.ok) return v;

  RepHistogram h(a, a, CompositionMode::kDifference);
  for (std::size_t i = 0; i < c.trace.size(); ++i) {
    const TraceStep& t = c.trace[i];
    const std::string at = "trace[" + std::to_string(i) + "]";
    expect(v, t.l == 2 + i, at + ".l");
    const BigInt e = energy_from(h, t.l);
    expect(v, t.energy == e, at + ".energy");
    expect(v, t.kappa == kappa_of(e, n, t.l), at + ".kappa");
    const bool last = i + 1 == c.trace.size();
    const bool small = le_power(e, n, t.l, c.delta);
    const bool popular = !small && energy_from(h, t.l + 1) * c.m >= e * n;
    if (!last) expect(v, !small && !popular, at + " should have stopped the loop");
    if (last && c.kind == CertificateKind::kSmallEnergy) {
      expect(v, small || (!popular && t.l == l_max), at + " small-energy decision");
    }
    if (last && c.kind != CertificateKind::kSmallEnergy) expect(v, popular, at + " popular-core decision");
  }
  if (!v.ok) return v;
  const TraceStep& last = c.trace.back();

  if (c.kind == CertificateKind::kSmallEnergy) {
    expect(v, c.small.has_value(), "small_energy part");
    if (!c.small) return v;
    expect(v, c.small->k == last.l, "small_energy.k");
    expect(v, c.small->energy == last.energy, "small_energy.energy");
    expect(v, c.small->kappa == last.kappa, "small_energy.kappa");
    expect(v, c.small->below_threshold == le_power(last.energy, n, last.l, c.delta), "small_energy.below_threshold");
    return v;
  }

  expect(v, c.popular.has_value(), "popular_core part");
  if (!c.popular) return v;
  const PopularCorePart& p = *c.popular;
  const PopularCorePart fresh = build_core(a, last.l);
  expect(v, p.l == fresh.l, "popular_core.l");
  expect(v, p.delta_level == fresh.delta_level, "popular_core.Delta");
  expect(v, p.level == fresh.level, "popular_core.P");
  expect(v, p.mass == fresh.mass, "popular_core.mass");
  expect(v, p.core == fresh.core, "popular_core.core");
  expect(v, p.core_mass == fresh.core_mass, "popular_core.core_mass");
  expect(v, p.min_core_count == fresh.min_core_count, "popular_core.min_core_count");
  // threshold and half-mass, directly on the stored core
  RepHistogram ap(a, p.level, CompositionMode::kDifference);
  std::uint64_t core_mass = 0;
  for (const Element& x : p.core.elements()) {
    const std::uint64_t r = ap.count(x);
    core_mass += r;
    expect(v, r * 2 * n >= p.mass, "core element below theta");
  }
  expect(v, 2 * core_mass >= p.mass, "half-mass property");
  expect(v, p.core.is_subset_of(a), "core ⊆ A");

  if (c.kind == CertificateKind::kRigidStructure) {
    expect(v, c.rigid.has_value(), "rigid part");
    if (!c.rigid) return v;
    const RigidPart& r = *c.rigid;
    std::set<Element> cover;
    for (const Element& z : r.z.elements()) {
      const GroundSet t = translate(r.h, z);
      cover.insert(t.elements().begin(), t.elements().end());
    }
    expect(v, r.disjoint && cover.size() == r.z.size() * r.h.size(), "translates H + z are disjoint");
    const RigidPart again = build_rigid(a, p, c.m);
    expect(v, r.h == again.h, "rigid.H");
    expect(v, r.z == again.z, "rigid.Z");
    expect(v, r.hh_size == set_compose(r.h, r.h, CompositionMode::kSum).size(), "rigid.hh_size");
    expect(v, r.doubling == again.doubling, "rigid.doubling");
    expect(v, r.zh_size == r.z.size() * r.h.size(), "rigid.zh_size");
    expect(v, r.covered == covered_part(a, r).size(), "rigid.covered");
  }
  return v;
}

PipelineReport sum_product_pipeline(const GroundSet& a, const PipelineOptions& opts) {
  const AmbientKind kind = a.ambient().kind();
  if (kind != AmbientKind::kIntegers && kind != AmbientKind::kPrimeField) {
    throw Error(Errc::kAmbientMismatch, "the pipeline runs over the integers or a prime field");
  }
  if (a.empty()) throw Error(Errc::kInvalidArgument, "A must be nonempty");
  const std::uint64_t n = a.size();
  if (kind == AmbientKind::kPrimeField) {
    const auto p = static_cast<std::uint64_t>(a.ambient().modulus());
    if (n * n >= p) throw Error(Errc::kPreconditionFailed, "prime field input needs |A| < sqrt(p)");
  }
  PipelineReport r;
  r.sqrt_target = ceil_sqrt(n);
  if (n < 4) {
    r.degenerate = true;
    r.a_star = a;
    r.extraction = extract_random(a, 2, CompositionMode::kDifference, opts.seed, opts.trials);
    r.warnings.push_back("|A| < 4: structure step skipped");
    return r;
  }

  StructureCertificate cert = energy_gap_decompose(a, Rational::make(1, 4), opts.eps);
  if (cert.kind == CertificateKind::kSmallEnergy) {
    r.branch = PipelineBranch::kAdditiveSmallEnergy;
    r.a_star = a;
    r.extraction = extract_random(a, cert.small->k, CompositionMode::kDifference, opts.seed, opts.trials);
    r.certificate = std::move(cert);
    return r;
  }

  r.branch = PipelineBranch::kMultiplicativeAfterStructure;
  GroundSet star;
  if (opts.source == CoreSource::kRigid && cert.popular->level.size() >= 2) {
    cert = rigid_from_core(a, cert);
    star = covered_part(a, *cert.rigid);
  } else {
    if (opts.source == CoreSource::kRigid) r.warnings.push_back("popular level too small for the rigid step; A_* = A'");
    star = cert.popular->core;
  }
  if (star.contains(zero_of(a))) {
    r.warnings.push_back("0 removed before the multiplicative stage");
    star = without_zero(star);
  }
  if (star.empty()) {
    r.warnings.push_back("structured part empty after removing 0; using A \\ {0}");
    star = without_zero(a);
  }
  r.a_star = star;
  r.certificate = std::move(cert);

  double best = 0.0;
  for (unsigned l = 2; l <= std::max(2u, opts.l_max); ++l) {
    const EnergyReport e = energy_k(star, l, CompositionMode::kProduct);
    r.levels.push_back({l, e.value, e.kappa});
    if (r.chosen_l == 0 || e.kappa < best) {
      best = e.kappa;
      r.chosen_l = l;
    }
  }
  r.extraction = extract_random(star, r.chosen_l, CompositionMode::kProduct, opts.seed, opts.trials);
  return r;
}

json to_json(const PipelineReport& r, const PipelineOptions& opts) {
  json j;
  j["format_version"] = kReportFormatVersion;
  j["kind"] = "pipeline";
  j["parameters"] = {{"delta", "1/4"},
                     {"eps", opts.eps.str()},
                     {"seed", opts.seed},
                     {"trials", opts.trials},
                     {"core_source", opts.source == CoreSource::kRigid ? "rigid" : "popular-core"},
                     {"l_max", opts.l_max}};
  j["branch"] = branch_name(r.branch);
  j["degenerate"] = r.degenerate;
  j["certificate"] = r.certificate ? to_json(*r.certificate) : json(nullptr);
  j["a_star"] = set_to_json(r.a_star);
  j["a_star_size"] = r.a_star.size();
  json levels = json::array();
  for (const auto& l : r.levels) levels.push_back({{"l", l.l}, {"energy", to_string(l.energy)}, {"kappa", l.kappa}});
  j["multiplicative_levels"] = levels;
  j["chosen_l"] = r.chosen_l;
  j["extraction"] = to_json(r.extraction);
  j["subset_size"] = r.extraction.subset.size();
  j["sqrt_target"] = r.sqrt_target;
  j["meets_sqrt_target"] = r.extraction.subset.size() >= r.sqrt_target;
  if (r.chosen_l >= 2 && !r.levels.empty()) {
    // (|A_*|^{2l} / E_l)^{1/(2l-1)}
    const auto& lv = r.levels[r.chosen_l - 2];
    const double l = lv.l;
    const double lg = (2 * l * std::log2(static_cast<double>(r.a_star.size())) - log2_big(lv.energy)) / (2 * l - 1);
    j["extraction_scale"] = std::exp2(lg);
  }
  j["warnings"] = r.warnings;
  j["verified"] = r.extraction.verified;
  return j;
}

VerifyOutcome verify_pipeline_report(const GroundSet& a, const json& j) {
  VerifyOutcome v;
  try {
    expect(v, j.at("format_version").get<int>() == kReportFormatVersion, "format_version");
    const GroundSet star = set_from_json(j.at("a_star"));
    const json& ex = j.at("extraction");
    const GroundSet subset = set_from_json(ex.at("subset"));
    const CompositionMode mode = parse_mode(ex.at("mode").get<std::string>());
    const auto k = ex.at("k").get<unsigned>();
    const auto bound = ex.at("certified_bound").get<std::uint64_t>();
    expect(v, bound == certified_bound(mode, k), "certified bound");
    expect(v, subset.is_subset_of(star), "subset ⊆ A_*");
    expect(v, !verify_multiplicity(subset, bound, mode).has_value(), "subset multiplicity");
    expect(v, ex.at("verified").get<bool>(), "extraction flag");

    const std::string branch = j.at("branch").get<std::string>();
    if (j.at("certificate").is_null()) {
      expect(v, j.at("degenerate").get<bool>() && a.size() < 4, "missing certificate");
      expect(v, star == a, "A_*");
      return v;
    }
    const StructureCertificate c = certificate_from_json(j["certificate"]);
    VerifyOutcome inner = verify_certificate(a, c);
    for (auto& m : inner.mismatches) expect(v, false, "certificate: " + m);
    if (!inner.ok) return v;
    if (c.kind == CertificateKind::kSmallEnergy) {
      expect(v, branch == branch_name(PipelineBranch::kAdditiveSmallEnergy), "branch");
      expect(v, star == a, "A_*");
      expect(v, mode == CompositionMode::kDifference && k == c.small->k, "extraction order");
      return v;
    }
    expect(v, branch == branch_name(PipelineBranch::kMultiplicativeAfterStructure), "branch");
    GroundSet expected = c.kind == CertificateKind::kRigidStructure ? covered_part(a, *c.rigid) : c.popular->core;
    expected = without_zero(expected);
    if (expected.empty()) expected = without_zero(a);
    expect(v, star == expected, "A_*");
    // chosen order minimizes the product-energy exponent
    unsigned chosen = 0;
    double best = 0.0;
    for (const auto& lv : j.at("multiplicative_levels")) {
      const auto l = lv.at("l").get<unsigned>();
      const EnergyReport e = energy_k(star, l, CompositionMode::kProduct);
      expect(v, to_string(e.value) == lv.at("energy").get<std::string>(), "product energy l=" + std::to_string(l));
      if (chosen == 0 || e.kappa < best) {
        best = e.kappa;
        chosen = l;
      }
    }
    expect(v, chosen == j.at("chosen_l").get<unsigned>() && chosen == k, "chosen l");
    expect(v, mode == CompositionMode::kProduct, "extraction mode");
  } catch (const json::exception& e) {
    expect(v, false, std::string("malformed report: ") + e.what());
  }
  return v;
}

}  // namespace sidonkit

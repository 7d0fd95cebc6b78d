// Command-line front end. Reports are JSON (stdout or --out); a short
// human summary goes to stderr.
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sidonkit/bounds.hpp"
#include "sidonkit/constructions.hpp"
#include "sidonkit/counting.hpp"
#include "sidonkit/io.hpp"
#include "sidonkit/kernels.hpp"
#include "sidonkit/sidon.hpp"
#include "sidonkit/structure.hpp"

using namespace sidonkit;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kFailed = 1, kBadInput = 2, kBudget = 3 };

struct Outcome {
  json result;
  int exit = kOk;
  std::string summary;
};

struct Common {
  std::string out;
  int threads = 0;
  std::uint64_t seed = 0;
  std::uint64_t trials = 20;
  std::size_t cap = 40;
};

struct Command {
  CLI::App* app = nullptr;
  std::string name;
  std::function<Outcome()> run;
};

json input_digests = json::object();

GroundSet load(const std::string& path, const std::string& key) {
  ParsedSet p = read_set_file(path);
  input_digests[key] = set_digest(p.set);
  for (const auto& w : p.warnings) std::cerr << "warning: " << w << "\n";
  return p.set;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kMalformedInput, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_file(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw Error(Errc::kMalformedInput, path + ": " + e.what());
  }
}

int exit_for(Errc c) {
  switch (c) {
    case Errc::kOverflowBudgetExceeded:
    case Errc::kCapExceeded: return kBudget;
    case Errc::kVerificationFailed: return kFailed;
    default: return kBadInput;
  }
}

json echo_options(const CLI::App* app) {
  json out = json::object();
  for (const CLI::Option* opt : app->get_options()) {
    const std::string key = opt->get_single_name();
    // Thread count never changes a report.
    if (key.empty() || key == "help" || key == "threads") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_type_size() == 0) {
        out[key] = true;
      } else if (res.size() == 1) {
        out[key] = res.front();
      } else {
        out[key] = res;
      }
    } else if (opt->get_type_size() == 0) {
      out[key] = false;
    } else {
      out[key] = opt->get_default_str();
    }
  }
  return out;
}

void add_common(CLI::App* app, Common& c, bool seeded) {
  app->add_option("--out", c.out, "Write the JSON report here instead of stdout");
  app->add_option("--threads", c.threads, "OpenMP threads (0 = runtime default)");
  if (seeded) {
    app->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    app->add_option("--trials", c.trials, "Random trials")->capture_default_str();
  }
  app->add_option("--cap", c.cap, "Exact-search size cap")->capture_default_str();
}

json verdict_json(const BoundReport& r) { return to_json(r); }

int bound_exit(const BoundReport& r) { return r.verdict == Verdict::kViolated ? kFailed : kOk; }

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sidon-type subsets, additive energies and sum-product extraction"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common c;
  std::vector<Command> commands;
  auto make = [&](CLI::App* parent, const std::string& name, const std::string& help, bool seeded) {
    CLI::App* sub = parent->add_subcommand(name, help);
    add_common(sub, c, seeded);
    return sub;
  };

  // Shared argument slots; each subcommand binds the ones it uses.
  std::string set_path, b_path, c_path, base_path, cert_path, mode_text = "diff", reading = "all", setting = "group";
  std::string delta_text = "1/2", eps_text = "1/4", source = "rigid";
  std::string pipeline_eps_text = "1/16";
  std::vector<std::string> shift_paths;
  unsigned k = 2, l_max = 6;
  std::uint64_t g = 1, sigma = 1, theta = 1, n_big = 0, budget = 100'000'000;
  std::int64_t n_int = 0, base = 2, p = 0, order = 1, t_shift = 0;
  unsigned n_pl = 1, m_pl = 1;
  bool skip = false;
  std::size_t bench_size = 2000, bench_reps = 3;

  auto add_set = [&](CLI::App* s) { s->add_option("--set", set_path, "Input set file")->required(); };
  auto add_mode = [&](CLI::App* s) {
    s->add_option("--mode", mode_text, "diff | sum | prod | ratio")->capture_default_str();
  };

  {
    auto* s = make(&app, "energy", "Additive or multiplicative energy E_k", false);
    add_set(s);
    add_mode(s);
    s->add_option("--k", k, "Order")->capture_default_str();
    commands.push_back({s, "energy", [&] {
                          const GroundSet a = load(set_path, "set");
                          const EnergyReport e = energy_k(a, k, parse_mode(mode_text));
                          json r = {{"k", k}, {"mode", mode_text}, {"set_size", a.size()},
                                    {"value", to_string(e.value)}, {"kappa", e.kappa}};
                          return Outcome{r, kOk, "E_" + std::to_string(k) + " = " + to_string(e.value)};
                        }});
  }
  {
    auto* s = make(&app, "energy-prime", "Energy over tuples with distinct entries", false);
    add_set(s);
    add_mode(s);
    s->add_option("--k", k, "Order")->capture_default_str();
    s->add_option("--reading", reading, "all | within")->capture_default_str();
    commands.push_back({s, "energy-prime", [&] {
                          const GroundSet a = load(set_path, "set");
                          if (reading != "all" && reading != "within") {
                            throw Error(Errc::kInvalidArgument, "reading must be 'all' or 'within'");
                          }
                          const auto rd = reading == "all" ? DistinctReading::kAllEntries : DistinctReading::kWithinPair;
                          const BigInt v = energy_prime_k(a, k, rd, parse_mode(mode_text));
                          json r = {{"k", k}, {"mode", mode_text}, {"reading", reading}, {"value", to_string(v)}};
                          return Outcome{r, kOk, "E'_" + std::to_string(k) + " = " + to_string(v)};
                        }});
  }
  {
    auto* s = make(&app, "histogram", "Representation function r_{A∘B}", false);
    add_set(s);
    add_mode(s);
    s->add_option("--with", b_path, "Second set B (default A)");
    s->add_flag("--skip-non-invertible", skip, "Skip pairs whose ratio is undefined");
    commands.push_back({s, "histogram", [&] {
                          const GroundSet a = load(set_path, "set");
                          const GroundSet b = b_path.empty() ? a : load(b_path, "with");
                          RepHistogram h(a, b, parse_mode(mode_text), skip);
                          json entries = json::array();
                          for (const HistEntry& e : h.entries()) {
                            json v = h.fractional_keys() ? json::array({e.value.x, e.value.y})
                                                         : element_to_json(e.value, a.ambient());
                            entries.push_back({v, e.count});
                          }
                          json r = {{"mode", mode_text},      {"total", h.total()},     {"skipped", h.skipped()},
                                    {"max_count", h.max_count()}, {"support", h.support_size()}, {"entries", entries}};
                          return Outcome{r, kOk, std::to_string(h.support_size()) + " values, max count " +
                                                     std::to_string(h.max_count())};
                        }});
  }
  {
    auto* s = make(&app, "verify", "Check multiplicity and intersection-family membership", false);
    add_set(s);
    add_mode(s);
    s->add_option("--g", g, "Multiplicity bound")->capture_default_str();
    s->add_option("--k", k, "Intersection-family order (difference mode)")->capture_default_str();
    s->add_option("--budget", budget, "Max k-subsets examined")->capture_default_str();
    commands.push_back({s, "verify", [&] {
                          const GroundSet a = load(set_path, "set");
                          const CompositionMode mode = parse_mode(mode_text);
                          json r;
                          bool ok = true;
                          auto w = verify_multiplicity(a, g, mode);
                          r["multiplicity"] = {{"g", g}, {"holds", !w}};
                          if (w) r["multiplicity"]["witness"] = to_json(*w, a.ambient());
                          ok = ok && !w;
                          if (mode == CompositionMode::kDifference) {
                            auto wb = verify_bfamily(a, {k, g}, budget);
                            r["bfamily"] = {{"k", k}, {"g", g}, {"holds", !wb}};
                            if (wb) r["bfamily"]["witness"] = to_json(*wb, a.ambient());
                            ok = ok && !wb;
                          }
                          return Outcome{r, ok ? kOk : kFailed, ok ? "verified" : "violation found"};
                        }});
  }
  {
    auto* s = make(&app, "exact", "Exact maximum k-Sidon subset", false);
    add_set(s);
    add_mode(s);
    s->add_option("--k", k, "Multiplicity bound")->capture_default_str();
    commands.push_back({s, "exact", [&] {
                          const GroundSet a = load(set_path, "set");
                          const ExactResult e = sid_k_exact(a, k, parse_mode(mode_text), c.cap);
                          json r = {{"k", k}, {"size", e.size}, {"nodes", e.nodes}, {"witness", set_to_json(e.witness)}};
                          return Outcome{r, kOk, "Sid_" + std::to_string(k) + " = " + std::to_string(e.size)};
                        }});
  }
  {
    auto* s = make(&app, "greedy", "Randomized greedy maximal k-Sidon subset", true);
    add_set(s);
    add_mode(s);
    s->add_option("--k", k, "Multiplicity bound")->capture_default_str();
    commands.push_back({s, "greedy", [&] {
                          const GroundSet a = load(set_path, "set");
                          const GroundSet out = sid_k_greedy(a, k, parse_mode(mode_text), c.seed);
                          json r = {{"k", k}, {"size", out.size()}, {"subset", set_to_json(out)}};
                          return Outcome{r, kOk, "greedy size " + std::to_string(out.size())};
                        }});
  }
  {
    auto* s = make(&app, "extract", "Random sampling extraction with verified repair", true);
    add_set(s);
    add_mode(s);
    s->add_option("--k", k, "Order")->capture_default_str();
    commands.push_back({s, "extract", [&] {
                          const GroundSet a = load(set_path, "set");
                          const ExtractionResult e = extract_random(a, k, parse_mode(mode_text), c.seed, c.trials);
                          return Outcome{to_json(e), e.verified ? kOk : kFailed,
                                         "subset of size " + std::to_string(e.subset.size()) +
                                             " with multiplicity <= " + std::to_string(e.certified_bound)};
                        }});
  }
  {
    auto* s = make(&app, "dense-core", "Energy-dense core A_*", false);
    add_set(s);
    s->add_option("--g", g, "Order g (energy E_{g+1})")->capture_default_str();
    commands.push_back({s, "dense-core", [&] {
                          const GroundSet a = load(set_path, "set");
                          const DenseCoreReport d = dense_core_extract(a, static_cast<unsigned>(g));
                          return Outcome{to_json(d), d.floor_holds ? kOk : kFailed,
                                         "core of size " + std::to_string(d.core.size()) + ", ratio " + fmt(d.ratio)};
                        }});
  }

  // construct <name>
  CLI::App* construct = app.add_subcommand("construct", "Explicit constructions");
  construct->require_subcommand(1);
  std::string set_out;
  auto construction_outcome = [&](const ConstructionReport& r) {
    if (!set_out.empty()) write_set_file(set_out, r.set, SetFormat::kJson, provenance_of(r));
    return Outcome{to_json(r), r.status == ConstructionStatus::kFail ? kFailed : kOk,
                   r.name + ": |set| = " + std::to_string(r.set.size()) + ", " + std::string(status_name(r.status))};
  };
  auto make_construct = [&](const std::string& name, const std::string& help, bool seeded) {
    auto* s = make(construct, name, help, seeded);
    s->add_option("--set-out", set_out, "Also write the constructed set with provenance");
    return s;
  };
  {
    auto* s = make_construct("sidon", "Sidon set in [0, N]", false);
    s->add_option("--n", n_int, "N")->required();
    commands.push_back({s, "construct sidon", [&] {
                          ConstructionReport r;
                          r.name = "sidon";
                          r.parameters = {{"N", n_int}};
                          r.set = sidon_base(n_int);
                          r.claim = "Sidon";
                          r.measured = remeasure(r);
                          if (!r.measured["is_sidon"].get<bool>()) r.status = ConstructionStatus::kFail;
                          return construction_outcome(r);
                        }});
  }
  {
    auto* s = make_construct("linstrom", "g·A + {0..g-1} over a Sidon base", false);
    s->add_option("--g", g, "g")->required();
    s->add_option("--n", n_int, "N")->required();
    s->add_option("--base", base_path, "Hand-supplied Sidon base");
    commands.push_back({s, "construct linstrom", [&] {
                          std::optional<GroundSet> b;
                          if (!base_path.empty()) b = load(base_path, "base");
                          return construction_outcome(linstrom_like(static_cast<std::int64_t>(g), n_int, b));
                        }});
  }
  {
    auto* s = make_construct("geometric", "Gamma + H·Gamma with geometric Gamma", false);
    s->add_option("--base", base, "Ratio b")->capture_default_str();
    s->add_option("--n", n_int, "n")->required();
    s->add_option("--k", k, "Sidon order for the bounds")->capture_default_str();
    commands.push_back({s, "construct geometric", [&] {
                          return construction_outcome(geometric_sumproduct_example(base, n_int, k, c.cap));
                        }});
  }
  {
    auto* s = make_construct("hyperbola", "Union of k parabolas in (Z/p)^2", false);
    s->add_option("--p", p, "Prime p")->required();
    s->add_option("--k", k, "Number of parabolas")->capture_default_str();
    auto* topt = s->add_option("--t", t_shift, "Shift t (default: search all t)");
    commands.push_back({s, "construct hyperbola", [&, topt] {
                          std::optional<std::int64_t> t;
                          if (topt->count() > 0) t = t_shift;
                          return construction_outcome(hyperbola_family(p, k, t));
                        }});
  }
  {
    auto* s = make_construct("fpmult", "Gamma + H·Gamma for a subgroup Gamma of F_p^*", true);
    s->add_option("--p", p, "Prime p")->required();
    s->add_option("--order", order, "|Gamma|")->required();
    s->add_option("--k", k, "Sidon order for the bounds")->capture_default_str();
    commands.push_back({s, "construct fpmult", [&] {
                          return construction_outcome(fp_mult_example(p, order, c.seed, k));
                        }});
  }

  auto add_structure_params = [&](CLI::App* s) {
    s->add_option("--delta", delta_text, "delta, exact decimal or fraction")->capture_default_str();
    s->add_option("--eps", eps_text, "eps, exact decimal or fraction")->capture_default_str();
  };
  {
    auto* s = make(&app, "decompose", "Energy-gap decomposition certificate", false);
    add_set(s);
    add_structure_params(s);
    commands.push_back({s, "decompose", [&] {
                          const GroundSet a = load(set_path, "set");
                          const auto cert = energy_gap_decompose(a, Rational::parse(delta_text), Rational::parse(eps_text));
                          return Outcome{to_json(cert), kOk, std::string(certificate_kind_name(cert.kind)) +
                                                                 " after " + std::to_string(cert.trace.size()) + " step(s)"};
                        }});
  }
  {
    auto* s = make(&app, "rigid", "Rigid structure from the popular core", false);
    add_set(s);
    add_structure_params(s);
    commands.push_back({s, "rigid", [&] {
                          const GroundSet a = load(set_path, "set");
                          const auto cert = rigid_structure(a, Rational::parse(delta_text), Rational::parse(eps_text));
                          std::string sum(certificate_kind_name(cert.kind));
                          if (cert.rigid) {
                            sum += ": |H| = " + std::to_string(cert.rigid->h.size()) + ", |Z| = " +
                                   std::to_string(cert.rigid->z.size()) + ", covered " +
                                   std::to_string(cert.rigid->covered);
                          }
                          return Outcome{to_json(cert), kOk, sum};
                        }});
  }
  {
    auto* s = make(&app, "popular-shifts", "Shifts t != 0 with |A ∩ (A+t)| >= theta", false);
    add_set(s);
    s->add_option("--theta", theta, "Threshold")->required();
    commands.push_back({s, "popular-shifts", [&] {
                          const GroundSet a = load(set_path, "set");
                          const GroundSet t = popular_symmetry_set(a, theta);
                          json r = {{"theta", theta}, {"size", t.size()}, {"shifts", set_to_json(t)}};
                          return Outcome{r, kOk, std::to_string(t.size()) + " popular shifts"};
                        }});
  }
  {
    auto* s = make(&app, "pipeline", "Sum-product extraction pipeline", true);
    add_set(s);
    s->add_option("--eps", pipeline_eps_text, "eps, exact decimal or fraction")->capture_default_str();
    s->add_option("--source", source, "rigid | core")->capture_default_str();
    s->add_option("--l-max", l_max, "Largest multiplicative order tried")->capture_default_str();
    commands.push_back({s, "pipeline", [&] {
                          const GroundSet a = load(set_path, "set");
                          PipelineOptions o;
                          o.eps = Rational::parse(pipeline_eps_text);
                          o.seed = c.seed;
                          o.trials = c.trials;
                          o.l_max = l_max;
                          if (source != "rigid" && source != "core") {
                            throw Error(Errc::kInvalidArgument, "source must be 'rigid' or 'core'");
                          }
                          o.source = source == "rigid" ? CoreSource::kRigid : CoreSource::kPopularCore;
                          const PipelineReport r = sum_product_pipeline(a, o);
                          return Outcome{to_json(r, o), r.extraction.verified ? kOk : kFailed,
                                         std::string(branch_name(r.branch)) + ": subset of size " +
                                             std::to_string(r.extraction.subset.size()) + " (sqrt target " +
                                             std::to_string(r.sqrt_target) + ")"};
                        }});
  }

  // bounds <name>
  CLI::App* bounds = app.add_subcommand("bounds", "Closed-form bounds");
  bounds->require_subcommand(1);
  {
    auto* s = make(bounds, "sumset", "Sid_k of a subset of B + C", false);
    s->add_option("--b", b_path, "B")->required();
    s->add_option("--c", c_path, "C")->required();
    s->add_option("--set", set_path, "Target A ⊆ B + C");
    s->add_option("--k", k, "k")->capture_default_str();
    s->add_option("--sigma", sigma, "Lower bound on r_{B+C} over A")->capture_default_str();
    commands.push_back({s, "bounds sumset", [&] {
                          const GroundSet bb = load(b_path, "b"), cc = load(c_path, "c");
                          std::optional<GroundSet> a;
                          if (!set_path.empty()) a = load(set_path, "set");
                          const BoundReport r = sumset_sidon_upper(bb, cc, k, sigma, a, c.cap);
                          return Outcome{verdict_json(r), bound_exit(r), "bound " + fmt(r.bound)};
                        }});
  }
  {
    auto* s = make(bounds, "diffset", "Sid_k of A - A and A + A", false);
    add_set(s);
    s->add_option("--k", k, "k")->capture_default_str();
    commands.push_back({s, "bounds diffset", [&] {
                          const BoundReport r = diffset_bounds(load(set_path, "set"), k, c.cap);
                          return Outcome{verdict_json(r), bound_exit(r),
                                         "bound " + fmt(r.bound) + ", " + std::string(verdict_name(r.verdict))};
                        }});
  }
  {
    auto* s = make(bounds, "size", "Largest size in the intersection family", false);
    s->add_option("--n", n_big, "N")->required();
    s->add_option("--k", k, "k")->capture_default_str();
    s->add_option("--g", g, "g")->capture_default_str();
    s->add_option("--setting", setting, "group | segment")->capture_default_str();
    commands.push_back({s, "bounds size", [&] {
                          if (setting != "group" && setting != "segment") {
                            throw Error(Errc::kInvalidArgument, "setting must be 'group' or 'segment'");
                          }
                          const BoundReport r = bfamily_size_upper(
                              n_big, k, g, setting == "group" ? SizeSetting::kFiniteGroup : SizeSetting::kSegment);
                          return Outcome{verdict_json(r), kOk, "bound " + fmt(r.bound)};
                        }});
  }
  {
    auto* s = make(bounds, "embedding", "Audit S ⊆ [0, N-1] through the cyclic embedding", false);
    add_set(s);
    s->add_option("--n", n_big, "N")->required();
    s->add_option("--g", g, "g")->capture_default_str();
    commands.push_back({s, "bounds embedding", [&] {
                          const BoundReport r = segment_embedding_audit(load(set_path, "set"), n_big, g);
                          return Outcome{verdict_json(r), bound_exit(r), std::string(verdict_name(r.verdict))};
                        }});
  }
  {
    auto* s = make(&app, "heritability", "Sidon slices of intersection-family sets", false);
    add_set(s);
    s->add_option("--shifts", shift_paths, "Shift sets X_1 .. X_l (default: the S_w check)");
    s->add_option("--k", k, "k")->capture_default_str();
    s->add_option("--g", g, "g")->capture_default_str();
    commands.push_back({s, "heritability", [&] {
                          const GroundSet a = load(set_path, "set");
                          BoundReport r;
                          if (shift_paths.empty()) {
                            r = heritability_sw(a);
                          } else {
                            std::vector<GroundSet> xs;
                            for (std::size_t i = 0; i < shift_paths.size(); ++i) {
                              xs.push_back(load(shift_paths[i], "shift" + std::to_string(i + 1)));
                            }
                            r = heritability_slice(a, xs, k, g);
                          }
                          return Outcome{verdict_json(r), bound_exit(r), std::string(verdict_name(r.verdict))};
                        }});
  }
  {
    auto* s = make(&app, "audit-plunnecke", "|nA - mA| against the doubling bound", false);
    add_set(s);
    s->add_option("--n", n_pl, "n")->capture_default_str();
    s->add_option("--m", m_pl, "m")->capture_default_str();
    commands.push_back({s, "audit-plunnecke", [&] {
                          const BoundReport r = plunnecke_audit(load(set_path, "set"), n_pl, m_pl);
                          return Outcome{verdict_json(r), bound_exit(r),
                                         fmt(*r.measured) + " <= " + fmt(r.bound) + ": " +
                                             std::string(verdict_name(r.verdict))};
                        }});
  }
  {
    auto* s = make(&app, "verify-certificate", "Recompute a certificate or pipeline report", false);
    add_set(s);
    s->add_option("--cert", cert_path, "Certificate or report JSON")->required();
    commands.push_back({s, "verify-certificate", [&] {
                          const GroundSet a = load(set_path, "set");
                          json j = parse_json_file(cert_path);
                          if (j.contains("result") && j.contains("manifest")) j = j["result"];
                          const std::string kind = j.value("kind", "");
                          VerifyOutcome v;
                          if (kind == "certificate") {
                            v = verify_certificate(a, certificate_from_json(j));
                          } else if (kind == "pipeline") {
                            v = verify_pipeline_report(a, j);
                          } else {
                            throw Error(Errc::kMalformedInput, "expected a certificate or pipeline report");
                          }
                          json r = {{"kind", kind}, {"ok", v.ok}, {"mismatches", v.mismatches}};
                          return Outcome{r, v.ok ? kOk : kFailed,
                                         v.ok ? "all statistics recompute" : std::to_string(v.mismatches.size()) + " mismatch(es)"};
                        }});
  }
  {
    auto* s = make(&app, "bench", "Time serial and parallel histogram kernels", true);
    s->add_option("--size", bench_size, "Random set size")->capture_default_str();
    s->add_option("--reps", bench_reps, "Repetitions")->capture_default_str();
    commands.push_back({s, "bench", [&] {
                          std::mt19937_64 rng(c.seed);
                          std::vector<std::int64_t> v(bench_size);
                          for (auto& x : v) x = static_cast<std::int64_t>(rng() % (50 * bench_size + 1));
                          const GroundSet a(AmbientSpec::integers(), std::vector<Element>(v.begin(), v.end()),
                                            DuplicatePolicy::kDedupe);
                          auto time = [&](auto&& f) {
                            double best = 1e300;
                            for (std::size_t i = 0; i < std::max<std::size_t>(1, bench_reps); ++i) {
                              const auto t0 = std::chrono::steady_clock::now();
                              f();
                              best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
                            }
                            return best;
                          };
                          const double ts = time([&] { (void)serial::pair_histogram(a, a, CompositionMode::kDifference); });
                          const double tp = time([&] { (void)parallel::pair_histogram(a, a, CompositionMode::kDifference); });
                          const bool same = serial::pair_histogram(a, a, CompositionMode::kDifference).entries ==
                                            parallel::pair_histogram(a, a, CompositionMode::kDifference).entries;
                          json r = {{"set_size", a.size()}, {"threads", max_threads()}, {"serial_seconds", ts},
                                    {"parallel_seconds", tp}, {"outputs_agree", same}};
                          return Outcome{r, same ? kOk : kFailed,
                                         "serial " + fmt(ts) + " s, parallel " + fmt(tp) + " s"};
                        }});
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  const Command* chosen = nullptr;
  for (const auto& cmd : commands)
    if (cmd.app->parsed()) chosen = &cmd;
  if (chosen == nullptr) return kBadInput;

  set_threads(c.threads);
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = chosen->run();
  } catch (const Error& e) {
    out.exit = exit_for(e.code());
    out.result = {{"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}};
    out.summary = std::string("error: ") + e.what();
  } catch (const std::exception& e) {
    out.exit = kBadInput;
    out.result = {{"error", {{"code", "Internal"}, {"message", e.what()}}}};
    out.summary = std::string("error: ") + e.what();
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  // No timing in the report, so reruns are byte-identical.
  json report;
  report["format_version"] = kReportFormatVersion;
  report["manifest"] = {{"tool", "sidonkit"},
                        {"version", kVersion},
                        {"subcommand", chosen->name},
                        {"parameters", echo_options(chosen->app)},
                        {"input_digests", input_digests},
                        {"seed", c.seed},
                        {"output_paths", c.out.empty() ? json::array() : json::array({c.out})}};
  report["result"] = out.result;
  report["exit_code"] = out.exit;
  const std::string text = report.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out);
    if (!f) {
      std::cerr << "error: cannot write '" << c.out << "'\n";
      return kBadInput;
    }
    f << text;
  }
  std::cerr << chosen->name << ": " << out.summary << " [" << fmt(wall) << " s]\n";
  return out.exit;
}

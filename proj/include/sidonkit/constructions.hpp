#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "sidonkit/core.hpp"

namespace sidonkit {

enum class ConstructionStatus { kPass, kFail, kAnomaly };
std::string_view status_name(ConstructionStatus s);

struct ConstructionReport {
  std::string name;
  nlohmann::json parameters = nlohmann::json::object();
  GroundSet set;
  std::map<std::string, GroundSet> parts;  // named auxiliary sets
  std::string claim;
  nlohmann::json measured = nlohmann::json::object();
  ConstructionStatus status = ConstructionStatus::kPass;
  std::vector<std::string> notes;
};

nlohmann::json to_json(const ConstructionReport& r);
// Provenance object attached when the output set is written to a file.
nlohmann::json provenance_of(const ConstructionReport& r);

// {2pi + (i^2 mod p) : 0 <= i < p} for the largest prime p with 2p^2 <= N;
// falls back to {0, 1, 3} when that gives fewer than three elements.
GroundSet sidon_base(std::int64_t n);

// S = g·A + {0, ..., g-1} with A = sidon_base(floor((N-g)/g)) or `base`.
ConstructionReport linstrom_like(std::int64_t g, std::int64_t n, const std::optional<GroundSet>& base = std::nullopt);

// Gamma = {1, b, ..., b^n}, H = {b^{n+1}, ..., b^{n(n+1)}}, A = Gamma + H·Gamma.
ConstructionReport geometric_sumproduct_example(std::int64_t base, std::int64_t n, std::uint64_t k = 1,
                                                std::size_t cap = 40);

// Union of the parabolas A_u = {(x, x^2/u)} for u in t + {1, ..., k} inside
// (Z/p)^2. With no t, every admissible t is scanned and the one minimizing
// max_{x != 0} r_{A-A}(x) is kept (smallest t on ties).
ConstructionReport hyperbola_family(std::int64_t p, std::int64_t k, std::optional<std::int64_t> t = std::nullopt);

// Gamma = subgroup of F_p^* of the given order, H = random representatives
// of distinct cosets, A = Gamma + H·Gamma.
ConstructionReport fp_mult_example(std::int64_t p, std::int64_t gamma_order, std::uint64_t seed = 0,
                                   std::uint64_t k = 1);

// Recomputes the measured statistics of a report from its sets.
nlohmann::json remeasure(const ConstructionReport& r);

}  // namespace sidonkit

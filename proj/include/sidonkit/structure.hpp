#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sidonkit/core.hpp"
#include "sidonkit/numeric.hpp"
#include "sidonkit/sidon.hpp"

namespace sidonkit {

inline constexpr int kReportFormatVersion = 1;

enum class CertificateKind { kSmallEnergy, kPopularCore, kRigidStructure };
std::string_view certificate_kind_name(CertificateKind k);

struct TraceStep {
  unsigned l = 2;
  BigInt energy = 0;  // E_l(A)
  double kappa = 0.0;
};

struct SmallEnergyPart {
  unsigned k = 2;
  BigInt energy = 0;
  double kappa = 0.0;
  // E_k <= |A|^{k+delta}; false when the loop ran out first.
  bool below_threshold = false;
};

struct PopularCorePart {
  unsigned l = 2;
  std::uint64_t delta_level = 1;  // Delta: P = {x : Delta < r_{A-A}(x) <= 2 Delta}
  GroundSet level;                // P
  GroundSet core;                 // A'
  // theta = mass / (2|A|), mass = sum_{a∈A} |A ∩ (P + a)|
  std::uint64_t mass = 0;
  std::uint64_t core_mass = 0;
  std::uint64_t min_core_count = 0;  // min over A' of r_{A-P}
};

struct RigidPart {
  GroundSet h;
  GroundSet z;
  std::uint64_t hh_size = 0;  // |H + H|
  double doubling = 0.0;
  std::uint64_t zh_size = 0;  // |Z| |H|
  std::uint64_t covered = 0;  // sum_{z∈Z} |A ∩ (H + z)|
  bool disjoint = false;
  // every quantity here comes from a heuristic and carries no guarantee
};

struct StructureCertificate {
  CertificateKind kind = CertificateKind::kSmallEnergy;
  Rational delta;
  Rational eps;
  std::size_t set_size = 0;
  std::uint64_t m = 1;  // ceil(|A|^{eps/2})
  std::vector<TraceStep> trace;
  std::optional<SmallEnergyPart> small;
  std::optional<PopularCorePart> popular;
  std::optional<RigidPart> rigid;
};

nlohmann::json to_json(const StructureCertificate& c);
StructureCertificate certificate_from_json(const nlohmann::json& j);

// Iterates l = 2, 3, ..., ceil(2/eps) + 2. At each l: E_l <= |A|^{l+delta}
// gives SmallEnergy; otherwise E_{l+1} >= |A| E_l / M gives PopularCore with
// the dyadic level P of order l. Requires |A| >= 4 and 0 < eps <= delta <= 1.
StructureCertificate energy_gap_decompose(const GroundSet& a, const Rational& delta, const Rational& eps);

// {t != 0 : |A ∩ (A + t)| >= theta}
GroundSet popular_symmetry_set(const GroundSet& a, std::uint64_t theta);

// Turns a PopularCore certificate into RigidStructure; other kinds pass
// through unchanged. EmptyCore when |P| < 2.
StructureCertificate rigid_structure(const GroundSet& a, const Rational& delta, const Rational& eps);
StructureCertificate rigid_from_core(const GroundSet& a, const StructureCertificate& core);

// The subset (H ∔ Z) ∩ A of a RigidStructure certificate.
GroundSet covered_part(const GroundSet& a, const RigidPart& r);

struct VerifyOutcome {
  bool ok = true;
  std::vector<std::string> mismatches;
};

// Recomputes every stored statistic from A.
VerifyOutcome verify_certificate(const GroundSet& a, const StructureCertificate& c);

enum class PipelineBranch { kAdditiveSmallEnergy, kMultiplicativeAfterStructure };
std::string_view branch_name(PipelineBranch b);

enum class CoreSource { kRigid, kPopularCore };

struct PipelineOptions {
  Rational eps = Rational::make(1, 16);
  std::uint64_t seed = 0;
  std::uint64_t trials = 20;
  CoreSource source = CoreSource::kRigid;
  unsigned l_max = 6;
};

struct MultiplicativeLevel {
  unsigned l = 2;
  BigInt energy = 0;  // product energy of A_*
  double kappa = 0.0;
};

struct PipelineReport {
  PipelineBranch branch = PipelineBranch::kAdditiveSmallEnergy;
  std::optional<StructureCertificate> certificate;  // empty for |A| < 4
  GroundSet a_star;
  std::vector<MultiplicativeLevel> levels;
  unsigned chosen_l = 0;
  ExtractionResult extraction;
  std::uint64_t sqrt_target = 0;  // ceil(sqrt |A|)
  std::vector<std::string> warnings;
  bool degenerate = false;
};

nlohmann::json to_json(const PipelineReport& r, const PipelineOptions& opts);

// Integers or a prime field (|A| < sqrt p). Small-energy sets go through
// additive extraction; otherwise the structured part A_* is extracted
// multiplicatively at the order l minimizing its product-energy exponent.
PipelineReport sum_product_pipeline(const GroundSet& a, const PipelineOptions& opts = {});

// Re-checks a serialized pipeline report: certificate, branch, A_* and the
// extracted subset.
VerifyOutcome verify_pipeline_report(const GroundSet& a, const nlohmann::json& report);

}  // namespace sidonkit

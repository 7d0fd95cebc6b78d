#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sidonkit/core.hpp"

namespace sidonkit {

enum class SetFormat { kJson, kText };

struct ParsedSet {
  GroundSet set;
  std::optional<nlohmann::json> provenance;
  std::vector<std::string> warnings;
};

// Reads either format; a leading '{' selects JSON. Errors carry line:column.
ParsedSet parse_set(std::string_view text, DuplicatePolicy duplicates = DuplicatePolicy::kReject);
ParsedSet read_set_file(const std::filesystem::path& path,
                        DuplicatePolicy duplicates = DuplicatePolicy::kReject);

std::string serialize_set(const GroundSet& set, SetFormat format = SetFormat::kJson,
                          const std::optional<nlohmann::json>& provenance = std::nullopt);
void write_set_file(const std::filesystem::path& path, const GroundSet& set,
                    SetFormat format = SetFormat::kJson,
                    const std::optional<nlohmann::json>& provenance = std::nullopt);

nlohmann::json ambient_to_json(const AmbientSpec& ambient);
AmbientSpec ambient_from_json(const nlohmann::json& j);
nlohmann::json element_to_json(const Element& e, const AmbientSpec& ambient);
Element element_from_json(const nlohmann::json& j, const AmbientSpec& ambient);
nlohmann::json set_to_json(const GroundSet& set);
GroundSet set_from_json(const nlohmann::json& j, DuplicatePolicy duplicates = DuplicatePolicy::kReject);

// FNV-1a over the canonical JSON serialization, as 16 hex digits.
std::string set_digest(const GroundSet& set);

}  // namespace sidonkit

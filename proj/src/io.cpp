#include "sidonkit/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sidonkit {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(std::size_t line, std::size_t column, const std::string& what) {
  throw Error(Errc::kMalformedInput,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::int64_t get_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw Error(Errc::kMalformedInput, std::string(what) + " must be an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    throw Error(Errc::kOverflowBudgetExceeded, std::string(what) + " exceeds 64 bits");
  }
  return j.get<std::int64_t>();
}

AmbientSpec ambient_from_kind(std::string_view kind, std::optional<std::int64_t> modulus) {
  auto need = [&](const char* key) -> std::int64_t {
    if (!modulus) throw Error(Errc::kMalformedInput, std::string(kind) + " needs " + key);
    return *modulus;
  };
  if (kind == "integers") return AmbientSpec::integers();
  if (kind == "integers-mod-N") return AmbientSpec::integers_mod(need("N"));
  if (kind == "prime-field") return AmbientSpec::prime_field(need("p"));
  if (kind == "prime-square-plane") return AmbientSpec::prime_square_plane(need("p"));
  throw Error(Errc::kMalformedInput, "unknown ambient kind '" + std::string(kind) + "'");
}

// Builds the set, reporting the first duplicate by input position.
GroundSet build(const AmbientSpec& ambient, std::vector<Element> elements,
                const std::vector<std::string>& where, DuplicatePolicy duplicates,
                std::optional<std::string> label, std::vector<std::string>& warnings) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!is_canonical(ambient, elements[i])) {
      throw Error(Errc::kNonCanonicalElement, where[i] + ": " + to_string(elements[i], ambient) +
                                                  " is not canonical in " + ambient.name());
    }
  }
  std::vector<std::size_t> order(elements.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return elements[a] < elements[b]; });
  std::size_t dropped = 0;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (elements[order[i]] != elements[order[i - 1]]) continue;
    if (duplicates == DuplicatePolicy::kReject) {
      throw Error(Errc::kDuplicateElement,
                  where[order[i]] + ": duplicate element " + to_string(elements[order[i]], ambient));
    }
    ++dropped;
  }
  if (dropped > 0) warnings.push_back("removed " + std::to_string(dropped) + " duplicate element(s)");
  return GroundSet(ambient, std::move(elements), DuplicatePolicy::kDedupe, std::move(label));
}

ParsedSet parse_json(std::string_view text, DuplicatePolicy duplicates) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, column] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
    malformed(line, column, "invalid JSON");
  }
  ParsedSet out;
  out.set = set_from_json(j, duplicates);
  if (j.contains("provenance")) out.provenance = j["provenance"];
  if (j.contains("elements") && j["elements"].size() != out.set.size()) {
    out.warnings.push_back("removed " + std::to_string(j["elements"].size() - out.set.size()) +
                           " duplicate element(s)");
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::int64_t parse_int_token(const std::string& token, std::size_t line, std::size_t column) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(token, &used);
  } catch (const std::out_of_range&) {
    malformed(line, column, "integer out of range: '" + token + "'");
  } catch (const std::exception&) {
    malformed(line, column, "expected an integer, found '" + token + "'");
  }
  if (used != token.size()) malformed(line, column, "expected an integer, found '" + token + "'");
  return v;
}

ParsedSet parse_text(std::string_view text, DuplicatePolicy duplicates) {
  std::optional<AmbientSpec> ambient;
  std::optional<std::string> label;
  std::optional<json> provenance;
  std::vector<Element> elements;
  std::vector<std::string> where;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = trim(std::string_view(line).substr(1));
      const auto colon = body.find(':');
      if (colon == std::string::npos) continue;
      const std::string key = trim(std::string_view(body).substr(0, colon));
      const std::string value = trim(std::string_view(body).substr(colon + 1));
      if (key == "ambient") {
        std::istringstream words(value);
        std::string kind, param;
        words >> kind >> param;
        std::optional<std::int64_t> modulus;
        if (!param.empty()) {
          const auto eq = param.find('=');
          if (eq == std::string::npos) malformed(line_no, 1, "expected key=value after ambient kind");
          modulus = parse_int_token(param.substr(eq + 1), line_no, 1);
        }
        try {
          ambient = ambient_from_kind(kind, modulus);
        } catch (const Error& e) {
          malformed(line_no, 1, e.detail());
        }
      } else if (key == "label") {
        label = value;
      } else if (key == "provenance") {
        try {
          provenance = json::parse(value);
        } catch (const json::parse_error&) {
          malformed(line_no, 1, "provenance must be JSON");
        }
      }
      continue;
    }
    if (!ambient) malformed(line_no, 1, "element before the '# ambient:' header");
    const std::size_t column = raw.find_first_not_of(" \t") + 1;
    if (ambient->is_plane()) {
      const auto comma = line.find(',');
      if (comma == std::string::npos) malformed(line_no, column, "expected a pair 'x,y'");
      elements.emplace_back(parse_int_token(trim(std::string_view(line).substr(0, comma)), line_no, column),
                            parse_int_token(trim(std::string_view(line).substr(comma + 1)), line_no, column));
    } else {
      elements.emplace_back(parse_int_token(line, line_no, column));
    }
    where.push_back("line " + std::to_string(line_no));
  }
  if (!ambient) malformed(line_no + 1, 1, "missing '# ambient:' header");
  ParsedSet out;
  out.set = build(*ambient, std::move(elements), where, duplicates, std::move(label), out.warnings);
  out.provenance = std::move(provenance);
  return out;
}

}  // namespace

json ambient_to_json(const AmbientSpec& ambient) {
  switch (ambient.kind()) {
    case AmbientKind::kIntegers: return {{"kind", "integers"}};
    case AmbientKind::kIntegersModN: return {{"kind", "integers-mod-N"}, {"N", ambient.modulus()}};
    case AmbientKind::kPrimeField: return {{"kind", "prime-field"}, {"p", ambient.modulus()}};
    case AmbientKind::kPrimeSquarePlane: return {{"kind", "prime-square-plane"}, {"p", ambient.modulus()}};
  }
  return {};
}

AmbientSpec ambient_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw Error(Errc::kMalformedInput, "ambient must be an object with a string 'kind'");
  }
  std::optional<std::int64_t> modulus;
  if (j.contains("N")) modulus = get_int(j["N"], "N");
  if (j.contains("p")) modulus = get_int(j["p"], "p");
  return ambient_from_kind(j["kind"].get<std::string>(), modulus);
}

json element_to_json(const Element& e, const AmbientSpec& ambient) {
  if (ambient.is_plane()) return json::array({e.x, e.y});
  return e.x;
}

Element element_from_json(const json& j, const AmbientSpec& ambient) {
  if (ambient.is_plane()) {
    if (!j.is_array() || j.size() != 2) throw Error(Errc::kMalformedInput, "plane elements are [x, y] pairs");
    return {get_int(j[0], "coordinate"), get_int(j[1], "coordinate")};
  }
  return get_int(j, "element");
}

json set_to_json(const GroundSet& set) {
  json j;
  j["ambient"] = ambient_to_json(set.ambient());
  json elems = json::array();
  for (const Element& e : set.elements()) elems.push_back(element_to_json(e, set.ambient()));
  j["elements"] = std::move(elems);
  if (set.label()) j["label"] = *set.label();
  return j;
}

GroundSet set_from_json(const json& j, DuplicatePolicy duplicates) {
  if (!j.is_object()) throw Error(Errc::kMalformedInput, "set must be a JSON object");
  if (!j.contains("ambient")) throw Error(Errc::kMalformedInput, "missing 'ambient'");
  if (!j.contains("elements") || !j["elements"].is_array()) {
    throw Error(Errc::kMalformedInput, "missing 'elements' array");
  }
  const AmbientSpec ambient = ambient_from_json(j["ambient"]);
  std::vector<Element> elements;
  std::vector<std::string> where;
  const json& arr = j["elements"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    try {
      elements.push_back(element_from_json(arr[i], ambient));
    } catch (const Error& e) {
      throw Error(e.code(), "elements[" + std::to_string(i) + "]: " + e.detail());
    }
    where.push_back("elements[" + std::to_string(i) + "]");
  }
  std::optional<std::string> label;
  if (j.contains("label") && j["label"].is_string()) label = j["label"].get<std::string>();
  std::vector<std::string> ignored;
  return build(ambient, std::move(elements), where, duplicates, std::move(label), ignored);
}

ParsedSet parse_set(std::string_view text, DuplicatePolicy duplicates) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json(text, duplicates);
  return parse_text(text, duplicates);
}

ParsedSet read_set_file(const std::filesystem::path& path, DuplicatePolicy duplicates) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kMalformedInput, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_set(buf.str(), duplicates);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

std::string serialize_set(const GroundSet& set, SetFormat format, const std::optional<json>& provenance) {
  if (format == SetFormat::kJson) {
    json j = set_to_json(set);
    if (provenance) j["provenance"] = *provenance;
    return j.dump() + "\n";
  }
  std::string out = "# ambient: ";
  const json amb = ambient_to_json(set.ambient());
  out += amb["kind"].get<std::string>();
  if (amb.contains("N")) out += " N=" + std::to_string(amb["N"].get<std::int64_t>());
  if (amb.contains("p")) out += " p=" + std::to_string(amb["p"].get<std::int64_t>());
  out += "\n";
  if (set.label()) out += "# label: " + *set.label() + "\n";
  if (provenance) out += "# provenance: " + provenance->dump() + "\n";
  for (const Element& e : set.elements()) {
    if (set.ambient().is_plane())
      out += std::to_string(e.x) + "," + std::to_string(e.y) + "\n";
    else
      out += std::to_string(e.x) + "\n";
  }
  return out;
}

void write_set_file(const std::filesystem::path& path, const GroundSet& set, SetFormat format,
                    const std::optional<json>& provenance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kMalformedInput, "cannot write " + path.string());
  out << serialize_set(set, format, provenance);
}

std::string set_digest(const GroundSet& set) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : set_to_json(set).dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sidonkit

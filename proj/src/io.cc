/*
 * Copyright 2026 The vrstars Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "vrstars/io.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "vrstars/error.h"

namespace vrstars {

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error("cannot move '" + tmp.string() + "' to '" +
                      path.string() + "': " + ec.message());
}

FeatureSchema load_schema(const fs::path& path) {
  const std::string text = read_text_file(path);
  try {
    return schema_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("schema '" + path.string() + "': " + e.what());
  }
}

void write_schema(const fs::path& path, const FeatureSchema& schema) {
  write_text_file(path, schema_to_json(schema).dump(2) + "\n");
}

PropertyRecord parse_property(const nlohmann::json& j,
                              const FeatureSchema& schema,
                              std::size_t line_no) {
  if (!j.is_object()) throw InputError("property must be an object", line_no);
  PropertyRecord r;
  auto id = j.find("id");
  if (id == j.end() || !id->is_string()) {
    throw InputError("missing string field \"id\"", line_no);
  }
  r.id = id->get<std::string>();

  auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) {
    throw InputError("property '" + r.id + "': missing string field \"kind\"",
                     line_no);
  }
  if (*kind == "hotel") {
    r.kind = PropertyKind::kHotel;
  } else if (*kind == "vr") {
    r.kind = PropertyKind::kVacationRental;
  } else {
    throw InputError("property '" + r.id + "': unknown kind '" +
                         kind->get<std::string>() + "'",
                     line_no);
  }

  auto stars = j.find("stars");
  if (stars != j.end() && !stars->is_null()) {
    if (!stars->is_number_integer()) {
      throw InputError("property '" + r.id + "': stars must be an integer",
                       line_no);
    }
    const auto s = stars->get<std::int64_t>();
    if (s < 1 || s > 5) {
      throw InputError("property '" + r.id + "': stars " + std::to_string(s) +
                           " out of range 1..5",
                       line_no);
    }
    r.official_stars = static_cast<int>(s);
  }

  r.features.assign(schema.size(), 0.0);
  std::vector<bool> present(schema.size(), false);
  auto features = j.find("features");
  if (features != j.end() && !features->is_null()) {
    if (!features->is_object()) {
      throw InputError("property '" + r.id + "': features must be an object",
                       line_no);
    }
    for (const auto& [name, value] : features->items()) {
      auto idx = schema.find(name);
      if (!idx) {
        throw InputError("property '" + r.id + "': unknown feature \"" +
                             name + "\"",
                         line_no);
      }
      if (!value.is_number()) {
        throw InputError("property '" + r.id + "': feature \"" + name +
                             "\" must be a number",
                         line_no);
      }
      const double v = value.get<double>();
      if (!std::isfinite(v)) {
        throw InputError("feature \"" + name + "\" is not finite", line_no);
      }
      if (schema[*idx].kind == FeatureKind::kBinary && v != 0.0 && v != 1.0) {
        throw InputError("property '" + r.id + "': binary feature \"" + name +
                             "\" must be 0 or 1",
                         line_no);
      }
      r.features[*idx] = v;
      present[*idx] = true;
    }
  }
  for (const FeatureSpec& f : schema.features()) {
    if (f.kind == FeatureKind::kNumeric && !present[f.id]) {
      throw InputError("property '" + r.id + "': missing numeric feature \"" +
                           f.name + "\"",
                       line_no);
    }
  }
  return r;
}

nlohmann::ordered_json property_to_json(const PropertyRecord& r,
                                        const FeatureSchema& schema) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["kind"] = r.kind == PropertyKind::kHotel ? "hotel" : "vr";
  if (r.official_stars) {
    j["stars"] = *r.official_stars;
  } else {
    j["stars"] = nullptr;
  }
  nlohmann::ordered_json features = nlohmann::ordered_json::object();
  for (const FeatureSpec& f : schema.features()) {
    const double v = r.features[f.id];
    if (f.kind == FeatureKind::kBinary) {
      if (v != 0.0) features[f.name] = 1;
    } else {
      features[f.name] = v;
    }
  }
  j["features"] = std::move(features);
  return j;
}

Dataset parse_properties(std::string_view text, const FeatureSchema& schema) {
  Dataset ds{schema, {}, std::nullopt};
  std::unordered_set<std::string> ids;
  for_each_jsonl(text, [&](const nlohmann::json& j, std::size_t line_no) {
    PropertyRecord r = parse_property(j, schema, line_no);
    if (!ids.insert(r.id).second) {
      throw InputError("duplicate property id '" + r.id + "'", line_no);
    }
    ds.records.push_back(std::move(r));
  });
  return ds;
}

Dataset load_properties(const fs::path& path, const FeatureSchema& schema) {
  try {
    return parse_properties(read_text_file(path), schema);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string format_properties(const Dataset& ds) {
  std::string out;
  for (const PropertyRecord& r : ds.records) {
    out += property_to_json(r, ds.schema).dump();
    out += '\n';
  }
  return out;
}

void write_properties(const fs::path& path, const Dataset& ds) {
  write_text_file(path, format_properties(ds));
}

StayTable parse_stays(std::string_view text) {
  StayTable table;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "guest_id,property_id") {
        throw InputError("expected header 'guest_id,property_id'", line_no);
      }
      header_seen = true;
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos ||
        line.find(',', comma + 1) != std::string_view::npos || comma == 0 ||
        comma + 1 == line.size()) {
      throw InputError("expected 'guest_id,property_id'", line_no);
    }
    table.rows.emplace_back(std::string(line.substr(0, comma)),
                            std::string(line.substr(comma + 1)));
  }
  return table;
}

StayTable load_stays(const fs::path& path) {
  try {
    return parse_stays(read_text_file(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_stays(const fs::path& path, const StayTable& stays) {
  std::string out = "guest_id,property_id\n";
  for (const auto& [guest, property] : stays.rows) {
    out += guest;
    out += ',';
    out += property;
    out += '\n';
  }
  write_text_file(path, out);
}

std::unordered_map<std::string, Rating> load_label_map(const fs::path& path) {
  std::unordered_map<std::string, Rating> labels;
  for_each_jsonl(read_text_file(path), [&](const nlohmann::json& j,
                                           std::size_t line_no) {
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string() ||
        !j.contains("label") || !j["label"].is_number_integer()) {
      throw InputError(path.string() + ": expected {\"id\", \"label\"}",
                       line_no);
    }
    const int label = j["label"].get<int>();
    if (label < 1 || label > 5) {
      throw InputError(path.string() + ": label out of range 1..5", line_no);
    }
    if (!labels.emplace(j["id"].get<std::string>(), Rating(label)).second) {
      throw InputError(path.string() + ": duplicate id", line_no);
    }
  });
  return labels;
}

Dataset attach_labels(const Dataset& ds,
                      const std::unordered_map<std::string, Rating>& labels) {
  Dataset out{ds.schema, {}, std::vector<Rating>{}};
  for (const PropertyRecord& r : ds.records) {
    auto it = labels.find(r.id);
    if (it == labels.end()) continue;
    out.records.push_back(r);
    out.labels->push_back(it->second);
  }
  return out;
}

}  // namespace vrstars

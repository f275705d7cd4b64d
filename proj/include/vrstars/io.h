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

#ifndef VRSTARS_IO_H_
#define VRSTARS_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "vrstars/dataset.h"
#include "vrstars/error.h"
#include "vrstars/schema.h"

namespace vrstars {

namespace fs = std::filesystem;

std::string read_text_file(const fs::path& path);
// Writes through a temporary sibling and renames, so readers never observe a
// partially written file.
void write_text_file(const fs::path& path, std::string_view content);

FeatureSchema load_schema(const fs::path& path);
void write_schema(const fs::path& path, const FeatureSchema& schema);

// Parses one properties.jsonl object. Binary features absent from the
// object default to 0; absent numeric features are an error. Throws
// InputError tagged with `line_no`.
PropertyRecord parse_property(const nlohmann::json& j,
                              const FeatureSchema& schema,
                              std::size_t line_no = 0);
nlohmann::ordered_json property_to_json(const PropertyRecord& r,
                                        const FeatureSchema& schema);

// properties.jsonl, one object per line. Returns an unlabeled Dataset.
Dataset load_properties(const fs::path& path, const FeatureSchema& schema);
Dataset parse_properties(std::string_view text, const FeatureSchema& schema);
void write_properties(const fs::path& path, const Dataset& ds);
std::string format_properties(const Dataset& ds);

// stays.csv with header `guest_id,property_id`.
StayTable load_stays(const fs::path& path);
StayTable parse_stays(std::string_view text);
void write_stays(const fs::path& path, const StayTable& stays);

// Any jsonl file carrying {"id", "label"} objects (labels.jsonl,
// ground_truth.jsonl).
std::unordered_map<std::string, Rating> load_label_map(const fs::path& path);

// Keeps the records that have an entry in `labels`, attaching it.
Dataset attach_labels(const Dataset& ds,
                      const std::unordered_map<std::string, Rating>& labels);

// Calls fn(json, line_no) for every nonblank line of a jsonl text.
template <typename Fn>
void for_each_jsonl(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(std::string("malformed JSON: ") + e.what(), line_no);
    }
    fn(j, line_no);
    if (end == text.size()) break;
  }
}

}  // namespace vrstars

#endif  // VRSTARS_IO_H_

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqobs/common/bytes.hpp"

namespace pqobs {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string read_text_file(const fs::path& path);
Bytes read_binary_file(const fs::path& path);
void write_text_file(const fs::path& path, const std::string& text);
void write_binary_file(const fs::path& path, ByteView data);

json read_json_file(const fs::path& path);
// Pretty-printed with a trailing newline; key order is nlohmann's sorted order,
// so output is byte-stable for equal values.
void write_json_file(const fs::path& path, const json& value);

// One JSON document per line.
std::vector<json> read_jsonl_file(const fs::path& path);
void write_jsonl_file(const fs::path& path, const std::vector<json>& records);

// Root of the bundled data directory (registry, rules, policy, fixtures).
// Resolution order: explicit override, PQOBS_DATA_DIR environment variable,
// then the source-tree path compiled into the library.
fs::path data_dir();
void set_data_dir(const fs::path& dir);

}  // namespace pqobs

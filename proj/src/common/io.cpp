// SPDX-License-Identifier: Apache-2.0
#include "pqobs/common/io.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#include "pqobs/common/error.hpp"

#ifndef PQOBS_DEFAULT_DATA_DIR
#define PQOBS_DEFAULT_DATA_DIR "data"
#endif

namespace pqobs {

namespace {

std::mutex g_data_dir_mu;
fs::path g_data_dir_override;

}  // namespace

std::string read_text_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("io_error", "cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Bytes read_binary_file(const fs::path& path)
{
    auto text = read_text_file(path);
    return Bytes(text.begin(), text.end());
}

void write_text_file(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("io_error", "cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw Error("io_error", "write failed for " + path.string());
    }
}

void write_binary_file(const fs::path& path, ByteView data)
{
    write_text_file(path, std::string(data.begin(), data.end()));
}

json read_json_file(const fs::path& path)
{
    auto text = read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error("parse_error", path.string() + ": " + e.what());
    }
}

void write_json_file(const fs::path& path, const json& value)
{
    write_text_file(path, value.dump(2) + "\n");
}

std::vector<json> read_jsonl_file(const fs::path& path)
{
    std::istringstream in(read_text_file(path));
    std::vector<json> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            out.push_back(json::parse(line));
        } catch (const json::parse_error& e) {
            throw Error("parse_error", path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

void write_jsonl_file(const fs::path& path, const std::vector<json>& records)
{
    std::string text;
    for (const auto& r : records) {
        text += r.dump() + "\n";
    }
    write_text_file(path, text);
}

fs::path data_dir()
{
    {
        std::lock_guard<std::mutex> lock(g_data_dir_mu);
        if (!g_data_dir_override.empty()) {
            return g_data_dir_override;
        }
    }
    if (const char* env = std::getenv("PQOBS_DATA_DIR"); env != nullptr && *env != '\0') {
        return fs::path(env);
    }
    return fs::path(PQOBS_DEFAULT_DATA_DIR);
}

void set_data_dir(const fs::path& dir)
{
    std::lock_guard<std::mutex> lock(g_data_dir_mu);
    g_data_dir_override = dir;
}

}  // namespace pqobs

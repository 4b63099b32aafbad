// SPDX-License-Identifier: Apache-2.0
#include "pqobs/bench/fixtures.hpp"

#include "pqobs/common/error.hpp"
#include "pqobs/common/io.hpp"
#include "pqobs/common/sha256.hpp"

namespace pqobs::bench {

FixtureSet FixtureSet::load(const std::filesystem::path& dir)
{
    auto manifest_path = dir / "manifest.json";
    if (!std::filesystem::exists(manifest_path)) {
        throw Error("generation_error", "fixture manifest missing: " + manifest_path.string());
    }
    auto manifest = read_json_file(manifest_path);
    FixtureSet set;
    for (const auto& [name, m] : manifest.at("fixtures").items()) {
        Fixture f;
        f.name = name;
        auto file = dir / m.at("file").get<std::string>();
        if (!std::filesystem::exists(file)) {
            throw Error("generation_error", "fixture '" + name + "' missing: " + file.string());
        }
        f.der = read_binary_file(file);
        f.sha256 = m.at("sha256").get<std::string>();
        if (sha256_hex(f.der) != f.sha256) {
            throw Error("generation_error", "fixture '" + name + "' does not match its manifest digest");
        }
        f.key_type = m.at("key_type").get<std::string>();
        f.signature_algorithm = m.at("signature_algorithm").get<std::string>();
        f.validity_days = m.at("validity_days").get<std::int64_t>();
        f.self_signed = m.at("self_signed").get<bool>();
        set.by_name_.emplace(name, std::move(f));
    }
    return set;
}

const Fixture& FixtureSet::get(const std::string& name) const
{
    auto it = by_name_.find(name);
    if (it == by_name_.end()) {
        throw Error("generation_error", "unknown certificate fixture '" + name + "'");
    }
    return it->second;
}

std::vector<Bytes> FixtureSet::chain(const std::vector<std::string>& names) const
{
    std::vector<Bytes> out;
    for (const auto& n : names) {
        out.push_back(get(n).der);
    }
    return out;
}

std::vector<std::string> FixtureSet::names() const
{
    std::vector<std::string> out;
    for (const auto& [n, f] : by_name_) {
        out.push_back(n);
    }
    return out;
}

const FixtureSet& default_fixtures()
{
    static const FixtureSet set = FixtureSet::load(data_dir() / "fixtures" / "certs");
    return set;
}

}  // namespace pqobs::bench

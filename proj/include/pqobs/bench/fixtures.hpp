// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pqobs/common/bytes.hpp"

namespace pqobs::bench {

// One committed certificate fixture with its manifest metadata. The metadata,
// not the DER parser, is what ground truth is derived from.
struct Fixture {
    std::string name;
    Bytes der;
    std::string key_type;             // registry SPKI canonical name
    std::string signature_algorithm;  // registry signature OID canonical name
    std::int64_t validity_days = 0;
    bool self_signed = false;
    std::string sha256;
};

class FixtureSet {
public:
    // Reads manifest.json and every listed file, checking SHA-256 digests.
    // Throws pqobs::Error(generation_error) naming the missing or altered file.
    static FixtureSet load(const std::filesystem::path& dir);

    const Fixture& get(const std::string& name) const;
    std::vector<Bytes> chain(const std::vector<std::string>& names) const;
    std::vector<std::string> names() const;

private:
    std::map<std::string, Fixture> by_name_;
};

// data_dir()/fixtures/certs, loaded once.
const FixtureSet& default_fixtures();

}  // namespace pqobs::bench

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pqobs/common/evidence.hpp"

namespace pqobs::registry {

using json = nlohmann::json;

enum class Kind { named_group, signature_scheme, spki_oid, signature_oid };
enum class Family { classical, hybrid, post_quantum, not_key_establishment };
enum class Status { standard, draft, obsolete, experimental, vendor };

std::string_view to_string(Kind k);
std::string_view to_string(Family f);
std::string_view to_string(Status s);
Kind kind_from_string(std::string_view s);
Family family_from_string(std::string_view s);
Status status_from_string(std::string_view s);

// Codepoint kinds carry a 16-bit value, OID kinds a dotted-decimal string.
using RawId = std::variant<std::uint16_t, std::string>;

bool is_codepoint_kind(Kind k);
std::string format_raw_id(const RawId& id);  // "0x11EC" or the OID itself

struct Entry {
    Kind kind = Kind::named_group;
    RawId raw_id;
    std::string canonical_name;
    std::vector<std::string> aliases;
    Family family = Family::classical;
    Status status = Status::standard;
    std::vector<std::string> components;
    std::string source_note;

    bool operator==(const Entry&) const = default;
};

class Bundle {
public:
    Bundle() = default;
    // Checks every invariant; throws pqobs::Error (duplicate_identifier,
    // alias_collision, invalid_entry) naming the offending entry.
    Bundle(std::string version, std::vector<Entry> entries);

    const std::string& version() const { return version_; }
    const std::vector<Entry>& entries() const { return entries_; }
    const std::string& checksum() const { return checksum_; }

    const Entry* find_raw(Kind kind, const RawId& raw) const;
    const Entry* find_name(Kind kind, std::string_view name) const;  // exact canonical name or alias
    // Entries whose canonical name or an alias matches after normalization
    // (case-folded, '-', '_' and spaces removed).
    std::vector<const Entry*> find_normalized(Kind kind, std::string_view name) const;

private:
    std::string version_;
    std::vector<Entry> entries_;
    std::string checksum_;
    std::map<std::pair<Kind, std::string>, std::size_t> by_raw_;
    std::map<std::pair<Kind, std::string>, std::size_t> by_name_;
    std::multimap<std::pair<Kind, std::string>, std::size_t> by_normalized_;
};

std::string normalize_identifier(std::string_view s);

json to_json(const Entry& e);
json to_json(const Bundle& b);
// Schema-validates then constructs; errors name the offending entry index.
Bundle bundle_from_json(const json& j);
Bundle load_registry(const std::filesystem::path& path);

// The v1 bundle shipped under data/registry, loaded once per process.
std::shared_ptr<const Bundle> default_registry();

struct Resolution {
    EvidenceState state = EvidenceState::unknown;
    const Entry* entry = nullptr;
    std::vector<const Entry*> candidates;
    std::string reason;

    // value / candidates are canonical names.
    EvidenceValue evidence() const;
};

// Exact match on raw id, canonical name or alias first; then a normalized
// match, which may yield several candidates (ambiguous). A string that looks
// like "0x..." is treated as a codepoint for codepoint kinds.
Resolution canonicalize(const Bundle& bundle, Kind kind, const RawId& raw);

}  // namespace pqobs::registry

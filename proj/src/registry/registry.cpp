// SPDX-License-Identifier: Apache-2.0
#include "pqobs/registry/registry.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <mutex>
#include <regex>

#include "pqobs/common/error.hpp"
#include "pqobs/common/io.hpp"
#include "pqobs/common/schema.hpp"
#include "pqobs/common/sha256.hpp"

namespace pqobs::registry {

namespace {

template <typename E, std::size_t N>
E enum_from(std::string_view s, const std::pair<E, std::string_view> (&table)[N], const char* what)
{
    for (const auto& [e, name] : table) {
        if (name == s) {
            return e;
        }
    }
    throw Error("schema_violation", std::string("unknown ") + what + " '" + std::string(s) + "'");
}

constexpr std::pair<Kind, std::string_view> kind_names[] = {
    {Kind::named_group, "named_group"},
    {Kind::signature_scheme, "signature_scheme"},
    {Kind::spki_oid, "spki_oid"},
    {Kind::signature_oid, "signature_oid"},
};

constexpr std::pair<Family, std::string_view> family_names[] = {
    {Family::classical, "classical"},
    {Family::hybrid, "hybrid"},
    {Family::post_quantum, "post_quantum"},
    {Family::not_key_establishment, "not_key_establishment"},
};

constexpr std::pair<Status, std::string_view> status_names[] = {
    {Status::standard, "standard"},
    {Status::draft, "draft"},
    {Status::obsolete, "obsolete"},
    {Status::experimental, "experimental"},
    {Status::vendor, "vendor"},
};

std::optional<std::uint16_t> parse_codepoint(std::string_view s)
{
    if (s.size() < 3 || s.size() > 6 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X')) {
        return std::nullopt;
    }
    unsigned v = 0;
    for (char c : s.substr(2)) {
        int d = std::isdigit(static_cast<unsigned char>(c)) ? c - '0'
                : std::isxdigit(static_cast<unsigned char>(c))
                    ? std::tolower(static_cast<unsigned char>(c)) - 'a' + 10
                    : -1;
        if (d < 0) {
            return std::nullopt;
        }
        v = v * 16 + static_cast<unsigned>(d);
    }
    return static_cast<std::uint16_t>(v);
}

bool is_dotted_oid(std::string_view s)
{
    static const std::regex oid_re("^[0-2](\\.(0|[1-9][0-9]*))+$");
    return std::regex_match(std::string(s), oid_re);
}

std::string entry_label(std::size_t index, const Entry& e)
{
    return "entry " + std::to_string(index) + " (" + std::string(to_string(e.kind)) + " " + format_raw_id(e.raw_id) +
           " " + e.canonical_name + ")";
}

}  // namespace

std::string_view to_string(Kind k)
{
    for (const auto& [e, name] : kind_names) {
        if (e == k) {
            return name;
        }
    }
    return "named_group";
}

std::string_view to_string(Family f)
{
    for (const auto& [e, name] : family_names) {
        if (e == f) {
            return name;
        }
    }
    return "classical";
}

std::string_view to_string(Status s)
{
    for (const auto& [e, name] : status_names) {
        if (e == s) {
            return name;
        }
    }
    return "standard";
}

Kind kind_from_string(std::string_view s) { return enum_from(s, kind_names, "registry kind"); }
Family family_from_string(std::string_view s) { return enum_from(s, family_names, "family"); }
Status status_from_string(std::string_view s) { return enum_from(s, status_names, "status"); }

bool is_codepoint_kind(Kind k) { return k == Kind::named_group || k == Kind::signature_scheme; }

std::string format_raw_id(const RawId& id)
{
    if (const auto* cp = std::get_if<std::uint16_t>(&id)) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "0x%04X", *cp);
        return buf;
    }
    return std::get<std::string>(id);
}

std::string normalize_identifier(std::string_view s)
{
    std::string out;
    for (char c : s) {
        if (c == '-' || c == '_' || c == ' ') {
            continue;
        }
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

Bundle::Bundle(std::string version, std::vector<Entry> entries)
    : version_(std::move(version)), entries_(std::move(entries))
{
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (is_codepoint_kind(e.kind) != std::holds_alternative<std::uint16_t>(e.raw_id)) {
            throw Error("invalid_entry", entry_label(i, e) + ": raw_id form does not match kind");
        }
        if (!is_codepoint_kind(e.kind) && !is_dotted_oid(std::get<std::string>(e.raw_id))) {
            throw Error("invalid_entry", entry_label(i, e) + ": raw_id is not a dotted OID");
        }
        if (e.canonical_name.empty()) {
            throw Error("invalid_entry", entry_label(i, e) + ": empty canonical_name");
        }
        if (e.family == Family::hybrid ? e.components.size() < 2 : !e.components.empty()) {
            throw Error("invalid_entry",
                        entry_label(i, e) + ": hybrid entries need >= 2 components, others none");
        }
        auto raw_key = std::make_pair(e.kind, format_raw_id(e.raw_id));
        if (!by_raw_.emplace(raw_key, i).second) {
            throw Error("duplicate_identifier", entry_label(i, e) + " repeats (kind, raw_id) of " +
                                                    entry_label(by_raw_[raw_key], entries_[by_raw_[raw_key]]));
        }
        auto name_key = std::make_pair(e.kind, e.canonical_name);
        if (!by_name_.emplace(name_key, i).second) {
            throw Error("duplicate_identifier", entry_label(i, e) + " repeats canonical_name of " +
                                                    entry_label(by_name_[name_key], entries_[by_name_[name_key]]));
        }
    }
    // Aliases go in after every canonical name so an alias shadowing another
    // entry's canonical name is caught regardless of file order.
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        for (const auto& alias : e.aliases) {
            if (alias == e.canonical_name) {
                continue;
            }
            auto key = std::make_pair(e.kind, alias);
            auto [it, inserted] = by_name_.emplace(key, i);
            if (!inserted && it->second != i) {
                throw Error("alias_collision", entry_label(i, e) + ": alias '" + alias + "' already names " +
                                                   entry_label(it->second, entries_[it->second]));
            }
        }
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        std::vector<std::string> norms{normalize_identifier(e.canonical_name)};
        for (const auto& alias : e.aliases) {
            norms.push_back(normalize_identifier(alias));
        }
        std::sort(norms.begin(), norms.end());
        norms.erase(std::unique(norms.begin(), norms.end()), norms.end());
        for (auto& n : norms) {
            by_normalized_.emplace(std::make_pair(e.kind, std::move(n)), i);
        }
    }
    checksum_ = sha256_hex(to_json(*this).dump());
}

const Entry* Bundle::find_raw(Kind kind, const RawId& raw) const
{
    auto it = by_raw_.find({kind, format_raw_id(raw)});
    return it == by_raw_.end() ? nullptr : &entries_[it->second];
}

const Entry* Bundle::find_name(Kind kind, std::string_view name) const
{
    auto it = by_name_.find({kind, std::string(name)});
    return it == by_name_.end() ? nullptr : &entries_[it->second];
}

std::vector<const Entry*> Bundle::find_normalized(Kind kind, std::string_view name) const
{
    std::vector<const Entry*> out;
    auto [lo, hi] = by_normalized_.equal_range({kind, normalize_identifier(name)});
    for (auto it = lo; it != hi; ++it) {
        out.push_back(&entries_[it->second]);
    }
    return out;
}

json to_json(const Entry& e)
{
    return json{{"kind", to_string(e.kind)},
                {"raw_id", format_raw_id(e.raw_id)},
                {"canonical_name", e.canonical_name},
                {"aliases", e.aliases},
                {"family", to_string(e.family)},
                {"status", to_string(e.status)},
                {"components", e.components},
                {"source_note", e.source_note}};
}

json to_json(const Bundle& b)
{
    json entries = json::array();
    for (const auto& e : b.entries()) {
        entries.push_back(to_json(e));
    }
    return json{{"version", b.version()}, {"entries", entries}};
}

Bundle bundle_from_json(const json& j)
{
    validate_or_throw("registry", j, "registry bundle");
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < j["entries"].size(); ++i) {
        const auto& je = j["entries"][i];
        Entry e;
        e.kind = kind_from_string(je["kind"].get<std::string>());
        auto raw = je["raw_id"].get<std::string>();
        if (is_codepoint_kind(e.kind)) {
            auto cp = parse_codepoint(raw);
            if (!cp) {
                throw Error("invalid_entry", "entry " + std::to_string(i) + ": raw_id '" + raw +
                                                 "' is not a 16-bit codepoint");
            }
            e.raw_id = *cp;
        } else {
            e.raw_id = raw;
        }
        e.canonical_name = je["canonical_name"].get<std::string>();
        e.aliases = je.value("aliases", std::vector<std::string>{});
        e.family = family_from_string(je["family"].get<std::string>());
        e.status = status_from_string(je["status"].get<std::string>());
        e.components = je.value("components", std::vector<std::string>{});
        e.source_note = je.value("source_note", std::string{});
        entries.push_back(std::move(e));
    }
    return Bundle(j["version"].get<std::string>(), std::move(entries));
}

Bundle load_registry(const std::filesystem::path& path)
{
    return bundle_from_json(read_json_file(path));
}

std::shared_ptr<const Bundle> default_registry()
{
    static std::mutex mu;
    static std::shared_ptr<const Bundle> cached;
    std::lock_guard<std::mutex> lock(mu);
    if (!cached) {
        cached = std::make_shared<const Bundle>(load_registry(data_dir() / "registry" / "registry_v1.json"));
    }
    return cached;
}

EvidenceValue Resolution::evidence() const
{
    switch (state) {
    case EvidenceState::known:
        return EvidenceValue::known(entry->canonical_name);
    case EvidenceState::ambiguous: {
        std::vector<json> names;
        for (const auto* c : candidates) {
            names.emplace_back(c->canonical_name);
        }
        return EvidenceValue::ambiguous(std::move(names), reason);
    }
    default:
        return EvidenceValue::unknown(reason);
    }
}

Resolution canonicalize(const Bundle& bundle, Kind kind, const RawId& raw)
{
    Resolution r;
    auto found = [&](const Entry* e) {
        r.state = EvidenceState::known;
        r.entry = e;
        return r;
    };
    if (const auto* cp = std::get_if<std::uint16_t>(&raw)) {
        if (const auto* e = bundle.find_raw(kind, *cp)) {
            return found(e);
        }
        r.reason = "unknown_identifier";
        return r;
    }
    const auto& text = std::get<std::string>(raw);
    if (is_codepoint_kind(kind)) {
        if (auto cp = parse_codepoint(text)) {
            if (const auto* e = bundle.find_raw(kind, *cp)) {
                return found(e);
            }
        }
    } else if (const auto* e = bundle.find_raw(kind, text)) {
        return found(e);
    }
    if (const auto* e = bundle.find_name(kind, text)) {
        return found(e);
    }
    auto matches = bundle.find_normalized(kind, text);
    if (matches.size() == 1) {
        return found(matches.front());
    }
    if (matches.size() > 1) {
        std::sort(matches.begin(), matches.end(),
                  [](const Entry* a, const Entry* b) { return a->canonical_name < b->canonical_name; });
        r.state = EvidenceState::ambiguous;
        r.candidates = std::move(matches);
        r.reason = "ambiguous_alias";
        return r;
    }
    r.reason = "unknown_identifier";
    return r;
}

}  // namespace pqobs::registry

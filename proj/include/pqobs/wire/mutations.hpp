// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "pqobs/wire/transcript.hpp"

namespace pqobs::wire {

struct LayoutMutation {
    enum class Kind { fragment, coalesce, segment_split };
    Kind kind = Kind::fragment;
    std::size_t parameter = 0;  // max_record_len for fragment, n for segment_split

    static LayoutMutation fragment(std::size_t max_record_len) { return {Kind::fragment, max_record_len}; }
    static LayoutMutation coalesce() { return {Kind::coalesce, 0}; }
    static LayoutMutation segment_split(std::size_t n) { return {Kind::segment_split, n}; }

    std::string describe() const;
    bool operator==(const LayoutMutation&) const = default;
};

struct TruncationCut {
    enum class Kind { pre_serverhello, post_serverhello, byte_offset };
    Kind kind = Kind::pre_serverhello;
    std::size_t offset = 0;

    static TruncationCut pre_serverhello() { return {Kind::pre_serverhello, 0}; }
    static TruncationCut post_serverhello() { return {Kind::post_serverhello, 0}; }
    static TruncationCut byte_offset(std::size_t n) { return {Kind::byte_offset, n}; }

    std::string describe() const;
    bool operator==(const TruncationCut&) const = default;
};

nlohmann::json to_json(const LayoutMutation& m);
LayoutMutation layout_mutation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TruncationCut& c);
TruncationCut truncation_cut_from_json(const nlohmann::json& j);

// Re-lays out records/segments without changing handshake content.
// Throws pqobs::Error(mutation_error) when the mutation cannot apply.
Transcript apply_layout_mutation(const Transcript& t, const LayoutMutation& m, std::uint64_t seed);

// Returns a prefix of t with declared_truncated = true.
// Throws pqobs::Error(truncation_error) when the cut point does not exist.
Transcript truncate_transcript(const Transcript& t, const TruncationCut& cut);

// Where each plaintext handshake message sits in the concatenated flows.
// record_begin is the global offset of the header of the record holding the
// message's first byte; begin is the message's first byte and end the offset
// just past its last byte. Used by truncation and exhaustive truncation sweeps.
struct MessageSpan {
    Direction direction = Direction::client_to_server;
    std::uint8_t type = 0;
    bool is_hrr = false;
    std::size_t record_begin = 0;
    std::size_t begin = 0;
    std::size_t end = 0;
};
std::vector<MessageSpan> handshake_message_spans(const Transcript& t);

}  // namespace pqobs::wire

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pqobs/common/bytes.hpp"

namespace pqobs::wire {

using json = nlohmann::json;

enum class Direction { client_to_server, server_to_client };

std::string_view to_string(Direction d);
Direction direction_from_string(std::string_view s);

struct Flow {
    Direction direction = Direction::client_to_server;
    double timestamp = 0.0;
    Bytes data;

    bool operator==(const Flow&) const = default;
};

struct Transcript {
    std::vector<Flow> flows;
    std::string artifact_id;
    std::string digest;
    bool declared_truncated = false;

    void refresh_digest();
    std::size_t total_bytes() const;

    bool operator==(const Transcript&) const = default;
};

// SHA-256 over the concatenation of every flow's bytes in list order.
std::string compute_digest(const std::vector<Flow>& flows);

json to_json(const Transcript& t);
// Validates the schema, the digest, and per-direction timestamp order.
Transcript transcript_from_json(const json& j);
Transcript load_transcript(const std::filesystem::path& path);
void save_transcript(const std::filesystem::path& path, const Transcript& t);

}  // namespace pqobs::wire

// SPDX-License-Identifier: Apache-2.0
#include "pqobs/wire/transcript.hpp"

#include <openssl/evp.h>

#include <memory>

#include "pqobs/common/error.hpp"
#include "pqobs/common/io.hpp"
#include "pqobs/common/schema.hpp"

namespace pqobs::wire {

std::string_view to_string(Direction d)
{
    return d == Direction::client_to_server ? "client_to_server" : "server_to_client";
}

Direction direction_from_string(std::string_view s)
{
    if (s == "client_to_server") {
        return Direction::client_to_server;
    }
    if (s == "server_to_client") {
        return Direction::server_to_client;
    }
    throw Error("schema_violation", "unknown flow direction '" + std::string(s) + "'");
}

std::string compute_digest(const std::vector<Flow>& flows)
{
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    bool ok = ctx && EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) == 1;
    for (const auto& f : flows) {
        ok = ok && EVP_DigestUpdate(ctx.get(), f.data.data(), f.data.size()) == 1;
    }
    ok = ok && EVP_DigestFinal_ex(ctx.get(), md, &len) == 1;
    if (!ok) {
        throw Error("crypto_error", "SHA-256 digest failed");
    }
    return to_hex(ByteView(md, len));
}

void Transcript::refresh_digest() { digest = compute_digest(flows); }

std::size_t Transcript::total_bytes() const
{
    std::size_t n = 0;
    for (const auto& f : flows) {
        n += f.data.size();
    }
    return n;
}

json to_json(const Transcript& t)
{
    json flows = json::array();
    for (const auto& f : t.flows) {
        flows.push_back({{"direction", to_string(f.direction)}, {"timestamp", f.timestamp}, {"data_hex", to_hex(f.data)}});
    }
    return json{{"artifact_id", t.artifact_id},
                {"digest", t.digest},
                {"declared_truncated", t.declared_truncated},
                {"flows", flows}};
}

Transcript transcript_from_json(const json& j)
{
    validate_or_throw("transcript", j, "transcript");
    Transcript t;
    t.artifact_id = j["artifact_id"].get<std::string>();
    t.digest = j["digest"].get<std::string>();
    t.declared_truncated = j["declared_truncated"].get<bool>();
    double last[2] = {-1e300, -1e300};
    for (const auto& jf : j["flows"]) {
        Flow f;
        f.direction = direction_from_string(jf["direction"].get<std::string>());
        f.timestamp = jf["timestamp"].get<double>();
        f.data = from_hex(jf["data_hex"].get<std::string>());
        auto& prev = last[f.direction == Direction::client_to_server ? 0 : 1];
        if (f.timestamp < prev) {
            throw Error("schema_violation", "transcript " + t.artifact_id + ": timestamps decrease within " +
                                                std::string(to_string(f.direction)));
        }
        prev = f.timestamp;
        t.flows.push_back(std::move(f));
    }
    auto actual = compute_digest(t.flows);
    if (actual != t.digest) {
        throw Error("digest_mismatch", "transcript " + t.artifact_id + ": digest " + t.digest +
                                           " does not match flow bytes (" + actual + ")");
    }
    return t;
}

Transcript load_transcript(const std::filesystem::path& path)
{
    return transcript_from_json(read_json_file(path));
}

void save_transcript(const std::filesystem::path& path, const Transcript& t)
{
    write_json_file(path, to_json(t));
}

}  // namespace pqobs::wire

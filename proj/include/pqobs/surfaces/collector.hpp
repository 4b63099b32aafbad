// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pqobs/common/bytes.hpp"
#include "pqobs/surfaces/probe.hpp"

namespace pqobs::surfaces {

// Pluggable source of live certificate chains (leaf first). TLS 1.3 hides
// the chain inside the encrypted flight, so live retrieval is delegated to a
// full TLS client.
class ChainCollector {
public:
    virtual ~ChainCollector() = default;
    virtual std::optional<std::vector<Bytes>> collect(const Target& t, std::string& err) = 0;
};

// Runs `openssl s_client -showcerts` and parses the PEM blocks it prints.
class OpensslCliCollector : public ChainCollector {
public:
    explicit OpensslCliCollector(std::string openssl = "openssl", int timeout_s = 10);
    std::optional<std::vector<Bytes>> collect(const Target& t, std::string& err) override;

private:
    std::string openssl_;
    int timeout_s_;
};

// Serves fixed chains keyed by "host:port"; used for emulated inventories.
class StaticCollector : public ChainCollector {
public:
    void add(const std::string& endpoint, std::vector<Bytes> chain) { chains_[endpoint] = std::move(chain); }
    std::optional<std::vector<Bytes>> collect(const Target& t, std::string& err) override;

private:
    std::map<std::string, std::vector<Bytes>> chains_;
};

// Extracts every CERTIFICATE block from PEM text, in order.
std::vector<Bytes> pem_certificates(const std::string& text);

}  // namespace pqobs::surfaces

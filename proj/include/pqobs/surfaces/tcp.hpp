// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pqobs/surfaces/probe.hpp"

namespace pqobs::surfaces {

// Blocking-free TCP transport: non-blocking connect and reads bounded by
// poll() timeouts. Resolves host names with getaddrinfo (IPv4 and IPv6).
class TcpConnector : public Connector {
public:
    Result connect(const Target& t, double timeout_s) override;
};

}  // namespace pqobs::surfaces

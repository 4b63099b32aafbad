// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "pqobs/bench/emulator.hpp"

namespace pqobs::bench {

enum class AddressFamily { ipv4, ipv6 };

// Emulated endpoint on a loopback TCP port. One thread per accepted
// connection; stop() (or the destructor) closes the listener and joins.
class EndpointServer {
public:
    // Binds 127.0.0.1 or ::1 on `port` (0 picks a free one). Throws
    // pqobs::Error(startup_error) when the socket cannot be bound.
    EndpointServer(EmulatorConfig cfg, AddressFamily family = AddressFamily::ipv4, std::uint16_t port = 0);
    ~EndpointServer();

    EndpointServer(const EndpointServer&) = delete;
    EndpointServer& operator=(const EndpointServer&) = delete;

    std::string host() const;
    std::uint16_t port() const { return port_; }
    Emulator& emulator() { return *emulator_; }
    std::vector<HandshakeRecord> handshake_log() const { return emulator_->handshake_log(); }
    void stop();

private:
    void accept_loop();
    void serve(int fd);

    std::unique_ptr<Emulator> emulator_;
    AddressFamily family_;
    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    std::atomic<bool> stopping_{false};
    std::thread acceptor_;
    std::mutex workers_mu_;
    std::vector<std::thread> workers_;
};

}  // namespace pqobs::bench

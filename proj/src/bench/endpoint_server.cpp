// SPDX-License-Identifier: Apache-2.0
#include "pqobs/bench/endpoint_server.hpp"

#include <arpa/inet.h>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include "pqobs/common/error.hpp"

namespace pqobs::bench {

namespace {

bool send_all(int fd, const Bytes& data)
{
    std::size_t off = 0;
    while (off < data.size()) {
        auto n = ::send(fd, data.data() + off, data.size() - off, MSG_NOSIGNAL);
        if (n <= 0) {
            if (n < 0 && errno == EINTR) {
                continue;
            }
            return false;
        }
        off += static_cast<std::size_t>(n);
    }
    return true;
}

}  // namespace

EndpointServer::EndpointServer(EmulatorConfig cfg, AddressFamily family, std::uint16_t port)
    : emulator_(std::make_unique<Emulator>(std::move(cfg))), family_(family)
{
    int domain = family == AddressFamily::ipv6 ? AF_INET6 : AF_INET;
    listen_fd_ = ::socket(domain, SOCK_STREAM | SOCK_CLOEXEC, 0);
    if (listen_fd_ < 0) {
        throw Error("startup_error", std::string("socket: ") + std::strerror(errno));
    }
    int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    int rc;
    if (family == AddressFamily::ipv6) {
        sockaddr_in6 a{};
        a.sin6_family = AF_INET6;
        a.sin6_addr = in6addr_loopback;
        a.sin6_port = htons(port);
        rc = ::bind(listen_fd_, reinterpret_cast<sockaddr*>(&a), sizeof a);
    } else {
        sockaddr_in a{};
        a.sin_family = AF_INET;
        a.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
        a.sin_port = htons(port);
        rc = ::bind(listen_fd_, reinterpret_cast<sockaddr*>(&a), sizeof a);
    }
    if (rc != 0 || ::listen(listen_fd_, 64) != 0) {
        std::string why = std::strerror(errno);
        ::close(listen_fd_);
        throw Error("startup_error", "cannot bind " + host() + ":" + std::to_string(port) + ": " + why);
    }
    sockaddr_storage bound{};
    socklen_t len = sizeof bound;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &len);
    port_ = ntohs(family == AddressFamily::ipv6 ? reinterpret_cast<sockaddr_in6*>(&bound)->sin6_port
                                                : reinterpret_cast<sockaddr_in*>(&bound)->sin_port);
    acceptor_ = std::thread([this] { accept_loop(); });
}

EndpointServer::~EndpointServer()
{
    stop();
}

std::string EndpointServer::host() const
{
    return family_ == AddressFamily::ipv6 ? "::1" : "127.0.0.1";
}

void EndpointServer::stop()
{
    if (stopping_.exchange(true)) {
        return;
    }
    if (acceptor_.joinable()) {
        acceptor_.join();
    }
    ::close(listen_fd_);
    std::lock_guard<std::mutex> lock(workers_mu_);
    for (auto& w : workers_) {
        w.join();
    }
    workers_.clear();
}

void EndpointServer::accept_loop()
{
    while (!stopping_) {
        pollfd p{listen_fd_, POLLIN, 0};
        if (::poll(&p, 1, 50) <= 0) {
            continue;
        }
        int fd = ::accept4(listen_fd_, nullptr, nullptr, SOCK_CLOEXEC);
        if (fd < 0) {
            continue;
        }
        std::lock_guard<std::mutex> lock(workers_mu_);
        workers_.emplace_back([this, fd] { serve(fd); });
    }
}

void EndpointServer::serve(int fd)
{
    const auto& cfg = emulator_->config();
    if (cfg.failure == FailureMode::refuse) {
        ::close(fd);  // accepted then dropped; a closed port is not emulated
        return;
    }
    auto session = emulator_->open_session();
    Bytes buf(4096);
    while (!stopping_ && !session->closed()) {
        pollfd p{fd, POLLIN, 0};
        int r = ::poll(&p, 1, 50);
        if (r == 0) {
            continue;
        }
        if (r < 0) {
            break;
        }
        auto n = ::recv(fd, buf.data(), buf.size(), 0);
        if (n <= 0) {
            break;
        }
        if (cfg.failure == FailureMode::timeout) {
            continue;  // read and ignore until the client gives up
        }
        auto reply = session->on_client_bytes(ByteView(buf.data(), static_cast<std::size_t>(n)));
        if (!reply.empty()) {
            if (cfg.latency_s > 0) {
                std::this_thread::sleep_for(std::chrono::duration<double>(cfg.latency_s));
            }
            if (!send_all(fd, reply)) {
                break;
            }
        }
    }
    if (session->record()) {
        emulator_->log(*session->record());
    }
    // Let the client drain the flight before the close.
    ::shutdown(fd, SHUT_WR);
    pollfd p{fd, POLLIN, 0};
    ::poll(&p, 1, 200);
    ::close(fd);
}

}  // namespace pqobs::bench

// SPDX-License-Identifier: Apache-2.0
#include "pqobs/surfaces/tcp.hpp"

#include <cerrno>
#include <cstring>
#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

namespace pqobs::surfaces {

namespace {

int to_ms(double s)
{
    return s <= 0 ? 0 : static_cast<int>(s * 1000.0 + 0.5);
}

class TcpConnection : public Connection {
public:
    explicit TcpConnection(int fd) : fd_(fd) {}
    ~TcpConnection() override { ::close(fd_); }

    bool send(ByteView data, std::string& err) override
    {
        std::size_t off = 0;
        while (off < data.size()) {
            auto n = ::send(fd_, data.data() + off, data.size() - off, MSG_NOSIGNAL);
            if (n < 0) {
                if (errno == EAGAIN || errno == EWOULDBLOCK) {
                    pollfd p{fd_, POLLOUT, 0};
                    if (::poll(&p, 1, 10000) <= 0) {
                        err = "send timeout";
                        return false;
                    }
                    continue;
                }
                err = std::strerror(errno);
                return false;
            }
            off += static_cast<std::size_t>(n);
        }
        return true;
    }

    ReadStatus read(Bytes& out, double timeout_s, std::string& err) override
    {
        pollfd p{fd_, POLLIN, 0};
        int rc = ::poll(&p, 1, to_ms(timeout_s));
        if (rc == 0) {
            return ReadStatus::timeout;
        }
        if (rc < 0) {
            err = std::strerror(errno);
            return ReadStatus::error;
        }
        std::uint8_t buf[16384];
        auto n = ::recv(fd_, buf, sizeof buf, 0);
        if (n == 0) {
            return ReadStatus::closed;
        }
        if (n < 0) {
            err = std::strerror(errno);
            return ReadStatus::error;
        }
        out.assign(buf, buf + n);
        return ReadStatus::data;
    }

private:
    int fd_;
};

}  // namespace

Connector::Result TcpConnector::connect(const Target& t, double timeout_s)
{
    Result r;
    std::string host = t.host;
    if (host.size() >= 2 && host.front() == '[' && host.back() == ']') {
        host = host.substr(1, host.size() - 2);
    }
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    std::string port = std::to_string(t.port);
    if (int rc = ::getaddrinfo(host.c_str(), port.c_str(), &hints, &res); rc != 0) {
        r.status = Status::error;
        r.message = std::string("resolve failed: ") + ::gai_strerror(rc);
        return r;
    }
    r.status = Status::error;
    r.message = "no usable address";
    for (auto* ai = res; ai != nullptr; ai = ai->ai_next) {
        int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) {
            continue;
        }
        ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL) | O_NONBLOCK);
        int rc = ::connect(fd, ai->ai_addr, ai->ai_addrlen);
        if (rc < 0 && errno == EINPROGRESS) {
            pollfd p{fd, POLLOUT, 0};
            rc = ::poll(&p, 1, to_ms(timeout_s));
            if (rc == 0) {
                ::close(fd);
                r.status = Status::timeout;
                r.message = "connect timeout";
                continue;
            }
            int so_err = 0;
            socklen_t len = sizeof so_err;
            ::getsockopt(fd, SOL_SOCKET, SO_ERROR, &so_err, &len);
            rc = so_err == 0 ? 0 : -1;
            errno = so_err;
        }
        if (rc == 0) {
            r.status = Status::ok;
            r.connection = std::make_unique<TcpConnection>(fd);
            r.message.clear();
            break;
        }
        r.status = errno == ECONNREFUSED ? Status::refused : Status::error;
        r.message = std::strerror(errno);
        ::close(fd);
    }
    ::freeaddrinfo(res);
    return r;
}

}  // namespace pqobs::surfaces

// SPDX-License-Identifier: Apache-2.0
#include "pqobs/surfaces/collector.hpp"

#include <array>
#include <cstdio>
#include <memory>

#include <openssl/evp.h>

namespace pqobs::surfaces {

namespace {

bool shell_safe(const std::string& s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
                  c == '-' || c == ':' || c == '[' || c == ']';
        if (!ok) {
            return false;
        }
    }
    return true;
}

std::optional<Bytes> base64_decode(const std::string& b64)
{
    std::string clean;
    for (char c : b64) {
        if (c != '\n' && c != '\r' && c != ' ') {
            clean.push_back(c);
        }
    }
    if (clean.size() % 4 != 0) {
        return std::nullopt;
    }
    Bytes out(clean.size() / 4 * 3);
    int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(clean.data()),
                            static_cast<int>(clean.size()));
    if (n < 0) {
        return std::nullopt;
    }
    // EVP_DecodeBlock keeps the bytes produced by '=' padding.
    std::size_t pad = 0;
    for (auto it = clean.rbegin(); it != clean.rend() && *it == '='; ++it) {
        ++pad;
    }
    out.resize(static_cast<std::size_t>(n) - pad);
    return out;
}

}  // namespace

std::vector<Bytes> pem_certificates(const std::string& text)
{
    static const std::string begin = "-----BEGIN CERTIFICATE-----";
    static const std::string end = "-----END CERTIFICATE-----";
    std::vector<Bytes> out;
    std::size_t pos = 0;
    while ((pos = text.find(begin, pos)) != std::string::npos) {
        auto body = pos + begin.size();
        auto stop = text.find(end, body);
        if (stop == std::string::npos) {
            break;
        }
        if (auto der = base64_decode(text.substr(body, stop - body))) {
            out.push_back(std::move(*der));
        }
        pos = stop + end.size();
    }
    return out;
}

OpensslCliCollector::OpensslCliCollector(std::string openssl, int timeout_s)
    : openssl_(std::move(openssl)), timeout_s_(timeout_s)
{
}

std::optional<std::vector<Bytes>> OpensslCliCollector::collect(const Target& t, std::string& err)
{
    std::string host = t.host;
    if (host.find(':') != std::string::npos && host.front() != '[') {
        host = "[" + host + "]";
    }
    if (!shell_safe(host) || (t.sni && !shell_safe(*t.sni))) {
        err = "refusing to pass unsafe host or SNI to the shell";
        return std::nullopt;
    }
    std::string cmd = "timeout " + std::to_string(timeout_s_) + " " + openssl_ + " s_client -showcerts -connect " +
                      host + ":" + std::to_string(t.port);
    if (t.sni) {
        cmd += " -servername " + *t.sni;
    }
    cmd += " </dev/null 2>/dev/null";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(::popen(cmd.c_str(), "r"), ::pclose);
    if (!pipe) {
        err = "cannot start openssl";
        return std::nullopt;
    }
    std::string text;
    std::array<char, 4096> buf{};
    while (auto n = std::fread(buf.data(), 1, buf.size(), pipe.get())) {
        text.append(buf.data(), n);
    }
    auto chain = pem_certificates(text);
    if (chain.empty()) {
        err = "no certificates returned";
        return std::nullopt;
    }
    return chain;
}

std::optional<std::vector<Bytes>> StaticCollector::collect(const Target& t, std::string& err)
{
    auto it = chains_.find(t.host + ":" + std::to_string(t.port));
    if (it == chains_.end()) {
        err = "no chain configured for " + t.host;
        return std::nullopt;
    }
    return it->second;
}

}  // namespace pqobs::surfaces

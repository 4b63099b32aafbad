// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pqobs {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

std::string to_hex(ByteView data);
// Throws pqobs::Error(code "bad_hex") on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

// Bounds-checked big-endian reader. Every read returns false on underflow and
// leaves the cursor untouched, so parsers can bail out without exceptions.
class ByteReader {
public:
    explicit ByteReader(ByteView data) : data_(data) {}

    std::size_t remaining() const { return data_.size() - pos_; }
    std::size_t offset() const { return pos_; }
    bool empty() const { return remaining() == 0; }

    bool read_u8(std::uint8_t& out);
    bool read_u16(std::uint16_t& out);
    bool read_u24(std::uint32_t& out);
    bool read_bytes(std::size_t n, Bytes& out);
    bool read_view(std::size_t n, ByteView& out);
    bool skip(std::size_t n);

    // Length-prefixed vectors as used throughout TLS (u8 / u16 / u24 lengths).
    bool read_vec8(ByteView& out);
    bool read_vec16(ByteView& out);
    bool read_vec24(ByteView& out);

private:
    ByteView data_;
    std::size_t pos_ = 0;
};

class ByteWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u16(std::uint16_t v);
    void u24(std::uint32_t v);
    void bytes(ByteView v) { buf_.insert(buf_.end(), v.begin(), v.end()); }

    // Opens a length prefix of `width` bytes; close_len() patches it.
    std::size_t open_len(int width);
    void close_len(std::size_t mark);

    const Bytes& data() const { return buf_; }
    Bytes take() { return std::move(buf_); }

private:
    Bytes buf_;
    std::vector<int> widths_;
};

}  // namespace pqobs

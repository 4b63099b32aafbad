// SPDX-License-Identifier: Apache-2.0
#include "pqobs/common/bytes.hpp"

#include "pqobs/common/error.hpp"

namespace pqobs {

namespace {

int hex_value(char c)
{
    if (c >= '0' && c <= '9') {
        return c - '0';
    }
    if (c >= 'a' && c <= 'f') {
        return c - 'a' + 10;
    }
    if (c >= 'A' && c <= 'F') {
        return c - 'A' + 10;
    }
    return -1;
}

}  // namespace

std::string to_hex(ByteView data)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (auto b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

Bytes from_hex(std::string_view hex)
{
    if (hex.size() % 2 != 0) {
        throw Error("bad_hex", "hex string has odd length");
    }
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        int hi = hex_value(hex[i]);
        int lo = hex_value(hex[i + 1]);
        if (hi < 0 || lo < 0) {
            throw Error("bad_hex", "non-hex character at offset " + std::to_string(i));
        }
        out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
    }
    return out;
}

bool ByteReader::read_u8(std::uint8_t& out)
{
    if (remaining() < 1) {
        return false;
    }
    out = data_[pos_++];
    return true;
}

bool ByteReader::read_u16(std::uint16_t& out)
{
    if (remaining() < 2) {
        return false;
    }
    out = static_cast<std::uint16_t>(data_[pos_] << 8 | data_[pos_ + 1]);
    pos_ += 2;
    return true;
}

bool ByteReader::read_u24(std::uint32_t& out)
{
    if (remaining() < 3) {
        return false;
    }
    out = static_cast<std::uint32_t>(data_[pos_]) << 16 | static_cast<std::uint32_t>(data_[pos_ + 1]) << 8 |
          data_[pos_ + 2];
    pos_ += 3;
    return true;
}

bool ByteReader::read_bytes(std::size_t n, Bytes& out)
{
    ByteView v;
    if (!read_view(n, v)) {
        return false;
    }
    out.assign(v.begin(), v.end());
    return true;
}

bool ByteReader::read_view(std::size_t n, ByteView& out)
{
    if (remaining() < n) {
        return false;
    }
    out = data_.subspan(pos_, n);
    pos_ += n;
    return true;
}

bool ByteReader::skip(std::size_t n)
{
    if (remaining() < n) {
        return false;
    }
    pos_ += n;
    return true;
}

bool ByteReader::read_vec8(ByteView& out)
{
    auto save = pos_;
    std::uint8_t len = 0;
    if (!read_u8(len) || !read_view(len, out)) {
        pos_ = save;
        return false;
    }
    return true;
}

bool ByteReader::read_vec16(ByteView& out)
{
    auto save = pos_;
    std::uint16_t len = 0;
    if (!read_u16(len) || !read_view(len, out)) {
        pos_ = save;
        return false;
    }
    return true;
}

bool ByteReader::read_vec24(ByteView& out)
{
    auto save = pos_;
    std::uint32_t len = 0;
    if (!read_u24(len) || !read_view(len, out)) {
        pos_ = save;
        return false;
    }
    return true;
}

void ByteWriter::u16(std::uint16_t v)
{
    buf_.push_back(static_cast<std::uint8_t>(v >> 8));
    buf_.push_back(static_cast<std::uint8_t>(v));
}

void ByteWriter::u24(std::uint32_t v)
{
    buf_.push_back(static_cast<std::uint8_t>(v >> 16));
    buf_.push_back(static_cast<std::uint8_t>(v >> 8));
    buf_.push_back(static_cast<std::uint8_t>(v));
}

std::size_t ByteWriter::open_len(int width)
{
    auto mark = buf_.size();
    buf_.insert(buf_.end(), static_cast<std::size_t>(width), 0);
    widths_.push_back(width);
    return mark;
}

void ByteWriter::close_len(std::size_t mark)
{
    int width = widths_.back();
    widths_.pop_back();
    std::size_t len = buf_.size() - mark - static_cast<std::size_t>(width);
    std::size_t limit = width == 1 ? 0xff : width == 2 ? 0xffff : 0xffffff;
    if (len > limit) {
        throw Error("encode_error", "length prefix overflow");
    }
    for (int i = width - 1; i >= 0; --i) {
        buf_[mark + static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(len);
        len >>= 8;
    }
}

}  // namespace pqobs

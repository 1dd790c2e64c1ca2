#include "widthproof/bits.hpp"

#include <stdexcept>

namespace widthproof {

void BitString::push_bit(bool b) {
    if (nbits_ % 8 == 0)
        bytes_.push_back(0);
    if (b)
        bytes_.back() |= static_cast<std::uint8_t>(1u << (7 - nbits_ % 8));
    ++nbits_;
}

void BitString::append_uint(std::uint64_t value, int width) {
    for (int i = width - 1; i >= 0; --i)
        push_bit((value >> i) & 1u);
}

void BitString::append(const BitString& other) {
    for (std::size_t i = 0; i < other.nbits_; ++i)
        push_bit(other.bit(i));
}

bool BitString::bit(std::size_t pos) const {
    if (pos >= nbits_)
        throw std::out_of_range("BitString::bit");
    return (bytes_[pos / 8] >> (7 - pos % 8)) & 1u;
}

std::uint64_t BitString::read_uint(std::size_t pos, int width) const {
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i)
        v = (v << 1) | static_cast<std::uint64_t>(bit(pos + i));
    return v;
}

namespace {
const char kB64[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int b64_value(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    throw std::invalid_argument("invalid base64 character");
}
}  // namespace

std::string BitString::to_base64() const {
    std::string out;
    std::size_t i = 0;
    while (i < bytes_.size()) {
        std::uint32_t chunk = static_cast<std::uint32_t>(bytes_[i]) << 16;
        std::size_t have = 1;
        if (i + 1 < bytes_.size()) { chunk |= static_cast<std::uint32_t>(bytes_[i + 1]) << 8; have = 2; }
        if (i + 2 < bytes_.size()) { chunk |= bytes_[i + 2]; have = 3; }
        out.push_back(kB64[(chunk >> 18) & 63]);
        out.push_back(kB64[(chunk >> 12) & 63]);
        out.push_back(have >= 2 ? kB64[(chunk >> 6) & 63] : '=');
        out.push_back(have >= 3 ? kB64[chunk & 63] : '=');
        i += 3;
    }
    return out;
}

BitString BitString::from_base64(const std::string& text, std::size_t nbits) {
    std::vector<std::uint8_t> bytes;
    std::uint32_t chunk = 0;
    int have = 0;
    for (char c : text) {
        if (c == '=')
            break;
        chunk = (chunk << 6) | static_cast<std::uint32_t>(b64_value(c));
        if (++have == 4) {
            bytes.push_back((chunk >> 16) & 0xff);
            bytes.push_back((chunk >> 8) & 0xff);
            bytes.push_back(chunk & 0xff);
            chunk = 0;
            have = 0;
        }
    }
    if (have == 2)
        bytes.push_back((chunk >> 4) & 0xff);
    else if (have == 3) {
        bytes.push_back((chunk >> 10) & 0xff);
        bytes.push_back((chunk >> 2) & 0xff);
    } else if (have != 0) {
        throw std::invalid_argument("truncated base64 input");
    }
    if (bytes.size() < (nbits + 7) / 8)
        throw std::invalid_argument("base64 input shorter than declared bit count");
    BitString out;
    out.bytes_.assign(bytes.begin(), bytes.begin() + static_cast<long>((nbits + 7) / 8));
    out.nbits_ = nbits;
    // clear padding bits so equality stays canonical
    if (nbits % 8 != 0 && !out.bytes_.empty())
        out.bytes_.back() &= static_cast<std::uint8_t>(0xff << (8 - nbits % 8));
    return out;
}

BitString BitString::from_integer_bytes(std::uint64_t value) {
    std::vector<std::uint8_t> rev;
    do {
        rev.push_back(value & 0xff);
        value >>= 8;
    } while (value != 0);
    BitString out;
    for (auto it = rev.rbegin(); it != rev.rend(); ++it)
        out.append_uint(*it, 8);
    return out;
}

std::uint64_t BitString::to_integer() const {
    if (nbits_ % 8 != 0)
        throw std::invalid_argument("integer invariant must be whole bytes");
    if (nbits_ > 64)
        throw std::overflow_error("integer invariant wider than 64 bits");
    std::uint64_t v = 0;
    for (auto b : bytes_)
        v = (v << 8) | b;
    return v;
}

std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    if (auto c = a.nbits_ <=> b.nbits_; c != 0)
        return c;
    return a.bytes_ <=> b.bytes_;
}

bool operator==(const BitString& a, const BitString& b) {
    return a.nbits_ == b.nbits_ && a.bytes_ == b.bytes_;
}

bool BitReader::read_bit() {
    if (pos_ >= bits_->bit_count())
        throw std::out_of_range("BitReader::read_bit");
    return bits_->bit(pos_++);
}

std::uint64_t BitReader::read_uint(int width) {
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i)
        v = (v << 1) | static_cast<std::uint64_t>(read_bit());
    return v;
}

int bit_width_for(std::uint64_t max_value) {
    int w = 0;
    while (max_value > 0) {
        ++w;
        max_value >>= 1;
    }
    return w;
}

}  // namespace widthproof

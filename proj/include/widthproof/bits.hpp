#ifndef WIDTHPROOF_BITS_HPP
#define WIDTHPROOF_BITS_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace widthproof {

/// A packed bit sequence with a canonical total order.
///
/// Local witnesses, invariant values and serialized witness sets are all
/// bit strings; injectivity of the per-core encodings makes byte-level
/// comparison equivalent to structural comparison.
class BitString {
public:
    BitString() = default;

    void push_bit(bool b);

    /// Appends `width` bits of `value`, most significant first.
    void append_uint(std::uint64_t value, int width);

    void append(const BitString& other);

    bool bit(std::size_t pos) const;
    std::size_t bit_count() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

    /// Reads `width` bits starting at `pos`, most significant first.
    std::uint64_t read_uint(std::size_t pos, int width) const;

    std::string to_base64() const;
    static BitString from_base64(const std::string& text, std::size_t nbits);

    /// Big-endian byte-string view of an integer, minimal length, at least
    /// one byte. Used for integer-valued invariants.
    static BitString from_integer_bytes(std::uint64_t value);

    /// Inverse of from_integer_bytes; any whole-byte string is accepted.
    std::uint64_t to_integer() const;

    friend std::strong_ordering operator<=>(const BitString& a, const BitString& b);
    friend bool operator==(const BitString& a, const BitString& b);

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t nbits_ = 0;
};

/// Sequential reader over a BitString.
class BitReader {
public:
    explicit BitReader(const BitString& bits) : bits_(&bits) {}

    bool read_bit();
    std::uint64_t read_uint(int width);
    std::size_t remaining() const { return bits_->bit_count() - pos_; }
    bool done() const { return remaining() == 0; }

private:
    const BitString* bits_;
    std::size_t pos_ = 0;
};

/// Width in bits needed to store values 0..max_value.
int bit_width_for(std::uint64_t max_value);

}  // namespace widthproof

#endif

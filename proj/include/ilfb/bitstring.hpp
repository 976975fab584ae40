#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ilfb {

/// Feedback codeword. Bits are appended and read MSB-first.
class BitString {
public:
    BitString() = default;
    static BitString from_string(std::string_view s);

    void push_back(bool bit) { bits_.push_back(bit); }
    /// Appends the low `width` bits of `value`, most significant first.
    void append(std::uint64_t value, int width);
    void append(const BitString& other);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    bool operator[](std::size_t i) const { return bits_[i]; }
    void flip(std::size_t i) { bits_[i] = !bits_[i]; }

    std::string to_string() const;

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    std::vector<bool> bits_;
};

class BitReader {
public:
    explicit BitReader(const BitString& bits) : bits_(bits) {}

    /// Throws std::out_of_range past the end.
    bool read_bit();
    std::uint64_t read_bits(int width);

    std::size_t position() const { return pos_; }
    std::size_t remaining() const { return bits_.size() - pos_; }

private:
    const BitString& bits_;
    std::size_t pos_ = 0;
};

}  // namespace ilfb

#include "ilfb/bitstring.hpp"

#include <stdexcept>

namespace ilfb {

BitString BitString::from_string(std::string_view s) {
    BitString b;
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("bit string may only contain '0' and '1'");
        b.push_back(c == '1');
    }
    return b;
}

void BitString::append(std::uint64_t value, int width) {
    if (width < 0 || width > 64) throw std::invalid_argument("append: width must be in [0, 64]");
    for (int i = width - 1; i >= 0; --i) bits_.push_back(((value >> i) & 1U) != 0);
}

void BitString::append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

std::string BitString::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (bool b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

bool BitReader::read_bit() {
    if (pos_ >= bits_.size()) throw std::out_of_range("read past end of bit string");
    return bits_[pos_++];
}

std::uint64_t BitReader::read_bits(int width) {
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 1) | (read_bit() ? 1U : 0U);
    return v;
}

}  // namespace ilfb

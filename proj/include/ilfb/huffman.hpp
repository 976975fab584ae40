#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "ilfb/bitstring.hpp"

namespace ilfb {

/// Counts of observed resolution values. Merging is associative and commutative.
class ResolutionHistogram {
public:
    void add(int value, std::uint64_t count = 1);
    void merge(const ResolutionHistogram& other);

    const std::map<int, std::uint64_t>& counts() const { return counts_; }
    std::uint64_t total() const;
    bool empty() const { return counts_.empty(); }
    /// Shannon entropy in bits of the empirical distribution.
    double entropy() const;

    friend bool operator==(const ResolutionHistogram&, const ResolutionHistogram&) = default;

private:
    std::map<int, std::uint64_t> counts_;
};

/// Prefix code over resolution values plus one ESCAPE symbol.
///
/// Built with Huffman's algorithm (ESCAPE carries weight zero) and then made
/// canonical: codewords are assigned in (length, symbol) order with ESCAPE
/// sorting after every resolution value. Values absent from the histogram are
/// sent as ESCAPE followed by the value in `kEscapeBits` raw bits.
class HuffmanCode {
public:
    static constexpr int kEscapeBits = 8;

    struct Codeword {
        std::uint64_t bits = 0;
        int length = 0;
    };

    /// Throws std::invalid_argument on an empty histogram.
    static HuffmanCode build(const ResolutionHistogram& histogram);

    /// Bits spent describing `value`, escape path included.
    int length(int value) const;
    void encode(int value, BitString& out) const;
    int decode(BitReader& in) const;

    std::optional<Codeword> codeword(int value) const;
    const Codeword& escape() const { return escape_; }
    const std::map<int, Codeword>& codewords() const { return codes_; }

    double kraft_sum() const;
    /// Expected length under `histogram`'s empirical distribution.
    double average_length(const ResolutionHistogram& histogram) const;

private:
    std::map<int, Codeword> codes_;
    Codeword escape_;
};

/// Bits spent on the codeword for `value`; same as code.length(value).
inline int huffman_len(const HuffmanCode& code, int value) { return code.length(value); }

}  // namespace ilfb

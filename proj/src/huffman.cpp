#include "ilfb/huffman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ilfb {

namespace {

// Symbol key for ESCAPE; resolution values are nonnegative.
constexpr int kEscapeKey = -1;

}  // namespace

void ResolutionHistogram::add(int value, std::uint64_t count) {
    if (value < 0) throw std::invalid_argument("resolution values are nonnegative");
    if (count > 0) counts_[value] += count;
}

void ResolutionHistogram::merge(const ResolutionHistogram& other) {
    for (const auto& [v, c] : other.counts_) counts_[v] += c;
}

std::uint64_t ResolutionHistogram::total() const {
    std::uint64_t n = 0;
    for (const auto& [v, c] : counts_) n += c;
    return n;
}

double ResolutionHistogram::entropy() const {
    const double n = static_cast<double>(total());
    double h = 0.0;
    for (const auto& [v, c] : counts_) {
        const double p = static_cast<double>(c) / n;
        h -= p * std::log2(p);
    }
    return h;
}

HuffmanCode HuffmanCode::build(const ResolutionHistogram& histogram) {
    if (histogram.empty()) throw std::invalid_argument("cannot build a Huffman code from an empty histogram");

    struct Node {
        std::uint64_t weight;
        int left = -1;
        int right = -1;
        int symbol = 0;
    };
    std::vector<Node> nodes;
    for (const auto& [v, c] : histogram.counts()) nodes.push_back({c, -1, -1, v});
    nodes.push_back({0, -1, -1, kEscapeKey});

    // Min-heap on (weight, node id); ids make tie-breaking deterministic.
    using Entry = std::pair<std::uint64_t, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) heap.emplace(nodes[i].weight, i);
    while (heap.size() > 1) {
        auto [wa, a] = heap.top();
        heap.pop();
        auto [wb, b] = heap.top();
        heap.pop();
        nodes.push_back({wa + wb, a, b, 0});
        heap.emplace(wa + wb, static_cast<int>(nodes.size()) - 1);
    }

    // Depth of every leaf.
    std::vector<std::pair<int, int>> lengths;  // (symbol, length)
    std::vector<std::pair<int, int>> stack{{heap.top().second, 0}};
    while (!stack.empty()) {
        auto [id, depth] = stack.back();
        stack.pop_back();
        const Node& n = nodes[id];
        if (n.left < 0) {
            lengths.emplace_back(n.symbol, depth);
        } else {
            stack.emplace_back(n.left, depth + 1);
            stack.emplace_back(n.right, depth + 1);
        }
    }

    auto order = [](int symbol) { return symbol == kEscapeKey ? std::numeric_limits<int>::max() : symbol; };
    std::sort(lengths.begin(), lengths.end(), [&](const auto& x, const auto& y) {
        return std::pair(x.second, order(x.first)) < std::pair(y.second, order(y.first));
    });
    if (lengths.back().second > 63) throw std::length_error("Huffman code too deep");

    HuffmanCode code;
    std::uint64_t next = 0;
    int prev_len = lengths.front().second;
    for (const auto& [symbol, len] : lengths) {
        next <<= (len - prev_len);
        prev_len = len;
        const Codeword cw{next++, len};
        if (symbol == kEscapeKey) {
            code.escape_ = cw;
        } else {
            code.codes_.emplace(symbol, cw);
        }
    }
    return code;
}

std::optional<HuffmanCode::Codeword> HuffmanCode::codeword(int value) const {
    if (auto it = codes_.find(value); it != codes_.end()) return it->second;
    return std::nullopt;
}

int HuffmanCode::length(int value) const {
    if (auto cw = codeword(value)) return cw->length;
    return escape_.length + kEscapeBits;
}

void HuffmanCode::encode(int value, BitString& out) const {
    if (auto cw = codeword(value)) {
        out.append(cw->bits, cw->length);
        return;
    }
    if (value < 0 || value >= (1 << kEscapeBits))
        throw std::out_of_range("resolution value does not fit the escape field");
    out.append(escape_.bits, escape_.length);
    out.append(static_cast<std::uint64_t>(value), kEscapeBits);
}

int HuffmanCode::decode(BitReader& in) const {
    std::uint64_t acc = 0;
    for (int len = 1; len <= 63; ++len) {
        acc = (acc << 1) | (in.read_bit() ? 1U : 0U);
        if (escape_.length == len && escape_.bits == acc) return static_cast<int>(in.read_bits(kEscapeBits));
        for (const auto& [v, cw] : codes_) {
            if (cw.length == len && cw.bits == acc) return v;
        }
    }
    throw std::invalid_argument("no codeword matches the input");
}

double HuffmanCode::kraft_sum() const {
    double s = std::ldexp(1.0, -escape_.length);
    for (const auto& [v, cw] : codes_) s += std::ldexp(1.0, -cw.length);
    return s;
}

double HuffmanCode::average_length(const ResolutionHistogram& histogram) const {
    const double n = static_cast<double>(histogram.total());
    double avg = 0.0;
    for (const auto& [v, c] : histogram.counts()) avg += static_cast<double>(c) / n * length(v);
    return avg;
}

}  // namespace ilfb

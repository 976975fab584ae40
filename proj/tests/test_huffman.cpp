#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ilfb/channel_model.hpp"
#include "ilfb/huffman.hpp"

using namespace ilfb;

TEST_SUITE("huffman") {

TEST_CASE("empty histogram is rejected") {
    CHECK_THROWS_AS(HuffmanCode::build(ResolutionHistogram{}), std::invalid_argument);
}

TEST_CASE("single symbol gets a one-bit code") {
    ResolutionHistogram h;
    h.add(4, 100);
    const HuffmanCode c = HuffmanCode::build(h);
    CHECK(c.length(4) == 1);
    CHECK(c.escape().length == 1);
    CHECK(c.length(9) == 1 + HuffmanCode::kEscapeBits);
}

TEST_CASE("uniform four-symbol histogram") {
    ResolutionHistogram h;
    for (int v = 0; v < 4; ++v) h.add(v, 10);
    const HuffmanCode c = HuffmanCode::build(h);
    for (int v = 0; v < 4; ++v) {
        CHECK(c.length(v) >= 2);
        CHECK(c.length(v) <= 3);
    }
    CHECK(c.kraft_sum() == doctest::Approx(1.0));
}

TEST_CASE("canonical ordering by length then symbol") {
    ResolutionHistogram h;
    h.add(0, 50);
    h.add(1, 20);
    h.add(2, 20);
    h.add(3, 10);
    const HuffmanCode c = HuffmanCode::build(h);
    CHECK(c.length(0) == 1);
    CHECK(c.codeword(0)->bits == 0);
    // Canonical: codewords increase with (length, symbol), ESCAPE last.
    std::vector<std::pair<int, HuffmanCode::Codeword>> seq(c.codewords().begin(), c.codewords().end());
    std::stable_sort(seq.begin(), seq.end(), [](auto& a, auto& b) { return a.second.length < b.second.length; });
    seq.emplace_back(-1, c.escape());
    for (std::size_t i = 1; i < seq.size(); ++i) {
        const auto& prev = seq[i - 1].second;
        const auto& cur = seq[i].second;
        CHECK(cur.length >= prev.length);
        CHECK(cur.bits == (prev.bits + 1) << (cur.length - prev.length));
    }
}

TEST_CASE("Kraft, entropy bound and round trip on random histograms") {
    Rng rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        ResolutionHistogram h;
        const int symbols = 1 + static_cast<int>(rng() % 40);
        for (int s = 0; s < symbols; ++s) h.add(static_cast<int>(rng() % 200), 1 + rng() % 1000);
        const HuffmanCode c = HuffmanCode::build(h);
        CHECK(c.kraft_sum() <= 1.0 + 1e-12);
        const double avg = c.average_length(h);
        CHECK(avg >= h.entropy() - 1e-9);
        CHECK(avg <= h.entropy() + 1.0 + 1e-9);

        BitString bits;
        std::vector<int> sent;
        for (int j = 0; j < 50; ++j) {
            const int v = static_cast<int>(rng() % 256);
            sent.push_back(v);
            c.encode(v, bits);
        }
        BitReader r(bits);
        for (int v : sent) REQUIRE(c.decode(r) == v);
        CHECK(r.remaining() == 0);
    }
}

TEST_CASE("escape encodes unseen values in raw bits") {
    ResolutionHistogram h;
    h.add(1, 5);
    h.add(2, 5);
    const HuffmanCode c = HuffmanCode::build(h);
    BitString bits;
    c.encode(77, bits);
    CHECK(static_cast<int>(bits.size()) == c.escape().length + HuffmanCode::kEscapeBits);
    CHECK(static_cast<int>(bits.size()) == huffman_len(c, 77));
    BitReader r(bits);
    CHECK(c.decode(r) == 77);
    BitString too_big;
    CHECK_THROWS(c.encode(1 << HuffmanCode::kEscapeBits, too_big));
}

TEST_CASE("histogram merge and entropy") {
    ResolutionHistogram a, b, ab;
    a.add(1, 3);
    b.add(1, 1);
    b.add(2, 4);
    ab.merge(a);
    ab.merge(b);
    ResolutionHistogram ba = b;
    ba.merge(a);
    CHECK(ab == ba);
    CHECK(ab.total() == 8);
    CHECK(ab.entropy() == doctest::Approx(1.0));
}

}

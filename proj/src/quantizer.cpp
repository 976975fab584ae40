#include "ilfb/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ilfb {

namespace {

// Beyond this many fraction bits every finite double in [-1, 1] is exact.
constexpr int kExactResolution = 1074;

// ceil(log2(x)) for finite x > 0, exact at powers of two.
int ceil_log2(double x) {
    int e = 0;
    const double m = std::frexp(x, &e);
    return m == 0.5 ? e - 1 : e;
}

void check_resolution(int ell) {
    if (ell < 0) throw std::invalid_argument("resolution must be nonnegative");
}

double part(const Complex& c, int which) { return which == 0 ? c.real() : c.imag(); }

}  // namespace

int ResolutionMatrix::total() const {
    int s = 0;
    for (const auto& row : entries_) s += row[0] + row[1];
    return s;
}

double deadzone_scalar(double x, int ell) {
    check_resolution(ell);
    if (!(std::abs(x) <= 1.0)) throw std::domain_error("deadzone quantizer input must lie in [-1, 1]");
    if (ell >= kExactResolution) return x == 0.0 ? 0.0 : x;
    const double mag = std::ldexp(std::floor(std::ldexp(std::abs(x), ell + 1)), -(ell + 1));
    if (mag == 0.0) return 0.0;
    return x < 0.0 ? -mag : mag;
}

QuantizedBeamformer deadzone_vector(std::span<const Complex> x, int ell) {
    check_resolution(ell);
    if (norm2(x) > (1.0 + kNormTolerance) * (1.0 + kNormTolerance))
        throw std::domain_error("beamforming vector norm exceeds 1");
    QuantizedBeamformer q;
    q.vector.reserve(x.size());
    for (const auto& c : x) {
        q.vector.emplace_back(deadzone_scalar(std::clamp(c.real(), -1.0, 1.0), ell),
                              deadzone_scalar(std::clamp(c.imag(), -1.0, 1.0), ell));
    }
    q.bit_cost = 2ULL * x.size() * static_cast<std::uint64_t>(ell + 3);
    return q;
}

std::vector<Complex> deadzone_vector(std::span<const Complex> x, const ResolutionMatrix& ell) {
    if (ell.rows() != x.size()) throw std::invalid_argument("resolution matrix has the wrong number of rows");
    if (norm2(x) > (1.0 + kNormTolerance) * (1.0 + kNormTolerance))
        throw std::domain_error("beamforming vector norm exceeds 1");
    std::vector<Complex> q;
    q.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        q.emplace_back(deadzone_scalar(std::clamp(x[i].real(), -1.0, 1.0), ell.at(i, 0)),
                       deadzone_scalar(std::clamp(x[i].imag(), -1.0, 1.0), ell.at(i, 1)));
    }
    return q;
}

int sufficient_resolution(std::size_t k, double n2, double alpha) {
    if (k == 0) throw std::invalid_argument("sufficient_resolution: empty channel prefix");
    if (!(alpha > 0.0)) throw std::invalid_argument("sufficient_resolution: alpha must be positive");
    if (!(n2 > alpha)) throw std::domain_error("sufficient_resolution requires ||h||^2 > alpha");
    const double kd = static_cast<double>(k);
    const int floor_term = ceil_log2(4.0 * kd);
    const double ratio = 4.0 * kd * alpha / (n2 - alpha);
    if (!std::isfinite(ratio)) throw std::domain_error("sufficient_resolution: ||h||^2 - alpha underflows");
    return std::max(floor_term, ceil_log2(ratio));
}

int sufficient_resolution(std::span<const Complex> h, double alpha) {
    return sufficient_resolution(h.size(), norm2(h), alpha);
}

double beamforming_gain(std::span<const Complex> x, std::span<const Complex> h) {
    if (x.size() != h.size()) throw std::invalid_argument("beamforming_gain: dimension mismatch");
    Complex acc{};
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * h[i];
    return std::norm(acc);
}

std::vector<Complex> unit_direction(std::span<const Complex> h) {
    const double n = std::sqrt(norm2(h));
    if (!(n > 0.0)) throw std::domain_error("unit_direction: zero vector");
    std::vector<Complex> u;
    u.reserve(h.size());
    for (const auto& c : h)
        u.emplace_back(std::clamp(c.real() / n, -1.0, 1.0), std::clamp(c.imag() / n, -1.0, 1.0));
    return u;
}

void encode_scalar(double value, int ell, BitString& out) {
    check_resolution(ell);
    const double mag = std::abs(value);
    if (!(mag <= 1.0)) throw std::invalid_argument("encode: component magnitude exceeds 1");
    if (ell < kExactResolution) {
        const double scaled = std::ldexp(mag, ell + 1);
        if (scaled != std::floor(scaled)) throw std::invalid_argument("encode: component is not on the resolution grid");
    }
    out.push_back(value < 0.0);
    const int width = ell + 2;
    if (mag == 1.0) {
        for (int j = 0; j < width; ++j) out.push_back(true);
        return;
    }
    double f = mag;
    for (int j = 0; j < width; ++j) {
        f *= 2.0;
        const bool bit = f >= 1.0;
        if (bit) f -= 1.0;
        out.push_back(bit);
    }
}

double decode_scalar(BitReader& in, int ell) {
    check_resolution(ell);
    const bool negative = in.read_bit();
    const int width = ell + 2;
    double mag = 0.0;
    bool all_ones = true;
    bool last = false;
    for (int j = 1; j <= width; ++j) {
        const bool bit = in.read_bit();
        all_ones = all_ones && bit;
        last = bit;
        if (bit) mag += std::ldexp(1.0, -j);
    }
    if (all_ones) mag = 1.0;
    else if (last) throw std::invalid_argument("decode: codeword is off the resolution grid");
    if (negative && mag == 0.0) throw std::invalid_argument("decode: negative zero is not a codeword");
    return negative ? -mag : mag;
}

BitString encode_beamformer(const QuantizedBeamformer& q, int ell) {
    BitString bits;
    for (const auto& c : q.vector) {
        encode_scalar(c.real(), ell, bits);
        encode_scalar(c.imag(), ell, bits);
    }
    return bits;
}

QuantizedBeamformer decode_beamformer(const BitString& bits, std::size_t dim, int ell) {
    check_resolution(ell);
    const std::uint64_t expected = 2ULL * dim * static_cast<std::uint64_t>(ell + 3);
    if (bits.size() != expected) throw std::invalid_argument("decode: bit string has the wrong length");
    BitReader in(bits);
    QuantizedBeamformer q;
    q.vector.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const double re = decode_scalar(in, ell);
        const double im = decode_scalar(in, ell);
        q.vector.emplace_back(re, im);
    }
    q.bit_cost = expected;
    return q;
}

RateAllocation variable_rate_quantize(std::span<const Complex> h_k, double alpha, int delta, AllocationRule rule) {
    if (delta < 1) throw std::invalid_argument("delta must be >= 1");
    const std::size_t k = h_k.size();
    RateAllocation out;
    out.sufficient_resolution = sufficient_resolution(h_k, alpha);
    out.budget = static_cast<int>(2 * k) * (out.sufficient_resolution + 3);
    out.resolutions = ResolutionMatrix(k);

    const std::vector<Complex> dir = unit_direction(h_k);

    // Per real dimension: the current quantized value and the next candidate
    // refinement (step in bits and the value it would produce). step == 0 means
    // no refinement is available.
    struct Slot {
        double cur = 0.0;
        double next = 0.0;
        int step = 0;
    };
    std::vector<std::array<Slot, 2>> slots(k);

    auto propose = [&](std::size_t i, int p) {
        Slot& s = slots[i][p];
        const double x = part(dir[i], p);
        const int ell = out.resolutions.at(i, p);
        if (rule == AllocationRule::listing) {
            s.step = delta;
            s.next = deadzone_scalar(x, ell + delta);
            return;
        }
        s.step = 0;
        if (s.cur == x) return;
        for (int m = delta; out.count + m <= out.budget; m += delta) {
            const double v = deadzone_scalar(x, ell + m);
            if (v != s.cur) {
                s.step = m;
                s.next = v;
                return;
            }
        }
    };

    for (std::size_t i = 0; i < k; ++i) {
        for (int p = 0; p < 2; ++p) {
            slots[i][p].cur = deadzone_scalar(part(dir[i], p), 0);
            propose(i, p);
        }
    }
    auto current_vector = [&] {
        std::vector<Complex> q(k);
        for (std::size_t i = 0; i < k; ++i) q[i] = Complex(slots[i][0].cur, slots[i][1].cur);
        return q;
    };

    double gain = beamforming_gain(current_vector(), h_k);
    while (out.count < out.budget && gain < alpha) {
        std::size_t best[2] = {0, 0};
        double best_d[2] = {-1.0, -1.0};
        for (int p = 0; p < 2; ++p) {
            for (std::size_t i = 0; i < k; ++i) {
                const Slot& s = slots[i][p];
                if (s.step == 0 || out.count + s.step > out.budget) {
                    if (rule == AllocationRule::lookahead) continue;
                }
                const double d = part(dir[i], p) * (s.next - s.cur) / s.step;
                if (d > best_d[p]) {
                    best_d[p] = d;
                    best[p] = i;
                }
            }
        }
        if (best_d[0] < 0.0 && best_d[1] < 0.0) break;  // nothing left to refine
        const int p = best_d[0] > best_d[1] ? 0 : 1;
        const std::size_t i = best[p];
        Slot& s = slots[i][p];
        out.resolutions.at(i, p) += s.step;
        out.count += s.step;
        s.cur = s.next;
        propose(i, p);
        gain = beamforming_gain(current_vector(), h_k);
    }

    out.gain = gain;
    out.beamformer.vector = current_vector();
    std::uint64_t cost = 0;
    for (std::size_t i = 0; i < k; ++i)
        for (int p = 0; p < 2; ++p) cost += static_cast<std::uint64_t>(out.resolutions.at(i, p) + 3);
    out.beamformer.bit_cost = cost;
    return out;
}

std::uint64_t variable_rate_cost(const ResolutionMatrix& ell, const HuffmanCode& code) {
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < ell.rows(); ++i) {
        for (int p = 0; p < 2; ++p) {
            const int r = ell.at(i, p);
            bits += static_cast<std::uint64_t>(code.length(r)) + 1 + static_cast<std::uint64_t>(r + 2);
        }
    }
    return bits;
}

BitString encode_variable_beamformer(std::span<const Complex> q, const ResolutionMatrix& ell,
                                     const HuffmanCode& code) {
    if (ell.rows() != q.size()) throw std::invalid_argument("resolution matrix has the wrong number of rows");
    BitString bits;
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (int p = 0; p < 2; ++p) {
            code.encode(ell.at(i, p), bits);
            encode_scalar(part(q[i], p), ell.at(i, p), bits);
        }
    }
    return bits;
}

std::vector<Complex> decode_variable_beamformer(const BitString& bits, std::size_t dim, const HuffmanCode& code,
                                                ResolutionMatrix& ell) {
    BitReader in(bits);
    ell = ResolutionMatrix(dim);
    std::vector<Complex> q(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        double v[2];
        for (int p = 0; p < 2; ++p) {
            ell.at(i, p) = code.decode(in);
            v[p] = decode_scalar(in, ell.at(i, p));
        }
        q[i] = Complex(v[0], v[1]);
    }
    if (in.remaining() != 0) throw std::invalid_argument("decode: trailing bits after the last component");
    return q;
}

}  // namespace ilfb

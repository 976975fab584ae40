#include "ilfb/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ilfb {

namespace {

std::vector<Complex> padded(const std::vector<Complex>& v, std::size_t t) {
    std::vector<Complex> out(t, Complex{});
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

std::vector<Complex> basis_vector(std::size_t t) {
    std::vector<Complex> e(t, Complex{});
    e[0] = 1.0;
    return e;
}

void check_dimension(const ChannelState& h, const SystemParams& params) {
    if (static_cast<int>(h.size()) != params.t)
        throw std::invalid_argument("channel length does not match t");
}

}  // namespace

int ceil_log2_int(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("ceil_log2_int: n must be >= 1");
    int b = 0;
    while ((std::uint64_t{1} << b) < n) ++b;
    return b;
}

std::string_view to_string(SchemeId id) {
    switch (id) {
        case SchemeId::F: return "F";
        case SchemeId::G: return "G";
        case SchemeId::A: return "A";
        case SchemeId::B: return "B";
        case SchemeId::B_unary: return "Bu";
        case SchemeId::C: return "C";
        case SchemeId::D: return "D";
        case SchemeId::B_prime: return "Bp";
    }
    return "?";
}

std::string_view to_string(QuantizerMode mode) { return mode == QuantizerMode::fixed ? "fixed" : "variable"; }

std::optional<SchemeId> parse_scheme(std::string_view name) {
    if (name == "F") return SchemeId::F;
    if (name == "G") return SchemeId::G;
    if (name == "A") return SchemeId::A;
    if (name == "B") return SchemeId::B;
    if (name == "Bu" || name == "B_unary") return SchemeId::B_unary;
    if (name == "C") return SchemeId::C;
    if (name == "D") return SchemeId::D;
    if (name == "Bp" || name == "B_prime") return SchemeId::B_prime;
    return std::nullopt;
}

std::optional<QuantizerMode> parse_quantizer(std::string_view name) {
    if (name == "fixed") return QuantizerMode::fixed;
    if (name == "variable") return QuantizerMode::variable;
    return std::nullopt;
}

double array_gain(const TransmissionStrategy& strategy, const ChannelState& h) {
    return std::visit(
        [&](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Beamform>) {
                return beamforming_gain(s.vector, h.coeffs());
            } else if constexpr (std::is_same_v<S, UniformSubset>) {
                if (s.k < 1 || static_cast<std::size_t>(s.k) > h.size())
                    throw std::invalid_argument("array_gain: subset size out of range");
                return h.prefix_norm2(static_cast<std::size_t>(s.k)) / s.k;
            } else {
                if (s.index < 1 || static_cast<std::size_t>(s.index) > h.size())
                    throw std::invalid_argument("array_gain: antenna index out of range");
                return std::norm(h[static_cast<std::size_t>(s.index - 1)]);
            }
        },
        strategy);
}

SchemeOutcome run_F(const ChannelState& h, const SystemParams& params) {
    check_dimension(h, params);
    SchemeOutcome out;
    const double n2 = h.norm2();
    out.strategy = n2 > 0.0 ? Beamform{unit_direction(h.coeffs())} : Beamform{basis_vector(h.size())};
    out.antennas_trained = params.t;
    out.outage = n2 < params.alpha;
    return out;
}

SchemeOutcome run_G(const ChannelState& h, const SystemParams& params) {
    check_dimension(h, params);
    const int k = kappa(params.t, params.alpha);
    SchemeOutcome out;
    out.strategy = UniformSubset{k};
    out.antennas_trained = k;
    out.feedback_bits = 0;
    out.outage = h.prefix_norm2(static_cast<std::size_t>(k)) < k * params.alpha;
    return out;
}

SchemeOutcome run_A(const ChannelState& h, const SystemParams& params) {
    check_dimension(h, params);
    std::size_t tau = 0;
    for (std::size_t i = 1; i < h.size(); ++i)
        if (std::norm(h[i]) > std::norm(h[tau])) tau = i;
    SchemeOutcome out;
    out.strategy = FixedAntenna{static_cast<int>(tau) + 1};
    out.antennas_trained = params.t;
    out.feedback_bits = static_cast<std::uint64_t>(ceil_log2_int(static_cast<std::uint64_t>(params.t)));
    out.outage = std::norm(h[tau]) < params.alpha;
    return out;
}

SchemeOutcome run_B(const ChannelState& h, const SystemParams& params) {
    check_dimension(h, params);
    SchemeOutcome out;
    for (int i = 1; i <= params.t; ++i) {
        if (std::norm(h[static_cast<std::size_t>(i - 1)]) >= params.alpha) {
            out.strategy = FixedAntenna{i};
            out.antennas_trained = i;
            out.feedback_bits = static_cast<std::uint64_t>(i);
            out.outage = false;
            return out;
        }
    }
    out.strategy = FixedAntenna{1};
    out.antennas_trained = params.t;
    out.feedback_bits = static_cast<std::uint64_t>(params.t);
    out.outage = true;
    return out;
}

SchemeOutcome run_B_unary(const ChannelState& h, const SystemParams& params) {
    SchemeOutcome out = run_B(h, params);
    // upsilon ones then a zero; the all-fail codeword is t ones.
    const int upsilon = out.outage ? params.t : std::get<FixedAntenna>(out.strategy).index - 1;
    out.feedback_bits = static_cast<std::uint64_t>(std::min(upsilon + 1, params.t));
    out.antennas_trained = params.t;
    return out;
}

CkResult run_Ck(std::span<const Complex> h_k, double alpha) {
    CkResult r;
    if (!(norm2(h_k) > alpha)) {
        r.bits.push_back(false);
        return r;
    }
    r.resolution = sufficient_resolution(h_k, alpha);
    QuantizedBeamformer q = deadzone_vector(unit_direction(h_k), r.resolution);
    r.bits = encode_beamformer(q, r.resolution);
    r.beamformer = std::move(q);
    return r;
}

SchemeOutcome run_C(const ChannelState& h, const SystemParams& params) {
    check_dimension(h, params);
    SchemeOutcome out;
    out.antennas_trained = params.t;
    CkResult c = run_Ck(h.coeffs(), params.alpha);
    out.feedback_bits = c.bits.size();
    if (c.beamformer) {
        out.strategy = Beamform{std::move(c.beamformer->vector)};
        out.outage = array_gain(out.strategy, h) < params.alpha;
    } else {
        out.strategy = FixedAntenna{1};
        out.outage = true;
    }
    return out;
}

std::optional<int> d_stop_stage(const ChannelState& h, double alpha) {
    double n2 = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        n2 += std::norm(h[i]);
        if (n2 > alpha) return static_cast<int>(i) + 1;
    }
    return std::nullopt;
}

SchemeOutcome run_D(const ChannelState& h, const SystemParams& params, QuantizerMode mode, const HuffmanCode* code) {
    check_dimension(h, params);
    if (mode == QuantizerMode::variable && code == nullptr)
        throw std::invalid_argument("run_D: variable mode requires a resolution code");

    SchemeOutcome out;
    const std::optional<int> stop = d_stop_stage(h, params.alpha);
    if (!stop) {
        out.strategy = Beamform{basis_vector(h.size())};
        out.antennas_trained = params.t;
        out.feedback_bits = static_cast<std::uint64_t>(params.t);
        out.outage = true;
        return out;
    }

    const int i = *stop;
    const auto h_i = h.prefix(static_cast<std::size_t>(i));
    std::uint64_t payload = 0;
    std::vector<Complex> x;
    if (mode == QuantizerMode::fixed) {
        CkResult c = run_Ck(h_i, params.alpha);
        payload = c.bits.size();
        x = std::move(c.beamformer->vector);
    } else {
        RateAllocation a = variable_rate_quantize(h_i, params.alpha, params.delta);
        payload = variable_rate_cost(a.resolutions, *code);
        x = std::move(a.beamformer.vector);
        out.resolutions = std::move(a.resolutions);
    }
    out.strategy = Beamform{padded(x, h.size())};
    out.antennas_trained = i;
    out.feedback_bits = static_cast<std::uint64_t>(i - 1) + payload;
    out.outage = array_gain(out.strategy, h) < params.alpha;
    return out;
}

double bprime_threshold(const SystemParams& params) {
    const double frac = 1.0 - static_cast<double>(params.t) / params.group_size * params.epsilon;
    if (!(frac > 0.0)) return std::numeric_limits<double>::infinity();
    return (std::pow(1.0 + params.alpha * params.power, 1.0 / frac) - 1.0) / params.power;
}

SchemeOutcome run_Bprime(const ChannelState& h, const SystemParams& params) {
    check_dimension(h, params);
    if (params.group_size < 1) throw std::invalid_argument("run_Bprime: K must be >= 1");
    const double beta = bprime_threshold(params);
    SchemeOutcome out;
    std::uint64_t bits = 0;
    int trained = 0;
    while (trained < params.t) {
        const int group = std::min(params.group_size, params.t - trained);
        const int first = trained;
        trained += group;
        bits += static_cast<std::uint64_t>(ceil_log2_int(static_cast<std::uint64_t>(group) + 1));
        for (int i = first; i < trained; ++i) {
            if (std::norm(h[static_cast<std::size_t>(i)]) > beta) {
                out.strategy = FixedAntenna{i + 1};
                out.antennas_trained = trained;
                out.feedback_bits = bits;
                out.outage = false;
                return out;
            }
        }
    }
    out.strategy = FixedAntenna{1};
    out.antennas_trained = trained;
    out.feedback_bits = bits;
    out.outage = true;
    return out;
}

SchemeOutcome run_scheme(SchemeId id, const ChannelState& h, const SystemParams& params, QuantizerMode mode,
                         const HuffmanCode* code) {
    switch (id) {
        case SchemeId::F: return run_F(h, params);
        case SchemeId::G: return run_G(h, params);
        case SchemeId::A: return run_A(h, params);
        case SchemeId::B: return run_B(h, params);
        case SchemeId::B_unary: return run_B_unary(h, params);
        case SchemeId::C: return run_C(h, params);
        case SchemeId::D: return run_D(h, params, mode, code);
        case SchemeId::B_prime: return run_Bprime(h, params);
    }
    throw std::invalid_argument("unknown scheme");
}

}  // namespace ilfb

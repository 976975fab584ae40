#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ilfb/bitstring.hpp"
#include "ilfb/channel_model.hpp"
#include "ilfb/huffman.hpp"
#include "ilfb/quantizer.hpp"

namespace ilfb {

/// Beamforming vector x, full length t, with ||x|| <= 1.
struct Beamform {
    std::vector<Complex> vector;
};
/// Covariance (1/k) diag(1..1, 0..0) over the first k antennas.
struct UniformSubset {
    int k = 1;
};
/// Transmission over a single antenna; 1-based index.
struct FixedAntenna {
    int index = 1;
};

using TransmissionStrategy = std::variant<Beamform, UniformSubset, FixedAntenna>;

struct SchemeOutcome {
    TransmissionStrategy strategy;
    int antennas_trained = 0;
    /// nullopt encodes an unbounded feedback rate (full CSI).
    std::optional<std::uint64_t> feedback_bits;
    bool outage = false;
    /// Filled by scheme D in variable-rate mode when it stops with a beamformer.
    std::optional<ResolutionMatrix> resolutions;
};

enum class SchemeId { F, G, A, B, B_unary, C, D, B_prime };
enum class QuantizerMode { fixed, variable };

std::string_view to_string(SchemeId id);
std::string_view to_string(QuantizerMode mode);
/// Accepts F, G, A, B, Bu (or B_unary), C, D, Bp (or B_prime); case-sensitive.
std::optional<SchemeId> parse_scheme(std::string_view name);
std::optional<QuantizerMode> parse_quantizer(std::string_view name);

/// Throws std::invalid_argument on a dimension mismatch or an index out of range.
double array_gain(const TransmissionStrategy& strategy, const ChannelState& h);

/// Full CSI: matched filter h/||h||, unbounded feedback.
SchemeOutcome run_F(const ChannelState& h, const SystemParams& params);
/// Open loop over the first kappa(t, alpha) antennas.
SchemeOutcome run_G(const ChannelState& h, const SystemParams& params);
/// Conventional selection of the strongest antenna (ties to the smaller index).
SchemeOutcome run_A(const ChannelState& h, const SystemParams& params);
/// Interleaved selection: one bit per trained antenna, stops at |h_i|^2 >= alpha.
SchemeOutcome run_B(const ChannelState& h, const SystemParams& params);
/// All antennas trained; unary codeword of the first good antenna, at most t bits.
SchemeOutcome run_B_unary(const ChannelState& h, const SystemParams& params);

struct CkResult {
    BitString bits;
    /// Present iff ||h_k||^2 > alpha.
    std::optional<QuantizedBeamformer> beamformer;
    int resolution = 0;  ///< L(h_k) when a beamformer is sent
};

/// Single-shot quantized beamforming on a k-antenna prefix. Sends the
/// fixed-rate codeword at resolution L(h_k), or the one-bit message "0".
CkResult run_Ck(std::span<const Complex> h_k, double alpha);

/// Conventional training of all t antennas followed by C_t.
SchemeOutcome run_C(const ChannelState& h, const SystemParams& params);

/// Interleaved beamforming. Variable mode needs the shared resolution code;
/// throws std::invalid_argument if it is missing.
SchemeOutcome run_D(const ChannelState& h, const SystemParams& params, QuantizerMode mode = QuantizerMode::fixed,
                    const HuffmanCode* code = nullptr);

/// Stage at which D stops (1-based), or nullopt if ||h||^2 <= alpha.
std::optional<int> d_stop_stage(const ChannelState& h, double alpha);

/// beta = ((1 + alpha P)^{1 / (1 - (t/K) eps)^+} - 1) / P; +infinity when the
/// exponent's denominator vanishes.
double bprime_threshold(const SystemParams& params);

/// Grouped selection, K antennas per stage and ceil(log2(1 + group)) bits per stage.
SchemeOutcome run_Bprime(const ChannelState& h, const SystemParams& params);

/// Dispatch by id. `code` is only consulted by D in variable mode.
SchemeOutcome run_scheme(SchemeId id, const ChannelState& h, const SystemParams& params,
                         QuantizerMode mode = QuantizerMode::fixed, const HuffmanCode* code = nullptr);

/// ceil(log2(n)) for n >= 1.
int ceil_log2_int(std::uint64_t n);

}  // namespace ilfb

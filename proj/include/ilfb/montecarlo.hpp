#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ilfb/channel_model.hpp"
#include "ilfb/huffman.hpp"
#include "ilfb/schemes.hpp"

namespace ilfb {

/// Exact integer sums of one per-trial statistic. Merging is order-independent.
struct Moments {
    std::uint64_t n = 0;
    std::uint64_t sum = 0;
    std::uint64_t sum_sq = 0;

    void add(std::uint64_t x) {
        ++n;
        sum += x;
        sum_sq += x * x;
    }
    void merge(const Moments& o) {
        n += o.n;
        sum += o.sum;
        sum_sq += o.sum_sq;
    }
    double mean() const;
    /// sqrt(sample variance / n); 0 for n < 2.
    double standard_error() const;

    friend bool operator==(const Moments&, const Moments&) = default;
};

struct Accumulator {
    Moments outage;
    Moments trained;
    Moments feedback;
    bool unbounded_feedback = false;

    void add(const SchemeOutcome& o);
    void merge(const Accumulator& other);

    friend bool operator==(const Accumulator&, const Accumulator&) = default;
};

struct EstimateTriple {
    double outage_mean = 0.0;
    double outage_se = 0.0;
    double tl_mean = 0.0;
    double tl_se = 0.0;
    double fr_mean = 0.0;  ///< +infinity for unbounded feedback
    double fr_se = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    /// Trials spent building the resolution code (variable mode only).
    std::uint64_t codebook_trials = 0;

    static EstimateTriple from(const Accumulator& acc, std::uint64_t seed);
};

struct SchemeSpec {
    SchemeId id = SchemeId::B;
    QuantizerMode mode = QuantizerMode::fixed;
};

/// Trials are grouped in blocks of this size; block b draws its channels from
/// Rng(mix_seed(seed, b)) in trial order. Results depend only on (seed, trials).
inline constexpr std::uint64_t kBlockTrials = 1024;

/// Sub-stream of the master seed reserved for building the resolution code.
inline constexpr std::uint64_t kCodebookStream = 0x636f6465626f6f6bULL;

/// Accumulates `trials` outcomes starting at block 0 of `seed`. The OpenMP
/// version splits blocks across threads; the serial one is its reference.
Accumulator accumulate(const SchemeSpec& spec, const SystemParams& params, std::uint64_t trials, std::uint64_t seed,
                       const HuffmanCode* code = nullptr);
Accumulator accumulate_serial(const SchemeSpec& spec, const SystemParams& params, std::uint64_t trials,
                              std::uint64_t seed, const HuffmanCode* code = nullptr);

/// Histogram of the resolutions D's variable-rate quantizer chooses.
ResolutionHistogram collect_resolutions(const SystemParams& params, std::uint64_t trials, std::uint64_t seed);
ResolutionHistogram collect_resolutions_serial(const SystemParams& params, std::uint64_t trials, std::uint64_t seed);

/// Shared code for variable mode: built from max(1, trials / 10) trials on the
/// codebook sub-stream. An empty histogram (every trial in outage) is replaced
/// by a single count of resolution 0.
HuffmanCode build_resolution_code(const SystemParams& params, bool parallel = true);

/// Runs params.trials trials from params.seed. D in variable mode first builds
/// its code (two-pass protocol). Throws std::invalid_argument on invalid params.
EstimateTriple estimate(const SchemeSpec& spec, const SystemParams& params);
EstimateTriple estimate_serial(const SchemeSpec& spec, const SystemParams& params);

enum class Axis { t, K, alpha, power, epsilon };
std::string_view to_string(Axis axis);
std::optional<Axis> parse_axis(std::string_view name);

/// params with `axis` set to `value`. Integer axes require integral values.
SystemParams with_axis(SystemParams params, Axis axis, double value);

struct SweepRow {
    double axis_value = 0.0;
    SystemParams params;
    EstimateTriple estimate;
};

/// One estimate per value, in order. Point j runs on seed mix_seed(seed, j).
std::vector<SweepRow> sweep(const SchemeSpec& spec, Axis axis, const std::vector<double>& values,
                            const SystemParams& params);

}  // namespace ilfb

#include "ilfb/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

namespace ilfb {

double Moments::mean() const { return n == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(n); }

double Moments::standard_error() const {
    if (n < 2) return 0.0;
    const double nd = static_cast<double>(n);
    const double m = static_cast<double>(sum) / nd;
    const double var = std::max(0.0, (static_cast<double>(sum_sq) - nd * m * m) / (nd - 1.0));
    return std::sqrt(var / nd);
}

void Accumulator::add(const SchemeOutcome& o) {
    outage.add(o.outage ? 1 : 0);
    trained.add(static_cast<std::uint64_t>(o.antennas_trained));
    if (o.feedback_bits) {
        feedback.add(*o.feedback_bits);
    } else {
        unbounded_feedback = true;
    }
}

void Accumulator::merge(const Accumulator& other) {
    outage.merge(other.outage);
    trained.merge(other.trained);
    feedback.merge(other.feedback);
    unbounded_feedback = unbounded_feedback || other.unbounded_feedback;
}

EstimateTriple EstimateTriple::from(const Accumulator& acc, std::uint64_t seed) {
    EstimateTriple e;
    e.outage_mean = acc.outage.mean();
    e.outage_se = acc.outage.standard_error();
    e.tl_mean = acc.trained.mean();
    e.tl_se = acc.trained.standard_error();
    if (acc.unbounded_feedback) {
        e.fr_mean = std::numeric_limits<double>::infinity();
        e.fr_se = 0.0;
    } else {
        e.fr_mean = acc.feedback.mean();
        e.fr_se = acc.feedback.standard_error();
    }
    e.trials = acc.outage.n;
    e.seed = seed;
    return e;
}

namespace {

template <class PerTrial>
void run_block(std::uint64_t block, std::uint64_t trials, std::uint64_t seed, int t, PerTrial&& per_trial) {
    Rng rng(mix_seed(seed, block));
    const std::uint64_t begin = block * kBlockTrials;
    const std::uint64_t end = std::min(trials, begin + kBlockTrials);
    for (std::uint64_t i = begin; i < end; ++i) per_trial(sample_channel(t, rng));
}

// Exceptions must not escape an OpenMP region; keep the first and rethrow after it.
class ExceptionGuard {
public:
    template <class F>
    void run(F&& f) {
        try {
            f();
        } catch (...) {
#pragma omp critical(ilfb_exception_guard)
            if (!first_) first_ = std::current_exception();
        }
    }
    void rethrow() const {
        if (first_) std::rethrow_exception(first_);
    }

private:
    std::exception_ptr first_;
};

std::uint64_t block_count(std::uint64_t trials) { return (trials + kBlockTrials - 1) / kBlockTrials; }

void check_request(const SchemeSpec& spec, const SystemParams& params, std::uint64_t trials, const HuffmanCode* code) {
    params.validate();
    if (trials == 0) throw std::invalid_argument("trials must be >= 1");
    if (spec.id == SchemeId::D && spec.mode == QuantizerMode::variable && code == nullptr)
        throw std::invalid_argument("variable mode requires a resolution code");
}

void add_resolutions(ResolutionHistogram& hist, const ChannelState& h, const SystemParams& params) {
    const std::optional<int> stop = d_stop_stage(h, params.alpha);
    if (!stop) return;
    const RateAllocation a =
        variable_rate_quantize(h.prefix(static_cast<std::size_t>(*stop)), params.alpha, params.delta);
    for (std::size_t i = 0; i < a.resolutions.rows(); ++i)
        for (int p = 0; p < 2; ++p) hist.add(a.resolutions.at(i, p));
}

}  // namespace

Accumulator accumulate_serial(const SchemeSpec& spec, const SystemParams& params, std::uint64_t trials,
                              std::uint64_t seed, const HuffmanCode* code) {
    check_request(spec, params, trials, code);
    Accumulator acc;
    for (std::uint64_t b = 0; b < block_count(trials); ++b) {
        run_block(b, trials, seed, params.t,
                  [&](const ChannelState& h) { acc.add(run_scheme(spec.id, h, params, spec.mode, code)); });
    }
    return acc;
}

Accumulator accumulate(const SchemeSpec& spec, const SystemParams& params, std::uint64_t trials, std::uint64_t seed,
                       const HuffmanCode* code) {
    check_request(spec, params, trials, code);
    const auto blocks = static_cast<std::int64_t>(block_count(trials));
    ExceptionGuard guard;
    Accumulator total;
#pragma omp parallel
    {
        Accumulator local;
#pragma omp for schedule(dynamic, 4) nowait
        for (std::int64_t b = 0; b < blocks; ++b) {
            guard.run([&] {
                run_block(static_cast<std::uint64_t>(b), trials, seed, params.t,
                          [&](const ChannelState& h) { local.add(run_scheme(spec.id, h, params, spec.mode, code)); });
            });
        }
#pragma omp critical(ilfb_accumulate_merge)
        total.merge(local);
    }
    guard.rethrow();
    return total;
}

ResolutionHistogram collect_resolutions_serial(const SystemParams& params, std::uint64_t trials, std::uint64_t seed) {
    params.validate();
    ResolutionHistogram hist;
    for (std::uint64_t b = 0; b < block_count(trials); ++b)
        run_block(b, trials, seed, params.t, [&](const ChannelState& h) { add_resolutions(hist, h, params); });
    return hist;
}

ResolutionHistogram collect_resolutions(const SystemParams& params, std::uint64_t trials, std::uint64_t seed) {
    params.validate();
    const auto blocks = static_cast<std::int64_t>(block_count(trials));
    ExceptionGuard guard;
    ResolutionHistogram total;
#pragma omp parallel
    {
        ResolutionHistogram local;
#pragma omp for schedule(dynamic, 4) nowait
        for (std::int64_t b = 0; b < blocks; ++b) {
            guard.run([&] {
                run_block(static_cast<std::uint64_t>(b), trials, seed, params.t,
                          [&](const ChannelState& h) { add_resolutions(local, h, params); });
            });
        }
#pragma omp critical(ilfb_histogram_merge)
        total.merge(local);
    }
    guard.rethrow();
    return total;
}

HuffmanCode build_resolution_code(const SystemParams& params, bool parallel) {
    const std::uint64_t n = std::max<std::uint64_t>(1, params.trials / 10);
    const std::uint64_t seed = mix_seed(params.seed, kCodebookStream);
    ResolutionHistogram hist =
        parallel ? collect_resolutions(params, n, seed) : collect_resolutions_serial(params, n, seed);
    if (hist.empty()) hist.add(0);
    return HuffmanCode::build(hist);
}

namespace {

EstimateTriple estimate_impl(const SchemeSpec& spec, const SystemParams& params, bool parallel) {
    params.validate();
    std::optional<HuffmanCode> code;
    std::uint64_t codebook_trials = 0;
    if (spec.id == SchemeId::D && spec.mode == QuantizerMode::variable) {
        code = build_resolution_code(params, parallel);
        codebook_trials = std::max<std::uint64_t>(1, params.trials / 10);
    }
    const HuffmanCode* c = code ? &*code : nullptr;
    const Accumulator acc = parallel ? accumulate(spec, params, params.trials, params.seed, c)
                                     : accumulate_serial(spec, params, params.trials, params.seed, c);
    EstimateTriple e = EstimateTriple::from(acc, params.seed);
    e.codebook_trials = codebook_trials;
    return e;
}

}  // namespace

EstimateTriple estimate(const SchemeSpec& spec, const SystemParams& params) {
    return estimate_impl(spec, params, true);
}

EstimateTriple estimate_serial(const SchemeSpec& spec, const SystemParams& params) {
    return estimate_impl(spec, params, false);
}

std::string_view to_string(Axis axis) {
    switch (axis) {
        case Axis::t: return "t";
        case Axis::K: return "K";
        case Axis::alpha: return "alpha";
        case Axis::power: return "P";
        case Axis::epsilon: return "epsilon";
    }
    return "?";
}

std::optional<Axis> parse_axis(std::string_view name) {
    if (name == "t") return Axis::t;
    if (name == "K" || name == "group-size" || name == "group_size") return Axis::K;
    if (name == "alpha") return Axis::alpha;
    if (name == "P" || name == "power") return Axis::power;
    if (name == "epsilon") return Axis::epsilon;
    return std::nullopt;
}

SystemParams with_axis(SystemParams params, Axis axis, double value) {
    auto as_int = [&](const char* what) {
        if (value != std::floor(value) || std::abs(value) > 1e9)
            throw std::invalid_argument(std::string(what) + " must be an integer");
        return static_cast<int>(value);
    };
    switch (axis) {
        case Axis::t: params.t = as_int("t"); break;
        case Axis::K: params.group_size = as_int("K"); break;
        case Axis::alpha: params.alpha = value; break;
        case Axis::power: params.power = value; break;
        case Axis::epsilon: params.epsilon = value; break;
    }
    return params;
}

std::vector<SweepRow> sweep(const SchemeSpec& spec, Axis axis, const std::vector<double>& values,
                            const SystemParams& params) {
    if (values.empty()) throw std::invalid_argument("sweep: empty value list");
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
        SystemParams p = with_axis(params, axis, values[j]);
        p.seed = mix_seed(params.seed, j);
        rows.push_back({values[j], p, estimate(spec, p)});
    }
    return rows;
}

}  // namespace ilfb

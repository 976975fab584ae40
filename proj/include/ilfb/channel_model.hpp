#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace ilfb {

using Complex = std::complex<double>;

/// Experiment configuration shared by every scheme.
///
/// The target rate log2(1 + alpha * power) is derived on demand and never stored.
struct SystemParams {
    int t = 1;                   ///< transmit antennas
    double power = 1.0;          ///< short-term power constraint P
    double alpha = 1.0;          ///< outage SNR threshold
    double epsilon = 0.0;        ///< per-stage latency fraction (grouped selection only)
    int group_size = 1;          ///< K, antennas trained per stage in grouped selection
    int delta = 1;               ///< rate-allocation step
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 1;

    double target_rate() const;

    /// Throws std::invalid_argument naming the first violated constraint.
    void validate() const;
};

/// One fading realization h = [h_1 ... h_t].
class ChannelState {
public:
    ChannelState() = default;
    explicit ChannelState(std::vector<Complex> coeffs);

    std::size_t size() const { return coeffs_.size(); }
    const Complex& operator[](std::size_t i) const { return coeffs_[i]; }
    std::span<const Complex> coeffs() const { return coeffs_; }

    /// First k coefficients.
    std::span<const Complex> prefix(std::size_t k) const { return std::span(coeffs_).first(k); }

    /// ||h_k||^2 over the first k coefficients.
    double prefix_norm2(std::size_t k) const;
    double norm2() const { return prefix_norm2(coeffs_.size()); }

private:
    std::vector<Complex> coeffs_;
};

double norm2(std::span<const Complex> v);

using Rng = std::mt19937_64;

/// SplitMix64 finalizer, used to derive decorrelated sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform on (0, 1]: the top 53 bits of one engine output, offset by one ulp.
double uniform_open0(Rng& rng);

/// Draws h ~ CN(0, I_t).
///
/// Stream layout: coefficient i consumes engine outputs 2i and 2i+1 (u1, u2 via
/// uniform_open0) and is set to sqrt(-ln u1) * exp(j 2 pi u2). Hence |h_i|^2 = -ln u1
/// is exactly Exp(1) in distribution, and a length-k prefix of a length-t draw equals
/// a length-k draw from the same engine state.
ChannelState sample_channel(const SystemParams& params, Rng& rng);
ChannelState sample_channel(int t, Rng& rng);

/// P(||h_k||^2 <= x) for h_k ~ CN(0, I_k), via the Poisson tail identity
/// 1 - sum_{i<k} x^i e^{-x} / i!.
///
/// The side of the Poisson mass that is small is summed directly (upper tail for
/// x < k, lower sum for x >= k) starting from its largest term, so tiny
/// probabilities keep full relative precision.
double gamma_tail(int k, double x);

/// The k in 1..t minimising gamma_tail(k, k*alpha); ties go to the smaller k.
/// Pure function of (t, alpha); scans are memoised.
int kappa(int t, double alpha);

}  // namespace ilfb

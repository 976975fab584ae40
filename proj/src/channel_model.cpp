#include "ilfb/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace ilfb {

double SystemParams::target_rate() const { return std::log2(1.0 + alpha * power); }

void SystemParams::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
    if (t < 1) fail("t must be >= 1");
    if (!(power > 0.0) || !std::isfinite(power)) fail("power must be positive and finite");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) fail("alpha must be positive and finite");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) fail("epsilon must be nonnegative and finite");
    if (group_size < 1 || group_size > t) fail("group size must satisfy 1 <= K <= t");
    if (delta < 1) fail("delta must be >= 1");
    if (trials < 1) fail("trials must be >= 1");
}

ChannelState::ChannelState(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("channel coefficients must be finite");
    }
}

double ChannelState::prefix_norm2(std::size_t k) const { return ilfb::norm2(prefix(k)); }

double norm2(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& c : v) s += std::norm(c);
    return s;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform_open0(Rng& rng) {
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

ChannelState sample_channel(int t, Rng& rng) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    std::vector<Complex> h(static_cast<std::size_t>(t));
    for (auto& c : h) {
        const double u1 = uniform_open0(rng);
        const double u2 = uniform_open0(rng);
        const double r = std::sqrt(-std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        c = Complex(r * std::cos(theta), r * std::sin(theta));
    }
    return ChannelState(std::move(h));
}

ChannelState sample_channel(const SystemParams& params, Rng& rng) {
    return sample_channel(params.t, rng);
}

double gamma_tail(int k, double x) {
    if (k < 1) throw std::invalid_argument("gamma_tail: k must be >= 1");
    if (!(x >= 0.0)) throw std::invalid_argument("gamma_tail: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;

    const double log_x = std::log(x);
    if (x < k) {
        // Upper Poisson tail sum_{i>=k}; terms shrink by x/(i+1) < 1.
        double term = std::exp(k * log_x - x - std::lgamma(k + 1.0));
        double sum = 0.0;
        for (int i = k; term > 0.0; ++i) {
            sum += term;
            if (term < sum * 1e-17) break;
            term *= x / (i + 1);
        }
        return std::min(sum, 1.0);
    }
    // Lower sum_{i<k}, walked down from the largest term i = k-1.
    double term = std::exp((k - 1) * log_x - x - std::lgamma(static_cast<double>(k)));
    double sum = 0.0;
    for (int i = k - 1; i >= 0; --i) {
        sum += term;
        if (term < sum * 1e-17) break;
        term *= i / x;
    }
    return std::clamp(1.0 - sum, 0.0, 1.0);
}

int kappa(int t, double alpha) {
    if (t < 1) throw std::invalid_argument("kappa: t must be >= 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("kappa: alpha must be positive");

    static std::mutex mu;
    static std::map<std::pair<int, double>, int> memo;
    {
        std::lock_guard lock(mu);
        if (auto it = memo.find({t, alpha}); it != memo.end()) return it->second;
    }

    int best_k = 1;
    double best = gamma_tail(1, alpha);
    for (int k = 2; k <= t; ++k) {
        const double p = gamma_tail(k, k * alpha);
        if (p < best) {
            best = p;
            best_k = k;
        }
    }

    std::lock_guard lock(mu);
    memo.emplace(std::pair{t, alpha}, best_k);
    return best_k;
}

}  // namespace ilfb

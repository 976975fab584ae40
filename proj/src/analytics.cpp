#include "ilfb/analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace ilfb {

namespace {

void check_args(int t, double alpha) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
}

// 1 - (1 - e^{-x})^n without cancellation for small e^{-x}.
double one_minus_pow_miss(double x, int n) {
    return -std::expm1(n * std::log1p(-std::exp(-x)));
}

Validity weakest(const AnalyticReport& r) {
    Validity v = Validity::exact;
    for (const Quantity* q : {&r.outage, &r.tl, &r.fr}) {
        if (q->kind == Quantity::Kind::upper_bound) v = Validity::upper_bound;
        if (q->kind == Quantity::Kind::lower_bound) v = Validity::lower_bound;
    }
    return v;
}

}  // namespace

std::string_view to_string(Validity v) {
    switch (v) {
        case Validity::exact: return "exact";
        case Validity::upper_bound: return "upper-bound";
        case Validity::lower_bound: return "lower-bound";
        case Validity::asymptotic: return "asymptotic";
        case Validity::approximate: return "approximate";
    }
    return "?";
}

SelectionReport analytic_A_B(int t, double alpha) {
    check_args(t, alpha);
    SelectionReport r;
    r.outage = std::pow(-std::expm1(-alpha), t);
    r.tl_B = std::exp(alpha) * one_minus_pow_miss(alpha, t);
    r.fr_B = r.tl_B;
    r.tl_A = t;
    r.fr_A = ceil_log2_int(static_cast<std::uint64_t>(t));
    return r;
}

AnalyticReport analytic_F(int t, double alpha) {
    check_args(t, alpha);
    AnalyticReport r;
    r.outage = Quantity::exact(gamma_tail(t, alpha));
    r.tl = Quantity::exact(t);
    r.fr = Quantity::infinite();
    const double log_upper = t * std::log(alpha) - std::lgamma(t + 1.0);
    r.outage_sandwich = Interval{std::exp(log_upper - alpha), std::exp(log_upper)};
    r.validity = Validity::exact;
    return r;
}

AnalyticReport analytic_G(int t, double alpha) {
    check_args(t, alpha);
    const int k = kappa(t, alpha);
    AnalyticReport r;
    r.outage = Quantity::exact(gamma_tail(k, k * alpha));
    r.tl = Quantity::exact(k);
    r.fr = Quantity::exact(0.0);
    r.validity = Validity::exact;
    r.asymptotic = alpha < 1.0 ? "Theta((t alpha)^t e^{-alpha t} / t!)" : "Theta(1)";
    return r;
}

AnalyticReport analytic_Bprime(const SystemParams& params) {
    check_args(params.t, params.alpha);
    if (params.group_size < 1 || params.group_size > params.t) throw std::invalid_argument("K must satisfy 1 <= K <= t");
    const double beta = bprime_threshold(params);
    const int K = params.group_size;
    AnalyticReport r;
    if (std::isinf(beta)) {
        // Every stage fails: all t antennas trained, one message per group.
        const int rem = params.t % K;
        double bits = static_cast<double>(params.t / K) * ceil_log2_int(static_cast<std::uint64_t>(K) + 1);
        if (rem > 0) bits += ceil_log2_int(static_cast<std::uint64_t>(rem) + 1);
        r.outage = Quantity::exact(1.0);
        r.tl = Quantity::exact(params.t);
        r.fr = Quantity::exact(bits);
    } else {
        const double ratio = one_minus_pow_miss(beta, params.t) / one_minus_pow_miss(beta, K);
        r.outage = Quantity::exact(std::pow(-std::expm1(-beta), params.t));
        r.tl = Quantity::exact(K * ratio);
        r.fr = Quantity::exact(ceil_log2_int(static_cast<std::uint64_t>(K) + 1) * ratio);
    }
    r.validity = params.t % K == 0 ? Validity::exact : Validity::approximate;
    return r;
}

TheoremTwoBounds theorem2_bounds(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    return {1.0 + alpha, 92.0 * (1.0 + alpha * alpha * alpha)};
}

double appendixB_stage_prob(double alpha, int i) {
    if (i < 1) throw std::invalid_argument("stage index must be >= 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    return std::exp((i - 1) * std::log(alpha) - alpha - std::lgamma(static_cast<double>(i)));
}

double d_training_length(int t, double alpha) {
    check_args(t, alpha);
    double tl = 0.0;
    for (int i = 1; i <= t; ++i) tl += i * appendixB_stage_prob(alpha, i);
    return tl + t * gamma_tail(t, alpha);
}

AnalyticReport analytic_report(SchemeId id, const SystemParams& params) {
    const int t = params.t;
    const double alpha = params.alpha;
    AnalyticReport r;
    switch (id) {
        case SchemeId::F: return analytic_F(t, alpha);
        case SchemeId::G: return analytic_G(t, alpha);
        case SchemeId::A: {
            const SelectionReport s = analytic_A_B(t, alpha);
            r.outage = Quantity::exact(s.outage);
            r.tl = Quantity::exact(s.tl_A);
            r.fr = Quantity::exact(s.fr_A);
            break;
        }
        case SchemeId::B: {
            const SelectionReport s = analytic_A_B(t, alpha);
            r.outage = Quantity::exact(s.outage);
            r.tl = Quantity::exact(s.tl_B);
            r.fr = Quantity::exact(s.fr_B);
            break;
        }
        case SchemeId::B_unary: {
            const SelectionReport s = analytic_A_B(t, alpha);
            r.outage = Quantity::exact(s.outage);
            r.tl = Quantity::exact(t);
            r.fr = Quantity::exact(s.fr_B);
            break;
        }
        case SchemeId::C: {
            const double out = gamma_tail(t, alpha);
            r.outage = Quantity::exact(out);
            r.tl = Quantity::exact(t);
            r.fr = Quantity::lower(6.0 * t * (1.0 - out));
            break;
        }
        case SchemeId::D: {
            r.outage = Quantity::exact(gamma_tail(t, alpha));
            r.tl = Quantity::exact(d_training_length(t, alpha));
            r.fr = Quantity::upper(theorem2_bounds(alpha).fr);
            break;
        }
        case SchemeId::B_prime: return analytic_Bprime(params);
    }
    r.validity = weakest(r);
    return r;
}

}  // namespace ilfb

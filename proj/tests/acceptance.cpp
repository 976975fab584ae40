// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "ilfb/analytics.hpp"
#include "ilfb/cli.hpp"
#include "ilfb/montecarlo.hpp"

using namespace ilfb;

namespace {

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
    std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    failures += !ok;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Bernoulli SE under the oracle value; covers runs with zero observed events.
double outage_se(const EstimateTriple& e, double p0) {
    return std::max(e.outage_se, std::sqrt(p0 * (1.0 - p0) / static_cast<double>(e.trials)));
}

bool within(double est, double want, double se, double k = 4.0) { return std::abs(est - want) <= k * se; }

SystemParams base(int t, double alpha, std::uint64_t trials, std::uint64_t seed) {
    SystemParams p;
    p.t = t;
    p.alpha = alpha;
    p.trials = trials;
    p.seed = seed;
    return p;
}

void ac1() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream d;
    for (int t : {1, 5, 10, 30}) {
        const SystemParams p = base(t, 1.0, 1000000, 1001 + t);
        const SelectionReport want = analytic_A_B(t, 1.0);
        const EstimateTriple a = estimate({SchemeId::A, QuantizerMode::fixed}, p);
        const EstimateTriple b = estimate({SchemeId::B, QuantizerMode::fixed}, p);
        const bool row = within(a.outage_mean, want.outage, outage_se(a, want.outage)) &&
                         within(b.outage_mean, want.outage, outage_se(b, want.outage)) &&
                         within(b.tl_mean, want.tl_B, b.tl_se) && within(b.fr_mean, want.fr_B, b.fr_se) &&
                         b.tl_mean < std::exp(1.0) && b.fr_mean < std::exp(1.0);
        ok = ok && row;
        d << fmt("t=%d out A=%.6g B=%.6g (want %.6g) tl=fr=%.5f (want %.5f)%s; ", t, a.outage_mean, b.outage_mean,
                 want.outage, b.tl_mean, want.tl_B, row ? "" : " MISMATCH");
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    d << fmt("runtime %.1fs", secs);
    report("AC1 selection closed forms", ok && secs < 120.0, d.str());
}

void ac2() {
    Rng rng(0xac2);
    std::uint64_t violations = 0, cases = 0;
    while (cases < 1000000) {
        const int k = 1 + static_cast<int>(rng() % 30);
        const ChannelState h = sample_channel(k, rng);
        const double n2 = h.norm2();
        // Half the cases sit just below ||h_k||^2, where L(h_k) is tightest.
        const double u = uniform_open0(rng);
        const double alpha = (cases % 2 == 0) ? n2 * u : n2 * (1.0 - 1e-9 * u);
        if (!(alpha > 0.0) || !(n2 > alpha)) continue;
        ++cases;
        const int L = sufficient_resolution(h.coeffs(), alpha);
        const auto q = deadzone_vector(unit_direction(h.coeffs()), L);
        if (!(beamforming_gain(q.vector, h.coeffs()) > alpha)) ++violations;
    }
    report("AC2 resolution guarantee", violations == 0,
           fmt("%llu cases, %llu violations", static_cast<unsigned long long>(cases),
               static_cast<unsigned long long>(violations)));
}

void ac3() {
    bool ok = true;
    std::ostringstream d;
    for (double a : {0.5, 1.0, 2.0}) {
        const SystemParams p = base(30, a, 1000000, 3003);
        const EstimateTriple e = estimate({SchemeId::D, QuantizerMode::fixed}, p);
        const double out = gamma_tail(30, a);
        const double tl = d_training_length(30, a);
        const TheoremTwoBounds b = theorem2_bounds(a);
        const bool row = within(e.outage_mean, out, outage_se(e, out)) && e.tl_mean <= b.tl + 4 * e.tl_se &&
                         e.fr_mean + 4 * e.fr_se <= b.fr && within(e.tl_mean, tl, e.tl_se);
        ok = ok && row;
        d << fmt("alpha=%g out=%.3g (want %.3g) tl=%.5f+-%.5f (exact %.5f, bound %.5f) fr=%.3f (bound %.1f)%s; ", a,
                 e.outage_mean, out, e.tl_mean, e.tl_se, tl, b.tl, e.fr_mean, b.fr, row ? "" : " MISMATCH");
    }
    report("AC3 interleaved beamforming", ok, d.str());
}

void ac4() {
    Rng rng(0xac4);
    const SystemParams p = base(30, 1.0, 0, 0);
    int bad = 0;
    for (int i = 0; i < 100000; ++i) {
        const ChannelState h = sample_channel(p, rng);
        bad += run_D(h, p).antennas_trained > run_B(h, p).antennas_trained;
    }
    report("AC4 per-state training dominance", bad == 0, fmt("100000 shared draws, %d states with tl(D) > tl(B)", bad));
}

void ac5() {
    bool ok = true;
    std::ostringstream d;
    for (int t : {4, 8, 16}) {
        const SystemParams p = base(t, 1.0, 1000000, 5005 + t);
        const HuffmanCode code = build_resolution_code(p);
        Rng rng(mix_seed(p.seed, 0xac5));
        const int n = 200000;
        long over = 0, outage_diff = 0;
        double sum_var = 0.0, sum_fixed = 0.0;
        for (int i = 0; i < n; ++i) {
            const ChannelState h = sample_channel(p, rng);
            const SchemeOutcome f = run_D(h, p, QuantizerMode::fixed);
            const SchemeOutcome v = run_D(h, p, QuantizerMode::variable, &code);
            over += *v.feedback_bits > *f.feedback_bits;
            outage_diff += v.outage != f.outage;
            sum_var += static_cast<double>(*v.feedback_bits);
            sum_fixed += static_cast<double>(*f.feedback_bits);
        }
        const bool row = over == 0 && sum_var < sum_fixed && outage_diff == 0;
        ok = ok && row;
        d << fmt("t=%d mean var=%.3f fixed=%.3f, states over fixed=%ld/%d, outage differs in %ld; ", t, sum_var / n,
                 sum_fixed / n, over, n, outage_diff);
    }
    report("AC5 variable-rate quantizer", ok, d.str());
}

void ac6() {
    bool ok = true;
    std::ostringstream d;
    for (double eps : {0.01, 0.02}) {
        int best_tl = 0, best_fr = 0;
        double min_tl = INFINITY, min_fr = INFINITY;
        for (int K = 1; K <= 30; ++K) {
            if (30 % K != 0) continue;
            SystemParams p = base(30, 1.0, 1000000, 6006 + K);
            p.power = 1.0;
            p.epsilon = eps;
            p.group_size = K;
            const AnalyticReport r = analytic_Bprime(p);
            const EstimateTriple e = estimate({SchemeId::B_prime, QuantizerMode::fixed}, p);
            const bool row = within(e.outage_mean, r.outage.value, outage_se(e, r.outage.value)) &&
                             within(e.tl_mean, r.tl.value, e.tl_se) && within(e.fr_mean, r.fr.value, e.fr_se);
            if (!row)
                d << fmt("eps=%g K=%d MISMATCH out %.4g/%.4g tl %.4f/%.4f fr %.4f/%.4f; ", eps, K, e.outage_mean,
                         r.outage.value, e.tl_mean, r.tl.value, e.fr_mean, r.fr.value);
            ok = ok && row;
            if (r.tl.value < min_tl) min_tl = r.tl.value, best_tl = K;
            if (r.fr.value < min_fr) min_fr = r.fr.value, best_fr = K;
        }
        const int want_tl = eps < 0.015 ? 2 : 3;
        const int want_fr = eps < 0.015 ? 3 : 6;
        ok = ok && best_tl == want_tl && best_fr == want_fr;
        d << fmt("eps=%g argmin tl K=%d (want %d) fr K=%d (want %d); ", eps, best_tl, want_tl, best_fr, want_fr);
    }
    report("AC6 grouped selection", ok, d.str());
}

void ac7() {
    int bad = 0;
    for (double a : {0.5, 1.0, 2.0}) {
        for (int t = 1; t <= 30; ++t) {
            const double g = gamma_tail(t, a);
            const double upper = std::exp(t * std::log(a) - std::lgamma(t + 1.0));
            const double lower = upper * std::exp(-a);
            bad += !(lower <= g + 1e-12 && g <= upper + 1e-12);
        }
    }
    report("AC7 outage sandwich", bad == 0, fmt("90 (t, alpha) points, %d outside", bad));
}

void ac8() {
    Rng rng(0xac8);
    int bad = 0;
    for (int i = 0; i < 100000; ++i) {
        const int dim = 1 + static_cast<int>(rng() % 16);
        const int ell = static_cast<int>(rng() % 40);
        std::vector<Complex> x = unit_direction(sample_channel(dim, rng).coeffs());
        const double s = uniform_open0(rng);
        for (auto& c : x) c *= s;
        const QuantizedBeamformer q = deadzone_vector(x, ell);
        const BitString bits = encode_beamformer(q, ell);
        const QuantizedBeamformer back = decode_beamformer(bits, static_cast<std::size_t>(dim), ell);
        bad += !(bits.size() == 2ULL * dim * (ell + 3) && back.vector == q.vector && encode_beamformer(back, ell) == bits);
    }
    report("AC8 codec round trip", bad == 0, fmt("100000 cases, %d mismatches", bad));
}

void ac9() {
    cli::ExperimentConfig cfg;
    cfg.params.trials = 4000;
    cfg.params.seed = 99;
    const int saved = omp_get_max_threads();
    std::vector<std::string> differing;
    for (auto name : cli::kFigureNames) {
        std::string ref;
        for (int threads : {1, 2, 4}) {
            omp_set_num_threads(threads);
            std::ostringstream os;
            cli::cmd_figure(name, cfg).write_csv(os);
            if (threads == 1) {
                ref = os.str();
            } else if (os.str() != ref) {
                differing.emplace_back(name);
                break;
            }
        }
    }
    omp_set_num_threads(saved);
    std::string d = fmt("%zu presets at 1, 2, 4 threads", cli::kFigureNames.size());
    for (const auto& n : differing) d += "; differs: " + n;
    report("AC9 determinism", differing.empty(), d);
}

}  // namespace

int main() {
    ac1();
    ac2();
    ac3();
    ac4();
    ac5();
    ac6();
    ac7();
    ac8();
    ac9();
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}

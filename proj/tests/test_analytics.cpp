#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>

#include "ilfb/analytics.hpp"

using namespace ilfb;

namespace {

// Straight-line oracles computed without the library's helpers.
double selection_outage(int t, double a) { return std::pow(1.0 - std::exp(-a), t); }
double selection_tl(int t, double a) {
    const double p = std::exp(-a);  // P(|h_i|^2 >= a)
    double tl = 0.0;
    for (int i = 1; i <= t; ++i) tl += i * p * std::pow(1.0 - p, i - 1);
    return tl + t * std::pow(1.0 - p, t);
}

SystemParams bprime(int K, double eps) {
    SystemParams p;
    p.t = 30;
    p.alpha = 1.0;
    p.power = 1.0;
    p.epsilon = eps;
    p.group_size = K;
    return p;
}

// Grouped selection by direct summation over stages.
std::pair<double, double> bprime_oracle(int t, int K, double beta) {
    const double miss = 1.0 - std::exp(-beta);
    const double group_miss = std::pow(miss, K);
    const int stages = t / K;
    const double bits = std::ceil(std::log2(K + 1.0));
    double tl = 0.0, fr = 0.0;
    for (int s = 1; s <= stages; ++s) {
        const double reach = std::pow(group_miss, s - 1);  // stage s is run
        tl += K * reach;
        fr += bits * reach;
    }
    return {tl, fr};
}

}  // namespace

TEST_SUITE("analytics") {

TEST_CASE("selection closed forms against direct sums") {
    for (double a : {0.5, 1.0, 2.0}) {
        for (int t : {1, 2, 5, 10, 30}) {
            const SelectionReport s = analytic_A_B(t, a);
            CHECK(s.outage == doctest::Approx(selection_outage(t, a)).epsilon(1e-12));
            CHECK(s.tl_B == doctest::Approx(selection_tl(t, a)).epsilon(1e-12));
            CHECK(s.fr_B == s.tl_B);
            CHECK(s.tl_A == t);
            CHECK(s.fr_A == static_cast<int>(std::ceil(std::log2(t))));
        }
    }
    CHECK(analytic_A_B(60, 1.0).tl_B < std::exp(1.0));
    CHECK_THROWS_AS(analytic_A_B(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(analytic_A_B(3, 0.0), std::invalid_argument);
}

TEST_CASE("full CSI report and sandwich") {
    for (double a : {0.5, 1.0, 2.0}) {
        for (int t = 1; t <= 30; ++t) {
            const AnalyticReport f = analytic_F(t, a);
            CHECK(f.fr.is_infinite());
            REQUIRE(f.outage_sandwich.has_value());
            CHECK(f.outage_sandwich->lower <= f.outage.value + 1e-12);
            CHECK(f.outage.value <= f.outage_sandwich->upper + 1e-12);
            CHECK(f.outage.value == doctest::Approx(boost::math::gamma_p(t, a)).epsilon(1e-10));
        }
    }
}

TEST_CASE("outage ordering F <= A and F <= G") {
    for (double a : {0.5, 1.0, 2.0}) {
        for (int t = 1; t <= 60; ++t) {
            const double f = analytic_F(t, a).outage.value;
            CHECK(f <= analytic_A_B(t, a).outage * (1 + 1e-12));
            CHECK(f <= analytic_G(t, a).outage.value * (1 + 1e-12));
        }
    }
}

TEST_CASE("open loop report") {
    const AnalyticReport g = analytic_G(20, 0.5);
    CHECK(g.tl.value == kappa(20, 0.5));
    CHECK(g.fr.value == 0.0);
    CHECK_FALSE(g.asymptotic.empty());
}

TEST_CASE("stage probabilities partition the sample space") {
    for (double a : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        for (int t = 1; t <= 200; ++t) {
            double s = gamma_tail(t, a);
            for (int i = 1; i <= t; ++i) s += appendixB_stage_prob(a, i);
            INFO("t=" << t << " alpha=" << a);
            CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("D training length meets the bound and converges") {
    for (double a : {0.5, 1.0, 2.0}) {
        const double bound = theorem2_bounds(a).tl;
        for (int t = 1; t <= 60; ++t) CHECK(d_training_length(t, a) <= bound + 1e-12);
        CHECK(d_training_length(200, a) == doctest::Approx(bound).epsilon(1e-12));
    }
    CHECK(d_training_length(1, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("bound values") {
    CHECK(theorem2_bounds(1.0).tl == 2.0);
    CHECK(theorem2_bounds(1.0).fr == 184.0);
    CHECK(theorem2_bounds(0.5).fr == doctest::Approx(103.5));
    CHECK(theorem2_bounds(2.0).fr == 828.0);
}

TEST_CASE("report validity labels") {
    SystemParams p;
    p.t = 8;
    CHECK(analytic_report(SchemeId::D, p).validity == Validity::upper_bound);
    CHECK(analytic_report(SchemeId::D, p).fr.kind == Quantity::Kind::upper_bound);
    CHECK(analytic_report(SchemeId::C, p).validity == Validity::lower_bound);
    CHECK(analytic_report(SchemeId::B, p).validity == Validity::exact);
    CHECK(to_string(Validity::upper_bound) == "upper-bound");
    p.group_size = 3;
    CHECK(analytic_report(SchemeId::B_prime, p).validity == Validity::approximate);
}

TEST_CASE("grouped selection reduces to single selection") {
    for (int t : {1, 4, 30}) {
        SystemParams p;
        p.t = t;
        const AnalyticReport r = analytic_Bprime(p);
        const SelectionReport s = analytic_A_B(t, 1.0);
        CHECK(r.outage.value == doctest::Approx(s.outage).epsilon(1e-12));
        CHECK(r.tl.value == doctest::Approx(s.tl_B).epsilon(1e-12));
        CHECK(r.fr.value == doctest::Approx(s.fr_B).epsilon(1e-12));
    }
}

TEST_CASE("grouped selection against direct stage sums") {
    for (double eps : {0.0, 0.01, 0.02}) {
        for (int K : {1, 2, 3, 5, 6, 10, 15, 30}) {
            const SystemParams p = bprime(K, eps);
            const double beta = bprime_threshold(p);
            const AnalyticReport r = analytic_Bprime(p);
            const auto [tl, fr] = bprime_oracle(30, K, beta);
            INFO("K=" << K << " eps=" << eps);
            if (std::isinf(beta)) {
                CHECK(r.outage.value == 1.0);
                CHECK(r.tl.value == 30.0);
            } else {
                CHECK(r.outage.value == doctest::Approx(std::pow(1.0 - std::exp(-beta), 30)).epsilon(1e-12));
                CHECK(r.tl.value == doctest::Approx(tl).epsilon(1e-10));
                CHECK(r.fr.value == doctest::Approx(fr).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("grouped selection optima over divisors of 30") {
    struct Expect {
        double eps;
        int tl_argmin;
        int fr_argmin;
    };
    for (const Expect e : {Expect{0.01, 2, 3}, Expect{0.02, 3, 6}}) {
        int best_tl = 0, best_fr = 0;
        double min_tl = INFINITY, min_fr = INFINITY;
        for (int K = 1; K <= 30; ++K) {
            if (30 % K != 0) continue;
            const AnalyticReport r = analytic_Bprime(bprime(K, e.eps));
            if (r.tl.value < min_tl) min_tl = r.tl.value, best_tl = K;
            if (r.fr.value < min_fr) min_fr = r.fr.value, best_fr = K;
        }
        CHECK(best_tl == e.tl_argmin);
        CHECK(best_fr == e.fr_argmin);
    }
}

TEST_CASE("infinite threshold charges every group") {
    SystemParams p = bprime(1, 0.05);
    const AnalyticReport r = analytic_Bprime(p);
    CHECK(r.outage.value == 1.0);
    CHECK(r.tl.value == 30.0);
    CHECK(r.fr.value == 30.0);
    p.group_size = 31;
    CHECK_THROWS_AS(analytic_Bprime(p), std::invalid_argument);
}

}

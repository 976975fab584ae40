#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ilfb/channel_model.hpp"
#include "ilfb/schemes.hpp"

namespace ilfb {

/// A closed-form quantity. Bounds carry their direction; `infinite` marks an
/// unbounded rate and never holds a numeric stand-in.
struct Quantity {
    enum class Kind { exact, upper_bound, lower_bound, infinite };
    Kind kind = Kind::exact;
    double value = 0.0;

    static Quantity exact(double v) { return {Kind::exact, v}; }
    static Quantity upper(double v) { return {Kind::upper_bound, v}; }
    static Quantity lower(double v) { return {Kind::lower_bound, v}; }
    static Quantity infinite() { return {Kind::infinite, 0.0}; }

    bool is_exact() const { return kind == Kind::exact; }
    bool is_infinite() const { return kind == Kind::infinite; }
};

enum class Validity { exact, upper_bound, lower_bound, asymptotic, approximate };
std::string_view to_string(Validity v);

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

struct AnalyticReport {
    Quantity outage;
    Quantity tl;
    Quantity fr;
    /// Weakest statement among the three quantities.
    Validity validity = Validity::exact;
    /// Bracketing of the full-CSI outage, alpha^t e^{-alpha}/t! .. alpha^t/t!.
    std::optional<Interval> outage_sandwich;
    /// Growth-order label of the open-loop outage in t.
    std::string asymptotic;
};

/// Both selection schemes share one outage; A trains t antennas and sends
/// ceil(log2 t) bits, B's training length equals its feedback rate.
struct SelectionReport {
    double outage = 0.0;
    double tl_B = 0.0;
    double fr_B = 0.0;
    int tl_A = 0;
    int fr_A = 0;
};

SelectionReport analytic_A_B(int t, double alpha);
AnalyticReport analytic_F(int t, double alpha);
AnalyticReport analytic_G(int t, double alpha);
AnalyticReport analytic_Bprime(const SystemParams& params);

struct TheoremTwoBounds {
    double tl = 0.0;
    double fr = 0.0;
};
/// (1 + alpha, 92 (1 + alpha^3)).
TheoremTwoBounds theorem2_bounds(double alpha);

/// Probability that D stops exactly at stage i: alpha^{i-1} e^{-alpha} / (i-1)!.
double appendixB_stage_prob(double alpha, int i);
/// Exact mean antennas trained by D: sum_i i P(A_i) + t P(all stages fail).
double d_training_length(int t, double alpha);

/// Closed forms for any scheme, as far as they exist. D's feedback rate is
/// the Theorem 2 upper bound; C's is the 6t P(||h||^2 > alpha) lower bound.
AnalyticReport analytic_report(SchemeId id, const SystemParams& params);

}  // namespace ilfb

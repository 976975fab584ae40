#include "ilfb/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ilfb/analytics.hpp"
#include "ilfb/quantizer.hpp"

namespace ilfb::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

double parse_double(std::string_view key, std::string_view text) {
    const std::string s(trim(text));
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError(std::string(key) + ": not a number: '" + s + "'");
    }
    if (used != s.size() || s.empty()) throw ConfigError(std::string(key) + ": not a number: '" + s + "'");
    return v;
}

std::uint64_t parse_u64(std::string_view key, std::string_view text) {
    const std::string s(trim(text));
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        // Allow scientific notation for trial counts such as 1e6.
        const double d = parse_double(key, s);
        if (!(d >= 0.0) || d != std::floor(d) || d > 1.8e19)
            throw ConfigError(std::string(key) + ": not a nonnegative integer: '" + s + "'");
        return static_cast<std::uint64_t>(d);
    }
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw ConfigError(std::string(key) + ": integer out of range: '" + s + "'");
    }
}

int parse_int(std::string_view key, std::string_view text) {
    const std::uint64_t v = parse_u64(key, text);
    if (v > 1000000000ULL) throw ConfigError(std::string(key) + ": value too large");
    return static_cast<int>(v);
}

std::string scheme_label(SchemeId id, QuantizerMode mode) {
    std::string s(to_string(id));
    if (id == SchemeId::D && mode == QuantizerMode::variable) s += "-var";
    return s;
}

std::string companion(const Quantity& q, Validity validity) {
    switch (q.kind) {
        case Quantity::Kind::infinite: return "inf";
        case Quantity::Kind::upper_bound: return "<=" + format_number(q.value);
        case Quantity::Kind::lower_bound: return ">=" + format_number(q.value);
        case Quantity::Kind::exact: break;
    }
    return (validity == Validity::approximate ? "~" : "") + format_number(q.value);
}

std::vector<double> axis_points(const ExperimentConfig& c) {
    if (!c.axis) return {std::nan("")};
    return c.values;
}

void add_param_cells(std::vector<Cell>& row, const SystemParams& p) {
    row.emplace_back(static_cast<std::int64_t>(p.t));
    row.emplace_back(static_cast<std::int64_t>(p.group_size));
    row.emplace_back(p.alpha);
    row.emplace_back(p.power);
    row.emplace_back(p.epsilon);
}

bool uses_variable_mode(const ExperimentConfig& c) {
    return c.quantizer == QuantizerMode::variable &&
           std::find(c.schemes.begin(), c.schemes.end(), SchemeId::D) != c.schemes.end();
}

const char* kTwoPassNote =
    "codebook: D-var resolutions are Huffman coded with a code built from trials/10 extra trials on a separate "
    "seed stream; cost per real dimension = codeword + 1 sign bit + (l+2) fraction bits";

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void ExperimentConfig::validate(std::vector<std::string>* warnings) const {
    if (schemes.empty()) throw ConfigError("no scheme selected");
    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (axis && values.empty()) throw ConfigError("an axis needs at least one value");
    if (!axis && !values.empty()) throw ConfigError("values given without an axis");
    std::vector<SystemParams> points;
    if (axis) {
        for (double v : values) {
            try {
                points.push_back(with_axis(params, *axis, v));
                points.back().validate();
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("axis value ") + format_number(v) + ": " + e.what());
            }
        }
    } else {
        points.push_back(params);
    }
    if (warnings && std::find(schemes.begin(), schemes.end(), SchemeId::B_prime) != schemes.end()) {
        for (const auto& p : points) {
            if (p.t % p.group_size != 0)
                warnings->push_back("K=" + std::to_string(p.group_size) + " does not divide t=" + std::to_string(p.t) +
                                    "; grouped-selection closed forms are approximate");
        }
    }
}

std::vector<double> parse_values(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw ConfigError("values: empty list");
    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ':');
        if (parts.size() < 2 || parts.size() > 3) throw ConfigError("values: range must be a:b or a:b:step");
        const double a = parse_double("values", parts[0]);
        const double b = parse_double("values", parts[1]);
        const double step = parts.size() == 3 ? parse_double("values", parts[2]) : 1.0;
        if (!(step > 0.0)) throw ConfigError("values: range step must be positive");
        if (b < a) throw ConfigError("values: range end precedes its start");
        const auto n = static_cast<std::int64_t>(std::floor((b - a) / step + 1e-9));
        if (n > 1000000) throw ConfigError("values: range too long");
        for (std::int64_t i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * step);
        return out;
    }
    for (auto part : split(text, ',')) out.push_back(parse_double("values", part));
    return out;
}

std::vector<SchemeId> parse_scheme_list(std::string_view text) {
    std::vector<SchemeId> out;
    for (auto part : split(text, ',')) {
        const auto id = parse_scheme(part);
        if (!id) throw ConfigError("unknown scheme '" + std::string(part) + "' (expected F, G, A, B, Bu, C, D, Bp)");
        out.push_back(*id);
    }
    return out;
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    if (key == "scheme" || key == "schemes") {
        c.schemes = parse_scheme_list(value);
    } else if (key == "t") {
        c.params.t = parse_int(key, value);
    } else if (key == "alpha") {
        c.params.alpha = parse_double(key, value);
    } else if (key == "power" || key == "P") {
        c.params.power = parse_double(key, value);
    } else if (key == "epsilon") {
        c.params.epsilon = parse_double(key, value);
    } else if (key == "group-size" || key == "K") {
        c.params.group_size = parse_int(key, value);
    } else if (key == "delta") {
        c.params.delta = parse_int(key, value);
    } else if (key == "trials") {
        c.params.trials = parse_u64(key, value);
    } else if (key == "seed") {
        c.params.seed = parse_u64(key, value);
    } else if (key == "quantizer") {
        const auto q = parse_quantizer(value);
        if (!q) throw ConfigError("quantizer must be 'fixed' or 'variable'");
        c.quantizer = *q;
    } else if (key == "axis") {
        if (value == "none" || value.empty()) {
            c.axis.reset();
        } else {
            const auto a = parse_axis(value);
            if (!a) throw ConfigError("unknown axis '" + std::string(value) + "' (expected t, K, alpha, P, epsilon)");
            c.axis = *a;
        }
    } else if (key == "values") {
        c.values = parse_values(value);
    } else if (key == "out") {
        c.out = std::string(value);
    } else if (key == "format") {
        if (value == "csv") {
            c.format = Format::csv;
        } else if (value == "json") {
            c.format = Format::json;
        } else {
            throw ConfigError("format must be 'csv' or 'json'");
        }
    } else {
        throw ConfigError("unknown configuration key '" + std::string(key) + "'");
    }
}

void apply_config_text(ExperimentConfig& config, std::string_view text) {
    int line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        try {
            apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void apply_config_file(ExperimentConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    apply_config_text(config, ss.str());
}

void Table::write_csv(std::ostream& os) const {
    for (const auto& c : comments) os << "# " << c << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            std::visit(
                [&](const auto& v) {
                    using V = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<V, std::string>) {
                        os << v;
                    } else if constexpr (std::is_same_v<V, double>) {
                        os << (std::isnan(v) ? std::string() : format_number(v));
                    } else {
                        os << v;
                    }
                },
                row[i]);
        }
        os << '\n';
    }
}

void Table::write_json(std::ostream& os) const {
    nlohmann::ordered_json doc;
    doc["meta"] = comments;
    doc["columns"] = columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < columns.size(); ++i) {
            std::visit(
                [&](const auto& v) {
                    using V = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<V, double>) {
                        if (std::isnan(v)) {
                            obj[columns[i]] = nullptr;
                        } else if (std::isinf(v)) {
                            obj[columns[i]] = format_number(v);
                        } else {
                            obj[columns[i]] = v;
                        }
                    } else {
                        obj[columns[i]] = v;
                    }
                },
                row[i]);
        }
        doc["rows"].push_back(std::move(obj));
    }
    os << doc.dump(2) << '\n';
}

void Table::write(std::ostream& os, Format format) const {
    if (format == Format::json) {
        write_json(os);
    } else {
        write_csv(os);
    }
}

std::string describe(const ExperimentConfig& c) {
    std::ostringstream s;
    s << "schemes=";
    for (std::size_t i = 0; i < c.schemes.size(); ++i) s << (i ? "," : "") << to_string(c.schemes[i]);
    const auto& p = c.params;
    s << " t=" << p.t << " K=" << p.group_size << " alpha=" << format_number(p.alpha)
      << " P=" << format_number(p.power) << " epsilon=" << format_number(p.epsilon) << " delta=" << p.delta
      << " trials=" << p.trials << " seed=" << p.seed << " quantizer=" << to_string(c.quantizer);
    if (c.axis) {
        s << " axis=" << to_string(*c.axis) << " values=";
        for (std::size_t i = 0; i < c.values.size(); ++i) s << (i ? "," : "") << format_number(c.values[i]);
    }
    return s.str();
}

namespace {

const std::vector<std::string> kAnalyticColumns{"scheme", "t", "K", "alpha", "P", "epsilon",
                                                "outage", "tl", "fr", "validity"};
const std::vector<std::string> kSimulateColumns{
    "scheme",         "axis",        "axis_value",  "outage_est", "outage_se", "tl_est", "tl_se",
    "fr_est",         "fr_se",       "analytic_outage", "analytic_tl", "analytic_fr", "trials", "seed",
    "t",              "K",           "alpha",       "P",          "epsilon"};

void append_analytic_rows(Table& table, const ExperimentConfig& c) {
    for (SchemeId id : c.schemes) {
        for (double v : axis_points(c)) {
            const SystemParams p = c.axis ? with_axis(c.params, *c.axis, v) : c.params;
            const AnalyticReport r = analytic_report(id, p);
            std::vector<Cell> row{std::string(to_string(id))};
            add_param_cells(row, p);
            row.emplace_back(r.outage.value);
            row.emplace_back(r.tl.value);
            row.emplace_back(r.fr.is_infinite() ? std::numeric_limits<double>::infinity() : r.fr.value);
            row.emplace_back(std::string(to_string(r.validity)));
            table.rows.push_back(std::move(row));
        }
    }
}

// One row per (scheme, point); every scheme sees the same channels at a point.
void append_simulate_rows(Table& table, const ExperimentConfig& c, bool per_antenna) {
    const auto points = axis_points(c);
    for (SchemeId id : c.schemes) {
        const SchemeSpec spec{id, id == SchemeId::D ? c.quantizer : QuantizerMode::fixed};
        for (std::size_t j = 0; j < points.size(); ++j) {
            SystemParams p = c.params;
            if (c.axis) {
                p = with_axis(c.params, *c.axis, points[j]);
                p.seed = mix_seed(c.params.seed, j);
            }
            const EstimateTriple e = estimate(spec, p);
            const AnalyticReport r = analytic_report(id, p);
            const double scale = per_antenna ? 1.0 / p.t : 1.0;

            std::vector<Cell> row{scheme_label(id, spec.mode)};
            row.emplace_back(std::string(c.axis ? to_string(*c.axis) : "none"));
            row.emplace_back(points[j]);
            row.emplace_back(e.outage_mean);
            row.emplace_back(e.outage_se);
            row.emplace_back(e.tl_mean);
            row.emplace_back(e.tl_se);
            row.emplace_back(e.fr_mean * scale);
            row.emplace_back(e.fr_se * scale);
            row.emplace_back(companion(r.outage, r.validity));
            row.emplace_back(companion(r.tl, r.validity));
            if (id == SchemeId::D && spec.mode == QuantizerMode::variable) {
                row.emplace_back(std::string());
            } else {
                Quantity fr = r.fr;
                fr.value *= scale;
                row.emplace_back(companion(fr, r.validity));
            }
            row.emplace_back(static_cast<std::int64_t>(e.trials));
            row.emplace_back(std::to_string(e.seed));
            add_param_cells(row, p);
            table.rows.push_back(std::move(row));
        }
    }
}

}  // namespace

Table cmd_analytic(const ExperimentConfig& config) {
    std::vector<std::string> warnings;
    config.validate(&warnings);
    Table table;
    table.comments.push_back("ilfb analytic");
    table.comments.push_back("config: " + describe(config));
    for (const auto& w : warnings) table.comments.push_back("warning: " + w);
    table.columns = kAnalyticColumns;
    append_analytic_rows(table, config);
    return table;
}

Table cmd_simulate(const ExperimentConfig& config) {
    std::vector<std::string> warnings;
    config.validate(&warnings);
    Table table;
    table.comments.push_back("ilfb simulate");
    table.comments.push_back("config: " + describe(config));
    for (const auto& w : warnings) table.comments.push_back("warning: " + w);
    if (uses_variable_mode(config)) table.comments.push_back(kTwoPassNote);
    table.columns = kSimulateColumns;
    append_simulate_rows(table, config, false);
    return table;
}

const std::vector<std::string_view> kFigureNames{"fig2", "fig5", "fig6",  "fig7", "fig8",
                                                 "fig9", "fig10", "fig11", "fig12"};

namespace {

struct FigureJob {
    ExperimentConfig config;
    std::uint64_t stream = 0;  ///< jobs sharing a stream share channel draws
};

std::vector<double> range(int a, int b) {
    std::vector<double> v;
    for (int i = a; i <= b; ++i) v.push_back(i);
    return v;
}

std::vector<FigureJob> figure_jobs(std::string_view name, const ExperimentConfig& base) {
    auto job = [&](std::vector<SchemeId> schemes, double alpha, Axis axis, std::vector<double> values,
                   std::uint64_t stream) {
        FigureJob j;
        j.config.schemes = std::move(schemes);
        j.config.params.alpha = alpha;
        j.config.params.trials = base.params.trials;
        j.config.params.delta = base.params.delta;
        j.config.axis = axis;
        j.config.values = std::move(values);
        j.stream = stream;
        return j;
    };
    std::vector<FigureJob> jobs;
    using S = SchemeId;
    if (name == "fig2") {
        for (double a : {0.5, 2.0}) jobs.push_back(job({S::F, S::G, S::A}, a, Axis::t, range(1, 100), 0));
    } else if (name == "fig5") {
        jobs.push_back(job({S::F, S::G, S::A, S::B}, 1.0, Axis::t, range(1, 30), 0));
    } else if (name == "fig6") {
        jobs.push_back(job({S::F, S::A, S::B, S::B_unary}, 1.0, Axis::t, range(1, 30), 0));
    } else if (name == "fig7" || name == "fig8" || name == "fig9") {
        std::uint64_t stream = 0;
        for (double a : {0.5, 1.0}) {
            std::vector<SchemeId> fixed_set{S::D};
            if (name == "fig7") fixed_set = {S::F, S::A, S::B, S::D};
            jobs.push_back(job(fixed_set, a, Axis::t, range(1, 30), stream));
            jobs.push_back(job({S::D}, a, Axis::t, range(1, 30), stream));
            jobs.back().config.quantizer = QuantizerMode::variable;
            ++stream;
        }
    } else if (name == "fig10" || name == "fig11" || name == "fig12") {
        std::uint64_t stream = 0;
        for (double eps : {0.01, 0.02}) {
            FigureJob j = job({S::B_prime}, 1.0, Axis::K, range(1, 30), stream++);
            j.config.params.t = 30;
            j.config.params.power = 1.0;
            j.config.params.epsilon = eps;
            jobs.push_back(std::move(j));
        }
    } else {
        throw ConfigError("unknown figure '" + std::string(name) + "'");
    }
    for (auto& j : jobs) {
        j.config.params.seed = mix_seed(base.params.seed, 0x6669670000ULL + j.stream);
        if (j.config.axis == Axis::t) j.config.params.group_size = 1;
    }
    return jobs;
}

}  // namespace

Table cmd_figure(std::string_view name, const ExperimentConfig& base) {
    const bool analytic_only = name == "fig2";
    const bool per_antenna = name == "fig9";
    const std::vector<FigureJob> jobs = figure_jobs(name, base);
    Table table;
    table.comments.push_back("ilfb figure " + std::string(name));
    table.comments.push_back("base seed=" + std::to_string(base.params.seed) +
                             " trials=" + std::to_string(base.params.trials));
    if (per_antenna) table.comments.push_back("fr columns are divided by t (feedback bits per antenna)");
    bool variable = false;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        std::vector<std::string> warnings;
        jobs[i].config.validate(&warnings);
        table.comments.push_back("job " + std::to_string(i + 1) + ": " + describe(jobs[i].config));
        for (const auto& w : warnings) table.comments.push_back("warning: " + w);
        variable = variable || uses_variable_mode(jobs[i].config);
    }
    if (variable) table.comments.push_back(kTwoPassNote);
    table.columns = analytic_only ? kAnalyticColumns : kSimulateColumns;
    for (const auto& j : jobs) {
        if (analytic_only) {
            append_analytic_rows(table, j.config);
        } else {
            append_simulate_rows(table, j.config, per_antenna);
        }
    }
    return table;
}

namespace {

BitString transmit(BitString bits, bool flip) {
    if (flip && bits.size() > 1) bits.flip(1);
    return bits;
}

CheckResult check(std::string name, bool ok, std::string detail) {
    return {std::move(name), ok, std::move(detail)};
}

bool within(double est, double se, double oracle, double k = 4.0) {
    return std::abs(est - oracle) <= k * se + 1e-12;
}

std::string triple(double est, double se, double oracle) {
    return "est=" + format_number(est) + " se=" + format_number(se) + " oracle=" + format_number(oracle);
}

}  // namespace

std::vector<CheckResult> cmd_selftest(const SelftestOptions& o) {
    std::vector<CheckResult> results;
    const std::uint64_t n = std::max<std::uint64_t>(o.trials, 1000);

    // Quantized beamformer gain after a round trip through the wire format.
    {
        Rng rng(mix_seed(o.seed, 1));
        std::uint64_t violations = 0;
        std::string first;
        for (std::uint64_t trial = 0; trial < n; ++trial) {
            const int k = 1 + static_cast<int>(rng() % 16);
            const ChannelState h = sample_channel(k, rng);
            const double alpha = h.norm2() * uniform_open0(rng) * (1.0 - 1e-9);
            if (!(alpha > 0.0)) continue;
            bool ok = false;
            try {
                const CkResult c = run_Ck(h.coeffs(), alpha);
                const QuantizedBeamformer q = decode_beamformer(
                    transmit(c.bits, o.inject_bit_flip), static_cast<std::size_t>(k), c.resolution);
                ok = beamforming_gain(q.vector, h.coeffs()) > alpha;
            } catch (const std::exception&) {
                ok = false;
            }
            if (!ok && violations++ == 0) first = "k=" + std::to_string(k) + " alpha=" + format_number(alpha);
        }
        results.push_back(check("quantized_gain_exceeds_alpha", violations == 0,
                                std::to_string(violations) + " violations in " + std::to_string(n) +
                                    (first.empty() ? "" : " (first: " + first + ")")));
    }

    // Fixed-rate codec identity and length.
    {
        Rng rng(mix_seed(o.seed, 2));
        std::uint64_t failures = 0;
        const std::uint64_t cases = n / 10;
        for (std::uint64_t trial = 0; trial < cases; ++trial) {
            const int dim = 1 + static_cast<int>(rng() % 8);
            const int ell = static_cast<int>(rng() % 21);
            const ChannelState h = sample_channel(dim, rng);
            std::vector<Complex> x = unit_direction(h.coeffs());
            const double scale = uniform_open0(rng);
            for (auto& c : x) c *= scale;
            const QuantizedBeamformer q = deadzone_vector(x, ell);
            try {
                const BitString bits = transmit(encode_beamformer(q, ell), o.inject_bit_flip);
                const bool len_ok = bits.size() == 2ULL * static_cast<std::uint64_t>(dim) * (ell + 3);
                const QuantizedBeamformer back = decode_beamformer(bits, static_cast<std::size_t>(dim), ell);
                if (!len_ok || back.vector != q.vector) ++failures;
            } catch (const std::exception&) {
                ++failures;
            }
        }
        results.push_back(check("codec_round_trip", failures == 0,
                                std::to_string(failures) + " failures in " + std::to_string(cases)));
    }

    // Variable-rate codec identity with a shared resolution code.
    {
        SystemParams p;
        p.t = 8;
        p.alpha = 1.0;
        p.trials = std::max<std::uint64_t>(n / 10, 100);
        p.seed = mix_seed(o.seed, 3);
        const HuffmanCode code = build_resolution_code(p);
        Rng rng(mix_seed(o.seed, 4));
        std::uint64_t failures = 0;
        std::uint64_t cases = 0;
        for (std::uint64_t trial = 0; trial < n / 10; ++trial) {
            const ChannelState h = sample_channel(p.t, rng);
            const auto stop = d_stop_stage(h, p.alpha);
            if (!stop) continue;
            ++cases;
            const auto hk = h.prefix(static_cast<std::size_t>(*stop));
            const RateAllocation a = variable_rate_quantize(hk, p.alpha);
            try {
                const BitString bits = encode_variable_beamformer(a.beamformer.vector, a.resolutions, code);
                ResolutionMatrix ell;
                const auto back = decode_variable_beamformer(bits, hk.size(), code, ell);
                if (back != a.beamformer.vector || !(ell == a.resolutions) ||
                    bits.size() != variable_rate_cost(a.resolutions, code) || a.gain < p.alpha)
                    ++failures;
            } catch (const std::exception&) {
                ++failures;
            }
        }
        results.push_back(check("variable_codec_round_trip", failures == 0,
                                std::to_string(failures) + " failures in " + std::to_string(cases)));
    }

    // Monte Carlo against closed forms.
    {
        SystemParams p;
        p.t = 10;
        p.alpha = 1.0;
        p.trials = n;
        p.seed = mix_seed(o.seed, 5);
        const EstimateTriple e = estimate({SchemeId::B, QuantizerMode::fixed}, p);
        const SelectionReport r = analytic_A_B(p.t, p.alpha);
        const bool ok = within(e.outage_mean, e.outage_se, r.outage) && within(e.tl_mean, e.tl_se, r.tl_B) &&
                        within(e.fr_mean, e.fr_se, r.fr_B);
        results.push_back(check("interleaved_selection_oracle", ok, triple(e.fr_mean, e.fr_se, r.fr_B)));
    }
    {
        SystemParams p;
        p.t = 5;
        p.alpha = 1.0;
        p.trials = n;
        p.seed = mix_seed(o.seed, 6);
        const EstimateTriple e = estimate({SchemeId::D, QuantizerMode::fixed}, p);
        const double out = gamma_tail(p.t, p.alpha);
        const double tl = d_training_length(p.t, p.alpha);
        const bool ok = within(e.outage_mean, e.outage_se, out) && within(e.tl_mean, e.tl_se, tl) &&
                        e.fr_mean <= theorem2_bounds(p.alpha).fr;
        results.push_back(check("interleaved_beamforming_oracle", ok, triple(e.tl_mean, e.tl_se, tl)));
    }
    {
        SystemParams p;
        p.t = 30;
        p.alpha = 1.0;
        p.power = 1.0;
        p.epsilon = 0.01;
        p.group_size = 3;
        p.trials = n;
        p.seed = mix_seed(o.seed, 7);
        const EstimateTriple e = estimate({SchemeId::B_prime, QuantizerMode::fixed}, p);
        const AnalyticReport r = analytic_Bprime(p);
        const bool ok = within(e.outage_mean, e.outage_se, r.outage.value) &&
                        within(e.tl_mean, e.tl_se, r.tl.value) && within(e.fr_mean, e.fr_se, r.fr.value);
        results.push_back(check("grouped_selection_oracle", ok, triple(e.tl_mean, e.tl_se, r.tl.value)));
    }

    // Exact identities.
    {
        bool ok = true;
        for (double a : {0.5, 1.0, 2.0}) {
            for (int t = 1; t <= 30; ++t) {
                const auto s = analytic_F(t, a).outage_sandwich.value();
                const double g = gamma_tail(t, a);
                ok = ok && s.lower <= g + 1e-12 && g <= s.upper + 1e-12;
                double total = gamma_tail(t, a);
                for (int i = 1; i <= t; ++i) total += appendixB_stage_prob(a, i);
                ok = ok && std::abs(total - 1.0) <= 1e-12;
            }
        }
        results.push_back(check("closed_form_identities", ok, "sandwich and stage partition for t<=30"));
    }

    // The parallel engine reproduces the serial reference exactly.
    {
        SystemParams p;
        p.t = 12;
        p.alpha = 1.0;
        p.trials = n / 4 + 7;
        p.seed = mix_seed(o.seed, 8);
        const SchemeSpec spec{SchemeId::D, QuantizerMode::fixed};
        const bool ok = accumulate(spec, p, p.trials, p.seed) == accumulate_serial(spec, p, p.trials, p.seed);
        results.push_back(check("parallel_matches_serial", ok, std::to_string(p.trials) + " trials"));
    }
    return results;
}

}  // namespace ilfb::cli

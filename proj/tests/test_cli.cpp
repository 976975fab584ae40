#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <sstream>

#include "ilfb/cli.hpp"

using namespace ilfb;
using namespace ilfb::cli;

namespace {

std::string csv(const Table& t) {
    std::ostringstream os;
    t.write_csv(os);
    return os.str();
}

std::size_t column(const Table& t, const std::string& name) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i] == name) return i;
    FAIL("missing column " << name);
    return 0;
}

double number(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
    FAIL("cell is not numeric");
    return 0.0;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config text sets every key and ignores comments") {
    ExperimentConfig c;
    apply_config_text(c,
                      "# experiment\n"
                      "scheme = A,B,D   # three schemes\n"
                      "t = 12\nalpha=0.5\nP = 2\nepsilon = 0.01\nK = 3\ndelta = 2\n"
                      "trials = 5000\nseed = 99\nquantizer = variable\naxis = alpha\nvalues = 0.5:1.5:0.5\n"
                      "format = json\nout = result.json\n\n");
    CHECK(c.schemes == std::vector<SchemeId>{SchemeId::A, SchemeId::B, SchemeId::D});
    CHECK(c.params.t == 12);
    CHECK(c.params.alpha == 0.5);
    CHECK(c.params.power == 2.0);
    CHECK(c.params.group_size == 3);
    CHECK(c.params.delta == 2);
    CHECK(c.params.trials == 5000);
    CHECK(c.params.seed == 99);
    CHECK(c.quantizer == QuantizerMode::variable);
    CHECK(c.axis == Axis::alpha);
    CHECK(c.values == std::vector<double>{0.5, 1.0, 1.5});
    CHECK(c.format == Format::json);
    CHECK(c.out == "result.json");
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("config errors name the problem") {
    ExperimentConfig c;
    CHECK_THROWS_AS(apply_config_text(c, "t 3"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(c, "colour = red"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "t", "3.5"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "t", "-1"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "alpha", "one"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "scheme", "B,Z"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "quantizer", "huffman"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "axis", "rate"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "format", "xml"), ConfigError);
    CHECK_THROWS_AS(apply_config_file(c, "/nonexistent/ilfb.cfg"), ConfigError);
    try {
        apply_config_text(c, "t = 2\nbogus = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("validation catches bad parameter combinations") {
    ExperimentConfig c;
    c.params.t = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.values = {1, 2};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.axis = Axis::t;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.values = {2, 0};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.schemes = {SchemeId::B_prime};
    c.params.t = 7;
    c.params.group_size = 3;
    std::vector<std::string> warnings;
    CHECK_NOTHROW(c.validate(&warnings));
    CHECK(warnings.size() == 1);
}

TEST_CASE("value lists") {
    CHECK(parse_values("1:4") == std::vector<double>{1, 2, 3, 4});
    CHECK(parse_values("0.1, 0.2") == std::vector<double>{0.1, 0.2});
    CHECK(parse_values("5") == std::vector<double>{5});
    CHECK_THROWS_AS(parse_values("4:1"), ConfigError);
    CHECK_THROWS_AS(parse_values("1:2:0"), ConfigError);
    CHECK_THROWS_AS(parse_values(""), ConfigError);
    CHECK_THROWS_AS(parse_values("1:2:3:4"), ConfigError);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(INFINITY) == "inf");
    CHECK(format_number(NAN) == "nan");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("CSV and JSON writers") {
    Table t;
    t.comments = {"hello"};
    t.columns = {"name", "x", "n"};
    t.rows.push_back({std::string("a"), 0.25, std::int64_t{3}});
    t.rows.push_back({std::string("b"), static_cast<double>(INFINITY), std::int64_t{-1}});
    t.rows.push_back({std::string("c"), static_cast<double>(NAN), std::int64_t{0}});
    CHECK(csv(t) == "# hello\nname,x,n\na,0.25,3\nb,inf,-1\nc,,0\n");

    std::ostringstream os;
    t.write_json(os);
    const auto j = nlohmann::json::parse(os.str());
    CHECK(j["meta"][0] == "hello");
    CHECK(j["columns"].size() == 3);
    CHECK(j["rows"][0]["x"] == 0.25);
    CHECK(j["rows"][1]["x"] == "inf");
    CHECK(j["rows"][2]["n"] == 0);
}

TEST_CASE("analytic command") {
    ExperimentConfig c;
    c.schemes = {SchemeId::B, SchemeId::D, SchemeId::F};
    c.params.t = 10;
    const Table t = cmd_analytic(c);
    REQUIRE(t.rows.size() == 3);
    const std::size_t out = column(t, "outage"), tl = column(t, "tl"), val = column(t, "validity");
    CHECK(number(t.rows[0][out]) == doctest::Approx(std::pow(1 - std::exp(-1.0), 10)));
    CHECK(std::get<std::string>(t.rows[1][val]) == "upper-bound");
    CHECK(number(t.rows[1][tl]) <= 2.0);
    CHECK(std::isinf(number(t.rows[2][column(t, "fr")])));
}

TEST_CASE("simulate command layout and reproducibility") {
    ExperimentConfig c;
    c.schemes = {SchemeId::B, SchemeId::D};
    c.quantizer = QuantizerMode::variable;
    c.params.t = 6;
    c.params.trials = 4000;
    c.params.seed = 8;
    c.axis = Axis::alpha;
    c.values = {0.5, 1.0};
    const Table t = cmd_simulate(c);
    REQUIRE(t.rows.size() == 4);
    const std::vector<std::string> head{"scheme", "axis", "axis_value", "outage_est", "outage_se", "tl_est",
                                        "tl_se", "fr_est", "fr_se"};
    for (std::size_t i = 0; i < head.size(); ++i) CHECK(t.columns[i] == head[i]);
    CHECK(std::get<std::string>(t.rows[0][0]) == "B");
    CHECK(std::get<std::string>(t.rows[2][0]) == "D-var");
    CHECK(std::get<std::string>(t.rows[2][column(t, "analytic_fr")]).empty());
    CHECK(std::get<std::string>(t.rows[3][column(t, "analytic_tl")]).empty() == false);
    CHECK(csv(cmd_simulate(c)) == csv(t));
}

TEST_CASE("figure presets") {
    ExperimentConfig base;
    base.params.trials = 600;
    base.params.seed = 4;
    CHECK_THROWS_AS(cmd_figure("fig99", base), ConfigError);
    for (auto name : kFigureNames) {
        const Table t = cmd_figure(name, base);
        CHECK_FALSE(t.rows.empty());
        CHECK(csv(cmd_figure(name, base)) == csv(t));
    }
}

TEST_CASE("selftest passes and catches an injected bit flip") {
    SelftestOptions o;
    o.trials = 5000;
    for (const auto& r : cmd_selftest(o)) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.passed);
    }
    o.inject_bit_flip = true;
    int failed = 0;
    for (const auto& r : cmd_selftest(o)) failed += !r.passed;
    CHECK(failed > 0);
}

}

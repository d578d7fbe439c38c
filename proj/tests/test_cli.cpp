#include <doctest.h>

#include "support.hpp"

#include <sstream>

#include "homqed/analytic.hpp"
#include "homqed/cli.hpp"

using namespace homqed;
using namespace homqed::cli;

namespace {

double cell(const Table& t, std::size_t row, const std::string& column) {
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        if (t.columns[c] == column) return t.rows.at(row).at(c).get<double>();
    FAIL("missing column " << column);
    return 0.0;
}

}  // namespace

TEST_CASE("ranges") {
    const Range r = parse_range("2:20", 4, false);
    CHECK(r.values() == std::vector<double>{2.0, 8.0, 14.0, 20.0});
    const std::vector<double> l = parse_range("1:100", 3, true).values();
    CHECK(l[1] == rel(10.0));
    CHECK_THROWS_AS(parse_range("2:2", 5, false), UsageError);
    CHECK_THROWS_AS(parse_range("2", 5, false), UsageError);
    CHECK_THROWS_AS(parse_range("a:3", 5, false), UsageError);
    CHECK_THROWS_AS(parse_range("1:3", 1, false), UsageError);
    CHECK_THROWS_AS(parse_range("-1:3", 5, true), UsageError);
}

TEST_CASE("numbers print with 9 significant digits") {
    CHECK(format_number(1.0 / 3.0) == "0.333333333");
    CHECK(format_number(2.0) == "2");
    CHECK(format_number(1.23456789012e-7) == "1.23456789e-07");
}

TEST_CASE("point record for balanced HOM") {
    Settings s;
    s.geometry = "hom";
    s.gamma = 10.0;
    s.delay = 0.0;
    s.center = 10.0;
    const Report r = cmd_point(s);
    const Table& t = r.tables.at(0);
    CHECK(cell(t, 0, "p_hom_exact") == rel(0.0600360613, 1e-8));
    CHECK(cell(t, 0, "delta_p_hom_direct") == rel(0.0564189584, 1e-8));
    CHECK(cell(t, 0, "delta_p_hom_splitting") == rel(0.0282094792, 1e-8));
    CHECK(cell(t, 0, "unitarity_defect") < 1e-9);
    CHECK(cell(t, 0, "oracle_max_deviation") < 1e-4);
}

TEST_CASE("point record for the resonant link") {
    Settings s;
    s.geometry = "link";
    s.gamma = 10.0;
    s.oracle = false;
    const Table t = cmd_point(s).tables.at(0);
    CHECK(cell(t, 0, "center") == 0.0);
    CHECK(cell(t, 0, "zeta_bl") == rel(0.0282095, 1e-6));
    CHECK(cell(t, 0, "p_res_exact") > 0.0);
}

TEST_CASE("invalid parameters are usage errors") {
    Settings s;
    s.gamma = -1.0;
    CHECK_THROWS_AS(cmd_point(s), UsageError);
    Settings g;
    g.geometry = "mirror";
    CHECK_THROWS_AS(cmd_point(g), UsageError);
    Settings tol;
    tol.tol = 0.0;
    CHECK_THROWS_AS(cmd_point(tol), UsageError);
    Settings empty;
    empty.range = "3:3";
    CHECK_THROWS_AS(cmd_fig_hom(empty), UsageError);
}

TEST_CASE("fig-hom: exact curve decreases with Γ") {
    Settings s;
    s.range = "2:20";
    s.steps = 7;
    const Table t = cmd_fig_hom(s).tables.at(0);
    REQUIRE(t.columns == std::vector<std::string>{"Γ", "p_hom_exact", "p_hom_asymptotic", "rel_diff"});
    for (std::size_t i = 1; i < t.rows.size(); ++i)
        CHECK(cell(t, i, "p_hom_exact") < cell(t, i - 1, "p_hom_exact"));
    CHECK(cell(t, t.rows.size() - 1, "rel_diff") < 0.05);
}

TEST_CASE("fig-blockade: even in Δ, decaying, inset peak") {
    Settings s;
    s.range = "-2:2";
    s.steps = 9;
    s.inset_steps = 12;
    const Report r = cmd_fig_blockade(s);
    const Table& m = r.tables.at(0);
    const Table& in = r.tables.at(1);
    REQUIRE(m.columns == std::vector<std::string>{"Δ", "delta_p_res_exact", "ζ_bl"});
    REQUIRE(in.columns == std::vector<std::string>{"Γ", "p_res_total"});
    const std::size_t n = m.rows.size();
    for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(cell(m, i, "delta_p_res_exact") - cell(m, n - 1 - i, "delta_p_res_exact")) <
              1e-6);
    for (std::size_t i = n / 2 + 1; i < n; ++i)
        CHECK(cell(m, i, "delta_p_res_exact") < cell(m, i - 1, "delta_p_res_exact"));
    std::size_t best = 0;
    for (std::size_t i = 1; i < in.rows.size(); ++i)
        if (cell(in, i, "p_res_total") > cell(in, best, "p_res_total")) best = i;
    CHECK(cell(in, best, "Γ") >= 0.3);
    CHECK(cell(in, best, "Γ") <= 3.0);
}

TEST_CASE("sweep rows follow input order and outputs") {
    Settings s;
    s.variable = "delay";
    s.range = "0:2";
    s.steps = 3;
    s.outputs = {"table", "p_hom"};
    const Table t = run_sweep(sweep_spec(s), settings_options(s));
    REQUIRE(t.columns == std::vector<std::string>{"delay", "P11", "P12", "P21", "P22", "p_hom"});
    CHECK(cell(t, 0, "delay") == 0.0);
    CHECK(cell(t, 2, "delay") == 2.0);
    CHECK(cell(t, 2, "p_hom") > cell(t, 0, "p_hom"));

    s.outputs = {"p_res"};
    CHECK_THROWS_AS(sweep_spec(s), UsageError);
    s.outputs = {"bogus"};
    CHECK_THROWS_AS(sweep_spec(s), UsageError);
    Settings no_range;
    CHECK_THROWS_AS(sweep_spec(no_range), UsageError);
}

TEST_CASE("rendering is deterministic in both formats") {
    Settings s;
    s.variable = "gamma";
    s.range = "2:5";
    s.steps = 3;
    const Report a = cmd_sweep(s);
    const Report b = cmd_sweep(s);
    CHECK(render(a, Format::csv) == render(b, Format::csv));
    CHECK(render(a, Format::json) == render(b, Format::json));
    const auto doc = nlohmann::json::parse(render(a, Format::json));
    REQUIRE(doc.is_array());
    CHECK(doc.size() == 3);
    CHECK(doc[0]["gamma"] == 2.0);
}

TEST_CASE("parallel_map keeps order and rethrows") {
    const auto v = parallel_map<int>(50, [](std::size_t i) { return static_cast<int>(i * i); });
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i * i));
    CHECK_THROWS_AS(parallel_map<int>(5,
                                      [](std::size_t i) -> int {
                                          if (i == 3) throw std::runtime_error("x");
                                          return 0;
                                      }),
                    std::runtime_error);
}

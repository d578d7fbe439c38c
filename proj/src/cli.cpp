#include "homqed/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "homqed/analytic.hpp"
#include "homqed/oracle.hpp"

namespace homqed::cli {

using nlohmann::json;

namespace {

constexpr const char* kGamma = "Γ";
constexpr const char* kDelta = "Δ";

std::string antibunching_name(const ModelParams& p) {
    return p.same_input_channel() ? "p_res" : "p_hom";
}

ModelParams params_or_usage(double gamma, double delay, double center, Geometry g) {
    try {
        return make_params(gamma, delay, center, g);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

Geometry geometry_or_usage(const std::string& name) {
    try {
        return geometry_from_string(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

double default_center(Geometry g, double gamma) {
    return g == Geometry::hom_split ? gamma : 0.0;
}

ProbabilityTable table_for(const ModelParams& p, const TwoPhotonOptions& o) {
    return probability_table(make_pair_amplitude(p), p, o);
}

json report_json(const oracle::OracleReport& r) {
    return {{"quantity", r.quantity},
            {"geometry", std::string(to_string(r.geometry))},
            {"gamma", number(r.gamma)},
            {"delay", number(r.delay)},
            {"center", number(r.center)},
            {"oracle_value", number(r.oracle_value)},
            {"main_value", number(r.main_value)},
            {"abs_deviation", number(r.abs_deviation)},
            {"rel_deviation", number(r.rel_deviation)},
            {"tolerance", number(r.tolerance)},
            {"relative", r.relative},
            {"pass", r.pass}};
}

}  // namespace

std::vector<double> Range::values() const {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / (count - 1);
        v[i] = log ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                   : start + f * (stop - start);
    }
    v.front() = start;
    v.back() = stop;
    return v;
}

Range parse_range(const std::string& text, int count, bool log) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw UsageError("range must look like start:stop");
    Range r;
    try {
        std::size_t used = 0;
        const std::string a = text.substr(0, colon);
        const std::string b = text.substr(colon + 1);
        r.start = std::stod(a, &used);
        if (used != a.size()) throw UsageError("bad range start '" + a + "'");
        r.stop = std::stod(b, &used);
        if (used != b.size()) throw UsageError("bad range stop '" + b + "'");
    } catch (const std::logic_error&) {
        throw UsageError("range must look like start:stop, got '" + text + "'");
    }
    if (!std::isfinite(r.start) || !std::isfinite(r.stop) || r.start == r.stop)
        throw UsageError("range must have distinct finite endpoints");
    if (count < 2) throw UsageError("range needs at least 2 steps");
    if (log && !(r.start > 0.0 && r.stop > 0.0))
        throw UsageError("log spacing needs a positive range");
    r.count = count;
    r.log = log;
    return r;
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

json number(double x) {
    if (!std::isfinite(x)) return format_number(x);
    return std::stod(format_number(x));
}

void write_csv(std::ostream& os, const Table& table) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        os << (c ? "," : "") << table.columns[c];
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << (c ? "," : "");
            const json& cell = row[c];
            if (cell.is_number_float()) {
                os << format_number(cell.get<double>());
            } else if (cell.is_string()) {
                os << cell.get<std::string>();
            } else {
                os << cell.dump();
            }
        }
        os << '\n';
    }
}

json to_json(const Table& table) {
    json rows = json::array();
    for (const auto& row : table.rows) {
        json obj = json::object();
        for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = row[c];
        rows.push_back(std::move(obj));
    }
    return rows;
}

std::string render(const Report& report, Format format) {
    std::ostringstream os;
    if (format == Format::csv) {
        for (std::size_t i = 0; i < report.tables.size(); ++i) {
            if (i) os << '\n';
            write_csv(os, report.tables[i]);
        }
        return os.str();
    }
    json doc = json::object();
    if (report.tables.size() == 1 && report.extra.is_null()) {
        doc = to_json(report.tables.front());
    } else {
        for (const auto& t : report.tables) doc[t.name] = to_json(t);
        if (!report.extra.is_null()) doc["summary"] = report.extra;
    }
    os << doc.dump(2) << '\n';
    return os.str();
}

ModelParams settings_params(const Settings& s) {
    const Geometry g = geometry_or_usage(s.geometry);
    const double gamma = s.gamma.value_or(10.0);
    return params_or_usage(gamma, s.delay.value_or(0.0), s.center.value_or(default_center(g, gamma)),
                           g);
}

TwoPhotonOptions settings_options(const Settings& s) {
    if (!(s.tol > 0.0) || s.tol >= 1.0) throw UsageError("--tol must lie in (0, 1)");
    TwoPhotonOptions o;
    o.rule = quadrature::QuadratureRule::adaptive(s.tol);
    return o;
}

Report cmd_point(const Settings& s) {
    const ModelParams p = settings_params(s);
    const TwoPhotonOptions o = settings_options(s);
    const ProbabilityTable t = table_for(p, o);
    const std::string ab = antibunching_name(p);

    Table out;
    out.name = "point";
    std::vector<json> row;
    auto add = [&](std::string col, json v) {
        out.columns.push_back(std::move(col));
        row.push_back(std::move(v));
    };
    add("geometry", std::string(to_string(p.geometry())));
    add("gamma", number(p.gamma()));
    add("delay", number(p.delay()));
    add("center", number(p.center()));
    for (int a = 1; a <= 2; ++a)
        for (int ap = 1; ap <= 2; ++ap)
            add("P" + std::to_string(a) + std::to_string(ap), number(t.probability(a, ap)));
    add(ab + "_exact", number(t.antibunching()));
    add("p0_exact", number(t.antibunching_p0()));
    add("delta_p_exact", number(t.antibunching_delta()));
    add("unitarity_defect", number(t.unitarity_defect()));

    const analytic::CoherenceFactors f = analytic::gaussian_coherence_factors(p);
    if (p.same_input_channel()) {
        const analytic::Asymptote a = analytic::antibunching_asymptote(p);
        add("zeta_bl", number(f.zeta));
        add("p0_analytic", number(a.p0));
        add("delta_p_res_analytic", number(a.delta));
        add("p_res_analytic", number(a.total()));
    } else {
        const analytic::Asymptote direct =
            analytic::antibunching_asymptote(p, analytic::HomCorrectionReading::direct);
        const analytic::Asymptote split =
            analytic::antibunching_asymptote(p, analytic::HomCorrectionReading::splitting_formula);
        add("nu", number(f.nu));
        add("zeta", number(f.zeta));
        add("p0_analytic", number(direct.p0));
        add("delta_p_hom_direct", number(direct.delta));
        add("delta_p_hom_splitting", number(split.delta));
        add("p_hom_analytic", number(direct.total()));
    }
    if (s.oracle) {
        const ProbabilityTable g = oracle::grid_probability(p);
        double dev = 0.0;
        for (int a = 1; a <= 2; ++a)
            for (int ap = 1; ap <= 2; ++ap)
                dev = std::max(dev, std::abs(g.probability(a, ap) - t.probability(a, ap)));
        add(ab + "_oracle", number(g.antibunching()));
        add("oracle_max_deviation", number(dev));
    }
    out.rows.push_back(std::move(row));
    Report r;
    r.tables.push_back(std::move(out));
    return r;
}

Report cmd_fig_hom(const Settings& s) {
    const Range range =
        parse_range(s.range.empty() ? "2:20" : s.range, s.steps ? s.steps : 19, s.log);
    if (range.start <= 0.0 || range.stop <= 0.0) throw UsageError("Γ range must be positive");
    const TwoPhotonOptions o = settings_options(s);
    const double delay = s.delay.value_or(0.0);
    const std::vector<double> gammas = range.values();

    Table t;
    t.name = "fig_hom";
    t.columns = {kGamma, "p_hom_exact", "p_hom_asymptotic", "rel_diff"};
    t.rows = parallel_map<std::vector<json>>(gammas.size(), [&](std::size_t i) {
        const ModelParams p = params_or_usage(gammas[i], delay, gammas[i], Geometry::hom_split);
        const double exact = table_for(p, o).p_hom();
        const double asym = analytic::antibunching_asymptote(p).total();
        return std::vector<json>{number(gammas[i]), number(exact), number(asym),
                                 number(std::abs(asym / exact - 1.0))};
    });
    Report r;
    r.tables.push_back(std::move(t));
    return r;
}

Report cmd_fig_blockade(const Settings& s) {
    const Geometry g = geometry_or_usage(s.geometry == "hom" ? "link" : s.geometry);
    if (g == Geometry::hom_split) throw UsageError("fig-blockade needs a resonance geometry");
    const double gamma = s.gamma.value_or(10.0);
    const double center = s.center.value_or(0.0);
    const Range main = parse_range(s.range.empty() ? "-2:2" : s.range, s.steps ? s.steps : 17, s.log);
    const Range inset = parse_range(s.inset_range, s.inset_steps, false);
    if (inset.start <= 0.0 || inset.stop <= 0.0) throw UsageError("inset Γ range must be positive");
    const TwoPhotonOptions o = settings_options(s);

    Table m;
    m.name = "main";
    m.columns = {kDelta, "delta_p_res_exact", "ζ_bl"};
    const std::vector<double> delays = main.values();
    m.rows = parallel_map<std::vector<json>>(delays.size(), [&](std::size_t i) {
        const ModelParams p = params_or_usage(gamma, delays[i], center, g);
        return std::vector<json>{number(delays[i]), number(table_for(p, o).antibunching_delta()),
                                 number(analytic::zeta_blockade(gamma, delays[i]))};
    });

    Table in;
    in.name = "inset";
    in.columns = {kGamma, "p_res_total"};
    const std::vector<double> gammas = inset.values();
    in.rows = parallel_map<std::vector<json>>(gammas.size(), [&](std::size_t i) {
        const ModelParams p = params_or_usage(gammas[i], 0.0, center, g);
        return std::vector<json>{number(gammas[i]), number(table_for(p, o).p_res())};
    });

    Report r;
    r.tables.push_back(std::move(m));
    r.tables.push_back(std::move(in));
    return r;
}

SweepSpec sweep_spec(const Settings& s) {
    SweepSpec spec;
    if (s.variable == "gamma") {
        spec.variable = SweepVariable::gamma;
    } else if (s.variable == "delay") {
        spec.variable = SweepVariable::delay;
    } else if (s.variable == "center") {
        spec.variable = SweepVariable::center;
    } else {
        throw UsageError("--variable must be gamma, delay or center");
    }
    if (s.range.empty()) throw UsageError("sweep needs --range start:stop");
    spec.range = parse_range(s.range, s.steps ? s.steps : 11, s.log);
    if (spec.variable == SweepVariable::gamma && (spec.range.start <= 0.0 || spec.range.stop <= 0.0))
        throw UsageError("Γ range must be positive");
    spec.geometry = geometry_or_usage(s.geometry);
    spec.gamma = s.gamma.value_or(10.0);
    spec.delay = s.delay.value_or(0.0);
    spec.center = s.center;
    const bool resonance = spec.geometry != Geometry::hom_split;
    spec.outputs = s.outputs;
    if (spec.outputs.empty())
        spec.outputs = {resonance ? "p_res" : "p_hom", "p0", "delta_p", "analytic"};
    for (const auto& name : spec.outputs) {
        if (name == "p_hom" && resonance) throw UsageError("p_hom needs the hom geometry");
        if (name == "p_res" && !resonance) throw UsageError("p_res needs a resonance geometry");
        if (name != "p_hom" && name != "p_res" && name != "p0" && name != "delta_p" &&
            name != "table" && name != "analytic")
            throw UsageError("unknown sweep output '" + name + "'");
    }
    // Validates the fixed parameters before any work starts.
    params_or_usage(spec.gamma, spec.delay,
                    spec.center.value_or(default_center(spec.geometry, spec.gamma)), spec.geometry);
    return spec;
}

Table run_sweep(const SweepSpec& spec, const TwoPhotonOptions& options) {
    Table t;
    t.name = "sweep";
    static constexpr const char* kVarNames[] = {"gamma", "delay", "center"};
    t.columns.push_back(kVarNames[static_cast<int>(spec.variable)]);
    for (const auto& name : spec.outputs) {
        if (name == "table") {
            for (const char* c : {"P11", "P12", "P21", "P22"}) t.columns.push_back(c);
        } else if (name == "analytic") {
            for (const char* c : {"p_asymptotic", "p0_asymptotic", "delta_p_asymptotic"})
                t.columns.push_back(c);
        } else {
            t.columns.push_back(name);
        }
    }

    const std::vector<double> xs = spec.range.values();
    t.rows = parallel_map<std::vector<json>>(xs.size(), [&](std::size_t i) {
        double gamma = spec.gamma;
        double delay = spec.delay;
        std::optional<double> center = spec.center;
        switch (spec.variable) {
        case SweepVariable::gamma: gamma = xs[i]; break;
        case SweepVariable::delay: delay = xs[i]; break;
        case SweepVariable::center: center = xs[i]; break;
        }
        const ModelParams p = params_or_usage(
            gamma, delay, center.value_or(default_center(spec.geometry, gamma)), spec.geometry);
        const ProbabilityTable tab = table_for(p, options);
        std::vector<json> row{number(xs[i])};
        for (const auto& name : spec.outputs) {
            if (name == "p_hom" || name == "p_res") {
                row.push_back(number(tab.antibunching()));
            } else if (name == "p0") {
                row.push_back(number(tab.antibunching_p0()));
            } else if (name == "delta_p") {
                row.push_back(number(tab.antibunching_delta()));
            } else if (name == "table") {
                for (int a = 1; a <= 2; ++a)
                    for (int ap = 1; ap <= 2; ++ap) row.push_back(number(tab.probability(a, ap)));
            } else if (name == "analytic") {
                const analytic::Asymptote a = analytic::antibunching_asymptote(p);
                row.push_back(number(a.total()));
                row.push_back(number(a.p0));
                row.push_back(number(a.delta));
            }
        }
        return row;
    });
    return t;
}

Report cmd_sweep(const Settings& s) {
    const SweepSpec spec = sweep_spec(s);
    Report r;
    r.tables.push_back(run_sweep(spec, settings_options(s)));
    return r;
}

Report cmd_audit(const Settings& s) {
    const TwoPhotonOptions on = settings_options(s);
    TwoPhotonOptions off = on;
    off.include_interaction = false;

    Table reports;
    reports.name = "reports";
    reports.columns = {"section",     "quantity",      "geometry",      "gamma",
                       "delay",       "center",        "oracle_value",  "main_value",
                       "abs_deviation", "rel_deviation", "tolerance",   "pass"};
    json sections = json::object();
    auto add = [&](const std::string& section, const oracle::OracleReport& r) {
        reports.rows.push_back({section, r.quantity, std::string(to_string(r.geometry)),
                                number(r.gamma), number(r.delay), number(r.center),
                                number(r.oracle_value), number(r.main_value),
                                number(r.abs_deviation), number(r.rel_deviation),
                                number(r.tolerance), r.pass ? "pass" : "fail"});
        sections[section].push_back(report_json(r));
    };

    // Factor-2 adjudication at balance.
    const oracle::FactorAudit fa = oracle::factor_audit({2.0, 5.0, 10.0, 20.0, 50.0}, on);
    for (const auto& r : fa.reports) add("factor_audit", r);
    const auto& last = fa.points.back();
    const bool one_within = (last.dev_direct < 0.03) != (last.dev_splitting < 0.03);
    const bool slope_ok = fa.reports.back().pass;
    json points = json::array();
    for (const auto& a : fa.points) {
        points.push_back({{"gamma", number(a.gamma)},
                          {"exact_delta_p_hom", number(a.exact_delta)},
                          {"zeta", number(a.zeta)},
                          {"deviation_zeta", number(a.dev_direct)},
                          {"deviation_zeta_half", number(a.dev_splitting)},
                          {"verdict", oracle::to_string(a.verdict)}});
    }

    // Grid oracle against the two readings at Γ = 10.
    const ModelParams hom10 = make_params(10.0, 0.0, 10.0, Geometry::hom_split);
    const double grid_hom10 = oracle::grid_probability(hom10).p_hom();
    const double zeta10 = analytic::zeta_hom_gaussian(10.0, 0.0);
    add("grid_readings", oracle::make_report("p_hom vs zeta", hom10, zeta10, grid_hom10, 0.10, true));
    add("grid_readings",
        oracle::make_report("p_hom vs zeta/2", hom10, 0.5 * zeta10, grid_hom10, 0.10, true));

    // Oracle equivalence over the standard sweep grid.
    const std::vector<ModelParams> grid = oracle::standard_sweep_grid();
    const auto cmp = parallel_map<std::vector<oracle::OracleReport>>(
        grid.size(), [&](std::size_t i) { return oracle::compare_with_main(grid[i], 1e-4, on); });
    bool oracle_ok = true;
    for (const auto& point : cmp) {
        for (const auto& r : point) {
            oracle_ok = oracle_ok && r.pass;
            add("oracle_equivalence", r);
        }
    }

    // Unitarity scan: sum rule with the interaction off and on.
    std::vector<ModelParams> scan = grid;
    for (double gamma : {5.0, 20.0, 50.0}) {
        scan.push_back(make_params(gamma, 0.0, gamma, Geometry::hom_split));
        scan.push_back(make_params(gamma, 0.0, 0.0, Geometry::resonant_link));
    }
    const auto sums = parallel_map<std::array<double, 2>>(scan.size(), [&](std::size_t i) {
        return std::array<double, 2>{table_for(scan[i], off).sum(), table_for(scan[i], on).sum()};
    });
    bool unitarity_ok = true;
    json defect_curve = json::array();
    for (std::size_t i = 0; i < scan.size(); ++i) {
        const double s_off = sums[i][0];
        const double s_on = sums[i][1];
        const auto r_off = oracle::make_report("sum, interaction off", scan[i], 1.0, s_off, 1e-9, false);
        const auto r_on = oracle::make_report("sum, interaction on", scan[i], 1.0, s_on, 1e-2, false);
        add("unitarity", r_off);
        add("unitarity", r_on);
        unitarity_ok = unitarity_ok && r_off.pass && (scan[i].gamma() < 2.0 || r_on.pass);
        defect_curve.push_back({{"geometry", std::string(to_string(scan[i].geometry()))},
                                {"gamma", number(scan[i].gamma())},
                                {"delay", number(scan[i].delay())},
                                {"defect_off", number(std::abs(s_off - 1.0))},
                                {"defect_on", number(std::abs(s_on - 1.0))}});
    }

    Report r;
    r.pass = one_within && fa.verdict != oracle::FactorVerdict::inconclusive && slope_ok &&
             oracle_ok && unitarity_ok;
    r.extra = {{"factor_verdict", oracle::to_string(fa.verdict)},
               {"factor_points", points},
               {"slope", number(fa.slope)},
               {"single_reading_within_3pct_at_largest_gamma", one_within},
               {"oracle_equivalence_pass", oracle_ok},
               {"unitarity_pass", unitarity_ok},
               {"defect_curve", defect_curve},
               {"sections", sections},
               {"pass", r.pass}};
    r.tables.push_back(std::move(reports));
    return r;
}

}  // namespace homqed::cli

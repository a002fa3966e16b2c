#include "zas/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zas/conformal.hpp"
#include "zas/errors.hpp"
#include "zas/extended_mass.hpp"
#include "zas/geometry.hpp"
#include "zas/models.hpp"
#include "zas/parallel.hpp"
#include "zas/quadrature.hpp"
#include "zas/report.hpp"
#include "zas/verify.hpp"

namespace zas::cli {
namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v, const char* spec = "%.10g") {
    char buf[40];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

const char* yn(bool b) { return b ? "yes" : "no"; }

report::Value mass_cell(const ExtendedMass& m) {
    return m.finite() ? m.value() : -num::kInf;
}

std::string mass_text(const ExtendedMass& m) { return m.finite() ? fmt(m.value()) : "-inf"; }

void validate_config(const RunConfig& cfg) {
    if (!(cfg.tol >= 1e-12 && cfg.tol <= 1e-3))
        throw Error(ErrorCode::ValidationError, "tolerance override must lie in [1e-12, 1e-3]");
    if (cfg.formats.empty())
        throw Error(ErrorCode::ValidationError, "at least one output format is required");
    for (const auto& f : cfg.formats)
        if (f != "csv" && f != "json" && f != "svg")
            throw Error(ErrorCode::ValidationError,
                        "unknown format '" + f + "' (expected csv, json, svg)");
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw Error(ErrorCode::ValidationError, "output directory '" + dir + "' cannot be created");
    if (access(dir.c_str(), W_OK) != 0)
        throw Error(ErrorCode::ValidationError, "output directory '" + dir + "' is not writable");
}

bool wants(const RunConfig& cfg, const char* f) {
    return std::find(cfg.formats.begin(), cfg.formats.end(), f) != cfg.formats.end();
}

std::string artifact(const RunConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

void emit_table(const RunConfig& cfg, const report::Table& t, const std::string& base,
                std::ostream& out) {
    if (wants(cfg, "csv")) {
        const auto path = artifact(cfg, base + ".csv");
        report::write_file(path, report::to_csv(t));
        out << "wrote " << path << "\n";
    }
    if (wants(cfg, "json")) {
        const auto path = artifact(cfg, base + ".json");
        report::write_file(path, report::to_json(t));
        out << "wrote " << path << "\n";
    }
}

// Resolves --model / --profile into a profile plus a display label.
struct Input {
    geom::RadialProfile profile;
    std::string label;
};

Input resolve_input(const RunConfig& cfg) {
    if (!cfg.model.empty() && !cfg.profile_file.empty())
        throw Error(ErrorCode::ValidationError, "--model and --profile are mutually exclusive");
    if (!cfg.profile_file.empty())
        return {model::load_profile(cfg.profile_file), "profile " + cfg.profile_file};
    if (cfg.model.empty())
        throw Error(ErrorCode::ValidationError, "this command needs --model or --profile");
    const auto spec = model::parse_model_spec(cfg.model);
    return {model::build(spec).profile, model::describe(spec)};
}

// ---- classify -------------------------------------------------------------

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    const auto input = resolve_input(cfg);
    const auto rep = geom::classify_zas(input.profile);
    const bool has_adm = input.profile.infinite();
    const double adm = has_adm ? geom::adm_mass(input.profile) : 0.0;

    out << "model: " << input.label << "\n";
    out << "boundary area: " << fmt(input.profile.boundary_area()) << "\n";
    out << "zero area singularity: " << yn(rep.is_zas) << "\n";
    if (rep.is_zas) {
        out << "area exponent: " << fmt(rep.exponent)
            << (rep.exponent_declared ? " (declared)" : " (estimated)") << "\n";
        out << "area coefficient: " << fmt(rep.coefficient) << "\n";
    }
    out << "capacity: "
        << (rep.capacity.sign == geom::CapacitySign::Zero ? "zero"
                                                          : "positive, " + fmt(rep.capacity.value))
        << "\n";
    if (rep.is_zas) {
        out << "mass: " << mass_text(rep.mass) << "\n";
        out << "regular: " << yn(rep.regular) << "\n";
        out << "harmonically regular: " << yn(rep.harmonically_regular);
        if (rep.regular) out << " (log slope " << fmt(rep.harmonic_log_slope, "%.3g") << ")";
        out << "\n";
        out << "removable: " << yn(rep.removable) << "\n";
    }
    if (has_adm) out << "adm mass: " << fmt(adm) << "\n";

    if (wants(cfg, "json")) {
        nlohmann::ordered_json j;
        j["model"] = input.label;
        j["boundary_area"] = input.profile.boundary_area();
        j["is_zas"] = rep.is_zas;
        if (rep.is_zas) {
            j["exponent"] = rep.exponent;
            j["exponent_declared"] = rep.exponent_declared;
            j["coefficient"] = rep.coefficient;
        }
        j["capacity_sign"] = rep.capacity.sign == geom::CapacitySign::Zero ? "zero" : "positive";
        j["capacity"] = rep.capacity.value;
        if (rep.is_zas) {
            j["mass"] = rep.mass.finite() ? nlohmann::ordered_json(rep.mass.value())
                                          : nlohmann::ordered_json("-inf");
            j["regular"] = rep.regular;
            j["harmonically_regular"] = rep.harmonically_regular;
            j["harmonic_log_slope"] = rep.harmonic_log_slope;
            j["removable"] = rep.removable;
        }
        if (has_adm) j["adm_mass"] = adm;
        const auto path = artifact(cfg, "classify.json");
        report::write_file(path, j.dump(2) + "\n");
        out << "wrote " << path << "\n";
    }
    return 0;
}

// ---- report ---------------------------------------------------------------

int cmd_report(const RunConfig& cfg, std::ostream& out) {
    if (cfg.steps < 2) throw Error(ErrorCode::ValidationError, "report needs --steps >= 2");
    const auto input = resolve_input(cfg);
    const auto& p = input.profile;

    const double s_hi = p.infinite() ? 20.0 : p.s_end() * (1.0 - 1e-6);
    const double s_lo = s_hi / 1000.0;
    const std::size_t n = static_cast<std::size_t>(cfg.steps);
    std::vector<geom::SliceReport> slices(n);
    std::vector<std::string> failures(n);
    num::parallel_for(n, cfg.parallel, [&](std::size_t i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        const double rho = s_lo * std::pow(s_hi / s_lo, t);
        try {
            slices[i] = geom::slice_report(p, rho);
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });
    for (const auto& f : failures)
        if (!f.empty()) throw Error(ErrorCode::ToleranceNotMet, "slice report failed: " + f);

    report::Table t;
    t.name = "slices";
    t.columns = {"rho", "area", "mean_curvature", "hawking_mass", "capacity", "reg_mass"};
    for (const auto& s : slices)
        t.rows.push_back({s.rho, s.area, s.mean_curvature, s.hawking_mass, s.slice_capacity,
                          s.slice_reg_mass});

    out << "model: " << input.label << "\n";
    out << "slices: " << n << " spheres, arclength " << fmt(s_lo) << " .. " << fmt(s_hi) << "\n";
    if (p.infinite()) out << "adm mass: " << fmt(geom::adm_mass(p)) << "\n";
    if (p.zas_boundary()) {
        const auto m = geom::zas_mass(p);
        out << "zas mass: " << mass_text(m) << "\n";
    }
    emit_table(cfg, t, "report", out);

    if (wants(cfg, "svg")) {
        report::LinePlot plot;
        plot.title = "slice data: " + input.label;
        plot.xlabel = "arclength";
        plot.ylabel = "mass";
        for (const auto& s : slices) plot.x.push_back(s.rho);
        plot.series.resize(2);
        plot.series[0].first = "hawking_mass";
        plot.series[1].first = "reg_mass";
        for (const auto& s : slices) {
            plot.series[0].second.push_back(s.hawking_mass);
            plot.series[1].second.push_back(s.slice_reg_mass);
        }
        const auto path = artifact(cfg, "report.svg");
        report::write_file(path, report::to_svg(plot));
        out << "wrote " << path << "\n";
    }
    return 0;
}

// ---- table2 -----------------------------------------------------------------

int cmd_table2(const RunConfig& cfg, std::ostream& out) {
    const std::pair<const char*, double> rows[] = {
        {"0.5", 0.5}, {"1", 1.0}, {"4/3", 4.0 / 3.0}, {"1.5", 1.5}, {"2", 2.0}, {"3", 3.0},
    };

    report::Table t;
    t.name = "power_law_zas";
    t.columns = {"alpha", "capacity", "mass", "regular", "harmonically_regular", "removable"};
    std::ostringstream text;
    text << "alpha  capacity  mass                  regular  harm.regular  removable\n";
    for (const auto& [label, alpha] : rows) {
        try {
            const auto p = model::build(model::ModelSpec::power_law_zas(alpha)).profile;
            const auto rep = geom::classify_zas(p);
            const std::string cap =
                rep.capacity.sign == geom::CapacitySign::Zero ? "zero" : "positive";
            t.rows.push_back({std::string(label), cap, mass_cell(rep.mass), rep.regular,
                              rep.harmonically_regular, rep.removable});
            char line[120];
            std::snprintf(line, sizeof(line), "%-5s  %-8s  %-20s  %-7s  %-12s  %s\n", label,
                          cap.c_str(), mass_text(rep.mass).c_str(), yn(rep.regular),
                          yn(rep.harmonically_regular), yn(rep.removable));
            text << line;
        } catch (const Error& e) {
            throw Error(e.code(), std::string("table row alpha=") + label + ": " + e.what());
        }
    }
    out << text.str();
    emit_table(cfg, t, "table2", out);
    return 0;
}

// ---- cylinder-sweep ------------------------------------------------------------

int cmd_cylinder_sweep(const RunConfig& cfg, std::ostream& out) {
    if (cfg.steps < 2) throw Error(ErrorCode::ValidationError, "cylinder-sweep needs --steps >= 2");
    double mbar = 1.0, l_max = 10.0;
    if (!cfg.model.empty()) {
        const auto spec = model::parse_model_spec(cfg.model);
        if (spec.kind != model::ModelSpec::Kind::SchwarzschildWithCylinder)
            throw Error(ErrorCode::ValidationError,
                        "cylinder-sweep takes --model schwarzschild_with_cylinder=<mbar>,<L_max>");
        mbar = spec.mbar;
        l_max = spec.length;
    }

    const std::size_t n = static_cast<std::size_t>(cfg.steps);
    struct Row {
        double l, m, zas;
    };
    std::vector<Row> rows(n);
    std::vector<std::string> failures(n);
    num::parallel_for(n, cfg.parallel, [&](std::size_t i) {
        const double l = l_max * static_cast<double>(i) / static_cast<double>(n - 1);
        try {
            const auto built =
                model::build(model::ModelSpec::schwarzschild_with_cylinder(mbar, l));
            const auto m_zas = geom::zas_mass(built.profile);
            rows[i] = {l, geom::adm_mass(built.profile),
                       m_zas.finite() ? m_zas.value() : -num::kInf};
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < n; ++i)
        if (!failures[i].empty())
            throw Error(ErrorCode::ToleranceNotMet,
                        "sweep row L=" + fmt(rows[i].l) + ": " + failures[i]);

    report::Table t;
    t.name = "cylinder_sweep";
    t.columns = {"L", "m", "m_ZAS", "inequality"};
    bool all_hold = true;
    for (const auto& r : rows) {
        const bool holds = r.m >= r.zas - 1e-9;
        all_hold = all_hold && holds;
        t.rows.push_back({r.l, r.m, r.zas, holds});
    }

    out << "mbar: " << fmt(mbar) << ", L: 0 .. " << fmt(l_max) << " in " << n << " rows\n";
    out << "m ranges " << fmt(rows.front().m) << " .. " << fmt(rows.back().m) << ", m_ZAS "
        << fmt(rows.front().zas) << " .. " << fmt(rows.back().zas) << "\n";
    out << "inequality m >= m_ZAS holds on every row: " << yn(all_hold) << "\n";
    emit_table(cfg, t, "cylinder_sweep", out);

    if (wants(cfg, "svg")) {
        report::LinePlot plot;
        plot.title = "cylinder splice, mbar = " + fmt(mbar);
        plot.xlabel = "L";
        plot.ylabel = "mass";
        plot.series.resize(2);
        plot.series[0].first = "m";
        plot.series[1].first = "m_ZAS";
        for (const auto& r : rows) {
            plot.x.push_back(r.l);
            plot.series[0].second.push_back(r.m);
            plot.series[1].second.push_back(r.zas);
        }
        const auto path = artifact(cfg, "cylinder_sweep.svg");
        report::write_file(path, report::to_svg(plot));
        out << "wrote " << path << "\n";
    }
    return 0;
}

// ---- counterexample --------------------------------------------------------------

int cmd_counterexample(const RunConfig& cfg, std::ostream& out) {
    std::vector<double> eps = cfg.eps_list;
    if (eps.empty()) eps = {0.1, 0.3, 0.5, 0.7, 0.8, 0.8521, 0.8721, 0.9, 1.0};
    for (const double e : eps)
        if (!(e > 0.0)) throw Error(ErrorCode::ValidationError, "eps values must be positive");

    const double threshold = std::sqrt(1.0 + kPi * kPi / 4.0) - 1.0;
    out << "forced boundary ratio u'(0)/u(0) = -H/4; the factor must vanish on the bump\n";
    out << "closed-form threshold: eps = " << fmt(threshold) << "\n";

    report::Table t;
    t.name = "counterexample";
    t.columns = {"eps", "ratio", "vanishes_on_bump", "first_zero"};
    bool consistent = true;
    for (const double e : eps) {
        const auto p = model::build(model::ModelSpec::sin_bump(e)).profile;
        const auto mb = conf::min_boundary_conformal_factor(p);
        const bool vanishes = mb.first_zero.has_value() && *mb.first_zero <= 2.0 * kPi + 1e-9;
        consistent = consistent && (vanishes == (e < threshold));
        t.rows.push_back({e, mb.ratio, vanishes,
                          vanishes ? report::Value(*mb.first_zero)
                                   : report::Value(std::string("none"))});
        out << "eps " << fmt(e) << ": ratio " << fmt(mb.ratio) << ", vanishes " << yn(vanishes);
        if (vanishes) out << " (first zero at arclength " << fmt(*mb.first_zero) << ")";
        out << "\n";
    }
    out << "vanishing occurs exactly below the threshold: " << yn(consistent) << "\n";
    emit_table(cfg, t, "counterexample", out);
    return 0;
}

// ---- verify -------------------------------------------------------------------------

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const auto summary = verify::run_checks(cfg.scope, cfg.tol, cfg.seed);
    for (const auto& c : summary.checks) {
        char line[200];
        std::snprintf(line, sizeof(line), "%-4s %-45s residual %-12.3e gate %-9.1e %s\n",
                      c.pass ? "ok" : "FAIL", c.name.c_str(), c.residual, c.gate, c.note.c_str());
        out << line;
    }
    out << summary.checks.size() - summary.failed << "/" << summary.checks.size()
        << " checks passed (scope " << cfg.scope << ", tol " << fmt(summary.tol) << ")\n";
    const auto path = artifact(cfg, "verify.json");
    report::write_file(path, verify::summary_json(summary));
    out << "wrote " << path << "\n";
    return summary.failed == 0 ? 0 : 3;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        validate_config(cfg);
        ensure_out_dir(cfg.out_dir);
        if (cfg.command == "classify") return cmd_classify(cfg, out);
        if (cfg.command == "report") return cmd_report(cfg, out);
        if (cfg.command == "table2") return cmd_table2(cfg, out);
        if (cfg.command == "cylinder-sweep") return cmd_cylinder_sweep(cfg, out);
        if (cfg.command == "counterexample") return cmd_counterexample(cfg, out);
        if (cfg.command == "verify") return cmd_verify(cfg, out);
        throw Error(ErrorCode::ValidationError, "unknown command '" + cfg.command + "'");
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_input_error(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace zas::cli

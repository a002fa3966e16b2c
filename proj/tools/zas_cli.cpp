#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zas/cli.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    return parts;
}

}  // namespace

int main(int argc, char** argv) {
    zas::cli::RunConfig cfg;
    std::string formats = "csv,json";

    CLI::App app{"masses and capacities of zero area singularities"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool takes_input) {
        if (takes_input) {
            sub->add_option("--model", cfg.model,
                            "builtin model: flat, schwarzschild=<m>, power_law_zas=<alpha>, "
                            "schwarzschild_with_cylinder=<mbar>,<L>, sin_bump=<eps>");
            sub->add_option("--profile", cfg.profile_file, "profile description file (JSON)");
        }
        sub->add_option("--out", cfg.out_dir, "output directory (default .)");
        sub->add_option("--format", formats, "comma separated subset of csv,json,svg");
        sub->add_option("--tol", cfg.tol, "numeric tolerance override in [1e-12, 1e-3]");
        sub->add_option("--seed", cfg.seed, "seed for randomized property checks");
        sub->add_flag("!--no-parallel", cfg.parallel, "disable the OpenMP sweep path");
    };

    auto* classify = app.add_subcommand("classify", "classify the inner boundary of a model");
    add_common(classify, true);

    auto* rep = app.add_subcommand("report", "tabulate centered-sphere data over a model");
    add_common(rep, true);
    rep->add_option("--steps", cfg.steps, "number of spheres (default 24)");

    auto* table2 = app.add_subcommand("table2", "power law ZAS family: capacity, mass, flags");
    add_common(table2, false);

    auto* sweep =
        app.add_subcommand("cylinder-sweep", "ADM and ZAS mass of the cylinder splice vs L");
    add_common(sweep, true);
    sweep->add_option("--steps", cfg.steps, "number of rows (default 24)");

    auto* counter = app.add_subcommand("counterexample",
                                       "forced harmonic factor on the sin bump boundary");
    add_common(counter, false);
    counter->add_option("eps", cfg.eps_list, "epsilon values (default list spans the threshold)");

    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    add_common(verify, false);
    verify->add_option("scope", cfg.scope,
                       "all or one of numeric_kernel, radial_geometry, conformal_toolkit, "
                       "model_library, cli");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    cfg.formats = split_csv(formats);
    return zas::cli::run(cfg, std::cout, std::cerr);
}

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zas::cli {

// Parsed invocation.  Exactly one of `model` / `profile_file` names the input
// for the commands that take one; commands that don't ignore both.
struct RunConfig {
    std::string command;
    std::string model;         // builtin model spec text ("schwarzschild=-1", ...)
    std::string profile_file;  // profile JSON path
    std::string out_dir = ".";
    std::vector<std::string> formats = {"csv", "json"};
    double tol = 1e-10;               // numeric tolerance override, [1e-12, 1e-3]
    unsigned seed = 20260814;         // randomized property checks
    int steps = 24;                   // sweep row count / report slice count
    std::vector<double> eps_list;     // counterexample epsilons (empty: default list)
    std::string scope = "all";        // verify scope
    bool parallel = true;             // sweep workers
};

// Executes the command, writing human output to `out` and diagnostics to
// `err`.  Returns the process exit code: 0 success, 1 computation error,
// 2 invalid input, 3 verification failure.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace zas::cli

#pragma once

#include "levy/charexp.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace levy {

// Fully resolved run configuration: config-file values overlaid by flags.
struct RunConfig {
    std::string model_type = "kobol"; // "kobol" | "gaussian"
    KoBoLParams kobol{0.5, 1.0, 1.0, 5.0, -5.0, 0.0};
    GaussianParams gauss{0.0, 0.0};
    bool mu_auto = true;

    double S0 = 100.0;
    std::vector<double> strikes{100.0};
    double r = 0.0;
    double T = 1.0;

    std::string contour = "flat"; // flat | parabola | cosh
    std::optional<double> alpha_plus; // absent = heuristic default
    double epsilon = 1e-7;
    double A = 50.0;
    double tol = 1e-6;

    std::string format = "json"; // json | csv
    std::string out_path;        // empty = stdout
};

// Parses the sectioned key=value config text; throws std::invalid_argument
// with a line-numbered diagnostic on malformed input.
void apply_config_text(RunConfig& config, const std::string& text,
                       const std::string& source_name);

// Dispatches one subcommand (price | density | budget | tables | verify).
// Returns the process exit code: 0 success, 2 validation error, 3 numerical
// failure, 4 cross-check tolerance breach.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err);

} // namespace levy

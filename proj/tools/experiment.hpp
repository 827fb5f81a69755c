#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace wavecraft::cli {

using ordered_json = nlohmann::ordered_json;

/// Fully resolved experiment description; every run echoes it back.
struct ExperimentConfig {
    std::string kind = "cat";  // cat|fourcat|fock|cps|success-sweep|oracle-check|custom-plan

    int grid_points = 1024;
    double grid_extent = 12.0;

    double r_tele = 1.0;
    int k = 1;
    int l = 0;

    std::string input_type = "vacuum";  // vacuum|squeezed|fock|squeezed-fock
    double input_r = 0.0;
    int input_n = 0;

    int iterations = 0;  // zero-outcome plan length when mx is empty
    std::vector<double> mx, mp;
    std::vector<bool> rotate_after;
    bool rotate_each_step = false;

    std::string target_type = "none";  // none|fock-superposition|cps-hermite|cps-airy
    std::vector<double> target_coeffs;
    double gamma = 0.5;
    int cps_order = 1;
    double xi = 0.0;
    double p0 = 8.0;

    std::string fit = "none";  // none|squeezed-cat|four-cat|displacement

    double sweep_half_mx = 4.0;
    double sweep_half_mp = 4.0;
    int sweep_resolution = 81;
    std::vector<double> thresholds;

    int oracle_cases = 5;

    std::string out_dir;
};

struct Finding {
    std::string severity;  // error|warning|info
    std::string message;
};

ordered_json to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const ordered_json& j);

/// Static checks; never runs the pipeline.
std::vector<Finding> validate(const ExperimentConfig& cfg);

/// Execute and write artifacts; returns the summary. Throws on failure.
ordered_json execute(const ExperimentConfig& cfg);

int run_cli(int argc, char** argv);

}  // namespace wavecraft::cli

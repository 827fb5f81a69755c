#include "experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "wavecraft/metrics.hpp"
#include "wavecraft/operators.hpp"
#include "wavecraft/oracle.hpp"
#include "wavecraft/states.hpp"
#include "wavecraft/teleport.hpp"

namespace wavecraft::cli {

namespace fs = std::filesystem;

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string config_hash(const ordered_json& j) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(j.dump())));
    return buf;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

WaveFunction build_input(const ExperimentConfig& cfg, const QuadratureGrid& grid) {
    if (cfg.input_type == "vacuum") return fock_state(grid, 0);
    if (cfg.input_type == "squeezed") return squeezed_vacuum(grid, {cfg.input_r});
    if (cfg.input_type == "fock") return fock_state(grid, cfg.input_n);
    if (cfg.input_type == "squeezed-fock")
        return squeezed_fock(grid, {cfg.input_r}, cfg.input_n);
    throw std::invalid_argument("unknown input type '" + cfg.input_type + "'");
}

bool has_target(const ExperimentConfig& cfg) { return cfg.target_type != "none"; }

WaveFunction build_target(const ExperimentConfig& cfg, const QuadratureGrid& grid) {
    if (cfg.target_type == "fock-superposition")
        return fock_superposition(grid, cfg.target_coeffs);
    if (cfg.target_type == "cps-hermite") {
        CpsSpec spec;
        spec.variant = CpsSpec::Variant::hermite_series;
        spec.gamma = cfg.gamma;
        spec.order = cfg.cps_order;
        spec.xi = cfg.xi;
        return cps_target(grid, spec);
    }
    if (cfg.target_type == "cps-airy") {
        CpsSpec spec;
        spec.variant = CpsSpec::Variant::airy;
        spec.gamma = cfg.gamma;
        spec.xi = cfg.xi;
        spec.p0 = cfg.p0;
        return cps_target(grid, spec);
    }
    throw std::invalid_argument("unknown target type '" + cfg.target_type + "'");
}

IterationPlan build_plan(const ExperimentConfig& cfg) {
    if (!cfg.mx.empty()) {
        std::vector<bool> rotate = cfg.rotate_after;
        if (rotate.empty() && cfg.rotate_each_step)
            rotate.assign(cfg.mx.size(), true);
        return IterationPlan::from_outcomes(cfg.mx, cfg.mp, rotate);
    }
    return IterationPlan::zeros(cfg.iterations, cfg.rotate_each_step);
}

void write_wavefunction_csv(const fs::path& path, const WaveFunction& psi,
                            const std::string& kind, const std::string& hash) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot write " + path.string());
    out << "# wavecraft " << kind << " wave function\n";
    out << "# config-hash: " << hash << "\n";
    out << "x,re,im,abs2\n";
    for (int i = 0; i < psi.size(); ++i) {
        const cdouble a = psi.amp[i];
        out << fmt(psi.grid.x(i)) << ',' << fmt(a.real()) << ',' << fmt(a.imag())
            << ',' << fmt(std::norm(a)) << '\n';
    }
}

void write_wigner_csv(const fs::path& path, const WaveFunction& psi,
                      const std::string& kind, const std::string& hash) {
    const double p_extent = 0.5 * psi.grid.extent();
    const int p_points = 201;
    const WignerMap map = wigner(psi, p_extent, p_points);
    const int stride = std::max(1, psi.size() / 256);
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot write " + path.string());
    out << "# wavecraft " << kind << " wigner\n";
    out << "# config-hash: " << hash << "\n";
    out << "x,p,W\n";
    for (size_t i = 0; i < map.x.size(); i += stride)
        for (size_t m = 0; m < map.p.size(); ++m)
            out << fmt(map.x[i]) << ',' << fmt(map.p[m]) << ','
                << fmt(map.w[i * map.p.size() + m]) << '\n';
}

void write_curve_csv(const fs::path& path, const SuccessCurve& curve,
                     const std::string& hash) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot write " + path.string());
    out << "# wavecraft success curve\n";
    out << "# config-hash: " << hash << "\n";
    out << "threshold,probability\n";
    for (size_t i = 0; i < curve.thresholds.size(); ++i)
        out << fmt(curve.thresholds[i]) << ',' << fmt(curve.probabilities[i]) << '\n';
}

ordered_json fit_to_json(const CatFit& fit) {
    return ordered_json{{"family", "squeezed-cat"},
                        {"xi", fit.xi},
                        {"alpha", fit.alpha},
                        {"parity", fit.parity == CatParity::plus ? "plus" : "minus"},
                        {"fidelity", fit.fidelity},
                        {"converged", fit.converged}};
}

ordered_json fit_to_json(const FourCatFit& fit) {
    return ordered_json{{"family", "four-cat"},
                        {"beta", fit.beta},
                        {"m", fit.m},
                        {"fidelity", fit.fidelity},
                        {"converged", fit.converged}};
}

ordered_json fit_to_json(const DisplacementFit& fit) {
    return ordered_json{{"family", "displacement"},
                        {"dx", fit.dx},
                        {"dp", fit.dp},
                        {"fidelity", fit.fidelity},
                        {"converged", fit.converged}};
}

ordered_json run_oracle_check(const ExperimentConfig& cfg) {
    const QuadratureGrid grid(cfg.grid_points, cfg.grid_extent);
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);

    double worst_deficit = 0.0;
    double worst_spread = 0.0;
    int total_cases = 0;
    for (int k = 0; k <= 2; ++k)
        for (int l = 0; k + l <= 2; ++l) {
            const oracle::TwoModeWave nges =
                oracle::build_nges_2d({k, l}, cfg.r_tele, grid);
            TeleportConfig tcfg;
            tcfg.r_tele = cfg.r_tele;
            tcfg.subtraction = {k, l};
            const TeleportEngine eng(grid, tcfg);

            std::vector<double> coeffs(4);
            for (double& c : coeffs) c = coeff(rng);
            const WaveFunction psi = fock_superposition(grid, coeffs);

            double rmin = 1e300, rmax = 0.0;
            for (int c = 0; c < cfg.oracle_cases; ++c) {
                const BellOutcome m{uni(rng), uni(rng)};
                const WaveFunction brute = oracle::teleport_brute(psi, nges, m);
                const WaveFunction analytic = eng.step(psi, m);
                worst_deficit =
                    std::max(worst_deficit, 1.0 - fidelity(brute, analytic));
                const double ratio = brute.weight / analytic.weight;
                rmin = std::min(rmin, ratio);
                rmax = std::max(rmax, ratio);
                ++total_cases;
            }
            worst_spread = std::max(worst_spread, rmax / rmin - 1.0);
        }

    const bool pass = worst_deficit < 1e-6 && worst_spread < 1e-4;
    return ordered_json{{"cases", total_cases},
                        {"max_fidelity_deficit", worst_deficit},
                        {"max_weight_ratio_spread", worst_spread},
                        {"pass", pass}};
}

}  // namespace

ordered_json to_json(const ExperimentConfig& cfg) {
    ordered_json j;
    j["kind"] = cfg.kind;
    j["grid"] = {{"points", cfg.grid_points}, {"extent", cfg.grid_extent}};
    j["teleport"] = {{"r_tele", cfg.r_tele}, {"k", cfg.k}, {"l", cfg.l}};
    j["input"] = {{"type", cfg.input_type}, {"r", cfg.input_r}, {"n", cfg.input_n}};
    j["iterations"] = cfg.iterations;
    j["plan"] = {{"mx", cfg.mx},
                 {"mp", cfg.mp},
                 {"rotate_after", cfg.rotate_after},
                 {"rotate_each_step", cfg.rotate_each_step}};
    j["target"] = {{"type", cfg.target_type}, {"coeffs", cfg.target_coeffs},
                   {"gamma", cfg.gamma},      {"order", cfg.cps_order},
                   {"xi", cfg.xi},            {"p0", cfg.p0}};
    j["fit"] = cfg.fit;
    j["sweep"] = {{"half_mx", cfg.sweep_half_mx},
                  {"half_mp", cfg.sweep_half_mp},
                  {"resolution", cfg.sweep_resolution},
                  {"thresholds", cfg.thresholds}};
    j["oracle_cases"] = cfg.oracle_cases;
    j["out_dir"] = cfg.out_dir;
    return j;
}

ExperimentConfig config_from_json(const ordered_json& j) {
    ExperimentConfig cfg;
    cfg.kind = j.value("kind", cfg.kind);
    if (j.contains("grid")) {
        cfg.grid_points = j["grid"].value("points", cfg.grid_points);
        cfg.grid_extent = j["grid"].value("extent", cfg.grid_extent);
    }
    if (j.contains("teleport")) {
        cfg.r_tele = j["teleport"].value("r_tele", cfg.r_tele);
        cfg.k = j["teleport"].value("k", cfg.k);
        cfg.l = j["teleport"].value("l", cfg.l);
    }
    if (j.contains("input")) {
        cfg.input_type = j["input"].value("type", cfg.input_type);
        cfg.input_r = j["input"].value("r", cfg.input_r);
        cfg.input_n = j["input"].value("n", cfg.input_n);
    }
    cfg.iterations = j.value("iterations", cfg.iterations);
    if (j.contains("plan")) {
        cfg.mx = j["plan"].value("mx", cfg.mx);
        cfg.mp = j["plan"].value("mp", cfg.mp);
        cfg.rotate_after = j["plan"].value("rotate_after", cfg.rotate_after);
        cfg.rotate_each_step = j["plan"].value("rotate_each_step", cfg.rotate_each_step);
    }
    if (j.contains("target")) {
        cfg.target_type = j["target"].value("type", cfg.target_type);
        cfg.target_coeffs = j["target"].value("coeffs", cfg.target_coeffs);
        cfg.gamma = j["target"].value("gamma", cfg.gamma);
        cfg.cps_order = j["target"].value("order", cfg.cps_order);
        cfg.xi = j["target"].value("xi", cfg.xi);
        cfg.p0 = j["target"].value("p0", cfg.p0);
    }
    cfg.fit = j.value("fit", cfg.fit);
    if (j.contains("sweep")) {
        cfg.sweep_half_mx = j["sweep"].value("half_mx", cfg.sweep_half_mx);
        cfg.sweep_half_mp = j["sweep"].value("half_mp", cfg.sweep_half_mp);
        cfg.sweep_resolution = j["sweep"].value("resolution", cfg.sweep_resolution);
        cfg.thresholds = j["sweep"].value("thresholds", cfg.thresholds);
    }
    cfg.oracle_cases = j.value("oracle_cases", cfg.oracle_cases);
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    return cfg;
}

std::vector<Finding> validate(const ExperimentConfig& cfg) {
    std::vector<Finding> findings;
    auto error = [&findings](const std::string& msg) {
        findings.push_back({"error", msg});
    };

    const std::vector<std::string> kinds = {"cat",  "fourcat",       "fock",
                                            "cps",  "success-sweep", "oracle-check",
                                            "custom-plan"};
    if (std::find(kinds.begin(), kinds.end(), cfg.kind) == kinds.end())
        error("unknown experiment kind '" + cfg.kind + "'");

    if (cfg.grid_points < 2) error("grid needs at least 2 points");
    if (!(cfg.grid_extent > 0.0)) error("grid extent must be positive");
    if (!(cfg.r_tele > 0.0 && cfg.r_tele <= 8.0))
        error("r_tele must lie in (0, 8]");
    else
        findings.push_back({"info", "eta = tanh(r_tele) = " +
                                        fmt(std::tanh(cfg.r_tele))});
    if (cfg.k < 0 || cfg.l < 0 || cfg.k + cfg.l > 8)
        error("subtraction counts must be nonnegative with k + l <= 8");
    if (std::abs(cfg.input_r) > 5.0) error("|input squeezing| > 5");
    if (cfg.input_n < 0) error("negative Fock index");

    if (!cfg.mp.empty() && cfg.mp.size() != cfg.mx.size())
        error("plan m_p length differs from m_x");
    if (!cfg.rotate_after.empty() && cfg.rotate_after.size() != cfg.mx.size())
        error("plan rotate_after length differs from m_x");
    const size_t steps = cfg.mx.empty() ? cfg.iterations : cfg.mx.size();
    if (cfg.kind == "custom-plan" && steps == 0) error("custom-plan with an empty plan");
    if ((cfg.kind == "cat" || cfg.kind == "fourcat" || cfg.kind == "fock" ||
         cfg.kind == "cps") && steps == 0)
        error(cfg.kind + " needs at least one step (--iters or --mx)");

    // grid support: tailored peaks sit near sqrt(n) e^{|r_in|}
    if (cfg.kind != "oracle-check" && steps > 0) {
        const double reach =
            std::sqrt(static_cast<double>(steps)) * std::exp(std::abs(cfg.input_r)) + 2.0;
        if (reach > cfg.grid_extent)
            error("state support ~" + fmt(reach) + " exceeds grid extent " +
                  fmt(cfg.grid_extent) + "; enlarge --grid-extent");
        const double nyquist = kPi * (cfg.grid_points - 1) / (2.0 * cfg.grid_extent);
        if (reach > nyquist)
            error("state momentum support ~" + fmt(reach) + " exceeds the Nyquist band " +
                  fmt(nyquist) + "; increase --grid-points");
    }

    if (cfg.kind == "fock" && cfg.target_type != "fock-superposition")
        error("fock experiments need a fock-superposition target");
    if (cfg.kind == "cps" && cfg.target_type != "cps-hermite" &&
        cfg.target_type != "cps-airy")
        error("cps experiments need a cps target");
    if (cfg.target_type == "fock-superposition") {
        bool any = false;
        for (double c : cfg.target_coeffs) any = any || c != 0.0;
        if (!any) error("fock-superposition target needs a nonzero coefficient");
    }
    if (cfg.target_type == "cps-airy" && cfg.gamma == 0.0)
        error("airy target needs gamma != 0");
    if (cfg.target_type == "cps-hermite" && (cfg.cps_order < 0 || cfg.cps_order > 3))
        error("cps series order out of range");

    if (cfg.kind == "success-sweep") {
        if (cfg.sweep_resolution < 2) error("sweep resolution < 2");
        if (!(cfg.sweep_half_mx > 0.0 && cfg.sweep_half_mp > 0.0))
            error("sweep region must be positive");
        if (cfg.thresholds.empty()) error("success-sweep needs thresholds");
        for (double t : cfg.thresholds)
            if (t < 0.0 || t > 1.0) error("threshold outside [0, 1]");
    }
    return findings;
}

ordered_json execute(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const ordered_json resolved = to_json(cfg);
    const std::string hash = config_hash(resolved);

    const fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::ios_base::failure("cannot create output directory " + dir.string());

    ordered_json summary;
    summary["kind"] = cfg.kind;
    summary["config"] = resolved;
    summary["config_hash"] = hash;
    summary["eta"] = std::tanh(cfg.r_tele);

    if (cfg.kind == "oracle-check") {
        summary["oracle"] = run_oracle_check(cfg);
    } else {
        const QuadratureGrid grid(cfg.grid_points, cfg.grid_extent);
        const WaveFunction input = build_input(cfg, grid);

        if (cfg.kind == "success-sweep") {
            TeleportConfig tcfg;
            tcfg.r_tele = cfg.r_tele;
            tcfg.subtraction = {cfg.k, cfg.l};
            const TeleportEngine eng(grid, tcfg);
            const WaveFunction target = eng.step(input, {0.0, 0.0}).normalized();
            const SweepRegion region{cfg.sweep_half_mx, cfg.sweep_half_mp};
            const SuccessCurve curve = eng.success_sweep(
                input, target, cfg.thresholds, region, cfg.sweep_resolution);
            write_curve_csv(dir / "success_curve.csv", curve, hash);
            write_wavefunction_csv(dir / "target.csv", target, cfg.kind, hash);
            summary["density"] = {{"z", curve.z},
                                  {"coverage_residual", curve.coverage_residual}};
            ordered_json jc;
            jc["thresholds"] = curve.thresholds;
            jc["probabilities"] = curve.probabilities;
            summary["sweep"] = jc;
            summary["outputs"] = {{"curve", (dir / "success_curve.csv").string()},
                                  {"target", (dir / "target.csv").string()}};
        } else {
            TeleportConfig tcfg;
            tcfg.r_tele = cfg.r_tele;
            tcfg.subtraction = {cfg.k, cfg.l};
            const TeleportEngine eng(grid, tcfg);
            const IterationPlan plan = build_plan(cfg);
            const PlanResult result = eng.run_plan(input, plan);

            summary["step_weights"] = result.step_weights;

            ordered_json outputs;
            write_wavefunction_csv(dir / "wavefunction.csv", result.final_state,
                                   cfg.kind, hash);
            outputs["wavefunction"] = (dir / "wavefunction.csv").string();
            write_wigner_csv(dir / "wigner.csv", result.final_state, cfg.kind, hash);
            outputs["wigner"] = (dir / "wigner.csv").string();

            if (has_target(cfg)) {
                const WaveFunction target = build_target(cfg, grid);
                summary["fidelity"] = fidelity(result.final_state, target);
                write_wavefunction_csv(dir / "target.csv", target, cfg.kind, hash);
                outputs["target"] = (dir / "target.csv").string();
                if (cfg.fit == "displacement")
                    summary["fit"] = fit_to_json(
                        fit_displacement(result.final_state, target));
            }
            if (cfg.fit == "squeezed-cat") {
                const CatFit fit = fit_squeezed_cat(result.final_state);
                summary["fit"] = fit_to_json(fit);
                summary["fidelity"] = fit.fidelity;
            } else if (cfg.fit == "four-cat") {
                const FourCatFit fit = fit_four_cat(result.final_state);
                summary["fit"] = fit_to_json(fit);
                summary["fidelity"] = fit.fidelity;
            }
            summary["outputs"] = outputs;
        }
    }

    const auto t1 = std::chrono::steady_clock::now();
    summary["wall_seconds"] =
        std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count() / 1e6;

    std::ofstream out(dir / "summary.json");
    if (!out) throw std::ios_base::failure("cannot write summary.json");
    out << summary.dump(2) << '\n';
    return summary;
}

}  // namespace wavecraft::cli

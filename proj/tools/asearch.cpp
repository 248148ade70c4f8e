#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "asearch/collision.hpp"
#include "asearch/config.hpp"
#include "asearch/linear_analysis.hpp"
#include "asearch/runner.hpp"
#include "asearch/spectrum.hpp"

namespace {

using namespace asearch;

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitSweepFailures = 4;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

// Grid spec: "log:LO:HI:N" (decades), "lin:LO:HI:N", or a comma list.
std::vector<double> parse_grid(const std::string& spec) {
    auto parts = [&](const std::string& body) {
        auto f = split_list(body);
        if (f.size() != 3) throw ConfigError("grid spec needs LO:HI:N");
        return std::tuple<double, double, int>(parse_double(f[0]), parse_double(f[1]),
                                               std::stoi(f[2]));
    };
    if (spec.rfind("log:", 0) == 0) {
        std::string body = spec.substr(4);
        for (auto& c : body)
            if (c == ':') c = ',';
        auto [lo, hi, n] = parts(body);
        return logspace(lo, hi, n);
    }
    if (spec.rfind("lin:", 0) == 0) {
        std::string body = spec.substr(4);
        for (auto& c : body)
            if (c == ':') c = ',';
        auto [lo, hi, n] = parts(body);
        return linspace(lo, hi, n);
    }
    std::vector<double> out;
    for (const auto& item : split_list(spec)) out.push_back(parse_double(item));
    return out;
}

std::string output_stem(const std::string& config_path, const std::string& out_dir) {
    std::filesystem::path p(config_path);
    std::filesystem::path dir = out_dir.empty() ? "." : std::filesystem::path(out_dir);
    std::filesystem::create_directories(dir);
    return (dir / p.stem()).string();
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    SceneConfig config = SceneConfig::from_raw(RawConfig::parse_file(config_path));
    RunRecord record = run_scene(config);
    std::string stem = output_stem(config_path, out_dir);
    std::ofstream run_out(stem + ".csv");
    write_run_csv(run_out, record);
    std::ofstream states_out(stem + "_states.csv");
    write_states_csv(states_out, record);
    std::cout << "wrote " << stem << ".csv (" << record.rows.size() << " rows)\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& param, const std::string& values,
              const std::string& out_dir, int jobs) {
    RawConfig base = RawConfig::parse_file(config_path);
    std::vector<std::string> value_list = split_list(values);
    std::string dir = out_dir.empty() ? "sweep_out" : out_dir;
    SweepResult result = sweep(base, param, value_list, dir, jobs);
    std::ofstream summary(dir + "/summary.csv");
    write_sweep_summary(summary, result);
    write_sweep_summary(std::cout, result);
    return result.failures > 0 ? kExitSweepFailures : 0;
}

int cmd_collide(const std::string& barrier, const std::string& method, double hbar, double beta,
                double alpha_max, double assumed_speed, const std::string& out_path) {
    auto kind = barrier == "ipc" ? CollisionScenario::Barrier::ipc
                                 : CollisionScenario::Barrier::quadratic;
    CollisionScenario scenario = CollisionScenario::from_hbar(kind, hbar, beta);
    scenario.alpha_max = alpha_max;
    scenario.assumed_speed = assumed_speed;
    CollisionSummary summary = collide(scenario, method_from_name(method));
    std::cout << "barrier=" << barrier << " method=" << method << " hbar=" << format_double(hbar)
              << " beta=" << format_double(beta)
              << " steps_in_contact=" << summary.steps_in_contact
              << " exit_speed=" << format_double(summary.exit_speed) << '\n';
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << "step,t,x,v,KE,PE\n";
        for (const auto& s : summary.trajectory)
            out << s.step << ',' << format_double(s.t) << ',' << format_double(s.x) << ','
                << format_double(s.v) << ',' << format_double(s.kinetic) << ','
                << format_double(s.potential) << '\n';
    }
    return 0;
}

int cmd_stability(const std::string& methods, const std::string& hbar_grid,
                  const std::string& alpha_grid, const std::string& out_path) {
    std::vector<LinearMethodSpec> specs;
    for (const auto& name : split_list(methods)) specs.push_back(LinearMethodSpec::parse(name));
    std::vector<double> hbars = parse_grid(hbar_grid);
    std::vector<double> alphas = alpha_grid.empty() ? std::vector<double>{} : parse_grid(alpha_grid);
    auto rows = stability_report(specs, hbars, alphas);

    std::ostringstream csv;
    csv << "method,hbar,alpha,tr,det,lambda1,lambda2,flagged\n";
    for (const auto& r : rows)
        csv << r.method << ',' << format_double(r.hbar) << ',' << format_double(r.alpha) << ','
            << format_double(r.tr) << ',' << format_double(r.det) << ','
            << format_double(r.lambda1) << ',' << format_double(r.lambda2) << ','
            << (r.flagged ? 1 : 0) << '\n';
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(out_path);
        out << csv.str();
        std::cout << "wrote " << out_path << " (" << rows.size() << " rows)\n";
    }
    return 0;
}

int cmd_spectrum(const std::string& states_path, const std::string& scene_path,
                 const std::string& out_path) {
    SceneConfig config = SceneConfig::from_raw(RawConfig::parse_file(scene_path));
    BuiltScene scene = build_scene(config);
    if (!scene.chain) throw ConfigError("spectrum needs a chain scene");

    std::ifstream in(states_path);
    if (!in) throw ConfigError("cannot open states file: " + states_path);
    auto snapshots = parse_states_csv(in);

    std::ostringstream csv;
    csv << "t,mode,omega,energy\n";
    for (const auto& s : snapshots) {
        SpectrumReport report = modal_spectrum(*scene.chain, s.x, s.v);
        csv << format_double(s.t) << ",0,0," << format_double(report.com_energy) << '\n';
        for (Eigen::Index i = 0; i < report.energies.size(); ++i)
            csv << format_double(s.t) << ',' << (i + 1) << ','
                << format_double(report.omegas[i]) << ',' << format_double(report.energies[i])
                << '\n';
    }
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(out_path);
        out << csv.str();
        std::cout << "wrote " << out_path << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-controllable time integration toolkit for 1D/2D elastodynamics"};
    app.require_subcommand(1);

    std::string config_path, out_dir, out_path;
    std::string param, values;
    int jobs = 1;

    auto* run = app.add_subcommand("run", "simulate one scene config, emit CSV");
    run->add_option("config", config_path, "scene config file")->required();
    run->add_option("--out", out_dir, "output directory (default .)");

    auto* sw = app.add_subcommand("sweep", "run a scene across parameter values");
    sw->add_option("config", config_path, "scene config template")->required();
    sw->add_option("--param", param, "parameter as section.key")->required();
    sw->add_option("--values", values, "comma-separated values")->required();
    sw->add_option("--out", out_dir, "output directory (default sweep_out)");
    sw->add_option("--jobs", jobs, "concurrent sub-runs (capped by ASEARCH_THREADS)");

    std::string barrier = "quadratic", method = "a1";
    double hbar = 1e8, beta = 0.5, alpha_max = 1.1, assumed_speed = 0.0;
    auto* col = app.add_subcommand("collide", "single-particle collision harness");
    col->add_option("--barrier", barrier, "quadratic|ipc")
        ->check(CLI::IsMember({"quadratic", "ipc"}));
    col->add_option("--method", method, "integrator name")->required();
    col->add_option("--hbar", hbar, "dimensionless stiffness h^2 k/m")->required();
    col->add_option("--beta", beta, "collision phase in [0,1]")->required();
    col->add_option("--alpha-max", alpha_max, "search upper bound");
    col->add_option("--assumed-speed", assumed_speed, "wrong-target variant speed");
    col->add_option("--out", out_path, "trajectory CSV path");

    std::string methods, hbar_grid, alpha_grid;
    auto* st = app.add_subcommand("stability", "linear update-matrix report");
    st->add_option("--methods", methods, "comma list (explicit_euler, implicit_euler, "
                                         "symplectic_euler, midpoint, trapezoidal, a1, a_alpha, "
                                         "decoupled:<tableau>)")
        ->required();
    st->add_option("--hbar-grid", hbar_grid, "log:LO:HI:N | lin:LO:HI:N | comma list")->required();
    st->add_option("--alpha-grid", alpha_grid, "alpha grid for a_alpha");
    st->add_option("--out", out_path, "CSV path (default stdout)");

    std::string states_path, scene_path;
    auto* sp = app.add_subcommand("spectrum", "modal energy spectrum of chain snapshots");
    sp->add_option("states", states_path, "states CSV from a run")->required();
    sp->add_option("--scene", scene_path, "scene config the states came from")->required();
    sp->add_option("--out", out_path, "CSV path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, out_dir);
        if (sw->parsed()) return cmd_sweep(config_path, param, values, out_dir, jobs);
        if (col->parsed())
            return cmd_collide(barrier, method, hbar, beta, alpha_max, assumed_speed, out_path);
        if (st->parsed()) return cmd_stability(methods, hbar_grid, alpha_grid, out_path);
        if (sp->parsed()) return cmd_spectrum(states_path, scene_path, out_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

#include "asearch/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "asearch/config.hpp"

namespace asearch {

namespace {

double com_velocity(const Vec& v, const MassMatrix& m, int dim) {
    double total = m.total();
    if (dim == 1) return m.diag.dot(v) / total;
    // interleaved components: report the magnitude of the mass-weighted mean
    double sq = 0.0;
    for (int a = 0; a < dim; ++a) {
        double acc = 0.0, mass = 0.0;
        for (Eigen::Index i = a; i < v.size(); i += dim) {
            acc += m.diag[i] * v[i];
            mass += m.diag[i];
        }
        sq += (acc / mass) * (acc / mass);
    }
    return std::sqrt(sq);
}

}  // namespace

RunRecord run_scene(const SceneConfig& config) {
    BuiltScene scene = build_scene(config);
    SystemState state = scene.initial;
    Stepper stepper(config.integrator, scene.mass, scene.potential, scene.dissipation);
    stepper.reset(state);

    long steps = static_cast<long>(std::floor(config.duration / config.h + 1e-9));
    RunRecord record;
    record.rows.reserve(steps);

    for (long step = 1; step <= steps; ++step) {
        StepDiagnostics diag;
        try {
            diag = stepper.advance(state, config.h);
        } catch (const SolverError& e) {
            throw SolverError(std::string(e.what()) + " at step " + std::to_string(step),
                              e.residual());
        }
        RunRow row;
        row.step = step;
        row.t = state.t;
        row.KE = kinetic_energy(state.v, scene.mass);
        row.PE = scene.potential->energy(state.x);
        row.H = row.KE + row.PE;
        row.E_target = state.energy_target;
        row.friction_loss = diag.friction_loss;
        row.alpha = diag.alpha_used;
        row.com_v = com_velocity(state.v, scene.mass, scene.dim);
        row.newton_iters = diag.newton_iters;
        record.rows.push_back(row);

        if (config.snapshot_stride > 0 && step % config.snapshot_stride == 0)
            record.snapshots.push_back({state.t, state.x, state.v});
    }
    if (record.snapshots.empty() || record.snapshots.back().t != state.t)
        record.snapshots.push_back({state.t, state.x, state.v});
    return record;
}

void write_run_csv(std::ostream& out, const RunRecord& record) {
    out << "step,t,H,E_target,friction_loss,alpha,KE,PE,com_v,newton_iters\n";
    for (const RunRow& r : record.rows) {
        out << r.step << ',' << format_double(r.t) << ',' << format_double(r.H) << ','
            << format_double(r.E_target) << ',' << format_double(r.friction_loss) << ','
            << format_double(r.alpha) << ',' << format_double(r.KE) << ','
            << format_double(r.PE) << ',' << format_double(r.com_v) << ',' << r.newton_iters
            << '\n';
    }
}

void write_states_csv(std::ostream& out, const RunRecord& record) {
    if (record.snapshots.empty()) {
        out << "t\n";
        return;
    }
    Eigen::Index n = record.snapshots.front().x.size();
    out << 't';
    for (Eigen::Index i = 0; i < n; ++i) out << ",x" << i;
    for (Eigen::Index i = 0; i < n; ++i) out << ",v" << i;
    out << '\n';
    for (const Snapshot& s : record.snapshots) {
        out << format_double(s.t);
        for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_double(s.x[i]);
        for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_double(s.v[i]);
        out << '\n';
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    return out;
}

}  // namespace

std::vector<RunRow> parse_run_csv(std::istream& in) {
    std::vector<RunRow> rows;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty run csv");
    if (line != "step,t,H,E_target,friction_loss,alpha,KE,PE,com_v,newton_iters")
        throw std::runtime_error("unexpected run csv header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 10) throw std::runtime_error("bad run csv row");
        RunRow r;
        r.step = std::stol(f[0]);
        r.t = parse_double(f[1]);
        r.H = parse_double(f[2]);
        r.E_target = parse_double(f[3]);
        r.friction_loss = parse_double(f[4]);
        r.alpha = parse_double(f[5]);
        r.KE = parse_double(f[6]);
        r.PE = parse_double(f[7]);
        r.com_v = parse_double(f[8]);
        r.newton_iters = std::stol(f[9]);
        rows.push_back(r);
    }
    return rows;
}

std::vector<Snapshot> parse_states_csv(std::istream& in) {
    std::vector<Snapshot> out;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty states csv");
    auto header = split_csv_line(line);
    if (header.empty() || header[0] != "t") throw std::runtime_error("unexpected states header");
    if ((header.size() - 1) % 2 != 0) throw std::runtime_error("unexpected states header");
    Eigen::Index n = static_cast<Eigen::Index>((header.size() - 1) / 2);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (static_cast<Eigen::Index>(f.size()) != 1 + 2 * n)
            throw std::runtime_error("bad states row");
        Snapshot s;
        s.t = parse_double(f[0]);
        s.x = Vec(n);
        s.v = Vec(n);
        for (Eigen::Index i = 0; i < n; ++i) s.x[i] = parse_double(f[1 + i]);
        for (Eigen::Index i = 0; i < n; ++i) s.v[i] = parse_double(f[1 + n + i]);
        out.push_back(std::move(s));
    }
    return out;
}

int effective_jobs(int requested) {
    int jobs = std::max(1, requested);
    if (const char* cap = std::getenv("ASEARCH_THREADS")) {
        int limit = std::atoi(cap);
        if (limit > 0) jobs = std::min(jobs, limit);
    }
    return jobs;
}

SweepResult sweep(const RawConfig& base, const std::string& param,
                  const std::vector<std::string>& values, const std::string& out_dir, int jobs) {
    size_t dot = param.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == param.size())
        throw ConfigError("sweep parameter must be section.key");
    std::string section = param.substr(0, dot);
    std::string key = param.substr(dot + 1);
    if (!base.has(section, key))
        throw ConfigError("sweep parameter not present in template: " + param);

    SweepResult result;
    result.summary.resize(values.size());
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= values.size()) return;
            SweepRow row;
            row.value = values[i];
            try {
                RawConfig raw = base;
                raw.set(section, key, values[i]);
                SceneConfig config = SceneConfig::from_raw(raw);
                RunRecord record = run_scene(config);
                if (!record.rows.empty()) {
                    const RunRow& last = record.rows.back();
                    row.final_com_v = last.com_v;
                    row.final_H = last.H;
                    double worst = 0.0;
                    for (const RunRow& r : record.rows)
                        worst = std::max(worst, std::abs(r.H - r.E_target));
                    row.max_abs_H_minus_E = worst;
                }
                row.status = "ok";
                if (!out_dir.empty()) {
                    std::string stem = out_dir + "/run_" + std::to_string(i);
                    std::ofstream run_out(stem + ".csv");
                    write_run_csv(run_out, record);
                    std::ofstream states_out(stem + "_states.csv");
                    write_states_csv(states_out, record);
                }
            } catch (const std::exception& e) {
                row.status = std::string("failed: ") + e.what();
            }
            result.summary[i] = std::move(row);
        }
    };

    int n_workers = std::min<int>(effective_jobs(jobs), static_cast<int>(values.size()));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const SweepRow& row : result.summary)
        if (row.status != "ok") ++result.failures;
    return result;
}

void write_sweep_summary(std::ostream& out, const SweepResult& result) {
    out << "value,final_com_v,final_H,max_abs_H_minus_E,status\n";
    for (const SweepRow& r : result.summary) {
        out << r.value << ',' << format_double(r.final_com_v) << ',' << format_double(r.final_H)
            << ',' << format_double(r.max_abs_H_minus_E) << ',' << r.status << '\n';
    }
}

}  // namespace asearch

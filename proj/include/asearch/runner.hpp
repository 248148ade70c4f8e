#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "asearch/scene.hpp"

namespace asearch {

struct RunRow {
    long step = 0;
    double t = 0.0;
    double H = 0.0;
    double E_target = 0.0;
    double friction_loss = 0.0;
    double alpha = 1.0;
    double KE = 0.0;
    double PE = 0.0;
    double com_v = 0.0;
    long newton_iters = 0;
};

struct Snapshot {
    double t = 0.0;
    Vec x;
    Vec v;
};

struct RunRecord {
    std::vector<RunRow> rows;
    std::vector<Snapshot> snapshots;  // last entry is always the final state
};

// Deterministic run of one scene; throws SolverError annotated with the
// failing step index.
RunRecord run_scene(const SceneConfig& config);

void write_run_csv(std::ostream& out, const RunRecord& record);
void write_states_csv(std::ostream& out, const RunRecord& record);
std::vector<RunRow> parse_run_csv(std::istream& in);
std::vector<Snapshot> parse_states_csv(std::istream& in);

struct SweepRow {
    std::string value;
    double final_com_v = 0.0;
    double final_H = 0.0;
    double max_abs_H_minus_E = 0.0;
    std::string status;  // ok | failed: <message>
};

struct SweepResult {
    std::vector<SweepRow> summary;
    int failures = 0;
};

// One run per value of `param` ("section.key"); sub-runs are independent and
// may execute concurrently. Run CSVs land in out_dir when non-empty.
SweepResult sweep(const RawConfig& base, const std::string& param,
                  const std::vector<std::string>& values, const std::string& out_dir, int jobs);

void write_sweep_summary(std::ostream& out, const SweepResult& result);

// Effective sweep concurrency: min(jobs, ASEARCH_THREADS when set), >= 1.
int effective_jobs(int requested);

}  // namespace asearch

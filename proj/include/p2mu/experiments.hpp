#pragma once

#include <map>
#include <string>
#include <vector>

#include "p2mu/report.hpp"

namespace p2mu {

/// Resolved configuration of one experiment run. The seed fully determines
/// any randomized inputs; the whole config is echoed into the report.
struct ExperimentConfig {
    std::string command; // cauchy-eval | plemelj-scan | bpe-map | p2-wandering |
                         // hz-verify | covering-test
    std::string measure_path;
    std::map<std::string, double> params; // numeric parameters, named
    std::vector<double> deltas;
    std::string grid_spec; // "re0:re1:nx,im0:im1:ny"
    std::string output_path;
    unsigned long long seed = 0;
};

struct NamedCsv {
    std::string name; // file suffix, e.g. "scan.csv"
    Csv table;
};

struct ExperimentReport {
    Json doc = Json::object(); // deterministic report document
    bool all_pass = true;
    std::vector<NamedCsv> plots;
    std::vector<std::string> check_lines; // "PASS/FAIL name (detail)"
};

/// Dispatch and run the named experiment. Deterministic given
/// (measure file, parameters, seed); reports carry per-check pass/fail,
/// residuals and tolerances. Wall time is not part of the document.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// The CSV tables of a report (scan shells, bpe maps); empty sections give
/// a header-only CSV.
std::vector<NamedCsv> emit_plot_data(const ExperimentReport& report);

/// Write the report JSON and its CSVs. Returns the list of paths written.
/// The default directory comes from P2MU_OUT_DIR (falling back to ".").
std::vector<std::string> write_outputs(const ExperimentReport& report,
                                       const ExperimentConfig& cfg);

/// Deterministic 64-bit generator for randomized suites.
struct SplitMix64 {
    unsigned long long state;
    explicit SplitMix64(unsigned long long seed) : state(seed) {}
    unsigned long long next() {
        unsigned long long z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return (next() >> 11) * 0x1.0p-53; } // [0,1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

} // namespace p2mu

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dmsparse {

// Fully resolved command-line configuration. Everything that affects an
// output file is in here, so a config hash identifies a run.
struct RunConfig {
    std::string subcommand;

    std::string input_path;
    std::string output_path;  // empty: derived from the config hash
    std::string format = "csv";
    bool dump_config = false;
    int jobs = 1;
    std::uint64_t seed = 0;

    // modulator
    double delta = 0.01;
    bool adaptive = false;
    double growth = 1.5;
    double delta_min = 0.0;  // 0: delta/16
    double delta_max = 0.0;  // 0: delta*16
    double rate = 48000.0;   // decode output rate (bitstreams carry none)
    bool pcm16 = false;

    std::size_t frame_len = 960;

    // reconstruction
    std::vector<std::string> methods = {"imatdm", "imat", "omp", "lasso",
                                        "lowpass"};
    double lambda = 1.0;
    double alpha = -0.1;
    double beta = 0.0;        // 0: derived from the first iterate
    int max_iters = 100;
    double guard_gamma = 0.0;  // 0: guard off
    int smoothing_len = 2;
    int omp_max_atoms = 24;
    double omp_tol_rel = 1e-6;
    double lasso_reg_rel = 0.05;
    int lasso_max_iters = 400;
    double lasso_tol = 1e-10;
    double cutoff_hz = 3300.0;
    int lowpass_taps = 255;

    // sweeps
    std::vector<double> deltas = {0.001, 0.005, 0.01, 0.02, 0.03};
    double threshold_db = 15.0;
    bool noiseless = false;

    // synthetic corpus
    bool use_synth = false;
    int synth_frames = 200;
    int sparsity = 8;
    double amp_min = 0.2;
    double amp_max = 1.0;
    double band_split = 0.5;
    double min_hz = 100.0;
    double max_hz = 10000.0;
    bool balance_energy = false;

    // theory validation
    int n_bins = 64;
    double p = 0.5;
    int trials = 100000;
    std::string theorem = "both";
    int iterations = 8;
    int tracked_bin = 5;
    double amplitude = 4.0;
    int t2_trials = 100;

    std::string to_json() const;
    std::string config_hash() const;  // 16 hex digits
};

// Executes one validated config. Throws on failure; exceptions map to the
// documented exit codes in run_cli.
void dispatch(const RunConfig& config);

// Parse argv, run, and translate errors: 0 ok, 2 usage, 3 input,
// 4 numeric/convergence.
int run_cli(int argc, const char* const* argv);

}  // namespace dmsparse

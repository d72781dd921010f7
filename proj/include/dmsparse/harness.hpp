#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmsparse/dm.hpp"
#include "dmsparse/frame.hpp"
#include "dmsparse/recon.hpp"
#include "dmsparse/spectral.hpp"

namespace dmsparse {

// Controlled sparse ground truth: `sparsity` active conjugate bin pairs
// with seeded amplitudes and phases. `band_split` is the fraction of
// active pairs placed above `split_hz`; with `balance_band_energy` the
// high-band amplitudes are rescaled so the energy fractions match the bin
// fractions exactly.
struct SyntheticSpec {
    std::size_t length = kDefaultFrameLength;
    double sample_rate = kDefaultSampleRate;
    int sparsity = 8;
    double amp_min = 0.2;
    double amp_max = 1.0;
    double band_split = 0.5;
    double split_hz = kVoiceCutoffHz;
    double min_hz = 100.0;
    double max_hz = 10000.0;
    bool balance_band_energy = false;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SynthFrame {
    Frame frame;
    Spectrum true_spectrum;
    std::vector<int> support_bins;  // conjugate-closed, sorted
};

SynthFrame synth_sparse_frame(const SyntheticSpec& spec);
std::vector<SynthFrame> synth_corpus(const SyntheticSpec& base, int count,
                                     std::uint64_t seed);

enum class Method { imatdm, imat, omp, lasso, lowpass };

std::string method_name(Method m);
Method parse_method(const std::string& name);

// Shared sweep settings. Solver hyperparameters stay fixed across a sweep;
// the data-dependent ones (OMP stopping residual, LASSO regularizer) are
// expressed relative to per-frame scales.
struct SweepConfig {
    ImatParams imat;
    int smoothing_len = 2;
    int omp_max_atoms = 24;
    double omp_residual_tol_rel = 1e-6;  // times ||y_retained||_2
    double lasso_reg_rel = 0.05;         // times the l1 kill threshold
    int lasso_max_iters = 400;
    double lasso_tol = 1e-10;
    double lowpass_cutoff_hz = kVoiceCutoffHz;
    int lowpass_taps = 255;
    double success_threshold_db = 15.0;
    bool noiseless = false;  // reconstruct from d .* x instead of d .* y
    int jobs = 1;
    std::uint64_t seed = 0;  // drives Bernoulli mask draws
};

// Runs one method on one masked frame. `staircase` may be null for mask
// sources with no modulator output; only the lowpass method needs it.
Frame reconstruct_frame(Method method, const MaskedSignal& masked,
                        const Staircase* staircase, const SweepConfig& config);

struct ReportRow {
    std::string method;
    double delta = 0.0;
    double p = 0.0;  // empirical mean mask rate
    double mean_snr_db = 0.0;
    double success_rate_pct = 0.0;
    int frames = 0;
    int failures = 0;
};

struct ReportTable {
    std::vector<ReportRow> rows;
};

// DM-encode each frame at each step size, extract the alternation mask and
// reconstruct with each method. Per-frame failures score 0 dB and are
// counted, not fatal.
ReportTable delta_sweep(const std::vector<Frame>& frames,
                        const std::vector<double>& deltas,
                        const std::vector<Method>& methods,
                        const SweepConfig& config);

// Same pipeline with the adaptive modulator.
ReportTable adm_benchmark(const std::vector<Frame>& frames,
                          const AdmParams& params,
                          const std::vector<Method>& methods,
                          const SweepConfig& config);

// Reference comparison against ideal random sampling: iid Bernoulli(p)
// masks applied directly to the clean frames (inherently noiseless, so
// the lowpass method, which needs a staircase, is rejected).
ReportTable bernoulli_sweep(const std::vector<Frame>& frames,
                            const std::vector<double>& rates,
                            const std::vector<Method>& methods,
                            const SweepConfig& config);

enum class ReportFormat { csv, json };

std::string report_csv(const ReportTable& table);
std::string report_json(const ReportTable& table);
void emit_report(const ReportTable& table, ReportFormat format,
                 const std::string& path);

}  // namespace dmsparse

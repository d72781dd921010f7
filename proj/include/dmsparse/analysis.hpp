#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "dmsparse/frame.hpp"
#include "dmsparse/spectral.hpp"

namespace dmsparse {

// Monte Carlo summary of the masked-signal spectrum against the model
// prediction: mean p X(m) per bin, variance (p - p^2) eps_x + p N delta^2/4
// identical across bins. Per-bin variance is measured about the predicted
// mean, E|Y_d(m) - p X(m)|^2.
struct SpectrumStats {
    std::vector<std::complex<double>> empirical_mean;
    std::vector<double> empirical_variance;
    std::vector<std::complex<double>> predicted_mean;
    double predicted_variance = 0.0;
    int trials = 0;

    double mean_rel_error = 0.0;      // ||emp - pX||_2 / ||pX||_2
    double variance_bin_avg = 0.0;
    double variance_rel_error = 0.0;  // |avg - predicted| / predicted
};

SpectrumStats validate_theorem1(const Frame& frame, double p, double delta,
                                int trials, std::uint64_t seed);

// Single-tone Monte Carlo run used to measure the geometric decay of the
// mean estimation error of the tracked bin.
struct GeometricCheckConfig {
    std::size_t n = 256;
    int tracked_bin = 5;
    double amplitude = 4.0;
    double lambda = 1.0;
    double p = 0.5;
    double delta = 0.0;
    int iterations = 8;
    int trials = 100;
    std::uint64_t seed = 1;
    // Threshold held at this fraction of p |X(m)| (slowly decaying) so the
    // tracked bin is picked from the first iteration onward while noise
    // bins stay out.
    double threshold_frac = 0.5;
};

struct ConvergenceTrace {
    std::vector<std::complex<double>> mean_error;  // e_k, k = 0..iterations
    std::vector<double> bias;                      // |e_k|
    std::vector<double> variance;                  // about the empirical mean
    std::vector<double> mse;                       // about the true value
    double fitted_ratio = 0.0;
    double theoretical_ratio = 0.0;                // 1 - lambda p
    bool truncated = false;  // some e_k were too small to form ratios
    int tracked_bin = 0;
    std::complex<double> true_coefficient;
    int trials = 0;
};

ConvergenceTrace geometric_error_check(const GeometricCheckConfig& config);

// Closed-form spectrum variance
// lambda^2 (p - p^2) eps_r + lambda^2 (p - p^2) eps_s + lambda^2 p N delta^2/4.
double predicted_sigma2(double lambda, double p, double n, double delta,
                        double eps_r, double eps_s);

// Split of a thresholded iterate into the on-support part, the mistakenly
// picked off-support part, and the residual against the reference, with
// the three closed-form variance contributions.
struct VarianceDecomposition {
    double residual_energy = 0.0;   // eps_r
    double mistaken_energy = 0.0;   // eps_s
    double residual_term = 0.0;     // lambda^2 (p-p^2) eps_r
    double mistaken_term = 0.0;     // lambda^2 (p-p^2) eps_s
    double coding_term = 0.0;       // lambda^2 p N delta^2 / 4
    double sigma2 = 0.0;
    std::vector<int> support;
    Frame reconstructed_part;
    Frame mistaken_part;
    Frame residual_part;
};

// `support` must list every nonzero bin of the reference spectrum and be
// closed under conjugation (bin m paired with N - m). Restricted to
// synthetic references where that support is known exactly.
VarianceDecomposition decompose_variance(const Frame& reference,
                                         const Frame& thresholded_estimate,
                                         const std::vector<int>& support,
                                         double p, double lambda, double delta);

// Derives the conjugate-closed support of a spectrum: bins with magnitude
// above rel_tol times the largest magnitude.
std::vector<int> spectrum_support(const Spectrum& spec, double rel_tol = 1e-9);

struct GuardReport {
    bool passed = true;
    int first_violation = -1;
    std::vector<double> thresholds;
    std::vector<double> bounds;  // gamma * sigma_k
};

// True iff Th(k) >= gamma * sigma_k for every executed iteration.
GuardReport guard_check(const ThresholdSchedule& schedule, double gamma,
                        const std::vector<double>& sigma_estimates);

// Row of a validation report; rel_error is |empirical - predicted| divided
// by |predicted| when the prediction is meaningfully nonzero, else the
// absolute error.
struct ValidationRow {
    std::string quantity;
    double predicted = 0.0;
    double empirical = 0.0;
    double rel_error = 0.0;
    long trials = 0;
    std::uint64_t seed = 0;
};

std::vector<ValidationRow> theorem1_rows(const SpectrumStats& stats,
                                         std::uint64_t seed);
std::vector<ValidationRow> theorem2_rows(const ConvergenceTrace& trace,
                                         std::uint64_t seed);

std::string validation_csv(const std::vector<ValidationRow>& rows);
void write_validation_csv(const std::string& path,
                          const std::vector<ValidationRow>& rows);

}  // namespace dmsparse

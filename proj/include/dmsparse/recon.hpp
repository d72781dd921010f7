#pragma once

#include <optional>
#include <vector>

#include "dmsparse/dm.hpp"
#include "dmsparse/frame.hpp"
#include "dmsparse/spectral.hpp"

namespace dmsparse {

inline constexpr double kVoiceCutoffHz = 3300.0;

// Iterative adaptive-threshold reconstruction parameters. `beta` left
// unset means "derive from the data": 0.9 times the largest spectral
// magnitude of the first iterate lambda * y_d. The optional guard stops
// the iteration once the threshold would dip below gamma times the
// coding-noise standard deviation sqrt(lambda^2 p N delta^2 / 4); `delta`
// is the coding step used by that estimate.
struct ImatParams {
    double lambda = 1.0;
    double alpha = -0.1;
    std::optional<double> beta;
    int max_iters = 100;
    std::optional<double> guard_gamma;
    double delta = 0.0;

    void validate() const;
};

struct ReconDiagnostics {
    std::vector<double> thresholds;
    std::vector<double> snr_db;       // filled when a reference is supplied
    std::vector<int> support_sizes;   // bins kept by each thresholding pass
    int iterations = 0;
    double beta_used = 0.0;
};

struct ImatResult {
    Frame output;
    ReconDiagnostics diagnostics;
};

// One update x_next(n) = lambda y_d(n) + (1 - lambda d(n)) T(prev)(n)
// where T hard-thresholds the spectrum at `th`. With lambda = 1 this is
// literal sample substitution: y_d on retained indices, T(prev) elsewhere.
Frame imat_step(const MaskedSignal& masked, const Frame& prev, double th,
                double lambda);

// Full iteration from x_0 = 0. Rejects lambda outside (0, 2/p) for the
// mask rate p, the divergence region of the mean-error recursion.
ImatResult imat(const MaskedSignal& masked, const ImatParams& params,
                const Frame* reference = nullptr);

// IMAT preceded by the retained-sample moving average that cancels the
// +/- delta/2 granular coding error.
ImatResult imatdm(const MaskedSignal& masked, int smoothing_len,
                  const ImatParams& params, const Frame* reference = nullptr);

// Conventional reconstruction: zero-phase windowed-sinc FIR applied to the
// full staircase (group delay compensated, edges hold-extended).
Frame lowpass_reconstruct(const Staircase& stair,
                          double cutoff_hz = kVoiceCutoffHz,
                          int num_taps = 255);

struct OmpResult {
    Frame output;
    std::vector<int> selected_bins;      // one entry per conjugate pair, m <= N/2
    std::vector<double> residual_norms;  // after each refit
};

// Greedy pursuit over the partial inverse-DFT dictionary. Conjugate
// frequency pairs are selected jointly so the estimate stays real;
// `max_atoms` counts pairs. The support is refit by least squares each
// step; a rank-deficient refit is an error, not silently regularized.
OmpResult omp(const MaskedSignal& masked, int max_atoms, double residual_tol);

struct LassoResult {
    Frame output;
    bool converged = false;
    int iterations = 0;
    std::vector<double> objective;  // per-iteration value, non-increasing
};

// min_S ||restrict(idft(S)) - y_retained||^2 + reg * ||S||_1 by proximal
// gradient descent with the exact step 1/L, L = 2/N. Hermitian symmetry is
// re-imposed every iterate so the solution transforms to a real signal.
// On non-convergence the best iterate is returned with converged = false.
LassoResult lasso(const MaskedSignal& masked, double reg, int max_iters,
                  double tol);

// Smallest regularizer that forces the all-zero LASSO solution,
// 2 * max_m |A^* y|(m). Useful for scaling `reg` per input.
double lasso_kill_threshold(const MaskedSignal& masked);

}  // namespace dmsparse

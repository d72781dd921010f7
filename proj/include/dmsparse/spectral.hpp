#pragma once

#include <complex>
#include <vector>

#include "dmsparse/dm.hpp"
#include "dmsparse/frame.hpp"

namespace dmsparse {

// Full-length complex spectrum, X(m) = sum_n x(n) exp(-j 2 pi n m / N)
// (unnormalized forward transform; the inverse carries the 1/N).
struct Spectrum {
    enum class Origin { analysis, estimate };

    std::vector<std::complex<double>> coeffs;
    Origin origin = Origin::analysis;
    double sample_rate = kDefaultSampleRate;

    std::size_t size() const { return coeffs.size(); }
};

// Exponentially decaying threshold Th(k) = beta * exp(alpha * k). The
// exponent must be negative so the sequence actually decreases.
struct ThresholdSchedule {
    double beta;
    double alpha;

    ThresholdSchedule(double beta_, double alpha_);
    double at(int k) const;
};

double threshold_at(const ThresholdSchedule& sched, int k);

Spectrum dft(const Frame& frame);
Spectrum dft(const std::vector<double>& samples,
             double sample_rate = kDefaultSampleRate);
Frame idft(const Spectrum& spec);

// Forward/inverse pair on complex data (library plumbing shared with the
// solvers; same kernel conventions as dft/idft).
std::vector<std::complex<double>> fft_forward(
    const std::vector<std::complex<double>>& in);
std::vector<std::complex<double>> fft_inverse(
    const std::vector<std::complex<double>>& in);

// Zero every spectral coefficient with |X(m)| < th, in place. The test is
// applied jointly to each conjugate pair {m, N-m} (largest magnitude of
// the two decides) so that the spectrum of a real signal stays exactly
// Hermitian even when rounding splits a pair across the threshold.
// Returns the number of surviving bins.
int hard_threshold_spectrum(Spectrum& spec, double th);

// Transform, zero all bins below th, transform back. The output is real;
// the imaginary residue left by rounding is checked against a small bound
// before being dropped.
Frame hard_threshold(const Frame& frame, double th);

// Replace each retained sample by the mean of the l nearest retained
// samples (in retained-index order; the window is clamped at the edges so
// it always spans exactly l samples). Masked-out zeros are untouched.
// Cancels the +/- delta/2 oscillation of granular coding error when l is
// even.
MaskedSignal smooth_retained(const MaskedSignal& masked, int l);

}  // namespace dmsparse

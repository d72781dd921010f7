#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dmsparse/recon.hpp"

namespace dmsparse {

namespace {

// Hamming-windowed sinc, normalized to unit DC gain.
std::vector<double> design_lowpass(double cutoff_hz, double sample_rate,
                                   int num_taps) {
    const int mid = (num_taps - 1) / 2;
    const double wc = 2.0 * std::numbers::pi * cutoff_hz / sample_rate;
    std::vector<double> taps(static_cast<std::size_t>(num_taps));
    double sum = 0.0;
    for (int i = 0; i < num_taps; ++i) {
        const int m = i - mid;
        const double sinc =
            m == 0 ? wc / std::numbers::pi
                   : std::sin(wc * m) / (std::numbers::pi * m);
        const double window =
            0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (num_taps - 1));
        taps[static_cast<std::size_t>(i)] = sinc * window;
        sum += taps[static_cast<std::size_t>(i)];
    }
    for (double& t : taps) t /= sum;
    return taps;
}

}  // namespace

Frame lowpass_reconstruct(const Staircase& stair, double cutoff_hz,
                          int num_taps) {
    if (stair.values.empty())
        throw std::invalid_argument("lowpass_reconstruct: empty staircase");
    if (!(cutoff_hz > 0.0) || !(cutoff_hz < stair.sample_rate / 2.0))
        throw std::invalid_argument(
            "lowpass_reconstruct: cutoff must lie in (0, sample_rate/2)");
    if (num_taps < 3 || num_taps % 2 == 0)
        throw std::invalid_argument(
            "lowpass_reconstruct: num_taps must be odd and >= 3");

    const auto taps = design_lowpass(cutoff_hz, stair.sample_rate, num_taps);
    const int mid = (num_taps - 1) / 2;
    const auto n = static_cast<std::ptrdiff_t>(stair.values.size());

    // Symmetric window around each sample compensates the group delay;
    // indices past the ends hold the edge value.
    Frame out;
    out.sample_rate = stair.sample_rate;
    out.samples.resize(stair.values.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < num_taps; ++j) {
            std::ptrdiff_t src = i + mid - j;
            src = std::max<std::ptrdiff_t>(0, std::min(src, n - 1));
            acc += taps[static_cast<std::size_t>(j)] *
                   stair.values[static_cast<std::size_t>(src)];
        }
        out.samples[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

}  // namespace dmsparse

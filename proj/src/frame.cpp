#include "dmsparse/frame.hpp"

#include <cmath>
#include <stdexcept>

namespace dmsparse {

void validate_frame(const Frame& frame) {
    if (frame.samples.empty())
        throw std::invalid_argument("frame: empty sample vector");
    if (frame.sample_rate <= 0.0)
        throw std::invalid_argument("frame: sample_rate must be positive");
    for (double s : frame.samples) {
        if (!std::isfinite(s))
            throw std::invalid_argument("frame: non-finite sample");
    }
}

double energy(const Frame& frame) {
    double acc = 0.0;
    for (double s : frame.samples) acc += s * s;
    return acc;
}

std::vector<Frame> frame_split(const std::vector<double>& samples,
                               std::size_t frame_len, std::size_t hop,
                               double sample_rate) {
    if (samples.empty())
        throw std::invalid_argument("frame_split: empty input");
    if (frame_len == 0 || hop == 0)
        throw std::invalid_argument("frame_split: frame_len and hop must be positive");

    std::vector<Frame> frames;
    for (std::size_t start = 0; start + frame_len <= samples.size(); start += hop) {
        Frame f;
        f.samples.assign(samples.begin() + static_cast<std::ptrdiff_t>(start),
                         samples.begin() + static_cast<std::ptrdiff_t>(start + frame_len));
        f.sample_rate = sample_rate;
        frames.push_back(std::move(f));
    }
    return frames;
}

}  // namespace dmsparse

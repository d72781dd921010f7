#pragma once

#include <cstddef>
#include <vector>

namespace dmsparse {

inline constexpr double kDefaultSampleRate = 48000.0;
inline constexpr std::size_t kDefaultFrameLength = 960;  // 20 ms at 48 kHz

// One fixed-length window of real-valued samples, nominal range [-1, 1].
struct Frame {
    std::vector<double> samples;
    double sample_rate = kDefaultSampleRate;

    std::size_t size() const { return samples.size(); }
};

// Throws std::invalid_argument if the frame is empty or contains
// non-finite samples.
void validate_frame(const Frame& frame);

// Sum of squared samples.
double energy(const Frame& frame);

// Cuts a long recording into fixed-length windows. Non-overlapping when
// hop == frame_len; a trailing partial window is discarded.
std::vector<Frame> frame_split(const std::vector<double>& samples,
                               std::size_t frame_len, std::size_t hop,
                               double sample_rate = kDefaultSampleRate);

}  // namespace dmsparse

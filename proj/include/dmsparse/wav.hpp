#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dmsparse {

struct WavData {
    std::vector<double> samples;  // mono, normalized to [-1, 1]
    double sample_rate = 0.0;
};

// Reads RIFF/WAVE, PCM 16-bit or IEEE float 32-bit, mono or stereo
// (stereo is downmixed by averaging). 16-bit samples are normalized by
// 1/32768.
WavData load_wav(const std::string& path);

// 16-bit PCM writer; samples are scaled by 32768, rounded to nearest and
// clamped to the int16 range.
void save_wav_pcm16(const std::string& path,
                    const std::vector<double>& samples, double sample_rate);

// 32-bit IEEE float writer (lossless for values that fit a float).
void save_wav_float32(const std::string& path,
                      const std::vector<double>& samples, double sample_rate);

}  // namespace dmsparse

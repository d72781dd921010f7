#pragma once

#include <cstdint>
#include <vector>

#include "dmsparse/frame.hpp"

namespace dmsparse {

// One-bit modulator output. Symbols are stored as literal -1/+1 so the
// alternation product test b(n)*b(n+1) reads exactly as written. `delta`
// is the step size (the initial step when `adaptive` is set).
struct Bitstream {
    std::vector<std::int8_t> symbols;
    double delta = 0.0;
    bool adaptive = false;

    std::size_t size() const { return symbols.size(); }
};

// Modulator staircase: values move by exactly +/- delta_trace[n] each step.
struct Staircase {
    std::vector<double> values;
    std::vector<double> delta_trace;
    double sample_rate = kDefaultSampleRate;

    std::size_t size() const { return values.size(); }
};

// Binary retained-sample mask d(n).
struct SamplingMask {
    std::vector<std::uint8_t> d;

    std::size_t size() const { return d.size(); }
    std::size_t ones() const;
    double rate() const;  // ones / size
    std::vector<std::size_t> retained_indices() const;
};

// Zero-filled retained-sample signal y_d(n) = d(n) * y(n).
struct MaskedSignal {
    std::vector<double> y_d;
    SamplingMask mask;
    double sample_rate = kDefaultSampleRate;

    std::size_t size() const { return y_d.size(); }
};

// One draw from the statistical model y_d(n) = d(n) * (x(n) + q(n)) with
// q(n) = +/- delta/2 equiprobable and independent of d(n).
struct IidModelSample {
    std::vector<double> y_d;
    std::vector<double> q;
    SamplingMask mask;
};

// Step adaptation constants for ADM: grow by `growth` while the bit
// repeats (slope overload), shrink by the same factor on alternation,
// clamped to [delta_min, delta_max].
struct AdmParams {
    double delta0 = 0.01;
    double growth = 1.5;
    double delta_min = 0.01 / 16.0;
    double delta_max = 0.01 * 16.0;

    static AdmParams defaults(double delta0);
    void validate() const;
};

struct EncodeResult {
    Bitstream bits;
    Staircase staircase;
};

// Plain delta modulation: b(n) = sign(x(n) - y(n-1)), y(n) = y(n-1) +
// delta * b(n), y(-1) = 0, sign(0) = +1.
EncodeResult dm_encode(const Frame& frame, double delta);

// Accumulator decode for a non-adaptive bitstream. Reproduces the
// encoder's internal staircase bit-exactly.
Staircase dm_decode(const Bitstream& bits,
                    double sample_rate = kDefaultSampleRate);

// Adaptive-step variant; the step applied at n is delta_trace[n].
EncodeResult adm_encode(const Frame& frame, const AdmParams& params);

// Decode for adaptive bitstreams. `params.delta0` must match `bits.delta`.
Staircase adm_decode(const Bitstream& bits, const AdmParams& params,
                     double sample_rate = kDefaultSampleRate);

// d(n) = 1 iff b(n) * b(n+1) = -1; the final index has no successor and is
// always 0.
SamplingMask extract_mask(const Bitstream& bits);

// y_d = d .* y
MaskedSignal masked_signal(const Staircase& stair, const SamplingMask& mask);

// Zero-filled product of an arbitrary sample vector with a mask (used for
// the coding-error-free comparisons where y_d is replaced by d .* x).
MaskedSignal masked_values(const std::vector<double>& values,
                           const SamplingMask& mask,
                           double sample_rate = kDefaultSampleRate);

// Independent Bernoulli(p) mask, deterministic given the seed.
SamplingMask bernoulli_mask(std::size_t n, double p, std::uint64_t seed);

// Draw from the trinomial model: y_d(n) is 0, x(n)+delta/2 or x(n)-delta/2
// with probabilities 1-p, p/2, p/2.
IidModelSample iid_model_sample(const Frame& frame, double p, double delta,
                                std::uint64_t seed);

}  // namespace dmsparse

#include "dmsparse/dm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dmsparse/rng.hpp"

namespace dmsparse {

namespace {

inline int sign_of(double v) { return v >= 0.0 ? 1 : -1; }  // sign(0) = +1

inline double clamp_step(double step, const AdmParams& p) {
    return std::clamp(step, p.delta_min, p.delta_max);
}

void check_symbols(const Bitstream& bits) {
    for (std::int8_t b : bits.symbols) {
        if (b != 1 && b != -1)
            throw std::invalid_argument("bitstream: symbol outside {-1,+1}");
    }
}

}  // namespace

std::size_t SamplingMask::ones() const {
    std::size_t c = 0;
    for (std::uint8_t v : d) c += v;
    return c;
}

double SamplingMask::rate() const {
    if (d.empty()) return 0.0;
    return static_cast<double>(ones()) / static_cast<double>(d.size());
}

std::vector<std::size_t> SamplingMask::retained_indices() const {
    std::vector<std::size_t> idx;
    idx.reserve(ones());
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i]) idx.push_back(i);
    return idx;
}

AdmParams AdmParams::defaults(double delta0) {
    AdmParams p;
    p.delta0 = delta0;
    p.growth = 1.5;
    p.delta_min = delta0 / 16.0;
    p.delta_max = delta0 * 16.0;
    return p;
}

void AdmParams::validate() const {
    if (!(delta0 > 0.0) || !(delta_min > 0.0) || !(delta_max > 0.0))
        throw std::invalid_argument("adm: step sizes must be positive");
    if (!(growth > 1.0))
        throw std::invalid_argument("adm: growth factor must exceed 1");
    if (delta_min > delta0 || delta0 > delta_max)
        throw std::invalid_argument("adm: need delta_min <= delta0 <= delta_max");
}

EncodeResult dm_encode(const Frame& frame, double delta) {
    validate_frame(frame);
    if (!(delta > 0.0))
        throw std::invalid_argument("dm_encode: delta must be positive");

    const std::size_t n = frame.size();
    EncodeResult out;
    out.bits.symbols.resize(n);
    out.bits.delta = delta;
    out.bits.adaptive = false;
    out.staircase.values.resize(n);
    out.staircase.delta_trace.assign(n, delta);
    out.staircase.sample_rate = frame.sample_rate;

    double y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const int b = sign_of(frame.samples[i] - y);
        y += delta * b;
        out.bits.symbols[i] = static_cast<std::int8_t>(b);
        out.staircase.values[i] = y;
    }
    return out;
}

Staircase dm_decode(const Bitstream& bits, double sample_rate) {
    if (bits.adaptive)
        throw std::invalid_argument("dm_decode: adaptive bitstream, use adm_decode");
    if (!(bits.delta > 0.0))
        throw std::invalid_argument("dm_decode: delta must be positive");
    check_symbols(bits);

    Staircase out;
    out.values.resize(bits.size());
    out.delta_trace.assign(bits.size(), bits.delta);
    out.sample_rate = sample_rate;
    double y = 0.0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        y += bits.delta * bits.symbols[i];
        out.values[i] = y;
    }
    return out;
}

EncodeResult adm_encode(const Frame& frame, const AdmParams& params) {
    validate_frame(frame);
    params.validate();

    const std::size_t n = frame.size();
    EncodeResult out;
    out.bits.symbols.resize(n);
    out.bits.delta = params.delta0;
    out.bits.adaptive = true;
    out.staircase.values.resize(n);
    out.staircase.delta_trace.resize(n);
    out.staircase.sample_rate = frame.sample_rate;

    double y = 0.0;
    double step = params.delta0;
    int prev_bit = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int b = sign_of(frame.samples[i] - y);
        if (i > 0)
            step = clamp_step(b == prev_bit ? step * params.growth
                                            : step / params.growth,
                              params);
        y += step * b;
        out.bits.symbols[i] = static_cast<std::int8_t>(b);
        out.staircase.values[i] = y;
        out.staircase.delta_trace[i] = step;
        prev_bit = b;
    }
    return out;
}

Staircase adm_decode(const Bitstream& bits, const AdmParams& params,
                     double sample_rate) {
    if (!bits.adaptive)
        throw std::invalid_argument("adm_decode: non-adaptive bitstream, use dm_decode");
    params.validate();
    check_symbols(bits);

    Staircase out;
    out.values.resize(bits.size());
    out.delta_trace.resize(bits.size());
    out.sample_rate = sample_rate;
    double y = 0.0;
    double step = params.delta0;
    int prev_bit = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        const int b = bits.symbols[i];
        if (i > 0)
            step = clamp_step(b == prev_bit ? step * params.growth
                                            : step / params.growth,
                              params);
        y += step * b;
        out.values[i] = y;
        out.delta_trace[i] = step;
        prev_bit = b;
    }
    return out;
}

SamplingMask extract_mask(const Bitstream& bits) {
    if (bits.size() < 2)
        throw std::invalid_argument("extract_mask: need at least 2 symbols");
    check_symbols(bits);

    SamplingMask mask;
    mask.d.assign(bits.size(), 0);
    for (std::size_t i = 0; i + 1 < bits.size(); ++i)
        mask.d[i] = (bits.symbols[i] * bits.symbols[i + 1] == -1) ? 1 : 0;
    return mask;
}

MaskedSignal masked_signal(const Staircase& stair, const SamplingMask& mask) {
    return masked_values(stair.values, mask, stair.sample_rate);
}

MaskedSignal masked_values(const std::vector<double>& values,
                           const SamplingMask& mask, double sample_rate) {
    if (values.size() != mask.size())
        throw std::invalid_argument("masked_signal: length mismatch");

    MaskedSignal out;
    out.y_d.resize(values.size());
    out.mask = mask;
    out.sample_rate = sample_rate;
    for (std::size_t i = 0; i < values.size(); ++i)
        out.y_d[i] = mask.d[i] ? values[i] : 0.0;
    return out;
}

SamplingMask bernoulli_mask(std::size_t n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("bernoulli_mask: p outside [0,1]");

    Rng rng(seed);
    SamplingMask mask;
    mask.d.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        mask.d[i] = rng.bernoulli(p) ? 1 : 0;
    return mask;
}

IidModelSample iid_model_sample(const Frame& frame, double p, double delta,
                                std::uint64_t seed) {
    validate_frame(frame);
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("iid_model_sample: p outside [0,1]");
    if (delta < 0.0)
        throw std::invalid_argument("iid_model_sample: delta must be non-negative");

    Rng rng(seed);
    const std::size_t n = frame.size();
    IidModelSample out;
    out.y_d.resize(n);
    out.q.resize(n);
    out.mask.d.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool keep = rng.bernoulli(p);
        const double q = rng.sign() * delta / 2.0;  // drawn even when masked out
        out.mask.d[i] = keep ? 1 : 0;
        out.q[i] = q;
        out.y_d[i] = keep ? frame.samples[i] + q : 0.0;
    }
    return out;
}

}  // namespace dmsparse

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dmsparse/harness.hpp"
#include "dmsparse/rng.hpp"

namespace dmsparse {

namespace {

// Draws `count` distinct bins from [lo, hi].
std::vector<int> draw_bins(int lo, int hi, int count, Rng& rng) {
    std::vector<int> pool;
    pool.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (int m = lo; m <= hi; ++m) pool.push_back(m);
    std::vector<int> out;
    for (int i = 0; i < count; ++i) {
        const int j = rng.uniform_int(static_cast<int>(pool.size()));
        out.push_back(pool[static_cast<std::size_t>(j)]);
        pool.erase(pool.begin() + j);
    }
    return out;
}

}  // namespace

void SyntheticSpec::validate() const {
    if (length < 4) throw std::invalid_argument("synth: length too small");
    if (sample_rate <= 0.0)
        throw std::invalid_argument("synth: sample_rate must be positive");
    if (sparsity < 0 ||
        static_cast<std::size_t>(sparsity) >= length / 2)
        throw std::invalid_argument("synth: sparsity must satisfy 0 <= k < N/2");
    if (!(amp_min > 0.0) || amp_max < amp_min)
        throw std::invalid_argument("synth: need 0 < amp_min <= amp_max");
    if (band_split < 0.0 || band_split > 1.0)
        throw std::invalid_argument("synth: band_split outside [0,1]");
    if (!(min_hz > 0.0) || !(split_hz > min_hz) || !(max_hz > split_hz) ||
        !(max_hz < sample_rate / 2.0))
        throw std::invalid_argument(
            "synth: need 0 < min_hz < split_hz < max_hz < sample_rate/2");
}

SynthFrame synth_sparse_frame(const SyntheticSpec& spec) {
    spec.validate();
    const auto n = spec.length;
    const double bin_hz = spec.sample_rate / static_cast<double>(n);

    SynthFrame out;
    out.true_spectrum.coeffs.assign(n, 0.0);
    out.true_spectrum.sample_rate = spec.sample_rate;
    out.frame.sample_rate = spec.sample_rate;
    if (spec.sparsity == 0) {
        out.frame.samples.assign(n, 0.0);
        return out;
    }

    const int lo = std::max(1, static_cast<int>(std::ceil(spec.min_hz / bin_hz)));
    const int split = static_cast<int>(std::floor(spec.split_hz / bin_hz));
    const int hi = std::min(static_cast<int>(n / 2) - 1,
                            static_cast<int>(std::floor(spec.max_hz / bin_hz)));
    const int k_high = static_cast<int>(std::lround(spec.band_split * spec.sparsity));
    const int k_low = spec.sparsity - k_high;
    if (k_low > split - lo + 1 || k_high > hi - split)
        throw std::invalid_argument("synth: not enough bins in a band for the requested sparsity");

    Rng rng(spec.seed);
    std::vector<int> pairs;
    for (int m : draw_bins(lo, split, k_low, rng)) pairs.push_back(m);
    for (int m : draw_bins(split + 1, hi, k_high, rng)) pairs.push_back(m);

    std::vector<double> amps(pairs.size());
    std::vector<double> phases(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        amps[i] = rng.uniform(spec.amp_min, spec.amp_max);
        phases[i] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }

    if (spec.balance_band_energy && k_low > 0 && k_high > 0) {
        double low_energy = 0.0;
        double high_energy = 0.0;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (pairs[i] <= split)
                low_energy += amps[i] * amps[i];
            else
                high_energy += amps[i] * amps[i];
        }
        const double target_ratio = spec.band_split / (1.0 - spec.band_split);
        const double scale =
            std::sqrt(target_ratio * low_energy / high_energy);
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (pairs[i] > split) amps[i] *= scale;
    }

    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto m = static_cast<std::size_t>(pairs[i]);
        const std::complex<double> coeff =
            0.5 * static_cast<double>(n) * amps[i] *
            std::exp(std::complex<double>(0.0, phases[i]));
        out.true_spectrum.coeffs[m] = coeff;
        out.true_spectrum.coeffs[n - m] = std::conj(coeff);
        out.support_bins.push_back(pairs[i]);
        out.support_bins.push_back(static_cast<int>(n) - pairs[i]);
    }
    std::sort(out.support_bins.begin(), out.support_bins.end());
    out.frame = idft(out.true_spectrum);
    return out;
}

std::vector<SynthFrame> synth_corpus(const SyntheticSpec& base, int count,
                                     std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("synth_corpus: count must be >= 1");
    std::vector<SynthFrame> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        SyntheticSpec spec = base;
        spec.seed = derive_seed(seed, {static_cast<std::uint64_t>(i)});
        out.push_back(synth_sparse_frame(spec));
    }
    return out;
}

}  // namespace dmsparse

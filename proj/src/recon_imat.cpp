#include <cmath>
#include <stdexcept>

#include "dmsparse/errors.hpp"
#include "dmsparse/metrics.hpp"
#include "dmsparse/recon.hpp"

namespace dmsparse {

namespace {

Frame combine(const MaskedSignal& masked, const Frame& thresholded,
              double lambda) {
    Frame out;
    out.sample_rate = masked.sample_rate;
    out.samples.resize(masked.size());
    for (std::size_t n = 0; n < masked.size(); ++n) {
        const double d = masked.mask.d[n] ? 1.0 : 0.0;
        out.samples[n] = lambda * masked.y_d[n] +
                         (1.0 - lambda * d) * thresholded.samples[n];
    }
    return out;
}

}  // namespace

void ImatParams::validate() const {
    if (!(lambda > 0.0))
        throw std::invalid_argument("imat: lambda must be positive");
    if (!(alpha < 0.0))
        throw std::invalid_argument("imat: alpha must be negative");
    if (beta && !(*beta > 0.0))
        throw std::invalid_argument("imat: beta must be positive");
    if (max_iters < 1)
        throw std::invalid_argument("imat: max_iters must be >= 1");
    if (guard_gamma && !(*guard_gamma > 1.0))
        throw std::invalid_argument("imat: guard gamma must exceed 1");
    if (delta < 0.0)
        throw std::invalid_argument("imat: delta must be non-negative");
}

Frame imat_step(const MaskedSignal& masked, const Frame& prev, double th,
                double lambda) {
    if (prev.size() != masked.size())
        throw std::invalid_argument("imat_step: length mismatch");
    return combine(masked, hard_threshold(prev, th), lambda);
}

ImatResult imat(const MaskedSignal& masked, const ImatParams& params,
                const Frame* reference) {
    params.validate();
    if (masked.mask.ones() == 0)
        throw std::invalid_argument("imat: empty sampling mask");
    if (reference && reference->size() != masked.size())
        throw std::invalid_argument("imat: reference length mismatch");

    const double p = masked.mask.rate();
    if (!(params.lambda < 2.0 / p))
        throw NumericError(
            "imat: lambda=" + std::to_string(params.lambda) +
            " outside the convergence region (0, 2/p) = (0, " +
            std::to_string(2.0 / p) + ") at mask rate p=" + std::to_string(p));

    ImatResult result;
    result.output.sample_rate = masked.sample_rate;
    result.output.samples.assign(masked.size(), 0.0);

    double beta;
    if (params.beta) {
        beta = *params.beta;
    } else {
        const Spectrum first = dft(masked.y_d, masked.sample_rate);
        double max_mag = 0.0;
        for (const auto& c : first.coeffs)
            max_mag = std::max(max_mag, std::abs(c));
        beta = 0.9 * params.lambda * max_mag;
        if (beta == 0.0) {
            // all-zero observations: the zero frame is already consistent
            return result;
        }
    }
    result.diagnostics.beta_used = beta;
    const ThresholdSchedule schedule(beta, params.alpha);

    double floor = 0.0;
    if (params.guard_gamma) {
        const double n = static_cast<double>(masked.size());
        floor = *params.guard_gamma *
                std::sqrt(params.lambda * params.lambda * p * n *
                          params.delta * params.delta / 4.0);
    }

    Frame x = result.output;
    for (int k = 0; k < params.max_iters; ++k) {
        const double th = schedule.at(k);
        if (floor > 0.0 && th < floor) break;

        Spectrum spec = dft(x);
        const int kept = hard_threshold_spectrum(spec, th);
        spec.origin = Spectrum::Origin::estimate;

        x = combine(masked, idft(spec), params.lambda);

        result.diagnostics.thresholds.push_back(th);
        result.diagnostics.support_sizes.push_back(kept);
        if (reference)
            result.diagnostics.snr_db.push_back(snr_db(*reference, x).value);
        ++result.diagnostics.iterations;
    }
    result.output = std::move(x);
    return result;
}

ImatResult imatdm(const MaskedSignal& masked, int smoothing_len,
                  const ImatParams& params, const Frame* reference) {
    return imat(smooth_retained(masked, smoothing_len), params, reference);
}

}  // namespace dmsparse

#include <cmath>
#include <stdexcept>

#include "dmsparse/errors.hpp"
#include "dmsparse/harness.hpp"
#include "dmsparse/metrics.hpp"
#include "dmsparse/parallel.hpp"
#include "dmsparse/rng.hpp"

namespace dmsparse {

namespace {

struct FrameOutcome {
    double snr_db = 0.0;
    double mask_rate = 0.0;
    bool failed = false;
};

}  // namespace

Frame reconstruct_frame(Method method, const MaskedSignal& masked,
                        const Staircase* staircase,
                        const SweepConfig& config) {
    switch (method) {
        case Method::imat:
            return imat(masked, config.imat).output;
        case Method::imatdm:
            return imatdm(masked, config.smoothing_len, config.imat).output;
        case Method::omp: {
            const auto retained = masked.mask.ones();
            const int atoms = std::min<int>(
                config.omp_max_atoms, static_cast<int>(retained));
            double norm = 0.0;
            for (double v : masked.y_d) norm += v * v;
            return omp(masked, atoms,
                       config.omp_residual_tol_rel * std::sqrt(norm))
                .output;
        }
        case Method::lasso: {
            const double kill = lasso_kill_threshold(masked);
            if (kill <= 0.0)
                throw NumericError("lasso: zero observations");
            return lasso(masked, config.lasso_reg_rel * kill,
                         config.lasso_max_iters, config.lasso_tol)
                .output;
        }
        case Method::lowpass:
            if (staircase == nullptr)
                throw std::invalid_argument(
                    "lowpass requires a modulator staircase");
            return lowpass_reconstruct(*staircase, config.lowpass_cutoff_hz,
                                       config.lowpass_taps);
    }
    throw std::invalid_argument("unknown method");
}

namespace {

// Evaluates one method over pre-encoded frames and folds the per-frame
// outcomes into a report row.
ReportRow aggregate_row(Method method, double delta,
                        const std::vector<Frame>& frames,
                        const std::vector<MaskedSignal>& masked,
                        const std::vector<const Staircase*>& staircases,
                        const SweepConfig& config) {
    std::vector<FrameOutcome> outcomes(frames.size());
    parallel_for(frames.size(), config.jobs, [&](std::size_t i) {
        FrameOutcome& o = outcomes[i];
        o.mask_rate = masked[i].mask.rate();
        try {
            const Frame estimate = reconstruct_frame(
                method, masked[i], staircases[i], config);
            o.snr_db = snr_db(frames[i], estimate).value;
        } catch (const std::exception&) {
            o.failed = true;
            o.snr_db = 0.0;
        }
    });

    ReportRow row;
    row.method = method_name(method);
    row.delta = delta;
    row.frames = static_cast<int>(frames.size());
    std::vector<SnrDb> snrs;
    snrs.reserve(frames.size());
    double rate_sum = 0.0;
    double snr_sum = 0.0;
    for (const auto& o : outcomes) {
        rate_sum += o.mask_rate;
        snr_sum += o.snr_db;
        snrs.push_back({o.snr_db, false});
        if (o.failed) ++row.failures;
    }
    row.p = rate_sum / static_cast<double>(frames.size());
    row.mean_snr_db = snr_sum / static_cast<double>(frames.size());
    row.success_rate_pct = success_rate(snrs, config.success_threshold_db);
    return row;
}

void check_sweep_inputs(const std::vector<Frame>& frames,
                        const std::vector<Method>& methods) {
    if (frames.empty())
        throw std::invalid_argument("sweep: no frames");
    if (methods.empty())
        throw std::invalid_argument("sweep: no methods");
    for (const Frame& f : frames) validate_frame(f);
}

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::imatdm: return "imatdm";
        case Method::imat: return "imat";
        case Method::omp: return "omp";
        case Method::lasso: return "lasso";
        case Method::lowpass: return "lowpass";
    }
    throw std::invalid_argument("unknown method");
}

Method parse_method(const std::string& name) {
    if (name == "imatdm") return Method::imatdm;
    if (name == "imat") return Method::imat;
    if (name == "omp") return Method::omp;
    if (name == "lasso") return Method::lasso;
    if (name == "lowpass") return Method::lowpass;
    throw std::invalid_argument("unknown method: " + name);
}

ReportTable delta_sweep(const std::vector<Frame>& frames,
                        const std::vector<double>& deltas,
                        const std::vector<Method>& methods,
                        const SweepConfig& config) {
    check_sweep_inputs(frames, methods);
    if (deltas.empty())
        throw std::invalid_argument("sweep: no delta values");

    ReportTable table;
    for (double delta : deltas) {
        std::vector<EncodeResult> encoded(frames.size());
        std::vector<MaskedSignal> masked(frames.size());
        parallel_for(frames.size(), config.jobs, [&](std::size_t i) {
            encoded[i] = dm_encode(frames[i], delta);
            const SamplingMask mask = extract_mask(encoded[i].bits);
            masked[i] = config.noiseless
                            ? masked_values(frames[i].samples, mask,
                                            frames[i].sample_rate)
                            : masked_signal(encoded[i].staircase, mask);
        });
        std::vector<const Staircase*> staircases(frames.size());
        for (std::size_t i = 0; i < frames.size(); ++i)
            staircases[i] = &encoded[i].staircase;

        for (Method method : methods)
            table.rows.push_back(aggregate_row(method, delta, frames, masked,
                                               staircases, config));
    }
    return table;
}

ReportTable adm_benchmark(const std::vector<Frame>& frames,
                          const AdmParams& params,
                          const std::vector<Method>& methods,
                          const SweepConfig& config) {
    check_sweep_inputs(frames, methods);
    params.validate();

    std::vector<EncodeResult> encoded(frames.size());
    std::vector<MaskedSignal> masked(frames.size());
    parallel_for(frames.size(), config.jobs, [&](std::size_t i) {
        encoded[i] = adm_encode(frames[i], params);
        const SamplingMask mask = extract_mask(encoded[i].bits);
        masked[i] = config.noiseless
                        ? masked_values(frames[i].samples, mask,
                                        frames[i].sample_rate)
                        : masked_signal(encoded[i].staircase, mask);
    });
    std::vector<const Staircase*> staircases(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i)
        staircases[i] = &encoded[i].staircase;

    ReportTable table;
    for (Method method : methods)
        table.rows.push_back(aggregate_row(method, params.delta0, frames,
                                           masked, staircases, config));
    return table;
}

ReportTable bernoulli_sweep(const std::vector<Frame>& frames,
                            const std::vector<double>& rates,
                            const std::vector<Method>& methods,
                            const SweepConfig& config) {
    check_sweep_inputs(frames, methods);
    if (rates.empty())
        throw std::invalid_argument("sweep: no sampling rates");
    for (Method m : methods)
        if (m == Method::lowpass)
            throw std::invalid_argument(
                "bernoulli_sweep: lowpass requires a modulator staircase");

    ReportTable table;
    for (std::size_t r = 0; r < rates.size(); ++r) {
        std::vector<MaskedSignal> masked(frames.size());
        parallel_for(frames.size(), config.jobs, [&](std::size_t i) {
            const SamplingMask mask = bernoulli_mask(
                frames[i].size(), rates[r],
                derive_seed(config.seed, {static_cast<std::uint64_t>(r),
                                          static_cast<std::uint64_t>(i)}));
            masked[i] = masked_values(frames[i].samples, mask,
                                      frames[i].sample_rate);
        });
        std::vector<const Staircase*> staircases(frames.size(), nullptr);

        for (Method method : methods)
            table.rows.push_back(aggregate_row(method, 0.0, frames, masked,
                                               staircases, config));
    }
    return table;
}

}  // namespace dmsparse

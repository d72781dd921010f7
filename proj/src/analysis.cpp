#include "dmsparse/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <stdexcept>

#include "dmsparse/dm.hpp"
#include "dmsparse/errors.hpp"
#include "dmsparse/recon.hpp"
#include "dmsparse/rng.hpp"

namespace dmsparse {

namespace {

double rel_or_abs_error(double empirical, double predicted) {
    const double denom = std::abs(predicted);
    const double err = std::abs(empirical - predicted);
    return denom > 1e-12 ? err / denom : err;
}

}  // namespace

SpectrumStats validate_theorem1(const Frame& frame, double p, double delta,
                                int trials, std::uint64_t seed) {
    validate_frame(frame);
    if (trials < 100)
        throw std::invalid_argument("validate_theorem1: need at least 100 trials");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("validate_theorem1: p outside [0,1]");
    if (delta < 0.0)
        throw std::invalid_argument("validate_theorem1: delta must be non-negative");

    const std::size_t n = frame.size();
    const Spectrum x_spec = dft(frame);
    const double eps_x = energy(frame);

    SpectrumStats stats;
    stats.trials = trials;
    stats.predicted_mean.resize(n);
    for (std::size_t m = 0; m < n; ++m)
        stats.predicted_mean[m] = p * x_spec.coeffs[m];
    stats.predicted_variance =
        (p - p * p) * eps_x +
        p * static_cast<double>(n) * delta * delta / 4.0;

    std::vector<std::complex<double>> sum(n, 0.0);
    std::vector<double> sum_sq_dev(n, 0.0);
    for (int t = 0; t < trials; ++t) {
        const auto draw =
            iid_model_sample(frame, p, delta, derive_seed(seed, {static_cast<std::uint64_t>(t)}));
        const auto y_spec = fft_forward(
            std::vector<std::complex<double>>(draw.y_d.begin(), draw.y_d.end()));
        for (std::size_t m = 0; m < n; ++m) {
            sum[m] += y_spec[m];
            sum_sq_dev[m] += std::norm(y_spec[m] - stats.predicted_mean[m]);
        }
    }

    stats.empirical_mean.resize(n);
    stats.empirical_variance.resize(n);
    double dev_sq = 0.0;
    double ref_sq = 0.0;
    double var_sum = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        stats.empirical_mean[m] = sum[m] / static_cast<double>(trials);
        stats.empirical_variance[m] = sum_sq_dev[m] / static_cast<double>(trials);
        dev_sq += std::norm(stats.empirical_mean[m] - stats.predicted_mean[m]);
        ref_sq += std::norm(stats.predicted_mean[m]);
        var_sum += stats.empirical_variance[m];
    }
    stats.mean_rel_error =
        ref_sq > 0.0 ? std::sqrt(dev_sq / ref_sq) : std::sqrt(dev_sq);
    stats.variance_bin_avg = var_sum / static_cast<double>(n);
    stats.variance_rel_error =
        rel_or_abs_error(stats.variance_bin_avg, stats.predicted_variance);
    return stats;
}

ConvergenceTrace geometric_error_check(const GeometricCheckConfig& config) {
    if (config.n < 8)
        throw std::invalid_argument("geometric_error_check: n too small");
    if (config.tracked_bin < 1 ||
        2 * config.tracked_bin >= static_cast<int>(config.n))
        throw std::invalid_argument("geometric_error_check: tracked bin must lie in (0, n/2)");
    if (!(config.p > 0.0 && config.p <= 1.0))
        throw std::invalid_argument("geometric_error_check: p outside (0,1]");
    if (!(config.lambda > 0.0 && config.lambda < 2.0 / config.p))
        throw std::invalid_argument("geometric_error_check: lambda outside (0, 2/p)");
    if (config.trials < 1 || config.iterations < 1)
        throw std::invalid_argument("geometric_error_check: trials and iterations must be >= 1");

    const std::size_t n = config.n;
    const auto m = static_cast<std::size_t>(config.tracked_bin);
    Frame tone;
    tone.samples.resize(n);
    const double w = 2.0 * std::numbers::pi * static_cast<double>(m) /
                     static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        tone.samples[i] = config.amplitude * std::cos(w * static_cast<double>(i));

    const std::complex<double> x_m =
        dft(tone).coeffs[m];  // N * amplitude / 2 up to rounding

    // Slowly decaying threshold pinned below p|X(m)| and above the noise.
    const double beta = config.threshold_frac * config.p * std::abs(x_m);
    const ThresholdSchedule schedule(beta, -1e-3);

    const int k_max = config.iterations;
    std::vector<std::complex<double>> sum(static_cast<std::size_t>(k_max) + 1, 0.0);
    std::vector<double> sum_mag2(static_cast<std::size_t>(k_max) + 1, 0.0);
    std::vector<double> sum_mse(static_cast<std::size_t>(k_max) + 1, 0.0);

    for (int t = 0; t < config.trials; ++t) {
        const auto draw = iid_model_sample(
            tone, config.p, config.delta,
            derive_seed(config.seed, {static_cast<std::uint64_t>(t)}));
        MaskedSignal masked;
        masked.y_d = draw.y_d;
        masked.mask = draw.mask;
        masked.sample_rate = tone.sample_rate;

        Frame x;
        x.sample_rate = tone.sample_rate;
        x.samples.assign(n, 0.0);
        // k = 0 contributes X_0(m) = 0 to the sums implicitly.
        sum_mse[0] += std::norm(x_m);
        for (int k = 1; k <= k_max; ++k) {
            x = imat_step(masked, x, schedule.at(k - 1), config.lambda);
            const auto x_k = dft(x).coeffs[m];
            sum[static_cast<std::size_t>(k)] += x_k;
            sum_mag2[static_cast<std::size_t>(k)] += std::norm(x_k);
            sum_mse[static_cast<std::size_t>(k)] += std::norm(x_k - x_m);
        }
    }

    ConvergenceTrace trace;
    trace.tracked_bin = config.tracked_bin;
    trace.true_coefficient = x_m;
    trace.trials = config.trials;
    trace.theoretical_ratio = 1.0 - config.lambda * config.p;
    const auto mt = static_cast<double>(config.trials);
    trace.mean_error.resize(static_cast<std::size_t>(k_max) + 1);
    trace.bias.resize(static_cast<std::size_t>(k_max) + 1);
    trace.variance.resize(static_cast<std::size_t>(k_max) + 1);
    trace.mse.resize(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        const auto mean = sum[idx] / mt;
        trace.mean_error[idx] = x_m - mean;
        trace.bias[idx] = std::abs(trace.mean_error[idx]);
        trace.variance[idx] = sum_mag2[idx] / mt - std::norm(mean);
        trace.mse[idx] = sum_mse[idx] / mt;
    }

    // Successive-ratio fit through the origin, e_{k+1} ~ r e_k, restricted
    // to errors that stand clear of the Monte Carlo noise floor.
    double num = 0.0;
    double den = 0.0;
    for (int k = 0; k < k_max; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        const double stderr_k =
            std::sqrt(std::max(trace.variance[idx], 0.0) / mt);
        const double floor =
            std::max(3.0 * stderr_k, 1e-12 * std::abs(x_m));
        if (trace.bias[idx] < floor) {
            trace.truncated = true;
            continue;
        }
        num += (std::conj(trace.mean_error[idx]) * trace.mean_error[idx + 1])
                   .real();
        den += std::norm(trace.mean_error[idx]);
    }
    if (den == 0.0)
        throw NumericError("geometric_error_check: every error term underflowed");
    trace.fitted_ratio = num / den;
    return trace;
}

double predicted_sigma2(double lambda, double p, double n, double delta,
                        double eps_r, double eps_s) {
    const double l2 = lambda * lambda;
    return l2 * (p - p * p) * eps_r + l2 * (p - p * p) * eps_s +
           l2 * p * n * delta * delta / 4.0;
}

std::vector<int> spectrum_support(const Spectrum& spec, double rel_tol) {
    double max_mag = 0.0;
    for (const auto& c : spec.coeffs) max_mag = std::max(max_mag, std::abs(c));
    std::vector<int> support;
    for (std::size_t m = 0; m < spec.size(); ++m)
        if (std::abs(spec.coeffs[m]) > rel_tol * max_mag && max_mag > 0.0)
            support.push_back(static_cast<int>(m));
    return support;
}

VarianceDecomposition decompose_variance(const Frame& reference,
                                         const Frame& thresholded_estimate,
                                         const std::vector<int>& support,
                                         double p, double lambda,
                                         double delta) {
    if (reference.size() != thresholded_estimate.size())
        throw std::invalid_argument("decompose_variance: length mismatch");
    const auto n = static_cast<int>(reference.size());

    std::set<int> supp(support.begin(), support.end());
    for (int m : supp) {
        if (m < 0 || m >= n)
            throw std::invalid_argument("decompose_variance: support bin out of range");
        if (supp.count((n - m) % n) == 0)
            throw std::invalid_argument(
                "decompose_variance: support must be closed under conjugation");
    }

    const Spectrum t_spec = dft(thresholded_estimate);
    Spectrum on_spec = t_spec;
    Spectrum off_spec = t_spec;
    for (int m = 0; m < n; ++m) {
        if (supp.count(m))
            off_spec.coeffs[static_cast<std::size_t>(m)] = 0.0;
        else
            on_spec.coeffs[static_cast<std::size_t>(m)] = 0.0;
    }

    VarianceDecomposition out;
    out.support.assign(supp.begin(), supp.end());
    out.reconstructed_part = idft(on_spec);
    out.mistaken_part = idft(off_spec);
    out.residual_part.sample_rate = reference.sample_rate;
    out.residual_part.samples.resize(reference.size());
    for (std::size_t i = 0; i < reference.size(); ++i)
        out.residual_part.samples[i] =
            reference.samples[i] - out.reconstructed_part.samples[i];

    out.residual_energy = energy(out.residual_part);
    out.mistaken_energy = energy(out.mistaken_part);
    const double l2 = lambda * lambda;
    out.residual_term = l2 * (p - p * p) * out.residual_energy;
    out.mistaken_term = l2 * (p - p * p) * out.mistaken_energy;
    out.coding_term = l2 * p * static_cast<double>(n) * delta * delta / 4.0;
    out.sigma2 = out.residual_term + out.mistaken_term + out.coding_term;
    return out;
}

GuardReport guard_check(const ThresholdSchedule& schedule, double gamma,
                        const std::vector<double>& sigma_estimates) {
    if (!(gamma > 1.0))
        throw std::invalid_argument("guard_check: gamma must exceed 1");

    GuardReport report;
    report.thresholds.reserve(sigma_estimates.size());
    report.bounds.reserve(sigma_estimates.size());
    for (std::size_t k = 0; k < sigma_estimates.size(); ++k) {
        const double th = schedule.at(static_cast<int>(k));
        const double bound = gamma * sigma_estimates[k];
        report.thresholds.push_back(th);
        report.bounds.push_back(bound);
        if (th < bound && report.passed) {
            report.passed = false;
            report.first_violation = static_cast<int>(k);
        }
    }
    return report;
}

std::vector<ValidationRow> theorem1_rows(const SpectrumStats& stats,
                                         std::uint64_t seed) {
    double pred_norm = 0.0;
    double emp_norm = 0.0;
    for (const auto& c : stats.predicted_mean) pred_norm += std::norm(c);
    for (const auto& c : stats.empirical_mean) emp_norm += std::norm(c);

    std::vector<ValidationRow> rows;
    rows.push_back({"mean_spectrum_l2", std::sqrt(pred_norm),
                    std::sqrt(emp_norm), stats.mean_rel_error, stats.trials,
                    seed});
    rows.push_back({"variance_bin_avg", stats.predicted_variance,
                    stats.variance_bin_avg, stats.variance_rel_error,
                    stats.trials, seed});
    return rows;
}

std::vector<ValidationRow> theorem2_rows(const ConvergenceTrace& trace,
                                         std::uint64_t seed) {
    std::vector<ValidationRow> rows;
    rows.push_back({"mean_error_common_ratio", trace.theoretical_ratio,
                    trace.fitted_ratio,
                    rel_or_abs_error(trace.fitted_ratio, trace.theoretical_ratio),
                    trace.trials, seed});
    if (trace.bias.size() > 1) {
        const double expected =
            std::abs(trace.theoretical_ratio) * trace.bias[0];
        rows.push_back({"bias_after_first_iteration", expected, trace.bias[1],
                        rel_or_abs_error(trace.bias[1], expected),
                        trace.trials, seed});
    }
    return rows;
}

std::string validation_csv(const std::vector<ValidationRow>& rows) {
    std::string out = "quantity,predicted,empirical,rel_error,trials,seed\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%.10g,%.10g,%.10g,%ld,%llu\n",
                      r.quantity.c_str(), r.predicted, r.empirical,
                      r.rel_error, r.trials,
                      static_cast<unsigned long long>(r.seed));
        out += buf;
    }
    return out;
}

void write_validation_csv(const std::string& path,
                          const std::vector<ValidationRow>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << validation_csv(rows);
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace dmsparse

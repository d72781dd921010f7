#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "dmsparse/errors.hpp"
#include "dmsparse/recon.hpp"

namespace dmsparse {

namespace {

// Column layout for one conjugate pair: DC and Nyquist contribute a single
// real coefficient, every other pair a cosine and a sine coefficient.
int columns_for(int bin, std::size_t n) {
    const bool self_paired = bin == 0 || 2 * bin == static_cast<int>(n);
    return self_paired ? 1 : 2;
}

void fill_columns(Eigen::MatrixXd& a, int col, int bin,
                  const std::vector<std::size_t>& rows, std::size_t n) {
    const double w = 2.0 * std::numbers::pi * bin / static_cast<double>(n);
    const double scale = 1.0 / static_cast<double>(n);
    const bool self_paired = bin == 0 || 2 * bin == static_cast<int>(n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double phase = w * static_cast<double>(rows[i]);
        if (self_paired) {
            a(static_cast<Eigen::Index>(i), col) = scale * std::cos(phase);
        } else {
            a(static_cast<Eigen::Index>(i), col) = 2.0 * scale * std::cos(phase);
            a(static_cast<Eigen::Index>(i), col + 1) =
                -2.0 * scale * std::sin(phase);
        }
    }
}

}  // namespace

OmpResult omp(const MaskedSignal& masked, int max_atoms, double residual_tol) {
    const auto rows = masked.mask.retained_indices();
    if (max_atoms < 0)
        throw std::invalid_argument("omp: max_atoms must be >= 0");
    if (static_cast<std::size_t>(max_atoms) > rows.size())
        throw std::invalid_argument("omp: max_atoms exceeds retained sample count");
    if (residual_tol < 0.0)
        throw std::invalid_argument("omp: residual_tol must be >= 0");

    const std::size_t n = masked.size();
    OmpResult result;
    result.output.sample_rate = masked.sample_rate;
    result.output.samples.assign(n, 0.0);

    Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        y(static_cast<Eigen::Index>(i)) = masked.y_d[rows[i]];

    Eigen::VectorXd residual = y;
    Eigen::VectorXd coeffs;
    std::vector<char> picked(n / 2 + 1, 0);

    while (static_cast<int>(result.selected_bins.size()) < max_atoms &&
           residual.norm() > residual_tol) {
        // Correlate via the zero-filled DFT of the residual. Self-paired
        // bins carry half the projection weight of a full pair.
        std::vector<std::complex<double>> padded(n, 0.0);
        for (std::size_t i = 0; i < rows.size(); ++i)
            padded[rows[i]] = residual(static_cast<Eigen::Index>(i));
        const auto corr = fft_forward(padded);

        int best = -1;
        double best_score = 0.0;
        for (int m = 0; m <= static_cast<int>(n) / 2; ++m) {
            if (picked[static_cast<std::size_t>(m)]) continue;
            const double mag2 = std::norm(corr[static_cast<std::size_t>(m)]);
            const double score =
                columns_for(m, n) == 1 ? mag2 : 2.0 * mag2;
            if (score > best_score) {
                best_score = score;
                best = m;
            }
        }
        if (best < 0) break;  // residual orthogonal to every atom

        picked[static_cast<std::size_t>(best)] = 1;
        result.selected_bins.push_back(best);

        int total_cols = 0;
        for (int m : result.selected_bins) total_cols += columns_for(m, n);

        Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), total_cols);
        int col = 0;
        for (int m : result.selected_bins) {
            fill_columns(a, col, m, rows, n);
            col += columns_for(m, n);
        }

        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
        if (qr.rank() < total_cols)
            throw NumericError("omp: rank-deficient least-squares refit with " +
                               std::to_string(total_cols) + " coefficients on " +
                               std::to_string(rows.size()) + " samples");
        coeffs = qr.solve(y);
        residual = y - a * coeffs;
        result.residual_norms.push_back(residual.norm());
    }

    // Expand the fitted coefficients over the full time axis.
    if (!result.selected_bins.empty()) {
        int col = 0;
        for (int m : result.selected_bins) {
            const double w =
                2.0 * std::numbers::pi * m / static_cast<double>(n);
            const double scale = 1.0 / static_cast<double>(n);
            if (columns_for(m, n) == 1) {
                const double c = coeffs(col);
                for (std::size_t t = 0; t < n; ++t)
                    result.output.samples[t] +=
                        c * scale * std::cos(w * static_cast<double>(t));
                col += 1;
            } else {
                const double cc = coeffs(col);
                const double cs = coeffs(col + 1);
                for (std::size_t t = 0; t < n; ++t) {
                    const double phase = w * static_cast<double>(t);
                    result.output.samples[t] +=
                        2.0 * scale *
                        (cc * std::cos(phase) - cs * std::sin(phase));
                }
                col += 2;
            }
        }
    }
    return result;
}

}  // namespace dmsparse

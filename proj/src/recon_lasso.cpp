#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "dmsparse/recon.hpp"

namespace dmsparse {

namespace {

using CVec = std::vector<std::complex<double>>;

// A S = real part of idft(S) on the retained rows.
std::vector<double> apply_forward(const CVec& spectrum,
                                  const std::vector<std::size_t>& rows) {
    const auto time = fft_inverse(spectrum);
    std::vector<double> out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        out[i] = time[rows[i]].real();
    return out;
}

// A* v = (1/N) dft(zero-filled v).
CVec apply_adjoint(const std::vector<double>& v,
                   const std::vector<std::size_t>& rows, std::size_t n) {
    CVec padded(n, 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) padded[rows[i]] = v[i];
    auto out = fft_forward(padded);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& c : out) c *= scale;
    return out;
}

void hermitian_project(CVec& s) {
    const std::size_t n = s.size();
    for (std::size_t m = 0; m <= n / 2; ++m) {
        const std::size_t partner = (n - m) % n;
        if (partner == m) {
            s[m] = std::complex<double>(s[m].real(), 0.0);
        } else {
            const auto avg = 0.5 * (s[m] + std::conj(s[partner]));
            s[m] = avg;
            s[partner] = std::conj(avg);
        }
    }
}

double l1_norm(const CVec& s) {
    double acc = 0.0;
    for (const auto& c : s) acc += std::abs(c);
    return acc;
}

}  // namespace

double lasso_kill_threshold(const MaskedSignal& masked) {
    const auto rows = masked.mask.retained_indices();
    std::vector<double> y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) y[i] = masked.y_d[rows[i]];
    const auto grad0 = apply_adjoint(y, rows, masked.size());
    double max_mag = 0.0;
    for (const auto& c : grad0) max_mag = std::max(max_mag, std::abs(c));
    return 2.0 * max_mag;
}

LassoResult lasso(const MaskedSignal& masked, double reg, int max_iters,
                  double tol) {
    if (!(reg > 0.0))
        throw std::invalid_argument("lasso: reg must be positive");
    if (max_iters < 1)
        throw std::invalid_argument("lasso: max_iters must be >= 1");
    if (!(tol >= 0.0))
        throw std::invalid_argument("lasso: tol must be >= 0");

    const std::size_t n = masked.size();
    if (n == 0) throw std::invalid_argument("lasso: empty input");
    const auto rows = masked.mask.retained_indices();

    std::vector<double> y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) y[i] = masked.y_d[rows[i]];

    // Lipschitz constant of the gradient: L = 2 ||A||^2 = 2/N, since the
    // inverse transform scales energy by 1/N and restriction only drops
    // rows. The proximal step uses exactly 1/L.
    const double step = static_cast<double>(n) / 2.0;
    const double shrink = step * reg;

    CVec s(n, 0.0);
    CVec best = s;
    double best_obj = std::numeric_limits<double>::infinity();

    LassoResult result;
    result.output.sample_rate = masked.sample_rate;

    double prev_obj = std::numeric_limits<double>::infinity();
    for (int k = 0; k < max_iters; ++k) {
        const auto fitted = apply_forward(s, rows);
        std::vector<double> resid(rows.size());
        double data_term = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            resid[i] = fitted[i] - y[i];
            data_term += resid[i] * resid[i];
        }
        const double obj = data_term + reg * l1_norm(s);
        result.objective.push_back(obj);
        if (obj < best_obj) {
            best_obj = obj;
            best = s;
        }
        if (k > 0 && std::abs(prev_obj - obj) <= tol * std::max(obj, 1.0)) {
            result.converged = true;
            result.iterations = k + 1;
            break;
        }
        prev_obj = obj;

        const auto grad = apply_adjoint(resid, rows, n);  // (1/2) gradient
        for (std::size_t m = 0; m < n; ++m) {
            const auto v = s[m] - 2.0 * step * grad[m];
            const double mag = std::abs(v);
            s[m] = mag <= shrink ? std::complex<double>(0.0, 0.0)
                                 : v * (1.0 - shrink / mag);
        }
        hermitian_project(s);
        result.iterations = k + 1;
    }

    if (!result.converged) s = best;

    Spectrum spec;
    spec.coeffs = std::move(s);
    spec.origin = Spectrum::Origin::estimate;
    spec.sample_rate = masked.sample_rate;
    result.output = idft(spec);
    return result;
}

}  // namespace dmsparse

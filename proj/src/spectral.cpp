#include "dmsparse/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "dmsparse/errors.hpp"

namespace dmsparse {

namespace {

// FFTW plan creation is not reentrant, so plans are cached per size behind
// a mutex. Execution through fftw_execute_dft on caller-owned buffers is
// safe to run concurrently.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan forward(int n) { return get(n, FFTW_FORWARD); }
    fftw_plan inverse(int n) { return get(n, FFTW_BACKWARD); }

private:
    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::vector<std::complex<double>> buf(static_cast<std::size_t>(n));
        auto* ptr = reinterpret_cast<fftw_complex*>(buf.data());
        fftw_plan plan = fftw_plan_dft_1d(n, ptr, ptr, sign, FFTW_ESTIMATE);
        plans_.emplace(key, plan);
        return plan;
    }

    std::mutex mu_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

std::vector<std::complex<double>> execute(
    const std::vector<std::complex<double>>& in, int sign) {
    if (in.empty()) throw std::invalid_argument("fft: empty input");
    const int n = static_cast<int>(in.size());
    fftw_plan plan = sign == FFTW_FORWARD ? PlanCache::instance().forward(n)
                                          : PlanCache::instance().inverse(n);
    std::vector<std::complex<double>> out(in.size());
    auto* src = reinterpret_cast<fftw_complex*>(
        const_cast<std::complex<double>*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plan, src, dst);
    return out;
}

}  // namespace

std::vector<std::complex<double>> fft_forward(
    const std::vector<std::complex<double>>& in) {
    return execute(in, FFTW_FORWARD);
}

std::vector<std::complex<double>> fft_inverse(
    const std::vector<std::complex<double>>& in) {
    auto out = execute(in, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(in.size());
    for (auto& v : out) v *= scale;
    return out;
}

ThresholdSchedule::ThresholdSchedule(double beta_, double alpha_)
    : beta(beta_), alpha(alpha_) {
    if (!(beta > 0.0))
        throw std::invalid_argument("threshold schedule: beta must be positive");
    if (!(alpha < 0.0))
        throw std::invalid_argument("threshold schedule: alpha must be negative");
}

double ThresholdSchedule::at(int k) const {
    if (k < 0) throw std::invalid_argument("threshold schedule: k must be >= 0");
    return beta * std::exp(alpha * static_cast<double>(k));
}

double threshold_at(const ThresholdSchedule& sched, int k) { return sched.at(k); }

Spectrum dft(const std::vector<double>& samples, double sample_rate) {
    std::vector<std::complex<double>> buf(samples.begin(), samples.end());
    Spectrum spec;
    spec.coeffs = fft_forward(buf);
    spec.sample_rate = sample_rate;
    return spec;
}

Spectrum dft(const Frame& frame) { return dft(frame.samples, frame.sample_rate); }

Frame idft(const Spectrum& spec) {
    const auto time = fft_inverse(spec.coeffs);

    double max_mag = 0.0;
    for (const auto& v : time) max_mag = std::max(max_mag, std::abs(v));
    const double bound = 1e-9 * std::max(max_mag, 1.0);

    Frame out;
    out.sample_rate = spec.sample_rate;
    out.samples.resize(time.size());
    for (std::size_t i = 0; i < time.size(); ++i) {
        if (std::abs(time[i].imag()) > bound)
            throw NumericError("idft: non-real output, spectrum is not Hermitian");
        out.samples[i] = time[i].real();
    }
    return out;
}

int hard_threshold_spectrum(Spectrum& spec, double th) {
    if (th < 0.0)
        throw std::invalid_argument("hard_threshold: threshold must be >= 0");
    const std::size_t n = spec.size();
    int kept = 0;
    for (std::size_t m = 0; m <= n / 2; ++m) {
        const std::size_t partner = (n - m) % n;
        const double mag =
            std::max(std::abs(spec.coeffs[m]), std::abs(spec.coeffs[partner]));
        if (mag < th || mag == 0.0) {
            spec.coeffs[m] = 0.0;
            spec.coeffs[partner] = 0.0;
        } else {
            kept += (partner == m) ? 1 : 2;
        }
    }
    return kept;
}

Frame hard_threshold(const Frame& frame, double th) {
    Spectrum spec = dft(frame);
    hard_threshold_spectrum(spec, th);
    spec.origin = Spectrum::Origin::estimate;
    return idft(spec);
}

MaskedSignal smooth_retained(const MaskedSignal& masked, int l) {
    if (l < 2 || l % 2 != 0)
        throw std::invalid_argument("smooth_retained: l must be even and >= 2");
    const auto idx = masked.mask.retained_indices();
    if (idx.size() < static_cast<std::size_t>(l))
        throw std::invalid_argument("smooth_retained: fewer retained samples than l");

    const std::size_t r = idx.size();
    std::vector<double> retained(r);
    for (std::size_t i = 0; i < r; ++i) retained[i] = masked.y_d[idx[i]];

    MaskedSignal out = masked;
    const std::size_t half = static_cast<std::size_t>(l) / 2;
    for (std::size_t i = 0; i < r; ++i) {
        std::size_t start = i > half ? i - half : 0;
        start = std::min(start, r - static_cast<std::size_t>(l));
        double acc = 0.0;
        for (std::size_t j = 0; j < static_cast<std::size_t>(l); ++j)
            acc += retained[start + j];
        out.y_d[idx[i]] = acc / static_cast<double>(l);
    }
    return out;
}

}  // namespace dmsparse

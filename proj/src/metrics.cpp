#include "dmsparse/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace dmsparse {

SnrDb snr_db(const Frame& reference, const Frame& estimate, double cap_db) {
    if (reference.size() != estimate.size())
        throw std::invalid_argument("snr_db: length mismatch");
    const double ref_energy = energy(reference);
    if (ref_energy <= 0.0)
        throw std::invalid_argument("snr_db: reference has zero energy");

    double err_energy = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const double e = estimate.samples[i] - reference.samples[i];
        err_energy += e * e;
    }
    if (err_energy == 0.0) return {cap_db, true};

    const double value = 10.0 * std::log10(ref_energy / err_energy);
    if (value >= cap_db) return {cap_db, true};
    return {value, false};
}

double success_rate(const std::vector<SnrDb>& snrs, double threshold_db) {
    if (snrs.empty())
        throw std::invalid_argument("success_rate: empty list");
    std::size_t hits = 0;
    for (const SnrDb& s : snrs)
        if (s.value >= threshold_db) ++hits;
    return 100.0 * static_cast<double>(hits) / static_cast<double>(snrs.size());
}

}  // namespace dmsparse

#pragma once

#include <vector>

#include "dmsparse/frame.hpp"

namespace dmsparse {

inline constexpr double kSnrCapDb = 100.0;

// Reconstruction SNR in decibels. `capped` is set when the value hit the
// configured ceiling (zero error energy, or a ratio beyond the cap), which
// keeps report columns finite and sortable.
struct SnrDb {
    double value = 0.0;
    bool capped = false;
};

// 10*log10( sum x^2 / sum (xhat - x)^2 ), capped at `cap_db`.
SnrDb snr_db(const Frame& reference, const Frame& estimate,
             double cap_db = kSnrCapDb);

// Percentage of entries at or above the threshold.
double success_rate(const std::vector<SnrDb>& snrs, double threshold_db);

}  // namespace dmsparse

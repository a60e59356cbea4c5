#include "pilotopt/estimation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pilotopt {

FadingModel FadingModel::continuous(double doppler) {
    if (!std::isfinite(doppler) || doppler < 0.0 || doppler >= 0.5) {
        throw std::domain_error("continuous fading requires 0 <= f_D < 0.5, got " + std::to_string(doppler));
    }
    return FadingModel{Kind::Continuous, doppler};
}

const char* to_string(FadingModel::Kind kind) {
    return kind == FadingModel::Kind::Block ? "block" : "continuous";
}

void check_pilot_fraction(double alpha, int n, double snr) {
    if (n < 1) throw std::domain_error("blocklength must be positive");
    if (!std::isfinite(snr) || snr <= 0.0) throw std::domain_error("snr must be positive and finite");
    // alpha = 1/n computed by the caller may differ from ours by an ulp
    const double min_alpha = (1.0 - 1e-12) / n;
    if (!std::isfinite(alpha) || alpha < min_alpha || alpha >= 1.0) {
        throw std::domain_error("pilot fraction must satisfy 1/n <= alpha < 1, got alpha=" +
                                std::to_string(alpha) + " n=" + std::to_string(n));
    }
}

double mmse_error_block(double alpha, int n, double snr) {
    check_pilot_fraction(alpha, n, snr);
    return 1.0 / (1.0 + alpha * n * snr);
}

double doppler_error(double alpha, int n, double snr, double f_d) {
    check_pilot_fraction(alpha, n, snr);
    if (!std::isfinite(f_d) || f_d < 0.0) throw std::domain_error("doppler must be non-negative");
    const double training_gain = alpha * n * snr;
    const double drift = std::numbers::pi * training_gain * f_d / (1.0 + training_gain);
    const double offset = n - alpha * n / 2.0;
    return 2.0 * drift * drift * offset * offset;
}

EstimationErrorBreakdown mmse_error(double alpha, int n, double snr, const FadingModel& model) {
    EstimationErrorBreakdown out;
    out.noise_term = mmse_error_block(alpha, n, snr);
    if (!model.is_block()) out.doppler_term = doppler_error(alpha, n, snr, model.doppler());
    out.total = out.noise_term + out.doppler_term;
    return out;
}

double effective_snr(double snr, double est_error) {
    if (!std::isfinite(snr) || snr <= 0.0) throw std::domain_error("snr must be positive and finite");
    if (!(est_error >= 0.0)) throw std::domain_error("estimation error must be non-negative");
    if (est_error >= 1.0) return 0.0;
    return snr * (1.0 - est_error) / (1.0 + snr * est_error);
}

}  // namespace pilotopt

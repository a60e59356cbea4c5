#pragma once

#include "pilotopt/estimation.hpp"

namespace pilotopt {

/// One evaluation point. snr is linear.
struct LinkConfig {
    int n = 2;
    double snr = 1.0;
    double epsilon = 0.5;
    FadingModel model = FadingModel::block();

    /// Throws std::invalid_argument naming the violated constraint.
    void validate() const;

    double min_alpha() const { return 1.0 / n; }
    double max_alpha() const { return 1.0 - 1.0 / n; }
};

/// Rates are floored at zero; `clamped` marks a floored value or an
/// effective SNR clamped to zero.
struct RateValue {
    double bits_per_use = 0.0;
    bool clamped = false;
};

/// All intermediate quantities of one training-aware rate evaluation.
struct TrainingRateBreakdown {
    EstimationErrorBreakdown est_error;
    double effective_snr = 0.0;
    double capacity = 0.0;    ///< C(effective_snr), 0 when it is clamped
    double dispersion = 0.0;  ///< V(effective_snr), 0 when it is clamped
    double penalty = 0.0;     ///< Q^-1(eps) sqrt((1 - alpha) V / n)
    RateValue finite;         ///< (1 - alpha) C - penalty, floored
    RateValue ergodic;        ///< (1 - alpha) C
};

/// Normal approximation with perfect CSI: C - sqrt(V/n) Q^-1(eps), floored at 0.
RateValue perfect_csi_rate(int n, double epsilon, double snr);

/// Finite-blocklength rate with alpha*n pilots; the (1 - alpha) factor scales
/// C and also sits inside the square root of the dispersion penalty.
RateValue training_rate(double alpha, const LinkConfig& cfg);

/// training_rate without the dispersion penalty (same n-dependent estimation error).
RateValue ergodic_training_rate(double alpha, const LinkConfig& cfg);

TrainingRateBreakdown training_rate_breakdown(double alpha, const LinkConfig& cfg);

/// Throws std::domain_error unless 1/n <= alpha <= 1 - 1/n.
void check_alpha_interval(double alpha, int n);

}  // namespace pilotopt

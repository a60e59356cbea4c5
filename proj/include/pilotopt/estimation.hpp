#pragma once

namespace pilotopt {

/// Block fading (gain constant over the packet) or continuous fading with a
/// per-symbol normalized Doppler frequency in [0, 0.5).
class FadingModel {
public:
    enum class Kind { Block, Continuous };

    static FadingModel block() { return FadingModel{Kind::Block, 0.0}; }
    static FadingModel continuous(double doppler);

    Kind kind() const { return kind_; }
    bool is_block() const { return kind_ == Kind::Block; }
    /// 0 for block fading.
    double doppler() const { return doppler_; }

    friend bool operator==(const FadingModel&, const FadingModel&) = default;

private:
    FadingModel(Kind k, double fd) : kind_(k), doppler_(fd) {}
    Kind kind_;
    double doppler_;
};

const char* to_string(FadingModel::Kind kind);

struct EstimationErrorBreakdown {
    double noise_term = 0.0;    ///< 1/(1 + alpha n snr)
    double doppler_term = 0.0;  ///< 0 for block fading
    double total = 0.0;         ///< noise_term + doppler_term
};

/// Throws std::domain_error unless 1/n <= alpha < 1, n >= 1 and snr > 0.
void check_pilot_fraction(double alpha, int n, double snr);

/// MMSE error of a block-fading gain estimated from alpha*n unit pilots.
double mmse_error_block(double alpha, int n, double snr);

/// Extra estimation error from channel drift over the packet:
/// 2 (pi alpha n snr f_d / (1 + alpha n snr))^2 (n - alpha n / 2)^2.
double doppler_error(double alpha, int n, double snr, double f_d);

EstimationErrorBreakdown mmse_error(double alpha, int n, double snr, const FadingModel& model);

/// snr (1 - e) / (1 + snr e); 0 when e >= 1.
double effective_snr(double snr, double est_error);

}  // namespace pilotopt

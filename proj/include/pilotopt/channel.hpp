#pragma once

#include "pilotopt/specfun.hpp"

#include <stdexcept>

namespace pilotopt {

/// log2(e)
inline constexpr double kLog2E = 1.4426950408889634074;

/// Perfect-CSI Rayleigh moments at one linear SNR.
struct ChannelMoments {
    double snr = 0.0;
    double capacity = 0.0;    ///< E[log2(1 + snr g)], bits/use
    double mean_inv = 0.0;    ///< E[1/(1 + snr g)]
    double var_log = 0.0;     ///< Var[log2(1 + snr g)], bits^2
    double dispersion = 0.0;  ///< var_log + log2(e)^2/2 (1 - mean_inv^2)
};

/// Raised when two quadrature routes for the same moment disagree.
class NumericalConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rayleigh ergodic capacity log2(e) e^{1/snr} E1(1/snr).
double ergodic_capacity(double snr);

/// E[1/(1 + snr g)], g ~ Exp(1), closed form (1/snr) e^{1/snr} E1(1/snr).
double mean_inverse_snr(double snr);

/// Var[log2(1 + snr g)] integrated with the supplied Exp(1) rule.
double capacity_variance(double snr, const QuadratureRule& rule);

/// Var[log2(1 + snr g)] with the default rule (log-mapped, order 48).
double capacity_variance(double snr);

/// Gauss-Laguerre 64 vs 96, escalating to log-mapped 64 vs 96 when the
/// Laguerre pair disagrees by more than 1e-8 relative. Throws
/// NumericalConsistencyError if the escalated pair still disagrees.
struct VarianceCheck {
    double value = 0.0;
    double laguerre_64 = 0.0;
    double laguerre_96 = 0.0;
    bool escalated = false;
};
VarianceCheck checked_capacity_variance(double snr);

/// E[f(g)], g ~ Exp(1), by the same 64/96 Laguerre check with log-mapped
/// escalation as checked_capacity_variance. `snr` sets the mapping scale.
struct ExpectationCheck {
    double value = 0.0;
    bool escalated = false;
};
ExpectationCheck checked_expectation(double snr, const std::function<double(double)>& f);

/// Channel dispersion of the Rayleigh channel with receiver CSI.
double dispersion(double snr);

ChannelMoments channel_moments(double snr);

}  // namespace pilotopt

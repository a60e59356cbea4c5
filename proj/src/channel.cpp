#include "pilotopt/channel.hpp"

#include <cmath>
#include <string>

namespace pilotopt {

namespace {

constexpr int kDefaultMappedOrder = 48;
constexpr double kGMax = 45.0;  // keep in sync with log_mapped_exponential

void require_snr(double snr, const char* what) {
    if (!std::isfinite(snr) || snr <= 0.0) {
        throw std::domain_error(std::string(what) + ": snr must be positive and finite");
    }
}

const QuadratureRule& legendre_default() {
    static const QuadratureRule rule = gauss_legendre(kDefaultMappedOrder);
    return rule;
}

// Same rule as log_mapped_exponential, evaluated in u = ln(1 + snr g) directly
// so the integrand needs no logarithm.
double mapped_log_variance_nats(double snr) {
    const QuadratureRule& base = legendre_default();
    const double half = 0.5 * std::log1p(kGMax * snr);
    double w[kDefaultMappedOrder];
    double u[kDefaultMappedOrder];
    double mean = 0.0;
    for (int i = 0; i < kDefaultMappedOrder; ++i) {
        u[i] = half * (base.nodes[i] + 1.0);
        const double em1 = std::expm1(u[i]);
        w[i] = base.weights[i] * half * (1.0 + em1) * std::exp(-em1 / snr) / snr;
        mean += w[i] * u[i];
    }
    double var = 0.0;
    for (int i = 0; i < kDefaultMappedOrder; ++i) {
        const double d = u[i] - mean;
        var += w[i] * d * d;
    }
    return var;
}

}  // namespace

double ergodic_capacity(double snr) {
    require_snr(snr, "ergodic_capacity");
    return kLog2E * exp_scaled_e1(1.0 / snr);
}

double mean_inverse_snr(double snr) {
    require_snr(snr, "mean_inverse_snr");
    const double x = 1.0 / snr;
    return x * exp_scaled_e1(x);
}

double capacity_variance(double snr, const QuadratureRule& rule) {
    require_snr(snr, "capacity_variance");
    double mean = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        mean += rule.weights[i] * std::log1p(snr * rule.nodes[i]);
    }
    double var = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double d = std::log1p(snr * rule.nodes[i]) - mean;
        var += rule.weights[i] * d * d;
    }
    return var * kLog2E * kLog2E;
}

double capacity_variance(double snr) {
    require_snr(snr, "capacity_variance");
    return mapped_log_variance_nats(snr) * kLog2E * kLog2E;
}

VarianceCheck checked_capacity_variance(double snr) {
    require_snr(snr, "checked_capacity_variance");
    static const QuadratureRule gl64 = gauss_laguerre(64);
    static const QuadratureRule gl96 = gauss_laguerre(96);
    constexpr double tol = 1e-8;

    VarianceCheck out;
    out.laguerre_64 = capacity_variance(snr, gl64);
    out.laguerre_96 = capacity_variance(snr, gl96);
    const auto agree = [](double a, double b) {
        return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)) ||
               std::abs(a - b) <= 1e-300;
    };
    if (agree(out.laguerre_64, out.laguerre_96)) {
        out.value = out.laguerre_96;
        return out;
    }
    out.escalated = true;
    const double m64 = capacity_variance(snr, log_mapped_exponential(snr, 64));
    const double m96 = capacity_variance(snr, log_mapped_exponential(snr, 96));
    if (!agree(m64, m96)) {
        throw NumericalConsistencyError("capacity_variance: quadrature routes disagree at snr=" +
                                        std::to_string(snr));
    }
    out.value = m96;
    return out;
}

ExpectationCheck checked_expectation(double snr, const std::function<double(double)>& f) {
    require_snr(snr, "checked_expectation");
    static const QuadratureRule gl64 = gauss_laguerre(64);
    static const QuadratureRule gl96 = gauss_laguerre(96);
    constexpr double tol = 1e-8;
    const auto agree = [](double a, double b) {
        return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
    };
    const double a = gl64.integrate(f);
    const double b = gl96.integrate(f);
    if (agree(a, b)) return {b, false};
    const double c = log_mapped_exponential(snr, 64).integrate(f);
    const double d = log_mapped_exponential(snr, 96).integrate(f);
    if (!agree(c, d)) {
        throw NumericalConsistencyError("checked_expectation: quadrature routes disagree at snr=" +
                                        std::to_string(snr));
    }
    return {d, true};
}

double dispersion(double snr) {
    require_snr(snr, "dispersion");
    const double mi = mean_inverse_snr(snr);
    const double v = capacity_variance(snr) + 0.5 * kLog2E * kLog2E * (1.0 - mi) * (1.0 + mi);
    return v > 0.0 ? v : 0.0;
}

ChannelMoments channel_moments(double snr) {
    require_snr(snr, "channel_moments");
    ChannelMoments m;
    m.snr = snr;
    m.capacity = ergodic_capacity(snr);
    m.mean_inv = mean_inverse_snr(snr);
    m.var_log = capacity_variance(snr);
    const double v = m.var_log + 0.5 * kLog2E * kLog2E * (1.0 - m.mean_inv) * (1.0 + m.mean_inv);
    m.dispersion = v > 0.0 ? v : 0.0;
    return m;
}

}  // namespace pilotopt

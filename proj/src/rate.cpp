#include "pilotopt/rate.hpp"

#include "pilotopt/channel.hpp"
#include "pilotopt/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pilotopt {

void LinkConfig::validate() const {
    if (n < 2) throw std::invalid_argument("n must be ≥ 2");
    if (!std::isfinite(snr) || snr <= 0.0) throw std::invalid_argument("snr must be positive and finite");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
}

void check_alpha_interval(double alpha, int n) {
    const double slack = 1e-12 / n;
    if (!std::isfinite(alpha) || alpha < 1.0 / n - slack || alpha > 1.0 - 1.0 / n + slack) {
        throw std::domain_error("alpha must lie in [1/n, 1 - 1/n], got alpha=" + std::to_string(alpha) +
                                " n=" + std::to_string(n));
    }
}

RateValue perfect_csi_rate(int n, double epsilon, double snr) {
    LinkConfig{n, snr, epsilon, FadingModel::block()}.validate();
    const double c = ergodic_capacity(snr);
    const double qinv = q_inverse(epsilon);
    if (qinv == 0.0) return {c, false};
    const double r = c - std::sqrt(dispersion(snr) / n) * qinv;
    if (r < 0.0) return {0.0, true};
    return {r, false};
}

namespace {

TrainingRateBreakdown evaluate(double alpha, const LinkConfig& cfg, bool with_penalty) {
    cfg.validate();
    check_alpha_interval(alpha, cfg.n);
    TrainingRateBreakdown out;
    out.est_error = mmse_error(alpha, cfg.n, cfg.snr, cfg.model);
    out.effective_snr = effective_snr(cfg.snr, out.est_error.total);
    if (out.effective_snr <= 0.0) {
        out.finite = {0.0, true};
        out.ergodic = {0.0, true};
        return out;
    }
    const double data_fraction = 1.0 - alpha;
    out.capacity = ergodic_capacity(out.effective_snr);
    const double ergodic = data_fraction * out.capacity;
    out.ergodic = {ergodic, false};

    if (!with_penalty) return out;
    const double qinv = q_inverse(cfg.epsilon);
    if (qinv != 0.0) {
        out.dispersion = dispersion(out.effective_snr);
        out.penalty = qinv * std::sqrt(data_fraction * out.dispersion / cfg.n);
    }
    const double finite = ergodic - out.penalty;
    out.finite = finite < 0.0 ? RateValue{0.0, true} : RateValue{finite, false};
    return out;
}

}  // namespace

RateValue training_rate(double alpha, const LinkConfig& cfg) {
    return evaluate(alpha, cfg, true).finite;
}

RateValue ergodic_training_rate(double alpha, const LinkConfig& cfg) {
    return evaluate(alpha, cfg, false).ergodic;
}

TrainingRateBreakdown training_rate_breakdown(double alpha, const LinkConfig& cfg) {
    TrainingRateBreakdown out = evaluate(alpha, cfg, true);
    // The penalty path skips V when Q^-1(eps) is zero; report it anyway.
    if (out.effective_snr > 0.0 && out.penalty == 0.0) out.dispersion = dispersion(out.effective_snr);
    return out;
}

}  // namespace pilotopt

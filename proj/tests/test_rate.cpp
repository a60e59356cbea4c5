#include "doctest.h"
#include "oracles.hpp"

#include "pilotopt/channel.hpp"
#include "pilotopt/rate.hpp"

#include <cmath>

using namespace pilotopt;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

LinkConfig block_cfg(int n, double snr, double eps) { return LinkConfig{n, snr, eps, FadingModel::block()}; }

}  // namespace

TEST_CASE("LinkConfig validation") {
    CHECK_NOTHROW(block_cfg(2, 1.0, 0.1).validate());
    CHECK_THROWS_WITH_AS(block_cfg(1, 1.0, 0.1).validate(), "n must be ≥ 2", std::invalid_argument);
    CHECK_THROWS_AS(block_cfg(10, 0.0, 0.1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(block_cfg(10, 1.0, 0.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(block_cfg(10, 1.0, 1.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(block_cfg(10, NAN, 0.1).validate(), std::invalid_argument);
    CHECK(block_cfg(10, 1.0, 0.1).min_alpha() == 0.1);
    CHECK(block_cfg(10, 1.0, 0.1).max_alpha() == 0.9);
}

TEST_CASE("perfect_csi_rate examples") {
    for (double snr : {0.3, 1.0, 31.0}) {
        CHECK(perfect_csi_rate(17, 0.5, snr).bits_per_use == ergodic_capacity(snr));
    }
    const double c = ergodic_capacity(10.0);
    const double gap100 = c - perfect_csi_rate(100, 1e-9, 10.0).bits_per_use;
    const double gap10000 = c - perfect_csi_rate(10000, 1e-9, 10.0).bits_per_use;
    CHECK(rel(gap10000, 0.1 * gap100) <= 1e-9);
    // Oracle: C(1) - sqrt(V(1)/100) Q^-1(1e-3) = 0.54557839650013696
    const double r = perfect_csi_rate(100, 1e-3, 1.0).bits_per_use;
    CHECK(std::abs(r - 0.54557839650013696) <= 1e-9);
    const RateValue tiny = perfect_csi_rate(2, 1e-12, 0.1);
    CHECK(tiny.bits_per_use == 0.0);
    CHECK(tiny.clamped);
}

TEST_CASE("training_rate examples") {
    const LinkConfig half = block_cfg(30, 31.623, 0.5);
    for (double alpha : {1.0 / 30, 0.2, 0.5, 29.0 / 30}) {
        const TrainingRateBreakdown b = training_rate_breakdown(alpha, half);
        CHECK(training_rate(alpha, half).bits_per_use == (1.0 - alpha) * ergodic_capacity(b.effective_snr));
    }

    const LinkConfig fast{10, 10.0, 1e-3, FadingModel::continuous(0.1)};
    const RateValue r = training_rate(0.2, fast);
    CHECK(r.bits_per_use == 0.0);
    CHECK(r.clamped);

    // Oracle chain at alpha = 0.5, n = 30, snr = 31.623, eps = 1e-5.
    const LinkConfig cfg = block_cfg(30, 31.623, 1e-5);
    const TrainingRateBreakdown b = training_rate_breakdown(0.5, cfg);
    CHECK(b.est_error.total == doctest::Approx(1.0 / (1.0 + 15.0 * 31.623)).epsilon(1e-15));
    CHECK(b.effective_snr == doctest::Approx(31.623 * (1.0 - b.est_error.total) / (1.0 + 31.623 * b.est_error.total)).epsilon(1e-15));
    CHECK(std::abs(b.effective_snr - 29.588084326821417) <= 1e-10);
    CHECK(std::abs(b.finite.bits_per_use - 1.1034836182427703) <= 1e-6);
    CHECK(std::abs(b.finite.bits_per_use - static_cast<double>(oracle::finite_rate(0.5L, {30, 31.623L, 1e-5L, 0.0L}))) <= 1e-9);
    CHECK(b.penalty == doctest::Approx(q_inverse(1e-5) * std::sqrt(0.5 * b.dispersion / 30.0)).epsilon(1e-15));
}

TEST_CASE("ergodic_training_rate examples") {
    const LinkConfig cfg = block_cfg(30, 31.623, 1e-5);
    LinkConfig half = cfg;
    half.epsilon = 0.5;
    for (double alpha = 1.0 / 30; alpha <= 29.0 / 30; alpha += 0.05) {
        CHECK(ergodic_training_rate(alpha, cfg).bits_per_use == training_rate(alpha, half).bits_per_use);
        CHECK(ergodic_training_rate(alpha, cfg).bits_per_use >= training_rate(alpha, cfg).bits_per_use);
    }
    // 0.5 C(29.588084326821417) from the oracle.
    CHECK(std::abs(ergodic_training_rate(0.5, cfg).bits_per_use - 2.1217868878914641) <= 1e-10);
}

TEST_CASE("alpha interval is enforced") {
    const LinkConfig cfg = block_cfg(10, 5.0, 1e-3);
    CHECK_THROWS_AS(training_rate(0.05, cfg), std::domain_error);
    CHECK_THROWS_AS(training_rate(0.95, cfg), std::domain_error);
    CHECK_NOTHROW(training_rate(0.1, cfg));
    CHECK_NOTHROW(training_rate(0.9, cfg));
    CHECK_NOTHROW(check_alpha_interval(3.0 / 10.0, 10));
}

TEST_CASE("penalty gap reconstructs") {
    for (int n : {5, 30, 120}) {
        for (double eps : {1e-12, 1e-5, 0.1}) {
            const LinkConfig cfg = block_cfg(n, 12.0, eps);
            for (double alpha : {cfg.min_alpha(), 0.3, cfg.max_alpha()}) {
                const TrainingRateBreakdown b = training_rate_breakdown(alpha, cfg);
                if (b.finite.clamped) continue;
                const double gap = q_inverse(eps) * std::sqrt((1.0 - alpha) * dispersion(b.effective_snr) / n);
                CHECK(std::abs((b.ergodic.bits_per_use - b.finite.bits_per_use) - gap) <= 1e-12);
            }
        }
    }
}

TEST_CASE("rate at the upper end of the interval is bounded") {
    for (int n : {4, 10, 50}) {
        const LinkConfig cfg = block_cfg(n, 20.0, 1e-6);
        const TrainingRateBreakdown b = training_rate_breakdown(cfg.max_alpha(), cfg);
        CHECK(b.finite.bits_per_use <= ergodic_capacity(cfg.snr) / n + b.penalty);
    }
}

TEST_CASE("rate increases with epsilon at fixed alpha") {
    double prev = -1.0;
    for (double eps : {1e-12, 1e-9, 1e-6, 1e-3, 0.1, 0.4}) {
        const double r = training_rate(0.2, block_cfg(40, 10.0, eps)).bits_per_use;
        CHECK(r > prev);
        prev = r;
    }
}

TEST_CASE("oracle transcription agrees across continuous-fading configs") {
    struct Case {
        int n;
        double snr, eps, fd, alpha;
    };
    const Case cases[] = {
        {10, 40.0, 1e-9, 0.01, 0.2}, {30, 31.623, 1e-9, 0.001, 0.1}, {12, 100.0, 1e-5, 0.005, 0.25}, {60, 5.0, 1e-3, 0.0, 0.05},
    };
    for (const Case& c : cases) {
        const LinkConfig cfg{c.n, c.snr, c.eps, FadingModel::continuous(c.fd)};
        const double ours = training_rate(c.alpha, cfg).bits_per_use;
        const double ref = static_cast<double>(oracle::finite_rate(c.alpha, {c.n, c.snr, c.eps, c.fd}));
        CAPTURE(c.n);
        CHECK(std::abs(ours - ref) <= 1e-9 * std::max(1.0, ref));
    }
}

#include "doctest.h"

#include "pilotopt/channel.hpp"
#include "pilotopt/optimizer.hpp"
#include "pilotopt/sweep.hpp"

#include <cmath>
#include <random>

using namespace pilotopt;

namespace {

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

    LinkConfig config(bool block) {
        LinkConfig c;
        c.n = integer(2, 200);
        c.snr = db_to_linear(uniform(0.0, 30.0));
        c.epsilon = log_uniform(1e-12, 0.4);
        c.model = block ? FadingModel::block() : FadingModel::continuous(uniform(0.0, 0.05));
        return c;
    }
};

constexpr int kCases = 150;

}  // namespace

TEST_CASE("effective SNR stays within [0, snr]") {
    Gen g(1);
    for (int i = 0; i < kCases; ++i) {
        const LinkConfig c = g.config(i % 2);
        const double alpha = g.uniform(c.min_alpha(), c.max_alpha());
        const auto b = training_rate_breakdown(alpha, c);
        CHECK(b.effective_snr >= 0.0);
        CHECK(b.effective_snr <= c.snr);
        CHECK(b.finite.bits_per_use >= 0.0);
        CHECK(b.finite.bits_per_use <= b.ergodic.bits_per_use);
    }
}

TEST_CASE("rate is monotone in epsilon") {
    Gen g(2);
    for (int i = 0; i < kCases; ++i) {
        LinkConfig c = g.config(true);
        const double alpha = g.uniform(c.min_alpha(), c.max_alpha());
        const double e1 = g.log_uniform(1e-12, 0.49);
        const double e2 = g.log_uniform(1e-12, 0.49);
        c.epsilon = std::min(e1, e2);
        const double lo = training_rate(alpha, c).bits_per_use;
        c.epsilon = std::max(e1, e2);
        CHECK(training_rate(alpha, c).bits_per_use >= lo);
    }
}

TEST_CASE("block fading objective is unimodal on a 1000-point grid") {
    Gen g(3);
    for (int i = 0; i < kCases; ++i) {
        const LinkConfig c = g.config(true);
        if (c.n < 3) continue;
        const double lo = c.min_alpha();
        const double step = (c.max_alpha() - lo) / 999.0;
        int sign_changes = 0;
        int last = 0;
        double prev = training_rate(lo, c).bits_per_use;
        for (int k = 1; k < 1000; ++k) {
            const double v = training_rate(std::min(lo + k * step, c.max_alpha()), c).bits_per_use;
            const double d = v - prev;
            const int s = std::abs(d) <= 1e-13 ? 0 : (d > 0 ? 1 : -1);
            if (s != 0) {
                if (last != 0 && s != last) ++sign_changes;
                last = s;
            }
            prev = v;
        }
        CAPTURE(c.n);
        CAPTURE(c.snr);
        CAPTURE(c.epsilon);
        // Allowed patterns: rising, falling, or rising then falling.
        CHECK(sign_changes <= 1);
        if (sign_changes == 1) CHECK(last == -1);
    }
}

TEST_CASE("epsilon 0.5 collapse for random configs") {
    Gen g(4);
    for (int i = 0; i < 60; ++i) {
        LinkConfig c = g.config(i % 2);
        c.epsilon = 0.5;
        const auto f = optimize_alpha(c, Objective::FiniteBlocklength);
        const auto e = optimize_alpha(c, Objective::Ergodic);
        CHECK(std::abs(f.alpha_star - e.alpha_star) <= 1e-6);
        CHECK(f.rate_at_opt == e.rate_at_opt);
        const double alpha = g.uniform(c.min_alpha(), c.max_alpha());
        CHECK(training_rate(alpha, c).bits_per_use == ergodic_training_rate(alpha, c).bits_per_use);
    }
}

TEST_CASE("zero Doppler continuous fading equals block fading exactly") {
    Gen g(5);
    for (int i = 0; i < 60; ++i) {
        LinkConfig b = g.config(true);
        LinkConfig c = b;
        c.model = FadingModel::continuous(0.0);
        const double alpha = g.uniform(b.min_alpha(), b.max_alpha());
        CHECK(training_rate(alpha, b).bits_per_use == training_rate(alpha, c).bits_per_use);
        const auto ob = optimize_alpha(b, Objective::FiniteBlocklength);
        const auto oc = optimize_alpha(c, Objective::FiniteBlocklength);
        CHECK(ob.alpha_star == oc.alpha_star);
        CHECK(ob.rate_at_opt == oc.rate_at_opt);
    }
}

TEST_CASE("estimation error at or above one clamps the rate to zero") {
    Gen g(6);
    int hit = 0;
    for (int i = 0; i < 400; ++i) {
        const LinkConfig c = g.config(false);
        const double alpha = g.uniform(c.min_alpha(), c.max_alpha());
        const auto b = training_rate_breakdown(alpha, c);
        if (b.est_error.total >= 1.0) {
            ++hit;
            CHECK(b.effective_snr == 0.0);
            CHECK(b.finite.bits_per_use == 0.0);
            CHECK(b.finite.clamped);
            CHECK(b.ergodic.bits_per_use == 0.0);
            CHECK(b.ergodic.clamped);
        }
    }
    CHECK(hit > 20);
}

TEST_CASE("argmax dominance for random configs") {
    Gen g(7);
    for (int i = 0; i < 80; ++i) {
        const RateGain r = rate_gain(g.config(i % 2));
        CHECK(r.rate_finite_at_finite >= r.rate_finite_at_ergodic - 1e-12);
    }
}

TEST_CASE("E1 recurrence E1(x) = e^{-x}/x - int ... via exp_scaled form") {
    // x e^x E1(x) lies in (x/(x+1), 1) for x > 0.
    Gen g(8);
    for (int i = 0; i < 500; ++i) {
        const double x = g.log_uniform(1e-6, 1e6);
        const double s = x * exp_scaled_e1(x);
        CHECK(s < 1.0);
        CHECK(s > x / (x + 1.0));
    }
}

TEST_CASE("q_inverse inverts q_function on random probabilities") {
    Gen g(9);
    for (int i = 0; i < 500; ++i) {
        const double eps = g.log_uniform(1e-15, 0.999);
        CHECK(std::abs(q_function(q_inverse(eps)) - eps) <= 1e-8 * eps);
    }
}

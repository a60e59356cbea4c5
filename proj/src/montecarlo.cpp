#include "pilotopt/montecarlo.hpp"

#include "pilotopt/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace pilotopt {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
constexpr std::int64_t kChunk = 4096;

std::uint64_t splitmix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Per-chunk accumulator; chunks are merged in index order so the result does
// not depend on how chunks were scheduled.
struct Partial {
    double s1 = 0.0;
    double s2 = 0.0;
    double s4 = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
};

std::int64_t chunk_count(std::int64_t trials) { return (trials + kChunk - 1) / kChunk; }

template <typename Body>
void run_chunks(std::vector<Partial>& parts, std::int64_t trials, bool parallel, Body body) {
    const std::int64_t chunks = chunk_count(trials);
    parts.assign(chunks, Partial{});
    auto one = [&](std::int64_t c) {
        const std::int64_t begin = c * kChunk;
        const std::int64_t end = std::min(trials, begin + kChunk);
        Partial p;
        for (std::int64_t t = begin; t < end; ++t) body(t, p);
        parts[c] = p;
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (std::int64_t c = 0; c < chunks; ++c) one(c);
    } else {
        for (std::int64_t c = 0; c < chunks; ++c) one(c);
    }
}

Partial merge(const std::vector<Partial>& parts) {
    Partial total;
    for (const Partial& p : parts) {
        total.s1 += p.s1;
        total.s2 += p.s2;
        total.s4 += p.s4;
        total.t1 += p.t1;
        total.t2 += p.t2;
    }
    return total;
}

void check_trials(std::int64_t trials) {
    if (trials < 2) throw std::invalid_argument("at least two trials are required");
}

int pilot_count(double alpha, int n) {
    if (n < 1 || !(alpha > 0.0)) throw std::domain_error("alpha and n must be positive");
    const double scaled = alpha * n;
    const double k = std::round(scaled);
    if (k < 1.0 || std::abs(scaled - k) > 1e-9) {
        throw std::domain_error("alpha * n must be a positive integer for the pilot simulation");
    }
    return static_cast<int>(k);
}

double mmse_trial(std::int64_t t, int pilots, double snr, std::uint64_t seed) {
    CounterRng rng(seed, static_cast<std::uint64_t>(t));
    double h_re;
    double h_im;
    rng.complex_normal(h_re, h_im);
    const double sq = std::sqrt(snr);
    double sum_re = 0.0;
    double sum_im = 0.0;
    for (int k = 0; k < pilots; ++k) {
        double w_re;
        double w_im;
        rng.complex_normal(w_re, w_im);
        // unit pilot x = 1, so x* y = y
        sum_re += sq * h_re + w_re;
        sum_im += sq * h_im + w_im;
    }
    const double gain = sq / (1.0 + pilots * snr);
    const double e_re = h_re - gain * sum_re;
    const double e_im = h_im - gain * sum_im;
    return e_re * e_re + e_im * e_im;
}

McEstimate mmse_impl(double alpha, int n, double snr, std::int64_t trials, std::uint64_t seed, bool parallel) {
    const int pilots = pilot_count(alpha, n);
    if (!(snr > 0.0) || !std::isfinite(snr)) throw std::domain_error("snr must be positive and finite");
    check_trials(trials);
    std::vector<Partial> parts;
    run_chunks(parts, trials, parallel, [&](std::int64_t t, Partial& p) {
        const double e = mmse_trial(t, pilots, snr, seed);
        p.s1 += e;
        p.s2 += e * e;
    });
    const Partial total = merge(parts);
    const double nt = static_cast<double>(trials);
    const double mean = total.s1 / nt;
    const double var = std::max(0.0, (total.s2 - nt * mean * mean) / (nt - 1.0));
    return {mean, std::sqrt(var / nt), trials, seed};
}

CapacityMomentsMc moments_impl(double snr, std::int64_t trials, std::uint64_t seed, bool parallel) {
    if (!(snr > 0.0) || !std::isfinite(snr)) throw std::domain_error("snr must be positive and finite");
    check_trials(trials);
    auto sample = [&](std::int64_t t, double& x, double& inv) {
        CounterRng rng(seed, static_cast<std::uint64_t>(t));
        const double g = rng.exponential();
        x = std::log1p(snr * g) * kLog2E;
        inv = 1.0 / (1.0 + snr * g);
    };
    std::vector<Partial> parts;
    run_chunks(parts, trials, parallel, [&](std::int64_t t, Partial& p) {
        double x;
        double inv;
        sample(t, x, inv);
        p.s1 += x;
        p.t1 += inv;
    });
    const double nt = static_cast<double>(trials);
    const Partial first = merge(parts);
    const double mean_x = first.s1 / nt;
    const double mean_inv = first.t1 / nt;

    run_chunks(parts, trials, parallel, [&](std::int64_t t, Partial& p) {
        double x;
        double inv;
        sample(t, x, inv);
        const double d = x - mean_x;
        const double d2 = d * d;
        p.s2 += d2;
        p.s4 += d2 * d2;
        const double di = inv - mean_inv;
        p.t2 += di * di;
    });
    const Partial second = merge(parts);
    const double var_x = second.s2 / (nt - 1.0);
    const double m2 = second.s2 / nt;
    const double m4 = second.s4 / nt;
    const double var_inv = second.t2 / (nt - 1.0);

    CapacityMomentsMc out;
    out.mean = {mean_x, std::sqrt(var_x / nt), trials, seed};
    out.variance = {var_x, std::sqrt(std::max(0.0, m4 - m2 * m2) / nt), trials, seed};
    out.mean_inv = {mean_inv, std::sqrt(var_inv / nt), trials, seed};
    return out;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(seed + splitmix64(stream + kGamma))) {}

std::uint64_t CounterRng::next_u64() {
    ++counter_;
    return splitmix64(key_ + counter_ * kGamma);
}

double CounterRng::uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::exponential() { return -std::log(uniform()); }

void CounterRng::complex_normal(double& re, double& im) {
    // each component has variance 1/2
    const double r = std::sqrt(-std::log(uniform()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    re = r * std::cos(theta);
    im = r * std::sin(theta);
}

McEstimate simulate_mmse_mse(double alpha, int n, double snr, std::int64_t trials, std::uint64_t seed) {
    return mmse_impl(alpha, n, snr, trials, seed, true);
}

CapacityMomentsMc mc_capacity_moments(double snr, std::int64_t trials, std::uint64_t seed) {
    return moments_impl(snr, trials, seed, true);
}

McEstimate simulate_doppler_mse(double alpha, int n, double snr, double f_d, std::int64_t trials,
                                std::uint64_t seed) {
    const int pilots = pilot_count(alpha, n);
    if (pilots >= n) throw std::domain_error("at least one data symbol is required");
    if (!(f_d >= 0.0)) throw std::domain_error("doppler must be non-negative");
    check_trials(trials);
    constexpr int kPaths = 16;
    const double sq = std::sqrt(snr);
    const double gain = sq / (1.0 + pilots * snr);
    std::vector<Partial> parts;
    run_chunks(parts, trials, true, [&](std::int64_t t, Partial& p) {
        CounterRng rng(seed, static_cast<std::uint64_t>(t));
        double freq[kPaths];
        double phase[kPaths];
        for (int m = 0; m < kPaths; ++m) {
            freq[m] = 2.0 * std::numbers::pi * f_d * std::cos(2.0 * std::numbers::pi * rng.uniform());
            phase[m] = 2.0 * std::numbers::pi * rng.uniform();
        }
        auto channel = [&](int time, double& re, double& im) {
            re = 0.0;
            im = 0.0;
            for (int m = 0; m < kPaths; ++m) {
                const double arg = freq[m] * time + phase[m];
                re += std::cos(arg);
                im += std::sin(arg);
            }
            re /= std::sqrt(static_cast<double>(kPaths));
            im /= std::sqrt(static_cast<double>(kPaths));
        };
        double sum_re = 0.0;
        double sum_im = 0.0;
        for (int k = 0; k < pilots; ++k) {
            double h_re;
            double h_im;
            double w_re;
            double w_im;
            channel(k, h_re, h_im);
            rng.complex_normal(w_re, w_im);
            sum_re += sq * h_re + w_re;
            sum_im += sq * h_im + w_im;
        }
        const double est_re = gain * sum_re;
        const double est_im = gain * sum_im;
        double mse = 0.0;
        for (int k = pilots; k < n; ++k) {
            double h_re;
            double h_im;
            channel(k, h_re, h_im);
            mse += (h_re - est_re) * (h_re - est_re) + (h_im - est_im) * (h_im - est_im);
        }
        mse /= (n - pilots);
        p.s1 += mse;
        p.s2 += mse * mse;
    });
    const Partial total = merge(parts);
    const double nt = static_cast<double>(trials);
    const double mean = total.s1 / nt;
    const double var = std::max(0.0, (total.s2 - nt * mean * mean) / (nt - 1.0));
    return {mean, std::sqrt(var / nt), trials, seed};
}

namespace serial {

McEstimate simulate_mmse_mse(double alpha, int n, double snr, std::int64_t trials, std::uint64_t seed) {
    return mmse_impl(alpha, n, snr, trials, seed, false);
}

CapacityMomentsMc mc_capacity_moments(double snr, std::int64_t trials, std::uint64_t seed) {
    return moments_impl(snr, trials, seed, false);
}

}  // namespace serial

}  // namespace pilotopt

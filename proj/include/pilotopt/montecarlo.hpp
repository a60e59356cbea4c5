#pragma once

#include <cstdint>

namespace pilotopt {

/// Counter-based generator: SplitMix64 applied to (stream key + k * golden gamma).
///
/// The stream key is SplitMix64(seed + SplitMix64(stream)), so trial t of a
/// run seeded with s always sees the same variates no matter which worker
/// executes it. Normals use Box-Muller, exponentials use -ln(U); both avoid
/// std:: distributions, whose algorithms differ across standard libraries.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    /// Uniform on (0, 1).
    double uniform();
    /// Exp(1) sample.
    double exponential();
    /// One circularly-symmetric complex normal with unit variance, as (re, im).
    void complex_normal(double& re, double& im);

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
};

/// MSE of the pilot-based MMSE estimate of a block-fading gain.
/// alpha * n must be a positive integer (number of all-ones pilots).
McEstimate simulate_mmse_mse(double alpha, int n, double snr, std::int64_t trials, std::uint64_t seed);

struct CapacityMomentsMc {
    McEstimate mean;      ///< E[log2(1 + snr g)]
    McEstimate variance;  ///< Var[log2(1 + snr g)], std_error from the 4th central moment
    McEstimate mean_inv;  ///< E[1/(1 + snr g)]
};

CapacityMomentsMc mc_capacity_moments(double snr, std::int64_t trials, std::uint64_t seed);

/// Optional drift experiment: sum-of-sinusoids (Clarke) fading over n symbols,
/// pilots at the start of the packet, MSE averaged over the data symbols.
/// Informational only; compare against mmse_error(...).total.
McEstimate simulate_doppler_mse(double alpha, int n, double snr, double f_d, std::int64_t trials,
                                std::uint64_t seed);

namespace serial {
McEstimate simulate_mmse_mse(double alpha, int n, double snr, std::int64_t trials, std::uint64_t seed);
CapacityMomentsMc mc_capacity_moments(double snr, std::int64_t trials, std::uint64_t seed);
}  // namespace serial

}  // namespace pilotopt

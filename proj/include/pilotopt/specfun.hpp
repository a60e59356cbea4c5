#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pilotopt {

/// Exponential integral E1(x) = int_1^inf e^{-xt}/t dt, x > 0.
/// Series below x = 1, Lentz continued fraction above.
double exp_integral_e1(double x);

/// e^x * E1(x). Stays finite for large x where E1 underflows.
double exp_scaled_e1(double x);

/// Gaussian tail probability P(Z > x).
double q_function(double x);

/// Inverse of q_function on (0, 1).
double q_inverse(double eps);

enum class QuadratureKind { GaussLaguerre, GaussLegendre, LogMapped };

/// Nodes and positive weights for sum_i w_i f(x_i).
///
/// GaussLaguerre rules integrate against e^{-g} on [0, inf).
/// LogMapped rules integrate the same Exp(1) expectation but place their
/// nodes uniformly in u = ln(1 + scale*g), which keeps the log-singularity of
/// ln(1 + scale*g) at g = -1/scale away from the rule for any scale.
/// GaussLegendre rules are on [-1, 1] with unit weight.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    QuadratureKind kind = QuadratureKind::GaussLaguerre;
    int order = 0;

    /// sum_i w_i f(x_i)
    double integrate(const std::function<double(double)>& f) const;
};

/// Gauss-Laguerre rule of the given order, 2 <= order <= 256.
///
/// For orders above ~170 the outermost weights underflow double precision;
/// those nodes are dropped, so nodes.size() may be below order.
QuadratureRule gauss_laguerre(int order);

/// Gauss-Legendre rule on [-1, 1], 2 <= order <= 512.
QuadratureRule gauss_legendre(int order);

/// Exp(1)-expectation rule adapted to integrands of ln(1 + scale*g).
/// Truncates the exponential at g = 45 (tail mass e^{-45}).
QuadratureRule log_mapped_exponential(double scale, int order);

/// Adaptive Gauss-Kronrod (7/15) integration on a finite interval.
/// Cross-check for E1 and the quadrature rules.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-13, int max_depth = 50);

}  // namespace pilotopt

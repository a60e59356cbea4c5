#include "pilotopt/specfun.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pilotopt {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kE1SeriesCutoff = 1.0;
constexpr int kMaxIter = 500;

void require_positive_finite(double x, const char* what) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw std::domain_error(std::string(what) + ": argument must be positive and finite, got " +
                                std::to_string(x));
    }
}

double e1_series(double x) {
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k < kMaxIter; ++k) {
        term *= -x / k;
        const double add = -term / k;
        sum += add;
        if (std::abs(add) < std::abs(sum) * 1e-17) break;
    }
    return -kEulerGamma - std::log(x) + sum;
}

// Modified Lentz evaluation of e^x E1(x) for x > 1.
double e1_scaled_fraction(double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) return h;
    }
    throw std::runtime_error("exp_integral_e1: continued fraction did not converge");
}

// Acklam's rational approximation to the standard normal quantile.
double normal_quantile_rational(double p) {
    static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                             -2.759285104469687e+02, 1.383577518672690e+02,
                                             -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                             -1.556989798598866e+02, 6.680131188771972e+01,
                                             -1.328068155288572e+01};
    static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                             -2.400758277161838e+00, -2.549732539343734e+00,
                                             4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                             2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Laguerre L_m(x) and L_{m-1}(x) sharing an unknown common scale, plus log of that scale.
struct LaguerrePair {
    double p_m;
    double p_m1;
    double log_scale;
};

LaguerrePair laguerre_pair(int m, double x) {
    double p0 = 1.0;
    double p1 = 1.0 - x;
    double log_scale = 0.0;
    for (int k = 1; k < m; ++k) {
        const double p2 = ((2.0 * k + 1.0 - x) * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
        if (std::abs(p1) > 1e150) {
            p0 *= 1e-150;
            p1 *= 1e-150;
            log_scale += 150.0 * std::numbers::ln10;
        }
    }
    return {p1, p0, log_scale};
}

}  // namespace

double exp_integral_e1(double x) {
    require_positive_finite(x, "exp_integral_e1");
    if (x <= kE1SeriesCutoff) return e1_series(x);
    return e1_scaled_fraction(x) * std::exp(-x);
}

double exp_scaled_e1(double x) {
    require_positive_finite(x, "exp_scaled_e1");
    if (x <= kE1SeriesCutoff) return std::exp(x) * e1_series(x);
    return e1_scaled_fraction(x);
}

double q_function(double x) {
    if (!std::isfinite(x)) throw std::domain_error("q_function: argument must be finite");
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double q_inverse(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::domain_error("q_inverse: probability must lie in (0, 1), got " +
                                std::to_string(eps));
    }
    if (eps == 0.5) return 0.0;
    double x = -normal_quantile_rational(eps);
    // one Newton step on Q(x) - eps; Q'(x) = -phi(x)
    const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    x += (q_function(x) - eps) / phi;
    return x;
}

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
}

QuadratureRule gauss_laguerre(int order) {
    if (order < 2 || order > 256) {
        throw std::invalid_argument("gauss_laguerre: unsupported order " + std::to_string(order));
    }
    // Golub-Welsch eigenvalues seed the nodes; Newton on the recurrence polishes them
    // to full relative precision (the eigen solver is only accurate relative to ||J||).
    Eigen::VectorXd diag(order);
    Eigen::VectorXd sub(order - 1);
    for (int i = 0; i < order; ++i) diag(i) = 2.0 * i + 1.0;
    for (int i = 0; i < order - 1; ++i) sub(i) = i + 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& seeds = solver.eigenvalues();

    QuadratureRule rule;
    rule.kind = QuadratureKind::GaussLaguerre;
    rule.order = order;
    rule.nodes.reserve(order);
    rule.weights.reserve(order);
    for (int i = 0; i < order; ++i) {
        double x = seeds(i);
        for (int it = 0; it < 100; ++it) {
            const auto lp = laguerre_pair(order, x);
            const double deriv_ratio = order * (lp.p_m - lp.p_m1) / x;
            const double dx = lp.p_m / deriv_ratio;
            x -= dx;
            if (std::abs(dx) <= 1e-16 * x) break;
        }
        const auto lp = laguerre_pair(order, x);
        const double log_w = std::log(x) - 2.0 * std::log(static_cast<double>(order)) -
                             2.0 * (std::log(std::abs(lp.p_m1)) + lp.log_scale);
        const double w = std::exp(log_w);
        if (w <= 0.0) break;  // remaining weights underflow as well
        rule.nodes.push_back(x);
        rule.weights.push_back(w);
    }
    return rule;
}

QuadratureRule gauss_legendre(int order) {
    if (order < 2 || order > 512) {
        throw std::invalid_argument("gauss_legendre: unsupported order " + std::to_string(order));
    }
    QuadratureRule rule;
    rule.kind = QuadratureKind::GaussLegendre;
    rule.order = order;
    rule.nodes.assign(order, 0.0);
    rule.weights.assign(order, 0.0);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            dp = order * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = -z;
        rule.nodes[order - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    return rule;
}

QuadratureRule log_mapped_exponential(double scale, int order) {
    require_positive_finite(scale, "log_mapped_exponential");
    constexpr double g_max = 45.0;
    const QuadratureRule base = gauss_legendre(order);
    const double u_max = std::log1p(g_max * scale);
    const double half = 0.5 * u_max;

    QuadratureRule rule;
    rule.kind = QuadratureKind::LogMapped;
    rule.order = order;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        const double u = half * (base.nodes[i] + 1.0);
        const double g = std::expm1(u) / scale;
        rule.nodes[i] = g;
        rule.weights[i] = base.weights[i] * half * std::exp(u - g) / scale;
    }
    return rule;
}

namespace {

// Kronrod 15-point nodes/weights with embedded Gauss 7-point weights.
constexpr std::array<double, 8> kXgk{0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                     0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                     0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                     0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                     0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                     0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                     0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkResult {
    double value;
    double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double fsum = f(c - dx) + f(c + dx);
        kron += kWgk[j] * fsum;
        if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
    }
    return {kron * h, std::abs((kron - gauss) * h)};
}

double adaptive_step(const std::function<double(double)>& f, double a, double b, double abs_tol,
                     int depth, const GkResult& whole) {
    if (whole.error <= abs_tol || depth <= 0) return whole.value;
    const double m = 0.5 * (a + b);
    const GkResult left = gk15(f, a, m);
    const GkResult right = gk15(f, m, b);
    return adaptive_step(f, a, m, 0.5 * abs_tol, depth - 1, left) +
           adaptive_step(f, m, b, 0.5 * abs_tol, depth - 1, right);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol,
                          int max_depth) {
    const GkResult first = gk15(f, a, b);
    const double abs_tol = std::max(rel_tol * std::abs(first.value), std::numeric_limits<double>::min());
    return adaptive_step(f, a, b, abs_tol, max_depth, first);
}

}  // namespace pilotopt

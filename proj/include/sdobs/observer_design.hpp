#pragma once

#include <functional>
#include <limits>
#include <optional>

#include "sdobs/plant.hpp"

namespace sdobs {

/// Continuous-time observer dz/dt = F(z, y), x_hat = Psi(z), together with the
/// output-rate map driving the inter-sample predictor.
struct ContinuousObserver {
    int k_dim = 0;
    std::function<Vector(const Vector& z, double y)> F;
    std::function<Vector(const Vector& z)> psi;
    ScalarField predictor_rate;  // z -> L_f h(Psi(z))
};

inline constexpr double kUnboundedSentinel = std::numeric_limits<double>::infinity();

struct HighGainDesign {
    ContinuousObserver observer;
    Vector gain;  // k, before theta scaling
    double theta = 1.0;
    Matrix lyap_p;
    double mu = 0.0;
    double k1 = 0.0;  // lambda_min(P)
    double k2 = 0.0;  // lambda_max(P)
    double mismatch = 0.0;  // K
    double r_max = 0.0;     // 1/K, kUnboundedSentinel when K == 0
};

struct LinearDesign {
    ContinuousObserver observer;
    Vector gain;
    Matrix lyap_p;
    double mu = 0.0;
    double gamma = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;
    double mismatch = 0.0;
    double r_max = 0.0;
};

/// High-gain observer for a triangular globally Lipschitz plant. Places the
/// chain-form closed-loop poles, solves the Lyapunov equation with Q = 2*mu*I,
/// and picks theta at its lower bound max(1, 2|P|L sqrt(n)/mu) unless overridden.
HighGainDesign design_highgain(const Plant& plant,
                               const std::vector<linalg::Complex>& cont_poles, double mu,
                               std::optional<double> theta_override = std::nullopt);

/// Luenberger observer dz/dt = Az + k(c'z - y) for a linear plant. When an
/// explicit P is supplied it is verified and used; otherwise P solves the
/// Lyapunov equation with Q = I. The pair (mu, gamma) must satisfy the
/// dissipation inequality for the chosen P.
LinearDesign design_linear(const Plant& plant, const Vector& gain, double mu, double gamma,
                           std::optional<Matrix> p = std::nullopt);

/// Variant that derives (mu, gamma) itself: P = lyap(A + kc', I), mu the
/// largest rate with P(A+kc') + (A+kc')'P + 2 mu P <= 0, gamma the smallest
/// value passing the dissipation check (both by bisection to 1e-6).
LinearDesign design_linear_auto(const Plant& plant, const Vector& gain);

/// True iff [[P(A+kc')+(A+kc')'P + 2 mu P, P k], [k'P, -gamma]] <= 0, the
/// quadratic-form equivalent of the dissipation inequality over all (x, v).
bool verify_dissipation(const Matrix& p, const Matrix& a, const Vector& k, const Vector& c,
                        double mu, double gamma, double eig_tol = 1e-9);

double max_sampling_period(const HighGainDesign& d);
double max_sampling_period(const LinearDesign& d);
double mismatch_constant(const HighGainDesign& d);
double mismatch_constant(const LinearDesign& d);

}  // namespace sdobs

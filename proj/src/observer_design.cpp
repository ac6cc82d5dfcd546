#include "sdobs/observer_design.hpp"

#include <cmath>

namespace sdobs {

namespace {

using linalg::induced_norm;
using linalg::is_hurwitz;
using linalg::solve_lyapunov;
using linalg::symmetric_extremal_eigs;

Matrix chain_matrix(int n) {
    Matrix a = Matrix::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
    return a;
}

double to_r_max(double mismatch) {
    return mismatch > 0.0 ? 1.0 / mismatch : kUnboundedSentinel;
}

}  // namespace

bool verify_dissipation(const Matrix& p, const Matrix& a, const Vector& k, const Vector& c,
                        double mu, double gamma, double eig_tol) {
    const auto n = a.rows();
    if (a.cols() != n || p.rows() != n || p.cols() != n || k.size() != n || c.size() != n)
        throw DimensionMismatch("verify_dissipation: dimension mismatch");
    if ((p - p.transpose()).cwiseAbs().maxCoeff() >
        1e-12 * std::max(1.0, p.cwiseAbs().maxCoeff()))
        throw NotSymmetric("verify_dissipation: p is not symmetric");

    const Matrix a_cl = a + k * c.transpose();
    Matrix m(n + 1, n + 1);
    m.topLeftCorner(n, n) =
        p * a_cl + a_cl.transpose() * p + 2.0 * mu * p;
    m.topRightCorner(n, 1) = p * k;
    m.bottomLeftCorner(1, n) = (p * k).transpose();
    m(n, n) = -gamma;
    auto [lo, hi] = symmetric_extremal_eigs(m);
    (void)lo;
    return hi <= eig_tol;
}

HighGainDesign design_highgain(const Plant& plant,
                               const std::vector<linalg::Complex>& cont_poles, double mu,
                               std::optional<double> theta_override) {
    if (!plant.is_triangular())
        throw WrongPlantKind("design_highgain: plant must be triangular");
    if (mu <= 0.0) throw Error("design_highgain: mu must be positive");

    const int n = plant.n;
    const double L = plant.triangular().lipschitz_L;
    const Matrix a = chain_matrix(n);
    Vector c = Vector::Zero(n);
    c(0) = 1.0;

    const Vector k = linalg::place_poles_continuous(a, c, cont_poles);
    const Matrix a_cl = a + k * c.transpose();
    if (!is_hurwitz(a_cl))
        throw NotHurwitz("design_highgain: closed-loop matrix is not Hurwitz");

    const Matrix p = solve_lyapunov(a_cl, 2.0 * mu * Matrix::Identity(n, n));
    const auto [k1, k2] = symmetric_extremal_eigs(p);
    const double p_norm = induced_norm(p);

    const double theta_bound = std::max(1.0, 2.0 * p_norm * L * std::sqrt(double(n)) / mu);
    double theta = theta_bound;
    if (theta_override) {
        if (*theta_override < theta_bound * (1.0 - 1e-12))
            throw ThetaTooSmall("design_highgain: theta below the certified lower bound " +
                                std::to_string(theta_bound));
        theta = *theta_override;
    }

    const double mismatch =
        2.0 * (L + theta) * (p_norm * k.norm() / mu) * std::sqrt(k2 / k1);

    HighGainDesign d;
    d.gain = k;
    d.theta = theta;
    d.lyap_p = p;
    d.mu = mu;
    d.k1 = k1;
    d.k2 = k2;
    d.mismatch = mismatch;
    d.r_max = to_r_max(mismatch);

    const auto components = plant.triangular().components;
    d.observer.k_dim = n;
    d.observer.F = [components, k, theta, n](const Vector& z, double y) {
        Vector dz(n);
        const double innovation = z(0) - y;
        double theta_pow = 1.0;
        for (int i = 0; i < n; ++i) {
            theta_pow *= theta;
            dz(i) = components[i](z.head(i + 1)) + theta_pow * k(i) * innovation;
            if (i + 1 < n) dz(i) += z(i + 1);
        }
        return dz;
    };
    d.observer.psi = [](const Vector& z) { return z; };
    d.observer.predictor_rate = plant.output_rate;
    return d;
}

LinearDesign design_linear(const Plant& plant, const Vector& gain, double mu, double gamma,
                           std::optional<Matrix> p_opt) {
    if (!plant.is_linear())
        throw WrongPlantKind("design_linear: plant must be linear");
    const Matrix& a = plant.linear().a;
    const Vector& c = plant.linear().c;
    const int n = plant.n;
    if (gain.size() != n) throw DimensionMismatch("design_linear: gain dimension mismatch");

    const Matrix a_cl = a + gain * c.transpose();
    if (!is_hurwitz(a_cl))
        throw NotHurwitz("design_linear: A + kc' is not Hurwitz");

    Matrix p;
    if (p_opt) {
        p = *p_opt;
        auto [pmin, pmax] = symmetric_extremal_eigs(p);
        (void)pmax;
        if (pmin <= 0.0)
            throw NotPositiveDefinite("design_linear: supplied P is not positive definite");
    } else {
        p = solve_lyapunov(a_cl, Matrix::Identity(n, n));
    }
    if (!verify_dissipation(p, a, gain, c, mu, gamma))
        throw DissipationFailed("design_linear: (P, mu, gamma) fail the dissipation inequality");

    const auto [k1, k2] = symmetric_extremal_eigs(p);
    const double ca_norm = induced_norm(c.transpose() * a);
    const double mismatch = ca_norm * std::sqrt(gamma / (2.0 * mu * k1));

    LinearDesign d;
    d.gain = gain;
    d.lyap_p = p;
    d.mu = mu;
    d.gamma = gamma;
    d.k1 = k1;
    d.k2 = k2;
    d.mismatch = mismatch;
    d.r_max = to_r_max(mismatch);

    d.observer.k_dim = n;
    d.observer.F = [a, gain, c](const Vector& z, double y) {
        return Vector(a * z + gain * (c.dot(z) - y));
    };
    d.observer.psi = [](const Vector& z) { return z; };
    Eigen::RowVectorXd ca = c.transpose() * a;
    d.observer.predictor_rate = [ca](const Vector& z) { return double(ca * z); };
    return d;
}

LinearDesign design_linear_auto(const Plant& plant, const Vector& gain) {
    if (!plant.is_linear())
        throw WrongPlantKind("design_linear_auto: plant must be linear");
    const Matrix& a = plant.linear().a;
    const Vector& c = plant.linear().c;
    const int n = plant.n;

    const Matrix a_cl = a + gain * c.transpose();
    if (!is_hurwitz(a_cl))
        throw NotHurwitz("design_linear_auto: A + kc' is not Hurwitz");
    const Matrix p = solve_lyapunov(a_cl, Matrix::Identity(n, n));

    // Largest mu with P A_cl + A_cl'P + 2 mu P <= 0, by bisection.
    const Matrix sym = p * a_cl + a_cl.transpose() * p;
    auto decay_ok = [&](double mu) {
        auto [lo, hi] = symmetric_extremal_eigs(Matrix(sym + 2.0 * mu * p));
        (void)lo;
        return hi <= 0.0;
    };
    double mu_lo = 0.0, mu_hi = 1.0;
    while (decay_ok(mu_hi)) mu_hi *= 2.0;
    while (mu_hi - mu_lo > 1e-6) {
        const double mid = 0.5 * (mu_lo + mu_hi);
        (decay_ok(mid) ? mu_lo : mu_hi) = mid;
    }
    const double mu = 0.5 * mu_lo;  // leave slack for the noise coupling term

    // Smallest gamma passing the dissipation check, by bisection.
    double g_hi = 1.0;
    while (!verify_dissipation(p, a, gain, c, mu, g_hi)) {
        g_hi *= 2.0;
        if (g_hi > 1e12)
            throw DissipationFailed("design_linear_auto: no feasible gamma found");
    }
    double g_lo = 0.0;
    while (g_hi - g_lo > 1e-6) {
        const double mid = 0.5 * (g_lo + g_hi);
        (verify_dissipation(p, a, gain, c, mu, mid) ? g_hi : g_lo) = mid;
    }

    return design_linear(plant, gain, mu, g_hi, p);
}

double max_sampling_period(const HighGainDesign& d) { return d.r_max; }
double max_sampling_period(const LinearDesign& d) { return d.r_max; }
double mismatch_constant(const HighGainDesign& d) { return d.mismatch; }
double mismatch_constant(const LinearDesign& d) { return d.mismatch; }

}  // namespace sdobs

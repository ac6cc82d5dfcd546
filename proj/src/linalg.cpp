#include "sdobs/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace sdobs::linalg {

namespace {

void require_square(const Matrix& a, const char* who) {
    if (a.rows() != a.cols() || a.rows() < 1)
        throw DimensionMismatch(std::string(who) + ": matrix must be square");
}

// Real coefficients of prod (lambda - t_i), highest degree first.
// Throws if the target set is not closed under conjugation.
std::vector<double> real_char_poly(const std::vector<Complex>& targets) {
    std::vector<Complex> coeff{1.0};
    for (const Complex& t : targets) {
        std::vector<Complex> next(coeff.size() + 1, 0.0);
        for (size_t i = 0; i < coeff.size(); ++i) {
            next[i] += coeff[i];
            next[i + 1] -= coeff[i] * t;
        }
        coeff = std::move(next);
    }
    double scale = 0.0;
    for (const Complex& c : coeff) scale = std::max(scale, std::abs(c));
    std::vector<double> out(coeff.size());
    for (size_t i = 0; i < coeff.size(); ++i) {
        if (std::abs(coeff[i].imag()) > 1e-9 * std::max(1.0, scale))
            throw Error("pole targets are not closed under conjugation");
        out[i] = coeff[i].real();
    }
    return out;
}

Matrix observability_matrix(const Matrix& a, const Vector& c) {
    const auto n = a.rows();
    Matrix obs(n, n);
    Eigen::RowVectorXd row = c.transpose();
    for (Eigen::Index i = 0; i < n; ++i) {
        obs.row(i) = row;
        row = row * a;
    }
    return obs;
}

Vector ackermann_observer_gain(const Matrix& a, const Vector& c,
                               const std::vector<Complex>& targets) {
    const auto n = a.rows();
    if (c.size() != n) throw DimensionMismatch("place_poles: c dimension mismatch");
    if (static_cast<Eigen::Index>(targets.size()) != n)
        throw DimensionMismatch("place_poles: need exactly n targets");

    const Matrix obs = observability_matrix(a, c);
    Eigen::FullPivLU<Matrix> lu(obs);
    lu.setThreshold(1e-10);
    if (lu.rank() < n)
        throw NotObservable("pair (a, c) is not observable");

    const std::vector<double> phi = real_char_poly(targets);
    // phi(A), Horner form
    Matrix acc = Matrix::Identity(n, n) * phi[0];
    for (size_t i = 1; i < phi.size(); ++i)
        acc = acc * a + phi[i] * Matrix::Identity(n, n);

    Vector en = Vector::Zero(n);
    en(n - 1) = 1.0;
    // a + k c' gets the target spectrum
    return -(acc * lu.solve(en));
}

}  // namespace

std::vector<Complex> eigenvalues(const Matrix& a) {
    Eigen::EigenSolver<Matrix> es(a, false);
    std::vector<Complex> out(a.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i) out[i] = es.eigenvalues()(i);
    return out;
}

bool is_hurwitz(const Matrix& a, double margin) {
    for (const Complex& ev : eigenvalues(a))
        if (ev.real() >= -margin) return false;
    return true;
}

bool is_schur(const Matrix& a, double margin) {
    for (const Complex& ev : eigenvalues(a))
        if (std::abs(ev) >= 1.0 - margin) return false;
    return true;
}

Matrix solve_lyapunov(const Matrix& a_cl, const Matrix& q, const Options& opts) {
    require_square(a_cl, "solve_lyapunov");
    const auto n = a_cl.rows();
    if (q.rows() != n || q.cols() != n)
        throw DimensionMismatch("solve_lyapunov: q dimension mismatch");
    if ((q - q.transpose()).cwiseAbs().maxCoeff() >
        opts.symmetry_tol * std::max(1.0, q.cwiseAbs().maxCoeff()))
        throw NotSymmetric("solve_lyapunov: q is not symmetric");
    if (!is_hurwitz(a_cl, opts.hurwitz_margin))
        throw NotHurwitz("solve_lyapunov: a_cl is not Hurwitz");
    {
        Eigen::SelfAdjointEigenSolver<Matrix> es(q, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() <= 0.0)
            throw NotPositiveDefinite("solve_lyapunov: q is not positive definite");
    }

    // vec(P a_cl + a_cl' P) = (a_cl' kron I + I kron a_cl') vec(P)
    const Matrix id = Matrix::Identity(n, n);
    Matrix m = Matrix::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            m.block(i * n, j * n, n, n) += a_cl(j, i) * id;  // a_cl' kron I
            if (i == j) m.block(i * n, j * n, n, n) += a_cl.transpose();
        }
    Vector rhs(n * n);
    for (Eigen::Index j = 0; j < n; ++j) rhs.segment(j * n, n) = -q.col(j);

    Vector pv = m.fullPivLu().solve(rhs);
    Matrix p(n, n);
    for (Eigen::Index j = 0; j < n; ++j) p.col(j) = pv.segment(j * n, n);
    p = 0.5 * (p + p.transpose()).eval();

    const double residual = (p * a_cl + a_cl.transpose() * p + q).norm();
    if (residual > opts.residual_tol * (p.norm() + q.norm()))
        throw Error("solve_lyapunov: residual above tolerance");
    return p;
}

Vector place_poles_continuous(const Matrix& a, const Vector& c,
                              const std::vector<Complex>& targets, const Options&) {
    require_square(a, "place_poles_continuous");
    return ackermann_observer_gain(a, c, targets);
}

Vector place_poles_discrete(const Matrix& ad, const Vector& c,
                            const std::vector<Complex>& targets, const Options&) {
    require_square(ad, "place_poles_discrete");
    for (const Complex& t : targets)
        if (std::abs(t) >= 1.0)
            throw Error("place_poles_discrete: target outside open unit disk");
    return ackermann_observer_gain(ad, c, targets);
}

Matrix expm(const Matrix& a, double t) {
    require_square(a, "expm");
    if (!std::isfinite(t) || !a.allFinite())
        throw Overflow("expm: non-finite input");
    const auto n = a.rows();
    Matrix at = a * t;

    const double norm = at.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
        at /= std::pow(2.0, squarings);
    }

    Matrix result = Matrix::Identity(n, n);
    Matrix term = Matrix::Identity(n, n);
    for (int k = 1; k <= 40; ++k) {
        term = (term * at / static_cast<double>(k)).eval();
        result += term;
        if (term.norm() <= 1e-18 * result.norm()) break;
    }
    for (int s = 0; s < squarings; ++s) {
        result = (result * result).eval();
        if (!result.allFinite())
            throw Overflow("expm: intermediate overflow while squaring");
    }
    if (!result.allFinite()) throw Overflow("expm: non-finite result");
    return result;
}

std::pair<double, double> symmetric_extremal_eigs(const Matrix& s, const Options& opts) {
    require_square(s, "symmetric_extremal_eigs");
    if ((s - s.transpose()).cwiseAbs().maxCoeff() >
        opts.symmetry_tol * std::max(1.0, s.cwiseAbs().maxCoeff()))
        throw NotSymmetric("symmetric_extremal_eigs: matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> es(s, Eigen::EigenvaluesOnly);
    return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

double induced_norm(const Matrix& m) {
    if (!m.allFinite()) throw Overflow("induced_norm: non-finite input");
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.transpose() * m, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace sdobs::linalg

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "sdobs/errors.hpp"

namespace sdobs::linalg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;

/// Per-call tolerance overrides; defaults are the module constants.
struct Options {
    double hurwitz_margin = 1e-12;   // eigenvalue real parts must be below -margin
    double symmetry_tol = 1e-12;     // allowed relative asymmetry
    double residual_tol = 1e-10;     // Lyapunov residual acceptance
    double eig_check_tol = 1e-9;     // Hurwitz/Schur spectral checks
};

std::vector<Complex> eigenvalues(const Matrix& a);
bool is_hurwitz(const Matrix& a, double margin = 1e-12);
bool is_schur(const Matrix& a, double margin = 1e-12);

/// Solve P*a_cl + a_cl'*P = -q for symmetric PD P via the vectorized
/// (Kronecker) linear system. Requires a_cl Hurwitz and q symmetric PD.
Matrix solve_lyapunov(const Matrix& a_cl, const Matrix& q, const Options& opts = {});

/// Gain k such that eig(a + k*c') equals `targets` (Ackermann on the dual pair).
Vector place_poles_continuous(const Matrix& a, const Vector& c,
                              const std::vector<Complex>& targets,
                              const Options& opts = {});

/// Same placement with targets required strictly inside the unit disk.
Vector place_poles_discrete(const Matrix& ad, const Vector& c,
                            const std::vector<Complex>& targets,
                            const Options& opts = {});

/// exp(a*t) by scaling-and-squaring with a truncated Taylor series.
Matrix expm(const Matrix& a, double t);

/// (lambda_min, lambda_max) of a symmetric matrix.
std::pair<double, double> symmetric_extremal_eigs(const Matrix& s, const Options& opts = {});

/// Spectral norm |m| = sqrt(lambda_max(m'm)).
double induced_norm(const Matrix& m);

}  // namespace sdobs::linalg

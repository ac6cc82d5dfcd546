#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "sdobs/linalg.hpp"

namespace sdobs {

using linalg::Matrix;
using linalg::Vector;

using VectorField = std::function<Vector(const Vector&)>;
using ScalarField = std::function<double(const Vector&)>;

struct TriangularKind {
    double lipschitz_L;
    // f_i receives the first i coordinates of the state
    std::vector<ScalarField> components;
};
struct LinearKind {
    Matrix a;
    Vector c;
};
struct GenericKind {};

/// Autonomous single-output plant: dx/dt = f(x), y = h(x), with the output
/// rate L_f h available for inter-sample prediction.
struct Plant {
    int n = 0;
    VectorField f;
    ScalarField h;
    ScalarField output_rate;  // L_f h
    std::variant<TriangularKind, LinearKind, GenericKind> kind = GenericKind{};

    bool is_triangular() const { return std::holds_alternative<TriangularKind>(kind); }
    bool is_linear() const { return std::holds_alternative<LinearKind>(kind); }
    const TriangularKind& triangular() const { return std::get<TriangularKind>(kind); }
    const LinearKind& linear() const { return std::get<LinearKind>(kind); }
};

struct LipschitzCheckOptions {
    int pairs = 10000;
    double box_radius = 1e3;
    unsigned long long seed = 0x5d0b5;
};

/// Triangular globally Lipschitz plant: dx_i/dt = f_i(x_1..x_i) + x_{i+1},
/// dx_n/dt = f_n(x), y = x_1. The declared Lipschitz constant is spot-checked
/// on random point pairs.
Plant make_triangular_plant(std::vector<ScalarField> f_components, double lipschitz_L,
                            const LipschitzCheckOptions& check = {});

/// Linear plant dx/dt = a x, y = c'x.
Plant make_linear_plant(const Matrix& a, const Vector& c);

/// The harmonic oscillator dx1/dt = x2, dx2/dt = -4 x1, y = x1.
Plant oscillator_preset();

/// Double integrator (triangular with L = 0).
Plant double_integrator_preset();

/// n = 2 triangular demo: f1 = sin(x1), f2 = -x1, L = 1.
Plant sin_triangular_preset();

/// Plant with arbitrary maps and no structural checks; designers refuse it.
Plant make_generic_plant(int n, VectorField f, ScalarField h, ScalarField output_rate);

/// Simulates the trajectory from x0 and checks the exponential growth bound
/// |x(t)| <= exp(c t)|x0| with c = n L + n - 1.
bool growth_bound_check(const Plant& plant, const Vector& x0, double horizon, double step);

}  // namespace sdobs

#include <cmath>
#include <random>

#include "doctest.h"
#include "sdobs/integrate.hpp"
#include "sdobs/linalg.hpp"
#include "sdobs/plant.hpp"

using namespace sdobs;

TEST_CASE("triangular plant with sin nonlinearity") {
    std::vector<ScalarField> comps{
        [](const Vector& x) { return std::sin(x(0)); },
        [](const Vector& x) { return -x(0); },
    };
    const Plant p = make_triangular_plant(std::move(comps), 1.0);
    Vector x(2);
    x << M_PI, 2.0;
    CHECK(p.output_rate(x) == doctest::Approx(std::sin(M_PI) + 2.0));
    CHECK(p.h(x) == doctest::Approx(M_PI));
}

TEST_CASE("double integrator output rate is x2") {
    const Plant p = double_integrator_preset();
    Vector x(2);
    x << 3.0, -7.0;
    CHECK(p.output_rate(x) == doctest::Approx(-7.0));
    CHECK(p.f(x)(0) == doctest::Approx(-7.0));
    CHECK(p.f(x)(1) == doctest::Approx(0.0));
}

TEST_CASE("quadratic component is rejected for any declared constant") {
    std::vector<ScalarField> comps{[](const Vector& x) { return x(0) * x(0); }};
    CHECK_THROWS_AS(make_triangular_plant(std::move(comps), 100.0), LipschitzViolated);
}

TEST_CASE("linear plant and the oscillator preset") {
    const Plant p = oscillator_preset();
    Vector x(2);
    x << 1.5, -0.5;
    CHECK(p.output_rate(x) == doctest::Approx(-0.5));  // L_f h = x2
    CHECK(p.h(x) == doctest::Approx(1.5));

    Matrix a = Matrix::Zero(2, 2);
    Vector c(2);
    c << 1, 0;
    const Plant zero = make_linear_plant(a, c);
    CHECK(zero.output_rate(x) == doctest::Approx(0.0));

    CHECK_THROWS_AS(make_linear_plant(Matrix::Zero(2, 2), Vector::Ones(3)),
                    DimensionMismatch);
}

TEST_CASE("oscillator exact flow via expm: half period flips the velocity") {
    const Plant p = oscillator_preset();
    Vector x0(2);
    x0 << 0.0, 2.0;
    const Vector xT = linalg::expm(p.linear().a, M_PI / 2.0) * x0;
    CHECK(xT(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(xT(1) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("oscillator energy 4 x1^2 + x2^2 is conserved by the integrator") {
    const Plant p = oscillator_preset();
    Vector x0(2);
    x0 << 0.0, 2.0;
    auto rate = [&](double, const Vector& x) { return p.f(x); };
    const auto series = integrate_segment(rate, x0, 0.0, 10.0, 1e-3);
    const double e0 = 4.0 * x0(0) * x0(0) + x0(1) * x0(1);
    for (const auto& s : series) {
        const double e = 4.0 * s.state(0) * s.state(0) + s.state(1) * s.state(1);
        CHECK(std::abs(e - e0) < 1e-9);
    }
}

TEST_CASE("directional-derivative consistency of L_f h") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const double delta = 1e-6;
    for (const Plant& p : {oscillator_preset(), sin_triangular_preset()}) {
        for (int trial = 0; trial < 100; ++trial) {
            Vector x(p.n);
            for (int i = 0; i < p.n; ++i) x(i) = u(rng);
            const double fd = (p.h(x + delta * p.f(x)) - p.h(x)) / delta;
            CHECK(std::abs(p.output_rate(x) - fd) < 1e-5);
        }
    }
}

TEST_CASE("growth bound holds for triangular plants") {
    Vector x0(2);
    x0 << 1.0, 1.0;
    CHECK(growth_bound_check(double_integrator_preset(), x0, 2.0, 1e-3));

    CHECK(growth_bound_check(double_integrator_preset(), Vector::Zero(2), 2.0, 1e-3));

    Vector x1(2);
    x1 << 3.0, -1.0;
    CHECK(growth_bound_check(sin_triangular_preset(), x1, 5.0, 1e-3));

    CHECK_THROWS_AS(growth_bound_check(oscillator_preset(), x0, 1.0, 1e-3),
                    WrongPlantKind);
}

TEST_CASE("linear plant RK4 flow matches the exact expm flow") {
    const Plant p = oscillator_preset();
    Vector x0(2);
    x0 << 0.7, -1.2;
    auto rate = [&](double, const Vector& x) { return p.f(x); };
    const double step = 1e-3;
    const auto series = integrate_segment(rate, x0, 0.0, 1.0, step);
    const Vector exact = linalg::expm(p.linear().a, 1.0) * x0;
    CHECK((series.back().state - exact).norm() < 100.0 * std::pow(step, 4));
}

#include "sdobs/plant.hpp"

#include <cmath>
#include <memory>
#include <random>

#include "sdobs/integrate.hpp"

namespace sdobs {

namespace {

void check_origin(const Plant& p) {
    Vector zero = Vector::Zero(p.n);
    if (p.f(zero).cwiseAbs().maxCoeff() > 1e-12)
        throw Error("plant: f(0) != 0");
    if (std::abs(p.h(zero)) > 1e-12)
        throw Error("plant: h(0) != 0");
}

}  // namespace

Plant make_triangular_plant(std::vector<ScalarField> f_components, double lipschitz_L,
                            const LipschitzCheckOptions& check) {
    const int n = static_cast<int>(f_components.size());
    if (n < 1) throw DimensionMismatch("make_triangular_plant: need at least one component");
    if (lipschitz_L < 0) throw Error("make_triangular_plant: negative Lipschitz constant");

    // Spot-check the declared constant on random point pairs in the box.
    std::mt19937_64 rng(check.seed);
    std::uniform_real_distribution<double> coord(-check.box_radius, check.box_radius);
    for (int i = 0; i < n; ++i) {
        for (int trial = 0; trial < check.pairs; ++trial) {
            Vector p(i + 1), q(i + 1);
            for (int j = 0; j <= i; ++j) {
                p(j) = coord(rng);
                q(j) = coord(rng);
            }
            const double gap = (p - q).norm();
            if (gap == 0.0) continue;
            const double quotient = std::abs(f_components[i](p) - f_components[i](q)) / gap;
            if (quotient > lipschitz_L * (1.0 + 1e-6))
                throw LipschitzViolated("make_triangular_plant: sampled Lipschitz quotient " +
                                        std::to_string(quotient) + " exceeds declared constant");
        }
    }

    auto components = std::make_shared<std::vector<ScalarField>>(std::move(f_components));
    Plant plant;
    plant.n = n;
    plant.f = [components, n](const Vector& x) {
        Vector dx(n);
        for (int i = 0; i < n; ++i) {
            dx(i) = (*components)[i](x.head(i + 1));
            if (i + 1 < n) dx(i) += x(i + 1);
        }
        return dx;
    };
    plant.h = [](const Vector& x) { return x(0); };
    plant.output_rate = [components, n](const Vector& x) {
        double rate = (*components)[0](x.head(1));
        if (n > 1) rate += x(1);
        return rate;
    };
    plant.kind = TriangularKind{lipschitz_L, *components};
    check_origin(plant);
    return plant;
}

Plant make_linear_plant(const Matrix& a, const Vector& c) {
    if (a.rows() != a.cols()) throw DimensionMismatch("make_linear_plant: a must be square");
    if (c.size() != a.rows()) throw DimensionMismatch("make_linear_plant: c dimension mismatch");
    Plant plant;
    plant.n = static_cast<int>(a.rows());
    plant.f = [a](const Vector& x) { return Vector(a * x); };
    plant.h = [c](const Vector& x) { return c.dot(x); };
    Eigen::RowVectorXd ca = c.transpose() * a;
    plant.output_rate = [ca](const Vector& x) { return double(ca * x); };
    plant.kind = LinearKind{a, c};
    return plant;
}

Plant oscillator_preset() {
    Matrix a(2, 2);
    a << 0, 1, -4, 0;
    Vector c(2);
    c << 1, 0;
    return make_linear_plant(a, c);
}

Plant double_integrator_preset() {
    std::vector<ScalarField> comps{
        [](const Vector&) { return 0.0; },
        [](const Vector&) { return 0.0; },
    };
    return make_triangular_plant(std::move(comps), 0.0);
}

Plant sin_triangular_preset() {
    std::vector<ScalarField> comps{
        [](const Vector& x) { return std::sin(x(0)); },
        [](const Vector& x) { return -x(0); },
    };
    return make_triangular_plant(std::move(comps), 1.0);
}

Plant make_generic_plant(int n, VectorField f, ScalarField h, ScalarField output_rate) {
    Plant plant;
    plant.n = n;
    plant.f = std::move(f);
    plant.h = std::move(h);
    plant.output_rate = std::move(output_rate);
    plant.kind = GenericKind{};
    check_origin(plant);
    return plant;
}

bool growth_bound_check(const Plant& plant, const Vector& x0, double horizon, double step) {
    if (!plant.is_triangular())
        throw WrongPlantKind("growth_bound_check: plant must be triangular");
    const double L = plant.triangular().lipschitz_L;
    const double c = plant.n * L + plant.n - 1;
    const double norm0 = x0.norm();

    auto rate = [&plant](double, const Vector& x) { return plant.f(x); };
    const auto series = integrate_segment(rate, x0, 0.0, horizon, step);
    for (const auto& sample : series) {
        if (sample.state.norm() > std::exp(c * sample.t) * norm0 * (1.0 + 1e-6))
            return false;
    }
    return true;
}

}  // namespace sdobs

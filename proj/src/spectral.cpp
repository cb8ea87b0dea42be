#include "polyharm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polyharm/errors.hpp"
#include "polyharm/numerics.hpp"

namespace polyharm {

EigenPair principal_eigenpair(const GreenOperator& op, const EigenTolerances& tol) {
    if (!(tol.eigenvalue > 0.0) || !(tol.residual > 0.0))
        throw ParameterError("eigen tolerances must be positive");
    if (tol.max_iterations < 1) throw ParameterError("max_iterations must be >= 1");

    const auto& grid = op.grid_ptr();
    // φ₀ ≡ 1 normalised to unit integral
    SampledField phi = SampledField::constant(grid, 1.0 / grid->problem().volume(), Provenance::SolvedPotential);
    phi = phi.scaled(1.0 / integrate(phi));
    double lambda_prev = 0.0;
    double residual = kInfinity;
    for (int it = 1; it <= tol.max_iterations; ++it) {
        const SampledField g_phi = op.apply(phi);
        const double mass = integrate(g_phi);
        if (!(mass > 0.0)) throw InvariantViolation("Green operator lost positivity during power iteration");
        const double lambda = integrate(phi) / mass;

        double worst = 0.0;
        for (std::size_t i = 0; i < phi.size(); ++i)
            worst = std::max(worst, std::abs(g_phi[i] - phi[i] / lambda));
        residual = worst / phi.max_abs();
        const bool settled = it > 1 && std::abs(lambda - lambda_prev) <= tol.eigenvalue * lambda;
        if (settled && residual <= tol.residual) {
            return EigenPair{lambda, phi.with_provenance(Provenance::SolvedPotential), it, residual};
        }
        lambda_prev = lambda;
        phi = g_phi.scaled(1.0 / mass);
    }
    throw ConvergenceError("power iteration did not converge in " + std::to_string(tol.max_iterations) +
                               " iterations (residual " + std::to_string(residual) + ")",
                           residual);
}

SandwichConstants verify_sandwich(const EigenPair& pair) {
    const auto& phi = pair.eigenfunction;
    const auto& grid = phi.grid();
    const int m = grid.problem().m();
    SandwichConstants c{kInfinity, 0.0};
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const double ratio = phi[i] / std::pow(1.0 - norm(grid.node(i)), m);
        c.c1 = std::min(c.c1, ratio);
        c.c2 = std::max(c.c2, ratio);
    }
    if (!(c.c1 > 0.0)) throw InvariantViolation("eigenfunction is not positive on the grid");
    return c;
}

double eigen_moment(const SampledField& u, const EigenPair& pair) {
    const auto& phi = pair.eigenfunction;
    if (u.grid_ptr() != phi.grid_ptr()) throw DomainError("moment field and eigenfunction use different grids");
    CompensatedSum sum;
    for (std::size_t i = 0; i < u.size(); ++i) sum.add(u.grid().weight(i) * u[i] * phi[i]);
    return sum.value();
}

}  // namespace polyharm

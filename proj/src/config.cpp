#include "polyharm/config.hpp"

#include <cmath>

#include "polyharm/errors.hpp"
#include "polyharm/geometry.hpp"

namespace polyharm {

void validate_config(const RunConfig& c) {
    BallProblem(c.n, c.m);
    if (!(c.p > 0.0) || !(c.q > 0.0)) throw ParameterError("p and q must be positive");
    if (c.level < 0 || c.level > 8) throw ParameterError("level must lie in [0, 8]");
    if (c.levels.empty()) throw ParameterError("level ladder is empty");
    for (std::size_t i = 0; i < c.levels.size(); ++i) {
        if (c.levels[i] < 0 || c.levels[i] > 8) throw ParameterError("ladder levels must lie in [0, 8]");
        if (i && c.levels[i] <= c.levels[i - 1]) throw ParameterError("ladder levels must increase");
    }
    if (c.rhs != "const" && c.rhs != "one_plus_r" && c.rhs != "gaussian" && c.rhs != "boundary_power")
        throw ParameterError("rhs must be one of const, one_plus_r, gaussian, boundary_power");
    if (c.format != "json" && c.format != "csv") throw ParameterError("format must be json or csv");
    if (!c.bound.empty() && c.bound != "g1" && c.bound != "g2" && c.bound != "g3")
        throw ParameterError("bound must be g1, g2 or g3");
    if (!(c.eigen_tol > 0.0) || !(c.residual_tol > 0.0)) throw ParameterError("tolerances must be positive");
    if (c.max_iters < 1) throw ParameterError("max_iters must be >= 1");
    const auto& r = c.rules;
    if (!(r.epsilon_numerator > 0.0)) throw ParameterError("epsilon must be positive");
    if (!(r.rho_blend > 0.0 && r.rho_blend < 1.0)) throw ParameterError("rho_blend must lie in (0, 1)");
    if (!(r.k1_closeness > 0.0 && r.k1_closeness < 1.0)) throw ParameterError("k1_closeness must lie in (0, 1)");
    if (!(r.slack >= 0.0)) throw ParameterError("slack must be nonnegative");
    if (r.max_rounds < 1) throw ParameterError("max_rounds must be >= 1");
}

}  // namespace polyharm

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "polyharm/exponents.hpp"
#include "polyharm/solver.hpp"

namespace polyharm {

// x -> |x - x0|^{-(exponent + 2m)} on the cone, 0 outside. Same checks as
// build_singular_rhs.
std::function<double(const Point&)> singular_rhs_function(const BallProblem& problem, double exponent,
                                                          const ConeRegion& region);

// The same function at the nodes. Sampled per ring when
// the grid pole is the cone vertex and the cone axis points inward along it.
// ParameterError unless 0 < exponent < n - m.
SampledField build_singular_rhs(const BallProblem& problem, double exponent, const ConeRegion& region,
                                std::shared_ptr<const QuadratureGrid> grid);

// min over cone nodes of u |x - x0|^exponent, ignoring nodes closer to the
// vertex than the grid's focus cutoff. ResolutionError if no node qualifies.
double verify_pointwise_lower_bound(const SampledField& u, double exponent, const ConeRegion& region);

struct SingularSystem {
    double p = 0.0;
    double q = 0.0;
    double alpha = 0.0;  // 2m(p+1)/(pq-1), in the given (p, q) order
    double beta = 0.0;
    int n = 0;
    int m = 0;
    ConeRegion region;
    SampledField phi;
    SampledField psi;
    SampledField u;  // G[phi]
    SampledField v;  // G[psi]
    SampledField a;  // phi / v^p on the cone, 0 elsewhere
    SampledField b;  // psi / u^q on the cone, 0 elsewhere
};

// Fixed meridian points of the closed cone (edge and cap included) at
// distance >= min_distance from the vertex; independent of any grid.
std::vector<Point> cone_probe_points(const ConeRegion& region, double min_distance);

// sup_a, sup_b: over cone_probe_points beyond the focus cutoff, with u, v
// interpolated by the Nyström formula. The node_* values and the rest are
// over cone nodes at distance >= focus cutoff from the vertex.
struct SystemStats {
    double sup_a = 0.0;
    double sup_b = 0.0;
    double node_sup_a = 0.0;
    double node_sup_b = 0.0;
    double c_u = 0.0;
    double c_v = 0.0;
    double near_vertex_max_u = 0.0;
    double near_vertex_max_v = 0.0;
};

// NotApplicableError unless the regime is singular. InvariantViolation if
// u, v fail to be positive or a, b come out negative or non-finite.
SingularSystem construct_counterexample(double p, double q, const GreenOperator& op,
                                        const ConeRegion& region = ConeRegion::standard());
SingularSystem construct_counterexample(double p, double q, int m, int n,
                                        std::shared_ptr<const QuadratureGrid> grid);

SystemStats system_stats(const SingularSystem& system, const GreenOperator& op);

// (‖u - G[a v^p]‖∞ / ‖u‖∞, ‖v - G[b u^q]‖∞ / ‖v‖∞).
// InvariantViolation when u or v vanishes identically.
std::pair<double, double> verify_system_residual(const SingularSystem& system, const GreenOperator& op);
std::pair<double, double> verify_system_residual(const SingularSystem& system, const GreenKernel& kernel);

// Grid graded towards the vertex of the standard cone.
Grading singular_grading(int n);

struct SingularLevel {
    int level = 0;
    std::size_t nodes = 0;
    SystemStats stats;
    double residual_u = 0.0;
    double residual_v = 0.0;
};

struct SingularStudy {
    double p = 0.0;
    double q = 0.0;
    int n = 0;
    int m = 0;
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<SingularLevel> levels;
    std::vector<double> growth;  // near-vertex max u, level over previous level
    // u and v on the cone axis at the finest level: (t, u, v), t = |x - x0|
    std::vector<std::array<double, 3>> axis_profile;
};

SingularStudy singular_study(double p, double q, int m, int n, const std::vector<int>& levels,
                             const std::string& cache_dir = {});

}  // namespace polyharm

#include "polyharm/singular.hpp"

#include <algorithm>
#include <cmath>

#include "polyharm/errors.hpp"
#include "polyharm/numerics.hpp"

namespace polyharm {
namespace {

bool vertex_is_pole(const QuadratureGrid& grid, const ConeRegion& region) {
    const Point d = grid.pole() - region.x0;
    const Point s = grid.pole() + region.axis;
    return norm(d) < 1e-14 && norm(s) < 1e-14;
}

// Indices of cone nodes outside the vertex cutoff.
std::vector<std::size_t> cone_nodes(const QuadratureGrid& grid, const ConeRegion& region) {
    std::vector<std::size_t> out;
    const double cutoff = grid.focus_cutoff();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Point& x = grid.node(i);
        if (cone_contains(region, x) && polyharm::distance(x, region.x0) >= cutoff) out.push_back(i);
    }
    return out;
}

}  // namespace

std::function<double(const Point&)> singular_rhs_function(const BallProblem& problem, double exponent,
                                                          const ConeRegion& region) {
    const int n = problem.n(), m = problem.m();
    if (!(exponent > 0.0) || !(exponent < n - m))
        throw ParameterError("singular exponent must lie in (0, n-m) = (0, " + std::to_string(n - m) +
                             "); larger exponents are not integrable against d^m");
    region.validate();
    const double power = -(exponent + 2.0 * m);
    return [region, power](const Point& x) {
        if (!cone_contains(region, x)) return 0.0;
        return std::pow(polyharm::distance(x, region.x0), power);
    };
}

SampledField build_singular_rhs(const BallProblem& problem, double exponent, const ConeRegion& region,
                                std::shared_ptr<const QuadratureGrid> grid) {
    const auto f = singular_rhs_function(problem, exponent, region);
    if (grid->problem() != problem) throw DomainError("grid belongs to another problem");
    if (vertex_is_pole(*grid, region)) return SampledField::sample_axisymmetric(grid, f);
    return SampledField::sample(grid, f);
}

double verify_pointwise_lower_bound(const SampledField& u, double exponent, const ConeRegion& region) {
    const auto& grid = u.grid();
    const auto nodes = cone_nodes(grid, region);
    if (nodes.empty()) throw ResolutionError("no cone nodes beyond the vertex cutoff on this grid");
    double c = kInfinity;
    for (std::size_t i : nodes) c = std::min(c, u[i] * std::pow(polyharm::distance(grid.node(i), region.x0), exponent));
    return c;
}

SingularSystem construct_counterexample(double p, double q, const GreenOperator& op, const ConeRegion& region) {
    const BallProblem& problem = op.kernel().problem();
    const int n = problem.n(), m = problem.m();
    const ExponentParams e = compute_exponents(p, q, m);
    const Regime regime = classify_regime(e, n, m);
    if (regime != Regime::Singular)
        throw NotApplicableError("construction needs max(alpha,beta) < n-m; regime is " + to_string(regime));

    const double alpha = e.swapped ? e.beta : e.alpha;
    const double beta = e.swapped ? e.alpha : e.beta;
    const auto& grid = op.grid_ptr();
    auto phi = build_singular_rhs(problem, alpha, region, grid);
    auto psi = build_singular_rhs(problem, beta, region, grid);
    auto u = op.apply(phi);
    auto v = op.apply(psi);
    if (!(u.min() > 0.0) || !(v.min() > 0.0))
        throw InvariantViolation("potentials of the cone data must be positive at every node");

    // 0/0 off the cone is taken as 0
    auto a = phi.combine(v, [p](double f, double w) { return f == 0.0 ? 0.0 : f / std::pow(w, p); });
    auto b = psi.combine(u, [q](double f, double w) { return f == 0.0 ? 0.0 : f / std::pow(w, q); });
    SingularSystem s{p, q, alpha, beta, n, m, region, std::move(phi), std::move(psi), std::move(u), std::move(v),
                     a.with_provenance(Provenance::ConstructedRhs), b.with_provenance(Provenance::ConstructedRhs)};
    if (s.a.min() < 0.0 || s.b.min() < 0.0) throw InvariantViolation("coefficients a, b must be nonnegative");
    return s;
}

SingularSystem construct_counterexample(double p, double q, int m, int n,
                                        std::shared_ptr<const QuadratureGrid> grid) {
    const BallProblem problem(n, m);
    return construct_counterexample(p, q, GreenOperator(GreenKernel(problem), std::move(grid)));
}

std::vector<Point> cone_probe_points(const ConeRegion& region, double min_distance) {
    region.validate();
    // unit vector orthogonal to the axis
    int k = 0;
    for (int i = 1; i < kMaxDim; ++i)
        if (std::abs(region.axis[i]) < std::abs(region.axis[k])) k = i;
    Point perp = unit_vector(k) - dot(unit_vector(k), region.axis) * region.axis;
    perp = (1.0 / norm(perp)) * perp;

    std::vector<Point> out;
    for (int j = 0;; ++j) {
        const double t = region.cap_radius * std::pow(2.0, -0.25 * j);
        if (t < min_distance) break;
        for (int i = 0; i <= 4; ++i) {
            const double g = region.half_aperture * i / 4.0;
            out.push_back(region.x0 + t * (std::cos(g) * region.axis + std::sin(g) * perp));
        }
    }
    return out;
}

SystemStats system_stats(const SingularSystem& s, const GreenOperator& op) {
    const auto& grid = s.u.grid();
    const auto nodes = cone_nodes(grid, s.region);
    if (nodes.empty()) throw ResolutionError("no cone nodes beyond the vertex cutoff on this grid");
    SystemStats st;
    for (std::size_t i : nodes) {
        st.node_sup_a = std::max(st.node_sup_a, s.a[i]);
        st.node_sup_b = std::max(st.node_sup_b, s.b[i]);
        st.near_vertex_max_u = std::max(st.near_vertex_max_u, s.u[i]);
        st.near_vertex_max_v = std::max(st.near_vertex_max_v, s.v[i]);
    }
    const auto probes = cone_probe_points(s.region, grid.focus_cutoff());
    std::vector<double> pa(probes.size()), pb(probes.size());
    parallel_for(probes.size(), [&](std::size_t i) {
        const Point& x = probes[i];
        const double r = polyharm::distance(x, s.region.x0);
        pa[i] = std::pow(r, -(s.alpha + 2.0 * s.m)) / std::pow(op.evaluate_at(x, s.psi), s.p);
        pb[i] = std::pow(r, -(s.beta + 2.0 * s.m)) / std::pow(op.evaluate_at(x, s.phi), s.q);
    });
    for (std::size_t i = 0; i < probes.size(); ++i) {
        st.sup_a = std::max(st.sup_a, pa[i]);
        st.sup_b = std::max(st.sup_b, pb[i]);
    }
    st.c_u = verify_pointwise_lower_bound(s.u, s.alpha, s.region);
    st.c_v = verify_pointwise_lower_bound(s.v, s.beta, s.region);
    return st;
}

std::pair<double, double> verify_system_residual(const SingularSystem& s, const GreenOperator& op) {
    const double nu = s.u.max_abs(), nv = s.v.max_abs();
    if (!(nu > 0.0) || !(nv > 0.0)) throw InvariantViolation("residual undefined: u or v vanishes identically");
    const double p = s.p, q = s.q;
    const auto rhs_u = s.a.combine(s.v, [p](double a, double w) { return a * std::pow(w, p); });
    const auto rhs_v = s.b.combine(s.u, [q](double b, double w) { return b * std::pow(w, q); });
    const auto gu = op.apply(rhs_u);
    const auto gv = op.apply(rhs_v);
    double ru = 0.0, rv = 0.0;
    for (std::size_t i = 0; i < gu.size(); ++i) {
        ru = std::max(ru, std::abs(s.u[i] - gu[i]));
        rv = std::max(rv, std::abs(s.v[i] - gv[i]));
    }
    return {ru / nu, rv / nv};
}

std::pair<double, double> verify_system_residual(const SingularSystem& s, const GreenKernel& kernel) {
    return verify_system_residual(s, GreenOperator(kernel, s.u.grid_ptr()));
}

Grading singular_grading(int n) {
    (void)n;
    Grading g;
    g.focus = ConeRegion::standard().x0;
    return g;
}

SingularStudy singular_study(double p, double q, int m, int n, const std::vector<int>& levels,
                             const std::string& cache_dir) {
    const BallProblem problem(n, m);
    const GreenKernel kernel(problem);
    const ExponentParams e = compute_exponents(p, q, m);
    const Regime regime = classify_regime(e, n, m);
    if (regime != Regime::Singular)
        throw NotApplicableError("construction needs max(alpha,beta) < n-m; regime is " + to_string(regime));
    if (levels.empty()) throw ParameterError("singular study needs at least one level");

    SingularStudy study;
    study.p = p;
    study.q = q;
    study.n = n;
    study.m = m;
    for (std::size_t li = 0; li < levels.size(); ++li) {
        auto grid = cached_grid(problem, levels[li], singular_grading(n), cache_dir);
        const GreenOperator op(kernel, grid);
        const SingularSystem s = construct_counterexample(p, q, op);
        study.alpha = s.alpha;
        study.beta = s.beta;
        SingularLevel lv;
        lv.level = levels[li];
        lv.nodes = grid->size();
        lv.stats = system_stats(s, op);
        std::tie(lv.residual_u, lv.residual_v) = verify_system_residual(s, op);
        study.levels.push_back(lv);
        if (li > 0)
            study.growth.push_back(lv.stats.near_vertex_max_u /
                                   study.levels[li - 1].stats.near_vertex_max_u);
        if (li + 1 == levels.size()) {
            const ConeRegion& r = s.region;
            for (int k = 0; k < 24; ++k) {
                const double t = r.cap_radius * std::pow(2.0, -0.5 * k);
                const Point x = r.x0 + t * r.axis;
                study.axis_profile.push_back({t, op.evaluate_at(x, s.phi), op.evaluate_at(x, s.psi)});
            }
        }
    }
    return study;
}

}  // namespace polyharm

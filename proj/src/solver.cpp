#include "polyharm/solver.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "polyharm/errors.hpp"
#include "polyharm/numerics.hpp"

namespace polyharm {
namespace {

constexpr int kCellPoints = 4;
constexpr int kNearPoints = 6;
constexpr double kNearField = 1.5;

void write_le(std::ostream& os, double x) {
    auto bits = std::bit_cast<std::uint64_t>(x);
    char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
    os.write(bytes, 8);
}

}  // namespace

GreenOperator::GreenOperator(const GreenKernel& kernel, std::shared_ptr<const QuadratureGrid> grid)
    : kernel_(kernel), grid_(std::move(grid)), cache_(std::make_unique<Cache>()) {
    if (!grid_) throw ParameterError("operator without grid");
    if (!(grid_->problem() == kernel_.problem()))
        throw DomainError("grid and kernel belong to different (n, m) problems");
    const double inv_n = 1.0 / grid_->problem().n();
    near_radius2_.resize(grid_->size());
    for (std::size_t j = 0; j < grid_->size(); ++j) {
        const double r = kNearField * std::pow(grid_->weight(j), inv_n);
        near_radius2_[j] = r * r;
    }
}

double GreenOperator::cell_integral(const Point& x, std::size_t j) const {
    CompensatedSum cell;
    grid_->visit_cell(j, kNearPoints, [&](const Point& y, double w) { cell.add(w * kernel_.value(x, y)); });
    return cell.value();
}

double GreenOperator::self_cell(std::size_t node) const {
    const Point& x = grid_->node(node);
    CompensatedSum sum;
    if (kernel_.green_case() == GreenCase::Supercritical) {
        grid_->visit_cell(node, kCellPoints, [&](const Point& y, double w) { sum.add(w * kernel_.value(x, y)); });
        return sum.value();
    }
    sum.add(kernel_.singular_ball_integral(grid_->weight(node)));
    grid_->visit_cell(node, kCellPoints, [&](const Point& y, double w) {
        sum.add(w * (kernel_.value(x, y) - kernel_.singular_part(distance(x, y))));
    });
    return sum.value();
}

double GreenOperator::coefficient(std::size_t i, std::size_t j) const {
    if (i == j) return self_cell(i);
    return off_diagonal(grid_->node(i), j);
}

const std::vector<double>& GreenOperator::ring_matrix() const {
    std::call_once(cache_->ring_once, [this] {
        const auto& g = *grid_;
        const std::size_t rings = g.ring_count();
        const std::size_t n_az = g.azimuth_count();
        auto& mat = cache_->ring;
        mat.assign(rings * rings, 0.0);
        parallel_for(rings, [&](std::size_t t) {
            const std::size_t target = g.ring_representative(t);
            const Point& x = g.node(target);
            for (std::size_t s = 0; s < rings; ++s) {
                CompensatedSum sum;
                for (std::size_t a = 0; a < n_az; ++a) {
                    const std::size_t j = s * n_az + a;
                    sum.add(j == target ? self_cell(target) : off_diagonal(x, j));
                }
                mat[t * rings + s] = sum.value();
            }
        });
    });
    return cache_->ring;
}

const std::vector<double>& GreenOperator::shell_matrix() const {
    std::call_once(cache_->shell_once, [this] {
        const auto& g = *grid_;
        const std::size_t shells = g.shell_count();
        const std::size_t per_shell = g.polar_count() * g.azimuth_count();
        auto& mat = cache_->shell;
        mat.assign(shells * shells, 0.0);
        parallel_for(shells, [&](std::size_t t) {
            const std::size_t target = g.shell_representative(t);
            const Point& x = g.node(target);
            for (std::size_t s = 0; s < shells; ++s) {
                CompensatedSum sum;
                for (std::size_t k = 0; k < per_shell; ++k) {
                    const std::size_t j = s * per_shell + k;
                    sum.add(j == target ? self_cell(target) : off_diagonal(x, j));
                }
                mat[t * shells + s] = sum.value();
            }
        });
    });
    return cache_->shell;
}

SampledField GreenOperator::apply(const SampledField& f) const {
    if (f.grid_ptr() != grid_) throw DomainError("field and operator use different grids");
    const auto& g = *grid_;
    std::vector<double> u(g.size(), 0.0);

    switch (f.symmetry()) {
    case Symmetry::Radial: {
        const auto& mat = shell_matrix();
        const std::size_t shells = g.shell_count();
        const std::size_t per_shell = g.polar_count() * g.azimuth_count();
        for (std::size_t t = 0; t < shells; ++t) {
            CompensatedSum sum;
            for (std::size_t s = 0; s < shells; ++s) sum.add(mat[t * shells + s] * f[g.shell_representative(s)]);
            std::fill_n(u.begin() + t * per_shell, per_shell, sum.value());
        }
        break;
    }
    case Symmetry::Axisymmetric: {
        const auto& mat = ring_matrix();
        const std::size_t rings = g.ring_count();
        const std::size_t n_az = g.azimuth_count();
        parallel_for(rings, [&](std::size_t t) {
            CompensatedSum sum;
            for (std::size_t s = 0; s < rings; ++s) sum.add(mat[t * rings + s] * f[g.ring_representative(s)]);
            std::fill_n(u.begin() + t * n_az, n_az, sum.value());
        });
        break;
    }
    case Symmetry::General: {
        parallel_for(g.size(), [&](std::size_t i) {
            const Point& x = g.node(i);
            CompensatedSum sum;
            for (std::size_t j = 0; j < g.size(); ++j) {
                if (f[j] == 0.0) continue;
                sum.add((j == i ? self_cell(i) : off_diagonal(x, j)) * f[j]);
            }
            u[i] = sum.value();
        });
        break;
    }
    }
    return SampledField(grid_, std::move(u), Provenance::SolvedPotential, f.symmetry());
}

double GreenOperator::evaluate_at(const Point& x, const SampledField& f) const {
    if (f.grid_ptr() != grid_) throw DomainError("field and operator use different grids");
    kernel_.problem().check_point(x);
    if (!(norm(x) < 1.0)) throw DomainError("evaluation point must lie in the open ball");
    const auto& g = *grid_;
    CompensatedSum sum;
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (f[j] == 0.0) continue;
        const double d = distance(x, g.node(j));
        sum.add((d < kDiagonalGuard ? self_cell(j) : off_diagonal(x, j)) * f[j]);
    }
    return sum.value();
}

void GreenOperator::write_dense(const std::string& path, std::size_t max_nodes) const {
    const auto& g = *grid_;
    if (g.size() > max_nodes)
        throw ParameterError("kernel dump of " + std::to_string(g.size()) + " nodes exceeds the limit of " +
                             std::to_string(max_nodes));
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open kernel dump for writing: " + path);
    os << "polyharm-kernel v1 n=" << g.problem().n() << " m=" << g.problem().m() << " level=" << g.level()
       << " size=" << g.size() << '\n';
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) write_le(os, coefficient(i, j));
}

SampledField apply_green_operator(const GreenKernel& kernel, std::shared_ptr<const QuadratureGrid> grid,
                                  const SampledField& f) {
    return GreenOperator(kernel, std::move(grid)).apply(f);
}

double constant_rhs_solution(const BallProblem& problem, const Point& x) {
    const int m = problem.m();
    double denom = 1.0;
    for (int j = 0; j < m; ++j) denom *= 4.0 * (j + 1) * (0.5 * problem.n() + j);
    return std::pow(1.0 - norm2(x), m) / denom;
}

}  // namespace polyharm

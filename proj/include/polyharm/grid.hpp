#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polyharm/geometry.hpp"

namespace polyharm {

struct Grading {
    // Radial nodes cluster as r = 1 - (1 - t)^exponent.
    double exponent = 2.0;
    // Boundary point around which the grid is locally refined; the grid is
    // rotated so that this point is its pole.
    std::optional<Point> focus;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
};

// Product quadrature over the unit ball in polar coordinates about a pole p:
//   x = R (r cos θ e1 + r sin θ ω),  ω ∈ S^{n-2},
// with R the reflection taking e1 to p. Node index order is
// (shell, polar ring, azimuth) with azimuth fastest. A "ring" is the set of
// nodes sharing (r, θ); a "shell" shares r. Fields that depend only on
// (r, θ) or only on r can be handled one ring or shell at a time.
class QuadratureGrid {
public:
    static constexpr int kLadderRings = 6;

    const BallProblem& problem() const noexcept { return problem_; }
    int level() const noexcept { return level_; }
    const Grading& grading() const noexcept { return grading_; }

    std::size_t size() const noexcept { return nodes_.size(); }
    std::span<const Point> nodes() const noexcept { return nodes_; }
    std::span<const double> weights() const noexcept { return weights_; }
    const Point& node(std::size_t i) const { return nodes_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }

    std::size_t shell_count() const noexcept { return radial_.size(); }
    std::size_t polar_count() const noexcept { return polar_.size(); }
    std::size_t azimuth_count() const noexcept { return azimuth_.size(); }
    std::size_t ring_count() const noexcept { return radial_.size() * polar_.size(); }

    std::size_t ring_of(std::size_t node) const { return node / azimuth_.size(); }
    std::size_t shell_of(std::size_t node) const { return node / (polar_.size() * azimuth_.size()); }
    std::size_t ring_representative(std::size_t ring) const { return ring * azimuth_.size(); }
    std::size_t shell_representative(std::size_t shell) const {
        return shell * polar_.size() * azimuth_.size();
    }
    std::size_t polar_index_of_ring(std::size_t ring) const { return ring % polar_.size(); }

    double shell_radius(std::size_t shell) const { return radial_nodes_[shell]; }
    double ring_angle(std::size_t ring) const { return polar_nodes_[ring % polar_.size()]; }

    // Base angular spacing π/N of this level; halves with every level.
    double spacing() const noexcept { return spacing_; }
    // Radius of the near-focus zone whose statistics are quadrature
    // dominated (width of the outermost ladder ring).
    double focus_cutoff() const noexcept { return 0.5 * spacing_; }
    const Point& pole() const noexcept { return pole_; }

    // Tensor Gauss rule over the polar cell that owns `node`; `points`
    // per coordinate direction. Calls visit(y, weight) in a fixed order.
    void visit_cell(std::size_t node, int points,
                    const std::function<void(const Point&, double)>& visit) const;

    // Tensor Gauss rule in (r, θ) over the union of the cells of `ring`,
    // azimuth integrated out; y lies on the half-plane spanned by the pole
    // and R e2. Exact for functions invariant about the pole axis.
    void visit_ring(std::size_t ring, int points,
                    const std::function<void(const Point&, double)>& visit) const;

    // Replaces nodes and weights (used by the on-disk cache).
    void adopt(std::vector<Point> nodes, std::vector<double> weights);

    friend QuadratureGrid build_grid(const BallProblem&, int, const Grading&);

private:
    struct AzimuthCell {
        Interval a;        // φ (n = 3) or θ2 (n = 4); empty for n = 2
        Interval b;        // φ for n = 4
        double sign = 1;   // n = 2: which half-plane
        double weight = 0;
    };

    QuadratureGrid(BallProblem problem, int level, Grading grading)
        : problem_(problem), level_(level), grading_(std::move(grading)) {}

    Point canonical(double r, double theta, const AzimuthCell& az, double a, double b) const;
    Point rotate(const Point& p) const;

    BallProblem problem_;
    int level_;
    Grading grading_;
    double spacing_ = 0.0;
    Point pole_{};
    Point householder_{};  // zero vector when the pole is e1

    std::vector<Interval> radial_;
    std::vector<double> radial_nodes_;
    std::vector<double> radial_weights_;
    std::vector<Interval> polar_;
    std::vector<double> polar_nodes_;
    std::vector<double> polar_weights_;
    std::vector<AzimuthCell> azimuth_;

    std::vector<Point> nodes_;
    std::vector<double> weights_;
};

// Base cells per coordinate at level L is 4·2^L. Throws ParameterError for
// negative level, grading exponent < 1, or a focus off the unit sphere.
QuadratureGrid build_grid(const BallProblem& problem, int level, const Grading& grading);

// Grid cache on disk (little-endian float64 nodes then weights after a text
// header line). Returns a shared grid, rebuilding and rewriting corrupted
// or missing files. `cache_dir` empty means no caching.
std::shared_ptr<const QuadratureGrid> cached_grid(const BallProblem& problem, int level,
                                                  const Grading& grading,
                                                  const std::string& cache_dir);

std::string grid_cache_header(const QuadratureGrid& grid);
void write_grid_cache(const QuadratureGrid& grid, const std::string& path);
// Loads nodes and weights into `grid` if the file matches it; false otherwise.
bool read_grid_cache(QuadratureGrid& grid, const std::string& path);

// POLYHARM_CACHE_DIR or "./.cache".
std::string default_cache_dir();

}  // namespace polyharm

#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "polyharm/field.hpp"
#include "polyharm/green.hpp"

namespace polyharm {

// Nyström discretisation of u(x) = ∫_B G(x,y) f(y) dy on a grid:
//   u_i = Σ_{j≠i} w_j G(x_i, y_j) f_j + f_i ∫_{cell i} G(x_i, y) dy.
// The self-cell integral takes the kernel's leading singularity over a
// ball of the cell's volume in closed form and integrates the remainder
// over the actual polar cell with a tensor Gauss rule. A neighbour cell
// closer than 1.5 of its own width gets a finer Gauss rule instead of the
// single node; the outer shells are thin and need it.
//
// Radial and axisymmetric inputs are applied through precomputed
// shell-to-shell and ring-to-ring matrices (built on first use).
class GreenOperator {
public:
    GreenOperator(const GreenKernel& kernel, std::shared_ptr<const QuadratureGrid> grid);

    const GreenKernel& kernel() const noexcept { return kernel_; }
    const QuadratureGrid& grid() const noexcept { return *grid_; }
    const std::shared_ptr<const QuadratureGrid>& grid_ptr() const noexcept { return grid_; }

    // Throws DomainError if f lives on another grid.
    SampledField apply(const SampledField& f) const;

    // u at an arbitrary point of the open ball, same near-cell treatment.
    double evaluate_at(const Point& x, const SampledField& f) const;

    // ∫ over node i's cell of G(x_i, ·).
    double self_cell(std::size_t node) const;

    // Coefficient of f_j in u_i.
    double coefficient(std::size_t i, std::size_t j) const;

    // Dense N×N coefficient matrix, row-major, same layout as the grid cache
    // with header "polyharm-kernel v1 ...". ParameterError above `max_nodes`.
    void write_dense(const std::string& path, std::size_t max_nodes = 20000) const;

private:
    struct Cache {
        std::once_flag ring_once;
        std::once_flag shell_once;
        std::vector<double> ring;   // ring_count × ring_count
        std::vector<double> shell;  // shell_count × shell_count
    };

    // w_j G(x, y_j), or G(x, .) integrated over cell j when x is close to it.
    double off_diagonal(const Point& x, std::size_t j) const {
        const double d2 = norm2(x - grid_->node(j));
        if (d2 < near_radius2_[j]) return cell_integral(x, j);
        return grid_->weight(j) * kernel_.value(x, grid_->node(j));
    }
    double cell_integral(const Point& x, std::size_t j) const;

    const std::vector<double>& ring_matrix() const;
    const std::vector<double>& shell_matrix() const;

    GreenKernel kernel_;
    std::shared_ptr<const QuadratureGrid> grid_;
    std::unique_ptr<Cache> cache_;
    std::vector<double> near_radius2_;
};

// Single application without keeping the operator around.
SampledField apply_green_operator(const GreenKernel& kernel, std::shared_ptr<const QuadratureGrid> grid,
                                  const SampledField& f);

// Closed-form solution of (-Δ)^m u = 1 with Dirichlet data:
// (1 - |x|²)^m / (4^m m! (n/2)_m).
double constant_rhs_solution(const BallProblem& problem, const Point& x);

}  // namespace polyharm

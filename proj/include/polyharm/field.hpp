#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "polyharm/grid.hpp"

namespace polyharm {

enum class Provenance { ConstructedRhs, SolvedPotential, Oracle };

// What the values are known to depend on. Operators use this to work one
// ring (Axisymmetric) or one shell (Radial) at a time.
enum class Symmetry { General, Axisymmetric, Radial };

inline Symmetry weaker(Symmetry a, Symmetry b) {
    if (a == Symmetry::General || b == Symmetry::General) return Symmetry::General;
    if (a == Symmetry::Axisymmetric || b == Symmetry::Axisymmetric) return Symmetry::Axisymmetric;
    return Symmetry::Radial;
}

// Values of a function at the nodes of a grid. Values are finite.
class SampledField {
public:
    using Grid = std::shared_ptr<const QuadratureGrid>;

    SampledField(Grid grid, std::vector<double> values, Provenance provenance,
                 Symmetry symmetry = Symmetry::General);

    // f at every node.
    static SampledField sample(Grid grid, const std::function<double(const Point&)>& f,
                               Provenance provenance = Provenance::ConstructedRhs);
    // f at one node per ring, copied around the ring. Only meaningful for
    // f invariant under rotations about the grid pole axis.
    static SampledField sample_axisymmetric(Grid grid, const std::function<double(const Point&)>& f,
                                            Provenance provenance = Provenance::ConstructedRhs);
    // f at one node per shell, copied over the shell.
    static SampledField sample_radial(Grid grid, const std::function<double(const Point&)>& f,
                                      Provenance provenance = Provenance::ConstructedRhs);
    static SampledField constant(Grid grid, double value,
                                 Provenance provenance = Provenance::ConstructedRhs);

    const QuadratureGrid& grid() const { return *grid_; }
    const Grid& grid_ptr() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }
    Provenance provenance() const { return provenance_; }
    Symmetry symmetry() const { return symmetry_; }

    // Elementwise transforms keep the symmetry tag of their inputs.
    SampledField map(const std::function<double(double)>& f) const;
    SampledField scaled(double s) const;
    // Throws DomainError when the grids differ.
    SampledField combine(const SampledField& other,
                         const std::function<double(double, double)>& f) const;
    SampledField with_provenance(Provenance p) const;

    double max_abs() const;
    double min() const;
    double max() const;

private:
    Grid grid_;
    std::vector<double> values_;
    Provenance provenance_;
    Symmetry symmetry_;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// (Σ w |u|^p d^m)^{1/p} for p < ∞, max |u| for p = ∞; d = 1 - |x|.
// Throws ParameterError for p < 1.
double weighted_norm(const SampledField& field, double p, int weight_power);

// Σ w_i f_i (compensated, index order).
double integrate(const SampledField& field);

// Same norm for a closed-form f, integrated cell by cell with a tensor Gauss
// rule of `points` per direction. Resolves jumps inside cells that nodal
// sampling misses. Finite p only.
double weighted_norm_of(const QuadratureGrid& grid, const std::function<double(const Point&)>& f, double p,
                        int weight_power, int points = 3);
// Variant for f invariant about the grid pole axis: one (r, θ) rule per ring.
double weighted_norm_of_axisymmetric(const QuadratureGrid& grid, const std::function<double(const Point&)>& f,
                                     double p, int weight_power, int points = 16);

// (Σ w |u · d^s|^p)^{1/p}, plain Lebesgue norm with a power weight folded
// into the integrand; p = ∞ gives max |u d^s|.
double power_weighted_lebesgue_norm(const SampledField& field, double p, double s);

}  // namespace polyharm

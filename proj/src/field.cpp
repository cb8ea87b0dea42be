#include "polyharm/field.hpp"

#include <algorithm>
#include <cmath>

#include "polyharm/errors.hpp"
#include "polyharm/numerics.hpp"

namespace polyharm {

SampledField::SampledField(Grid grid, std::vector<double> values, Provenance provenance,
                           Symmetry symmetry)
    : grid_(std::move(grid)), values_(std::move(values)), provenance_(provenance),
      symmetry_(symmetry) {
    if (!grid_) throw ParameterError("field without grid");
    if (values_.size() != grid_->size())
        throw DomainError("field value count does not match grid node count");
    for (double v : values_)
        if (!std::isfinite(v)) throw DomainError("field contains a non-finite value");
}

SampledField SampledField::sample(Grid grid, const std::function<double(const Point&)>& f,
                                  Provenance provenance) {
    std::vector<double> values(grid->size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = f(grid->node(i));
    return SampledField(std::move(grid), std::move(values), provenance, Symmetry::General);
}

SampledField SampledField::sample_axisymmetric(Grid grid, const std::function<double(const Point&)>& f,
                                               Provenance provenance) {
    std::vector<double> values(grid->size());
    const std::size_t n_az = grid->azimuth_count();
    for (std::size_t ring = 0; ring < grid->ring_count(); ++ring) {
        const double v = f(grid->node(grid->ring_representative(ring)));
        std::fill_n(values.begin() + ring * n_az, n_az, v);
    }
    return SampledField(std::move(grid), std::move(values), provenance, Symmetry::Axisymmetric);
}

SampledField SampledField::sample_radial(Grid grid, const std::function<double(const Point&)>& f,
                                         Provenance provenance) {
    std::vector<double> values(grid->size());
    const std::size_t per_shell = grid->polar_count() * grid->azimuth_count();
    for (std::size_t shell = 0; shell < grid->shell_count(); ++shell) {
        const double v = f(grid->node(grid->shell_representative(shell)));
        std::fill_n(values.begin() + shell * per_shell, per_shell, v);
    }
    return SampledField(std::move(grid), std::move(values), provenance, Symmetry::Radial);
}

SampledField SampledField::constant(Grid grid, double value, Provenance provenance) {
    std::vector<double> values(grid->size(), value);
    return SampledField(std::move(grid), std::move(values), provenance, Symmetry::Radial);
}

SampledField SampledField::map(const std::function<double(double)>& f) const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), f);
    return SampledField(grid_, std::move(out), provenance_, symmetry_);
}

SampledField SampledField::scaled(double s) const {
    return map([s](double v) { return s * v; });
}

SampledField SampledField::combine(const SampledField& other,
                                   const std::function<double(double, double)>& f) const {
    if (grid_ != other.grid_) throw DomainError("fields live on different grids");
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(values_[i], other.values_[i]);
    return SampledField(grid_, std::move(out), provenance_, weaker(symmetry_, other.symmetry_));
}

SampledField SampledField::with_provenance(Provenance p) const {
    SampledField copy = *this;
    copy.provenance_ = p;
    return copy;
}

double SampledField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double SampledField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double SampledField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double weighted_norm(const SampledField& field, double p, int weight_power) {
    if (!(p >= 1.0)) throw ParameterError("norm exponent p must be >= 1");
    if (std::isinf(p)) return field.max_abs();
    const auto& grid = field.grid();
    CompensatedSum sum;
    for (std::size_t i = 0; i < field.size(); ++i) {
        const double d = 1.0 - norm(grid.node(i));
        sum.add(grid.weight(i) * std::pow(std::abs(field[i]), p) * std::pow(d, weight_power));
    }
    return std::pow(sum.value(), 1.0 / p);
}

double integrate(const SampledField& field) {
    CompensatedSum sum;
    for (std::size_t i = 0; i < field.size(); ++i) sum.add(field.grid().weight(i) * field[i]);
    return sum.value();
}

double power_weighted_lebesgue_norm(const SampledField& field, double p, double s) {
    if (!(p >= 1.0)) throw ParameterError("norm exponent p must be >= 1");
    const auto& grid = field.grid();
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t i = 0; i < field.size(); ++i)
            m = std::max(m, std::abs(field[i]) * std::pow(1.0 - norm(grid.node(i)), s));
        return m;
    }
    CompensatedSum sum;
    for (std::size_t i = 0; i < field.size(); ++i) {
        const double d = 1.0 - norm(grid.node(i));
        sum.add(grid.weight(i) * std::pow(std::abs(field[i]) * std::pow(d, s), p));
    }
    return std::pow(sum.value(), 1.0 / p);
}

}  // namespace polyharm

namespace polyharm {

double weighted_norm_of(const QuadratureGrid& grid, const std::function<double(const Point&)>& f, double p,
                        int weight_power, int points) {
    if (!(p >= 1.0) || std::isinf(p)) throw ParameterError("cell-resolved norm needs a finite p >= 1");
    if (points < 1) throw ParameterError("cell rule needs at least one point per direction");
    std::vector<double> cell(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        CompensatedSum s;
        grid.visit_cell(i, points, [&](const Point& y, double w) {
            const double v = f(y);
            if (v != 0.0) s.add(w * std::pow(std::abs(v), p) * std::pow(1.0 - norm(y), weight_power));
        });
        cell[i] = s.value();
    });
    return std::pow(compensated_sum(cell), 1.0 / p);
}

double weighted_norm_of_axisymmetric(const QuadratureGrid& grid, const std::function<double(const Point&)>& f,
                                     double p, int weight_power, int points) {
    if (!(p >= 1.0) || std::isinf(p)) throw ParameterError("cell-resolved norm needs a finite p >= 1");
    if (points < 1) throw ParameterError("ring rule needs at least one point per direction");
    std::vector<double> ring(grid.ring_count());
    parallel_for(grid.ring_count(), [&](std::size_t k) {
        CompensatedSum s;
        grid.visit_ring(k, points, [&](const Point& y, double w) {
            const double v = f(y);
            if (v != 0.0) s.add(w * std::pow(std::abs(v), p) * std::pow(1.0 - norm(y), weight_power));
        });
        ring[k] = s.value();
    });
    return std::pow(compensated_sum(ring), 1.0 / p);
}

}  // namespace polyharm

#include "polyharm/geometry.hpp"

#include <numbers>
#include <string>

#include "polyharm/errors.hpp"

namespace polyharm {

BallProblem::BallProblem(int n, int m) : n_(n), m_(m) {
    if (n < 2) throw ParameterError("dimension n must be >= 2, got " + std::to_string(n));
    if (m < 1) throw ParameterError("order m must be >= 1, got " + std::to_string(m));
    if (n > kMaxDim)
        throw ParameterError("unsupported dimension n = " + std::to_string(n) + " (max 4)");
    if (m > kMaxOrder)
        throw ParameterError("unsupported order m = " + std::to_string(m) + " (max 3)");
}

double BallProblem::volume() const {
    return std::pow(std::numbers::pi, 0.5 * n_) / std::tgamma(0.5 * n_ + 1.0);
}

double BallProblem::sphere_area() const { return n_ * volume(); }

void BallProblem::check_point(const Point& x) const {
    for (int i = n_; i < kMaxDim; ++i)
        if (x[i] != 0.0) throw DomainError("point has coordinates beyond dimension n");
}

double distance_to_boundary(const Point& x) {
    const double r = norm(x);
    if (r > 1.0) throw DomainError("point outside the closed unit ball (|x| = " + std::to_string(r) + ")");
    return 1.0 - r;
}

ConeRegion ConeRegion::standard() { return with_vertex(unit_vector(0)); }

ConeRegion ConeRegion::with_vertex(const Point& x0) {
    ConeRegion c;
    c.x0 = x0;
    c.axis = -1.0 * x0;
    c.half_aperture = std::numbers::pi / 6.0;
    c.cap_radius = 0.5;
    return c;
}

void ConeRegion::validate() const {
    if (std::abs(norm(x0) - 1.0) > 1e-12) throw ParameterError("cone vertex must lie on the unit sphere");
    if (std::abs(norm(axis) - 1.0) > 1e-12) throw ParameterError("cone axis must be a unit vector");
    if (!(half_aperture > 0.0 && half_aperture < 0.5 * std::numbers::pi))
        throw ParameterError("cone half aperture must lie in (0, pi/2)");
    if (!(cap_radius > 0.0)) throw ParameterError("cone cap radius must be positive");
    if (dot(axis, x0) >= 0.0) throw ParameterError("cone axis must point into the ball");
}

bool cone_contains(const ConeRegion& region, const Point& x) {
    const Point d = x - region.x0;
    const double len = norm(d);
    if (!(len > 0.0) || !(len < region.cap_radius)) return false;
    const double c = dot(d, region.axis) / len;
    return c >= std::cos(region.half_aperture);
}

std::vector<Point> sample_cone(const ConeRegion& region, int n, int radial, int angular) {
    // orthonormal frame {axis, e_perp...} built by Gram-Schmidt on unit vectors
    std::vector<Point> frame{region.axis};
    for (int k = 0; k < n && static_cast<int>(frame.size()) < n; ++k) {
        Point v = unit_vector(k);
        for (const auto& f : frame) v = v - dot(v, f) * f;
        const double len = norm(v);
        if (len > 1e-8) frame.push_back((1.0 / len) * v);
    }
    std::vector<Point> out;
    for (int i = 0; i < radial; ++i) {
        // geometric in distance so the vertex neighbourhood is probed
        const double t = region.cap_radius * std::pow(2.0, -12.0 * (i + 0.5) / radial);
        for (int j = 0; j < angular; ++j) {
            const double psi = region.half_aperture * (j + 0.5) / angular;
            const double phi = 2.0 * std::numbers::pi * j / std::max(angular, 1);
            Point dir = std::cos(psi) * frame[0];
            if (n == 2) {
                dir = dir + ((j % 2 == 0) ? 1.0 : -1.0) * std::sin(psi) * frame[1];
            } else {
                dir = dir + std::sin(psi) * std::cos(phi) * frame[1];
                dir = dir + std::sin(psi) * std::sin(phi) * frame[2];
            }
            out.push_back(region.x0 + t * dir);
        }
    }
    return out;
}

}  // namespace polyharm

#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace polyharm {

inline constexpr int kMaxDim = 4;

// Points are padded to kMaxDim; coordinates beyond the problem dimension
// are zero, so dot products and norms need no dimension argument.
using Point = std::array<double, kMaxDim>;

inline double dot(const Point& a, const Point& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}
inline double norm2(const Point& a) { return dot(a, a); }
inline double norm(const Point& a) { return std::sqrt(norm2(a)); }
inline Point operator-(const Point& a, const Point& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline Point operator+(const Point& a, const Point& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline Point operator*(double s, const Point& a) {
    return {s * a[0], s * a[1], s * a[2], s * a[3]};
}
inline double distance(const Point& a, const Point& b) { return norm(a - b); }

inline Point unit_vector(int axis) {
    Point e{};
    e[axis] = 1.0;
    return e;
}

// The open unit ball in R^n together with the order m of (-Δ)^m.
class BallProblem {
public:
    static constexpr int kMaxOrder = 3;

    BallProblem(int n, int m);

    int n() const noexcept { return n_; }
    int m() const noexcept { return m_; }

    // Volume of the unit ball, |B|.
    double volume() const;
    // Surface area of the unit sphere S^{n-1}.
    double sphere_area() const;

    // Throws DomainError when x has nonzero coordinates past n.
    void check_point(const Point& x) const;

    friend bool operator==(const BallProblem&, const BallProblem&) = default;

private:
    int n_;
    int m_;
};

// 1 - |x| for |x| <= 1; DomainError otherwise.
double distance_to_boundary(const Point& x);

// Σ = {x : angle(x - x0, axis) <= half_aperture, 0 < |x - x0| < cap_radius}.
struct ConeRegion {
    Point x0{};
    Point axis{};
    double half_aperture = 0.0;
    double cap_radius = 0.0;

    // x0 = e1, axis = -e1, aperture π/6, cap 1/2.
    static ConeRegion standard();
    // Standard aperture and cap with vertex at the given boundary point.
    static ConeRegion with_vertex(const Point& x0);

    // Throws ParameterError unless |x0| = 1, |axis| = 1,
    // aperture in (0, π/2) and cap > 0.
    void validate() const;
};

bool cone_contains(const ConeRegion& region, const Point& x);

// Deterministic sample of points of Σ: `radial` distances × `angular`
// directions in the aperture (n-dimensional, axisymmetric about `axis`).
std::vector<Point> sample_cone(const ConeRegion& region, int n, int radial, int angular);

}  // namespace polyharm

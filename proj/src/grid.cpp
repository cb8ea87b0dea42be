#include "polyharm/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "polyharm/errors.hpp"
#include "polyharm/numerics.hpp"

namespace polyharm {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kBaseCells = 4;

// ∫_lo^hi sin^k θ dθ
double sine_power_integral(int k, double lo, double hi) {
    switch (k) {
    case 0: return hi - lo;
    case 1: return std::cos(lo) - std::cos(hi);
    case 2: return 0.5 * (hi - lo) - 0.25 * (std::sin(2.0 * hi) - std::sin(2.0 * lo));
    default: throw ParameterError("unsupported sine power");
    }
}

std::vector<Interval> cells_from_breaks(std::vector<double> breaks) {
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    std::vector<Interval> cells;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) cells.push_back({breaks[i], breaks[i + 1]});
    return cells;
}

}  // namespace

Point QuadratureGrid::canonical(double r, double theta, const AzimuthCell& az, double a,
                                double b) const {
    Point p{};
    p[0] = r * std::cos(theta);
    const double rho = r * std::sin(theta);
    switch (problem_.n()) {
    case 2: p[1] = az.sign * rho; break;
    case 3:
        p[1] = rho * std::cos(a);
        p[2] = rho * std::sin(a);
        break;
    case 4:
        p[1] = rho * std::cos(a);
        p[2] = rho * std::sin(a) * std::cos(b);
        p[3] = rho * std::sin(a) * std::sin(b);
        break;
    }
    return p;
}

Point QuadratureGrid::rotate(const Point& p) const {
    const double vv = norm2(householder_);
    if (vv == 0.0) return p;
    return p - (2.0 * dot(householder_, p) / vv) * householder_;
}

void QuadratureGrid::visit_cell(std::size_t node, int points,
                                const std::function<void(const Point&, double)>& visit) const {
    const std::size_t n_az = azimuth_.size();
    const std::size_t n_pol = polar_.size();
    const std::size_t ia = node % n_az;
    const std::size_t ip = (node / n_az) % n_pol;
    const std::size_t ir = node / (n_az * n_pol);
    const auto& rule = gauss_legendre_cached(points);
    const Interval rc = radial_[ir];
    const Interval pc = polar_[ip];
    const AzimuthCell& az = azimuth_[ia];
    const int n = problem_.n();

    const int a_count = n >= 3 ? points : 1;
    const int b_count = n == 4 ? points : 1;
    for (int i = 0; i < points; ++i) {
        const double r = 0.5 * (rc.lo + rc.hi) + 0.5 * rc.width() * rule.nodes[i];
        const double wr = 0.5 * rc.width() * rule.weights[i] * std::pow(r, n - 1);
        for (int j = 0; j < points; ++j) {
            const double th = 0.5 * (pc.lo + pc.hi) + 0.5 * pc.width() * rule.nodes[j];
            const double wt = 0.5 * pc.width() * rule.weights[j] * std::pow(std::sin(th), n - 2);
            for (int k = 0; k < a_count; ++k) {
                double a = 0.0, wa = 1.0;
                if (n >= 3) {
                    a = 0.5 * (az.a.lo + az.a.hi) + 0.5 * az.a.width() * rule.nodes[k];
                    wa = 0.5 * az.a.width() * rule.weights[k];
                    if (n == 4) wa *= std::sin(a);
                }
                for (int l = 0; l < b_count; ++l) {
                    double b = 0.0, wb = 1.0;
                    if (n == 4) {
                        b = 0.5 * (az.b.lo + az.b.hi) + 0.5 * az.b.width() * rule.nodes[l];
                        wb = 0.5 * az.b.width() * rule.weights[l];
                    }
                    visit(rotate(canonical(r, th, az, a, b)), wr * wt * wa * wb);
                }
            }
        }
    }
}

void QuadratureGrid::visit_ring(std::size_t ring, int points,
                                const std::function<void(const Point&, double)>& visit) const {
    const std::size_t n_pol = polar_.size();
    const Interval rc = radial_[ring / n_pol];
    const Interval pc = polar_[ring % n_pol];
    const auto& rule = gauss_legendre_cached(points);
    const int n = problem_.n();
    // |S^{n-2}|, or 2 for the two half-planes of the disk
    const double sphere = n == 2 ? 2.0 : n == 3 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
    for (int i = 0; i < points; ++i) {
        const double r = 0.5 * (rc.lo + rc.hi) + 0.5 * rc.width() * rule.nodes[i];
        const double wr = 0.5 * rc.width() * rule.weights[i] * std::pow(r, n - 1);
        for (int j = 0; j < points; ++j) {
            const double th = 0.5 * (pc.lo + pc.hi) + 0.5 * pc.width() * rule.nodes[j];
            const double wt = 0.5 * pc.width() * rule.weights[j] * std::pow(std::sin(th), n - 2);
            Point y{};
            y[0] = r * std::cos(th);
            y[1] = r * std::sin(th);
            visit(rotate(y), sphere * wr * wt);
        }
    }
}

void QuadratureGrid::adopt(std::vector<Point> nodes, std::vector<double> weights) {
    nodes_ = std::move(nodes);
    weights_ = std::move(weights);
}

QuadratureGrid build_grid(const BallProblem& problem, int level, const Grading& grading) {
    if (level < 0) throw ParameterError("grid level must be >= 0");
    if (level > 8) throw ParameterError("grid level above 8 is beyond desk scale");
    if (!(grading.exponent >= 1.0)) throw ParameterError("grading exponent must be >= 1");
    const int n = problem.n();

    QuadratureGrid grid(problem, level, grading);
    const int cells = kBaseCells << level;
    const double h = kPi / cells;
    grid.spacing_ = h;

    grid.pole_ = unit_vector(0);
    if (grading.focus) {
        problem.check_point(*grading.focus);
        if (std::abs(norm(*grading.focus) - 1.0) > 1e-12)
            throw ParameterError("grid focus must lie on the unit sphere");
        grid.pole_ = *grading.focus;
        const Point v = unit_vector(0) - grid.pole_;
        if (norm(v) > 1e-14) grid.householder_ = v;
    }

    // Radial breaks in s = 1 - r.
    const double g = grading.exponent;
    std::vector<double> s_breaks;
    for (int k = 0; k <= cells; ++k) {
        const double s = std::pow(1.0 - static_cast<double>(k) / cells, g);
        if (grading.focus && s > h / 64.0 && s < h) continue;
        s_breaks.push_back(s);
    }
    if (grading.focus)
        for (int j = 0; j <= QuadratureGrid::kLadderRings; ++j) s_breaks.push_back(h * std::ldexp(1.0, -j));
    for (double& s : s_breaks) s = 1.0 - s;  // now radii
    grid.radial_ = cells_from_breaks(std::move(s_breaks));
    for (const auto& c : grid.radial_) {
        // centroid of the shell under r^{n-1} dr
        grid.radial_nodes_.push_back(static_cast<double>(n) / (n + 1) *
                                     (std::pow(c.hi, n + 1) - std::pow(c.lo, n + 1)) /
                                     (std::pow(c.hi, n) - std::pow(c.lo, n)));
        grid.radial_weights_.push_back((std::pow(c.hi, n) - std::pow(c.lo, n)) / n);
    }

    // Polar angle from the pole.
    std::vector<double> th_breaks;
    for (int k = 0; k <= cells; ++k) th_breaks.push_back(k * h);
    if (grading.focus)
        for (int j = 1; j <= QuadratureGrid::kLadderRings; ++j) th_breaks.push_back(h * std::ldexp(1.0, -j));
    grid.polar_ = cells_from_breaks(std::move(th_breaks));
    for (const auto& c : grid.polar_) {
        grid.polar_nodes_.push_back(0.5 * (c.lo + c.hi));
        grid.polar_weights_.push_back(sine_power_integral(n - 2, c.lo, c.hi));
    }

    // Directions in S^{n-2}.
    using Az = QuadratureGrid::AzimuthCell;
    if (n == 2) {
        grid.azimuth_.push_back(Az{{}, {}, 1.0, 1.0});
        grid.azimuth_.push_back(Az{{}, {}, -1.0, 1.0});
    } else if (n == 3) {
        const int count = 2 * cells;
        const double dphi = 2.0 * kPi / count;
        for (int k = 0; k < count; ++k)
            grid.azimuth_.push_back(Az{{k * dphi, (k + 1) * dphi}, {}, 1.0, dphi});
    } else {
        const int count_a = std::max(2, cells / 2);
        const int count_b = cells;
        const double da = kPi / count_a;
        const double db = 2.0 * kPi / count_b;
        for (int k = 0; k < count_a; ++k)
            for (int l = 0; l < count_b; ++l)
                grid.azimuth_.push_back(Az{{k * da, (k + 1) * da},
                                           {l * db, (l + 1) * db},
                                           1.0,
                                           sine_power_integral(1, k * da, (k + 1) * da) * db});
    }

    const std::size_t total = grid.radial_.size() * grid.polar_.size() * grid.azimuth_.size();
    grid.nodes_.reserve(total);
    grid.weights_.reserve(total);
    for (std::size_t ir = 0; ir < grid.radial_.size(); ++ir) {
        for (std::size_t ip = 0; ip < grid.polar_.size(); ++ip) {
            for (const auto& az : grid.azimuth_) {
                const double a = 0.5 * (az.a.lo + az.a.hi);
                const double b = 0.5 * (az.b.lo + az.b.hi);
                grid.nodes_.push_back(
                    grid.rotate(grid.canonical(grid.radial_nodes_[ir], grid.polar_nodes_[ip], az, a, b)));
                grid.weights_.push_back(grid.radial_weights_[ir] * grid.polar_weights_[ip] * az.weight);
            }
        }
    }
    return grid;
}

std::string grid_cache_header(const QuadratureGrid& grid) {
    std::ostringstream os;
    os.precision(17);
    os << "polyharm-grid v1 n=" << grid.problem().n() << " level=" << grid.level()
       << " grading=" << grid.grading().exponent;
    return os.str();
}

namespace {

void write_le(std::ostream& os, double x) {
    auto bits = std::bit_cast<std::uint64_t>(x);
    char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
    os.write(bytes, 8);
}

bool read_le(std::istream& is, double& x) {
    unsigned char bytes[8];
    if (!is.read(reinterpret_cast<char*>(bytes), 8)) return false;
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    x = std::bit_cast<double>(bits);
    return true;
}

std::string cache_file_name(const QuadratureGrid& grid) {
    std::ostringstream os;
    os << "grid_n" << grid.problem().n() << "_L" << grid.level() << "_g" << grid.grading().exponent;
    if (grid.grading().focus) {
        // focus coordinates as raw bits keep distinct foci apart
        os << "_f";
        for (double c : *grid.grading().focus) os << std::hex << std::bit_cast<std::uint64_t>(c) << std::dec;
    }
    os << ".bin";
    return os.str();
}

}  // namespace

void write_grid_cache(const QuadratureGrid& grid, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open grid cache for writing: " + path);
    os << grid_cache_header(grid) << '\n';
    const int n = grid.problem().n();
    for (const auto& x : grid.nodes())
        for (int d = 0; d < n; ++d) write_le(os, x[d]);
    for (double w : grid.weights()) write_le(os, w);
}

bool read_grid_cache(QuadratureGrid& grid, const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return false;
    std::string header;
    if (!std::getline(is, header) || header != grid_cache_header(grid)) return false;
    const int n = grid.problem().n();
    std::vector<Point> nodes(grid.size(), Point{});
    std::vector<double> weights(grid.size());
    for (auto& x : nodes)
        for (int d = 0; d < n; ++d)
            if (!read_le(is, x[d])) return false;
    for (auto& w : weights)
        if (!read_le(is, w)) return false;
    if (is.peek() != std::char_traits<char>::eof()) return false;
    // reject anything the builder could not have produced
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) return false;
        if (!(norm(nodes[i]) < 1.0)) return false;
    }
    const double vol = compensated_sum(weights);
    if (std::abs(vol - grid.problem().volume()) > 1e-9 * grid.problem().volume()) return false;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (std::abs(norm(nodes[i]) - norm(grid.node(i))) > 1e-12) return false;
    grid.adopt(std::move(nodes), std::move(weights));
    return true;
}

std::string default_cache_dir() {
    if (const char* env = std::getenv("POLYHARM_CACHE_DIR"); env && *env) return env;
    return "./.cache";
}

std::shared_ptr<const QuadratureGrid> cached_grid(const BallProblem& problem, int level,
                                                  const Grading& grading,
                                                  const std::string& cache_dir) {
    auto grid = std::make_shared<QuadratureGrid>(build_grid(problem, level, grading));
    if (cache_dir.empty()) return grid;
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cache_dir, ec);
    const fs::path file = fs::path(cache_dir) / cache_file_name(*grid);
    if (read_grid_cache(*grid, file.string())) return grid;

    // single writer: the lock file is created exclusively
    const fs::path lock = file.string() + ".lock";
    std::FILE* fh = std::fopen(lock.string().c_str(), "wx");
    if (!fh) return grid;
    std::fclose(fh);
    try {
        const fs::path tmp = file.string() + ".tmp";
        write_grid_cache(*grid, tmp.string());
        fs::rename(tmp, file, ec);
    } catch (const Error&) {
    }
    fs::remove(lock, ec);
    return grid;
}

}  // namespace polyharm

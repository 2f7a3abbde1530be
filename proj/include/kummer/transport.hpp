#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kummer/pfaffian.hpp"

namespace kummer {

using Complex = std::complex<double>;
using Point = std::array<Complex, 3>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

class ClearanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class StepCollapseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Straight segment from `from` to `to`, or a circle in one coordinate
/// x_c = center_c + radius·exp(i(phase + 2π·turns·s)) with the other two fixed.
struct Segment {
    enum class Kind { line, circle } kind = Kind::line;
    Point from{}, to{};
    Point center{};
    Var coordinate = Var::r;
    double radius = 0.0;
    double turns = 1.0;
    double phase = 0.0;

    static Segment line(const Point& a, const Point& b);
    static Segment circle(const Point& center, Var coordinate, double radius, double turns = 1.0);

    Point at(double s) const;
    Point velocity(double s) const;
    Point start() const { return at(0.0); }
    Point end() const { return at(1.0); }
    Segment reversed() const;
};

struct Path {
    std::vector<Segment> segments;
    std::size_t samples_hint = 64;

    /// Throws std::invalid_argument when consecutive segments do not meet.
    void check_continuity(double tolerance = 1e-12) const;
    Path reversed() const;
    bool closed(double tolerance = 1e-12) const;
};

/// Ω evaluated from the exact entries; identical polynomials are evaluated once.
class CompiledPfaffian {
public:
    explicit CompiledPfaffian(const PfaffianSystem& system);

    std::size_t size() const { return size_; }
    /// Σ_x M_x(x)·v_x.
    CMatrix omega(const Point& x, const Point& velocity) const;
    /// Σ_x tr M_x(x)·v_x from traces summed exactly before compiling.
    Complex trace(const Point& x, const Point& velocity) const;

private:
    struct CompiledPoly {
        std::vector<std::pair<double, Exponent3>> terms;
        std::array<std::uint32_t, 3> max_degree{};
    };
    std::size_t intern(const MultiPoly& poly);
    std::vector<Complex> evaluate_all(const Point& x) const;

    std::size_t size_ = 0;
    std::vector<CompiledPoly> polys_;
    std::map<std::string, std::size_t> index_;
    // (numerator, denominator) indices per entry; numerator SIZE_MAX for zero.
    std::array<std::vector<std::pair<std::size_t, std::size_t>>, 3> entries_;
    std::array<std::pair<std::size_t, std::size_t>, 3> traces_;
};

/// Smallest scaled distance of x to the divisors p, q, r, d1, d2, d3:
/// |x_i| / max_j |x_j| for the coordinates, and |f(x)| / Σ|terms of f at x|
/// for the polynomial divisors.
double clearance(const Point& x);
inline constexpr double kDefaultClearance = 1e-3;

/// Samples each segment and throws ClearanceError below `minimum`.
void check_clearance(const Path& path, double minimum = kDefaultClearance);

struct TransportOptions {
    double tol = 1e-10;
    double min_clearance = kDefaultClearance;
    std::size_t max_steps = 200000;
};

struct TransportResult {
    CMatrix state;  // one column per transported vector
    std::size_t step_count = 0;
    std::size_t rejected = 0;
    double max_local_error = 0.0;
    double condition = 1.0;
};

/// Integrates dY = Ω Y along the path from y0 (n×k).
TransportResult transport(const CompiledPfaffian& omega, const Path& path, const CMatrix& y0,
                          const TransportOptions& options = {});
/// Fundamental matrix: y0 = identity.
TransportResult fundamental_matrix(const CompiledPfaffian& omega, const Path& path, const TransportOptions& options = {});

/// ∮ tr Ω along the path by adaptive Gauss-Kronrod quadrature per segment.
Complex trace_integral(const CompiledPfaffian& omega, const Path& path, double tol = 1e-12);

struct Monodromy {
    CMatrix matrix;
    std::vector<Complex> eigenvalues;
    Complex det;
    Complex liouville;  // exp(∮ tr Ω)
    TransportResult run;
};
/// Throws std::invalid_argument when the loop is not closed.
Monodromy monodromy(const CompiledPfaffian& omega, const Path& loop, const TransportOptions& options = {});

class SeriesTailError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// (basis_j u)(x) from period_series(cap) and the diagonal θ-action. Throws
/// SeriesTailError when a tail estimate exceeds `tail_tol`.
CVector initial_state(const std::vector<Exponent3>& basis, const Point& x, std::uint32_t cap, double tail_tol = 1e-14);

/// Transports initial_state(a) along the segment a→b and returns the
/// max-norm difference with initial_state(b).
double series_vs_transport(const CompiledPfaffian& omega, const std::vector<Exponent3>& basis, const Point& a,
                           const Point& b, std::uint32_t cap, const TransportOptions& options = {});

}  // namespace kummer

#include "kummer/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "kummer/geometry.hpp"

namespace kummer {

namespace {

constexpr std::size_t kZero = std::numeric_limits<std::size_t>::max();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Point lerp(const Point& a, const Point& b, double s) {
    Point out;
    for (std::size_t i = 0; i < 3; ++i) out[i] = a[i] + s * (b[i] - a[i]);
    return out;
}

double distance(const Point& a, const Point& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < 3; ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

double term_magnitude(const MultiPoly& poly, const Point& x) {
    double total = 0.0;
    for (const auto& t : poly.terms()) {
        double v = std::abs(t.coeff.to_double());
        for (std::size_t i = 0; i < 3; ++i) v *= std::pow(std::abs(x[i]), t.exponent[i]);
        total += v;
    }
    return total;
}

const TruncatedSeries& cached_series(std::uint32_t cap) {
    static std::mutex mutex;
    static std::map<std::uint32_t, TruncatedSeries> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(cap);
    if (it == cache.end()) it = cache.emplace(cap, period_series(cap)).first;
    return it->second;
}

using State = std::vector<Complex>;

double error_norm(const State& err, const State& before, const State& after, double tol) {
    double norm = 0.0;
    for (std::size_t i = 0; i < err.size(); ++i) {
        const double scale = tol + tol * std::max(std::abs(before[i]), std::abs(after[i]));
        norm = std::max(norm, std::abs(err[i]) / scale);
    }
    return norm;
}

}  // namespace

Segment Segment::line(const Point& a, const Point& b) {
    Segment s;
    s.kind = Kind::line;
    s.from = a;
    s.to = b;
    return s;
}

Segment Segment::circle(const Point& center, Var coordinate, double radius, double turns) {
    Segment s;
    s.kind = Kind::circle;
    s.center = center;
    s.coordinate = coordinate;
    s.radius = radius;
    s.turns = turns;
    return s;
}

Point Segment::at(double s) const {
    if (kind == Kind::line) return lerp(from, to, s);
    Point x = center;
    x[index(coordinate)] += radius * std::polar(1.0, phase + kTwoPi * turns * s);
    return x;
}

Point Segment::velocity(double s) const {
    Point v{};
    if (kind == Kind::line) {
        for (std::size_t i = 0; i < 3; ++i) v[i] = to[i] - from[i];
    } else {
        v[index(coordinate)] = Complex(0.0, kTwoPi * turns) * radius * std::polar(1.0, phase + kTwoPi * turns * s);
    }
    return v;
}

Segment Segment::reversed() const {
    Segment s = *this;
    if (kind == Kind::line) {
        std::swap(s.from, s.to);
    } else {
        s.phase = phase + kTwoPi * turns;
        s.turns = -turns;
    }
    return s;
}

void Path::check_continuity(double tolerance) const {
    for (std::size_t i = 1; i < segments.size(); ++i)
        if (distance(segments[i - 1].end(), segments[i].start()) > tolerance)
            throw std::invalid_argument("Path: segment " + std::to_string(i) + " does not start where the previous ends");
}

Path Path::reversed() const {
    Path out{{}, samples_hint};
    for (auto it = segments.rbegin(); it != segments.rend(); ++it) out.segments.push_back(it->reversed());
    return out;
}

bool Path::closed(double tolerance) const {
    return segments.empty() || distance(segments.front().start(), segments.back().end()) <= tolerance;
}

CompiledPfaffian::CompiledPfaffian(const PfaffianSystem& system) : size_(system.basis.size()) {
    for (std::size_t v = 0; v < 3; ++v) {
        RatFunc trace;
        for (std::size_t i = 0; i < size_; ++i) {
            for (std::size_t j = 0; j < size_; ++j) {
                const RatFunc& e = system.m[v][i][j];
                entries_[v].emplace_back(e.is_zero() ? kZero : intern(e.numerator()), intern(e.denominator()));
            }
            trace += system.m[v][i][i];
        }
        traces_[v] = {trace.is_zero() ? kZero : intern(trace.numerator()), intern(trace.denominator())};
    }
}

std::size_t CompiledPfaffian::intern(const MultiPoly& poly) {
    const std::string key = to_string(poly);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    CompiledPoly c;
    for (const auto& t : poly.terms()) {
        c.terms.emplace_back(t.coeff.to_double(), t.exponent);
        for (std::size_t i = 0; i < 3; ++i) c.max_degree[i] = std::max(c.max_degree[i], t.exponent[i]);
    }
    polys_.push_back(std::move(c));
    index_.emplace(key, polys_.size() - 1);
    return polys_.size() - 1;
}

std::vector<Complex> CompiledPfaffian::evaluate_all(const Point& x) const {
    std::array<std::uint32_t, 3> top{};
    for (const auto& c : polys_)
        for (std::size_t i = 0; i < 3; ++i) top[i] = std::max(top[i], c.max_degree[i]);
    std::array<std::vector<Complex>, 3> powers;
    for (std::size_t i = 0; i < 3; ++i) {
        powers[i].resize(top[i] + 1);
        powers[i][0] = 1.0;
        for (std::uint32_t k = 1; k <= top[i]; ++k) powers[i][k] = powers[i][k - 1] * x[i];
    }
    std::vector<Complex> values(polys_.size());
    for (std::size_t n = 0; n < polys_.size(); ++n) {
        Complex acc = 0.0;
        for (const auto& [c, e] : polys_[n].terms) acc += c * powers[0][e[0]] * powers[1][e[1]] * powers[2][e[2]];
        values[n] = acc;
    }
    return values;
}

CMatrix CompiledPfaffian::omega(const Point& x, const Point& velocity) const {
    const std::vector<Complex> values = evaluate_all(x);
    CMatrix m = CMatrix::Zero(size_, size_);
    for (std::size_t v = 0; v < 3; ++v) {
        if (velocity[v] == 0.0) continue;
        for (std::size_t k = 0; k < entries_[v].size(); ++k) {
            const auto [num, den] = entries_[v][k];
            if (num == kZero) continue;
            m(k / size_, k % size_) += values[num] / values[den] * velocity[v];
        }
    }
    return m;
}

Complex CompiledPfaffian::trace(const Point& x, const Point& velocity) const {
    const std::vector<Complex> values = evaluate_all(x);
    Complex t = 0.0;
    for (std::size_t v = 0; v < 3; ++v)
        if (traces_[v].first != kZero) t += values[traces_[v].first] / values[traces_[v].second] * velocity[v];
    return t;
}

double clearance(const Point& x) {
    double scale = 0.0;
    for (const auto& c : x) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return 0.0;
    double out = std::numeric_limits<double>::infinity();
    for (const auto& c : x) out = std::min(out, std::abs(c) / scale);
    for (const MultiPoly& d : {divisor_d1(), divisor_d2(), divisor_d3()}) {
        const double mag = term_magnitude(d, x);
        out = std::min(out, mag == 0.0 ? 0.0 : std::abs(evaluate(d, x)) / mag);
    }
    return out;
}

void check_clearance(const Path& path, double minimum) {
    const std::size_t n = std::max<std::size_t>(path.samples_hint, 2);
    for (std::size_t s = 0; s < path.segments.size(); ++s)
        for (std::size_t k = 0; k <= n; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(n);
            const double c = clearance(path.segments[s].at(t));
            if (c < minimum)
                throw ClearanceError("transport: segment " + std::to_string(s) + " at s=" + std::to_string(t) +
                                     " has clearance " + std::to_string(c));
        }
}

TransportResult transport(const CompiledPfaffian& omega, const Path& path, const CMatrix& y0,
                          const TransportOptions& options) {
    const std::size_t n = omega.size();
    if (static_cast<std::size_t>(y0.rows()) != n) throw std::invalid_argument("transport: initial state has wrong size");
    path.check_continuity();
    check_clearance(path, options.min_clearance);

    const std::size_t cols = y0.cols();
    State y(n * cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < n; ++r) y[c * n + r] = y0(r, c);

    TransportResult result;
    boost::numeric::odeint::runge_kutta_dopri5<State> stepper;
    State dydt(y.size()), y_new(y.size()), dydt_new(y.size()), err(y.size());

    for (const Segment& seg : path.segments) {
        auto rhs = [&](const State& in, State& out, double s) {
            const CMatrix m = omega.omega(seg.at(s), seg.velocity(s));
            out.assign(in.size(), 0.0);
            for (std::size_t c = 0; c < cols; ++c)
                for (std::size_t i = 0; i < n; ++i) {
                    Complex acc = 0.0;
                    for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * in[c * n + j];
                    out[c * n + i] = acc;
                }
        };
        double s = 0.0;
        rhs(y, dydt, s);
        const double rate = omega.omega(seg.at(0.0), seg.velocity(0.0)).cwiseAbs().maxCoeff();
        double h = std::min(0.05, 0.1 / (1.0 + rate));
        double previous_error = 1e-4;
        while (s < 1.0) {
            if (result.step_count + result.rejected >= options.max_steps)
                throw StepCollapseError("transport: step budget exhausted");
            h = std::min(h, 1.0 - s);
            stepper.do_step(rhs, y, dydt, s, y_new, dydt_new, h, err);
            const double e = error_norm(err, y, y_new, options.tol);
            if (e <= 1.0) {
                s = (1.0 - s - h <= 1e-15) ? 1.0 : s + h;
                y.swap(y_new);
                dydt.swap(dydt_new);
                ++result.step_count;
                for (const auto& x : err) result.max_local_error = std::max(result.max_local_error, std::abs(x));
                // PI controller on the error norm.
                const double safe = std::max(e, 1e-10);
                double factor = 0.9 * std::pow(safe, -0.7 / 5.0) * std::pow(previous_error, 0.4 / 5.0);
                factor = std::clamp(factor, 0.2, 5.0);
                previous_error = safe;
                h *= factor;
            } else {
                ++result.rejected;
                h *= std::max(0.2, 0.9 * std::pow(e, -0.2));
            }
            if (h < 1e-13) throw StepCollapseError("transport: step size collapsed at s=" + std::to_string(s));
        }
    }

    result.state.resize(n, cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < n; ++r) result.state(r, c) = y[c * n + r];
    if (cols == n) {
        const Eigen::JacobiSVD<CMatrix> svd(result.state);
        const auto& sv = svd.singularValues();
        result.condition = sv(0) / sv(sv.size() - 1);
    }
    return result;
}

TransportResult fundamental_matrix(const CompiledPfaffian& omega, const Path& path, const TransportOptions& options) {
    const auto n = static_cast<Eigen::Index>(omega.size());
    return transport(omega, path, CMatrix::Identity(n, n), options);
}

Complex trace_integral(const CompiledPfaffian& omega, const Path& path, double tol) {
    using boost::math::quadrature::gauss_kronrod;
    Complex total = 0.0;
    for (const Segment& seg : path.segments) {
        auto f = [&](double s) { return omega.trace(seg.at(s), seg.velocity(s)); };
        const double re = gauss_kronrod<double, 61>::integrate([&](double s) { return f(s).real(); }, 0.0, 1.0, 15, tol);
        const double im = gauss_kronrod<double, 61>::integrate([&](double s) { return f(s).imag(); }, 0.0, 1.0, 15, tol);
        total += Complex(re, im);
    }
    return total;
}

Monodromy monodromy(const CompiledPfaffian& omega, const Path& loop, const TransportOptions& options) {
    if (!loop.closed()) throw std::invalid_argument("monodromy: path is not closed");
    Monodromy m;
    m.run = fundamental_matrix(omega, loop, options);
    m.matrix = m.run.state;
    const Eigen::ComplexEigenSolver<CMatrix> solver(m.matrix);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) m.eigenvalues.push_back(solver.eigenvalues()(i));
    m.det = m.matrix.determinant();
    m.liouville = std::exp(trace_integral(omega, loop));
    return m;
}

CVector initial_state(const std::vector<Exponent3>& basis, const Point& x, std::uint32_t cap, double tail_tol) {
    const TruncatedSeries& u = cached_series(cap);
    CVector out(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const SeriesValue v = evaluate_series(apply(ThetaOperator::term(basis[j], MultiPoly::constant(1)), u), x);
        if (v.tail > tail_tol)
            throw SeriesTailError("initial_state: tail " + std::to_string(v.tail) + " of " + basis_label(basis[j]) +
                                  " exceeds " + std::to_string(tail_tol));
        out(static_cast<Eigen::Index>(j)) = v.value;
    }
    return out;
}

double series_vs_transport(const CompiledPfaffian& omega, const std::vector<Exponent3>& basis, const Point& a,
                           const Point& b, std::uint32_t cap, const TransportOptions& options) {
    const CVector start = initial_state(basis, a, cap);
    const CVector target = initial_state(basis, b, cap);
    if (distance(a, b) == 0.0) return (start - target).cwiseAbs().maxCoeff();
    const Path path{{Segment::line(a, b)}};
    const TransportResult run = transport(omega, path, start, options);
    return (run.state.col(0) - target).cwiseAbs().maxCoeff();
}

}  // namespace kummer

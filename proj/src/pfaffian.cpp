#include "kummer/pfaffian.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "kummer/geometry.hpp"

namespace kummer {

namespace {

using Row = std::vector<IntPoly>;

std::uint32_t order_of(const Exponent3& e) { return e[0] + e[1] + e[2]; }

Exponent3 unit(Var v) {
    Exponent3 e{};
    e[index(v)] = 1;
    return e;
}

Exponent3 add(const Exponent3& a, const Exponent3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

IntPoly to_int(const MultiPoly& poly) {
    std::vector<IntPoly::Term> terms;
    terms.reserve(poly.size());
    for (const auto& t : poly.terms()) {
        if (!t.coeff.is_integer()) throw std::logic_error("to_int: non-integral coefficient");
        terms.push_back({t.exponent, t.coeff.numerator()});
    }
    return IntPoly::from_terms(std::move(terms));
}

/// Fraction-free Gauss-Jordan over Z[p,q,r]. Each row is kept primitive: the
/// polynomial gcd of its entries and its integer content are divided out
/// after every update.
class Eliminator {
public:
    Eliminator(std::vector<Exponent3> columns, const std::vector<Exponent3>& basis) : columns_(std::move(columns)) {
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            index_[columns_[i]] = i;
            known_.push_back(std::find(basis.begin(), basis.end(), columns_[i]) != basis.end());
        }
    }

    std::size_t column(const Exponent3& e) const {
        auto it = index_.find(e);
        if (it == index_.end()) throw std::logic_error("Eliminator: monomial outside the column set");
        return it->second;
    }
    bool known(std::size_t col) const { return known_[col]; }

    void add_relation(const ThetaOperator& op) {
        Integer lcm(1);
        for (const auto& [e, c] : op.terms())
            for (const auto& t : c.terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.coeff.denominator().get_mpz_t());
        Row row(columns_.size());
        for (const auto& [e, c] : op.terms()) row[column(e)] = to_int(c.scaled(BigRational(lcm)));
        for (const auto& [col, r] : pivot_of_) eliminate(row, rows_[r], col);
        normalize(row);
        if (!is_zero(row)) rows_.push_back(std::move(row));
    }

    void pivot_on(const std::vector<std::size_t>& cols) {
        for (std::size_t col : cols) {
            if (pivot_of_.count(col)) continue;
            std::optional<std::size_t> best;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (pivot_rows_.count(i) || rows_[i][col].is_zero()) continue;
                if (!best || cost(rows_[i][col]) < cost(rows_[*best][col])) best = i;
            }
            if (!best) continue;
            pivot_of_[col] = *best;
            pivot_rows_.insert(*best);
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (i == *best || rows_[i][col].is_zero()) continue;
                eliminate(rows_[i], rows_[*best], col);
                normalize(rows_[i]);
            }
        }
    }

    /// −row[k]/row[col] for basis columns k, or nullopt when the pivot row
    /// still involves a free unknown.
    std::optional<std::vector<RatFunc>> solution(std::size_t col, const std::vector<Exponent3>& basis) const {
        auto it = pivot_of_.find(col);
        if (it == pivot_of_.end()) return std::nullopt;
        const Row& row = rows_[it->second];
        for (std::size_t k = 0; k < row.size(); ++k)
            if (k != col && !known_[k] && !row[k].is_zero()) return std::nullopt;
        const MultiPoly lead = to_multi(row[col]);
        std::vector<RatFunc> out;
        out.reserve(basis.size());
        for (const auto& b : basis) {
            const IntPoly& entry = row[column(b)];
            out.push_back(entry.is_zero() ? RatFunc() : RatFunc(-to_multi(entry), lead));
        }
        return out;
    }

    /// Non-pivot rows supported on basis columns only.
    std::size_t basis_relations() const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (pivot_rows_.count(i) || is_zero(rows_[i])) continue;
            bool only_known = true;
            for (std::size_t k = 0; k < columns_.size(); ++k)
                if (!known_[k] && !rows_[i][k].is_zero()) only_known = false;
            if (only_known) ++n;
        }
        return n;
    }

private:
    static std::pair<std::uint32_t, std::size_t> cost(const IntPoly& p) { return {p.total_degree(), p.size()}; }

    static bool is_zero(const Row& row) {
        return std::all_of(row.begin(), row.end(), [](const IntPoly& p) { return p.is_zero(); });
    }

    static void eliminate(Row& target, const Row& pivot, std::size_t col) {
        if (target[col].is_zero()) return;
        const IntPoly g = gcd(pivot[col], target[col]);
        const IntPoly a = *pivot[col].divide_exact(g);
        const IntPoly b = *target[col].divide_exact(g);
        for (std::size_t k = 0; k < target.size(); ++k) {
            if (pivot[k].is_zero()) {
                if (!target[k].is_zero()) target[k] = a * target[k];
            } else {
                target[k] = a * target[k] - b * pivot[k];
            }
        }
    }

    static void normalize(Row& row) {
        IntPoly g;
        for (const auto& e : row) {
            if (e.is_zero()) continue;
            g = g.is_zero() ? primitive_part(e) : gcd(g, e);
            if (g.is_constant()) break;
        }
        if (g.is_zero()) return;
        if (!g.is_constant())
            for (auto& e : row)
                if (!e.is_zero()) e = *e.divide_exact(g);
        Integer c(0);
        for (const auto& e : row)
            if (!e.is_zero()) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), content(e).get_mpz_t());
        if (c > 1)
            for (auto& e : row)
                if (!e.is_zero()) e = *e.divide_exact(IntPoly(c));
    }

    std::vector<Exponent3> columns_;
    std::map<Exponent3, std::size_t> index_;
    std::vector<bool> known_;
    std::vector<Row> rows_;
    std::map<std::size_t, std::size_t> pivot_of_;
    std::set<std::size_t> pivot_rows_;
};

std::uint32_t max_order(const std::vector<ThetaOperator>& relations) {
    std::uint32_t k = 0;
    for (const auto& op : relations) k = std::max(k, op.order());
    return k;
}

/// Columns: every θ-monomial of order <= top, highest order first so that
/// the stage orderings below read naturally.
std::vector<Exponent3> monomials_up_to(std::uint32_t top) {
    auto all = indices_up_to(top);
    std::stable_sort(all.begin(), all.end(),
                     [](const Exponent3& a, const Exponent3& b) { return order_of(a) > order_of(b); });
    return all;
}

std::vector<std::size_t> unknown_columns(const Eliminator& el, const std::vector<Exponent3>& cols,
                                         std::uint32_t lo, std::uint32_t hi) {
    std::vector<std::size_t> out;
    for (const auto& e : cols) {
        const std::size_t c = el.column(e);
        if (!el.known(c) && order_of(e) >= lo && order_of(e) <= hi) out.push_back(c);
    }
    return out;
}

struct Staged {
    Eliminator el;
    std::vector<Exponent3> columns;
    std::uint32_t top_order;
};

Staged stage_one(const std::vector<ThetaOperator>& relations, const std::vector<Exponent3>& basis) {
    const std::uint32_t k = max_order(relations);
    Staged s{Eliminator(monomials_up_to(k + 1), basis), monomials_up_to(k + 1), k};
    for (const auto& op : relations) s.el.add_relation(op);
    s.el.pivot_on(unknown_columns(s.el, s.columns, 0, k));
    return s;
}

RatMatrix scale_rows(const RatMatrix& m, const RatFunc& f, bool divide) {
    RatMatrix out = m;
    for (auto& row : out)
        for (auto& e : row) e = divide ? e / f : e * f;
    return out;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
    const std::size_t n = a.size();
    RatMatrix out(n, std::vector<RatFunc>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            RatFunc acc;
            for (std::size_t k = 0; k < n; ++k)
                if (!a[i][k].is_zero() && !b[k][j].is_zero()) acc += a[i][k] * b[k][j];
            out[i][j] = acc;
        }
    return out;
}

std::size_t commutator_residual(const PfaffianSystem& s, Var x, Var y) {
    const RatMatrix& mx = s.matrix(x);
    const RatMatrix& my = s.matrix(y);
    const RatMatrix xy = multiply(mx, my), yx = multiply(my, mx);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < mx.size(); ++i)
        for (std::size_t j = 0; j < mx.size(); ++j) {
            const RatFunc lhs = my[i][j].partial_derivative(x) - mx[i][j].partial_derivative(y);
            if (!(lhs - (xy[i][j] - yx[i][j])).is_zero()) ++nonzero;
        }
    return nonzero;
}

using nlohmann::json;

RatMatrix matrix_from_json(const json& j) {
    RatMatrix m;
    for (const auto& row : j) {
        std::vector<RatFunc> r;
        for (const auto& e : row) r.push_back(RatFunc::parse(e.get<std::string>()));
        m.push_back(std::move(r));
    }
    return m;
}

std::vector<Exponent3> basis_from_json(const json& j) {
    std::vector<Exponent3> basis;
    for (const auto& e : j) basis.push_back({e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>(), e.at(2).get<std::uint32_t>()});
    return basis;
}

constexpr std::array<const char*, 3> kMatrixKeys{"Mp", "Mq", "Mr"};
constexpr std::array<Var, 3> kVars{Var::p, Var::q, Var::r};

}  // namespace

std::vector<Exponent3> rank5_basis(BasisChoice choice) {
    return {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, choice == BasisChoice::theta_p2 ? Exponent3{2, 0, 0} : Exponent3{0, 2, 0}};
}

std::vector<Exponent3> rank6_basis() { return {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 0, 0}, {0, 2, 0}}; }

RewriteTable build_rewrite_table(const std::vector<ThetaOperator>& relations, const std::vector<Exponent3>& basis) {
    Staged s = stage_one(relations, basis);
    RewriteTable table{basis, {}};
    for (const auto& e : s.columns) {
        const std::size_t c = s.el.column(e);
        if (s.el.known(c) || order_of(e) > s.top_order) continue;
        auto sol = s.el.solution(c, basis);
        if (!sol) throw std::runtime_error("build_rewrite_table: " + basis_label(e) + " is not determined by the relations");
        table.rules.emplace(e, std::move(*sol));
    }
    return table;
}

std::vector<RatFunc> reduce_order2(const RewriteTable& table, const ThetaOperator& op) {
    std::vector<RatFunc> out(table.basis.size());
    for (const auto& [e, c] : op.terms()) {
        auto pos = std::find(table.basis.begin(), table.basis.end(), e);
        if (pos != table.basis.end()) {
            out[pos - table.basis.begin()] += RatFunc(c);
            continue;
        }
        auto rule = table.rules.find(e);
        if (rule == table.rules.end()) throw std::invalid_argument("reduce_order2: no rule for " + basis_label(e));
        for (std::size_t k = 0; k < out.size(); ++k)
            if (!rule->second[k].is_zero()) out[k] += RatFunc(c) * rule->second[k];
    }
    return out;
}

RatMatrix PfaffianSystem::theta_matrix(Var v) const { return scale_rows(matrix(v), RatFunc::variable(v), false); }

PfaffianSystem PfaffianSystem::from_theta_matrices(std::vector<Exponent3> basis, std::array<RatMatrix, 3> theta) {
    PfaffianSystem s{std::move(basis), {}};
    for (Var v : kVars) s.m[index(v)] = scale_rows(theta[index(v)], RatFunc::variable(v), true);
    return s;
}

std::string to_string(Closure c) {
    switch (c) {
        case Closure::closed: return "closed";
        case Closure::underdetermined: return "underdetermined";
        case Closure::inconsistent: return "inconsistent";
    }
    return "?";
}

Derivation derive_pfaffian(const std::vector<ThetaOperator>& relations, const std::vector<Exponent3>& basis) {
    Staged s = stage_one(relations, basis);
    const std::uint32_t k = s.top_order;
    for (Var v : kVars)
        for (const auto& op : relations) s.el.add_relation(compose(ThetaOperator::theta(v), op));
    // Order-(k+1) monomials first, then any order-k monomial stage one left free.
    std::vector<std::size_t> cols = unknown_columns(s.el, s.columns, k + 1, k + 1);
    for (std::size_t c : unknown_columns(s.el, s.columns, 0, k)) cols.push_back(c);
    s.el.pivot_on(cols);

    Derivation out;
    out.basis_relations = s.el.basis_relations();
    std::array<RatMatrix, 3> theta;
    for (Var v : kVars) {
        RatMatrix& a = theta[index(v)];
        for (const auto& w : basis) {
            const Exponent3 target = add(unit(v), w);
            std::vector<RatFunc> row(basis.size());
            auto pos = std::find(basis.begin(), basis.end(), target);
            if (pos != basis.end()) {
                row[pos - basis.begin()] = RatFunc(1);
            } else if (auto sol = s.el.solution(s.el.column(target), basis)) {
                row = std::move(*sol);
            } else if (std::find(out.undetermined.begin(), out.undetermined.end(), target) == out.undetermined.end()) {
                out.undetermined.push_back(target);
            }
            a.push_back(std::move(row));
        }
    }
    if (out.basis_relations > 0) {
        out.status = Closure::inconsistent;
    } else if (!out.undetermined.empty()) {
        out.status = Closure::underdetermined;
    } else {
        out.system = PfaffianSystem::from_theta_matrices(basis, std::move(theta));
    }
    return out;
}

std::size_t IntegrabilityWitness::residual() const { return *std::max_element(nonzero.begin(), nonzero.end()); }

IntegrabilityWitness check_integrability(const PfaffianSystem& system, unsigned threads) {
    constexpr std::array<std::pair<Var, Var>, 3> pairs{{{Var::p, Var::q}, {Var::q, Var::r}, {Var::p, Var::r}}};
    IntegrabilityWitness w;
    if (threads > 1) {
        std::array<std::future<std::size_t>, 3> jobs;
        for (std::size_t i = 0; i < 3; ++i)
            jobs[i] = std::async(std::launch::async, commutator_residual, std::cref(system), pairs[i].first, pairs[i].second);
        for (std::size_t i = 0; i < 3; ++i) w.nonzero[i] = jobs[i].get();
    } else {
        for (std::size_t i = 0; i < 3; ++i) w.nonzero[i] = commutator_residual(system, pairs[i].first, pairs[i].second);
    }
    return w;
}

bool SingularReport::contains(const std::string& name) const {
    return std::find(occurring.begin(), occurring.end(), name) != occurring.end();
}

SingularReport singular_factors(const PfaffianSystem& system, bool strict) {
    const auto& candidates = singular_candidates();
    std::vector<bool> seen(candidates.size(), false);
    SingularReport report;
    for (const auto& m : system.m)
        for (const auto& row : m)
            for (const auto& entry : row) {
                MultiPoly den = entry.denominator();
                for (std::size_t i = 0; i < candidates.size(); ++i)
                    while (auto q = den.divide_exact(candidates[i].poly)) {
                        seen[i] = true;
                        den = std::move(*q);
                    }
                if (den.is_constant()) continue;
                const MultiPoly rest = to_multi(primitive_split(den).primitive);
                if (std::find(report.unexpected.begin(), report.unexpected.end(), rest) == report.unexpected.end())
                    report.unexpected.push_back(rest);
            }
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (seen[i]) report.occurring.push_back(candidates[i].name);
    if (strict && !report.unexpected.empty())
        throw std::runtime_error("singular_factors: unexpected denominator factor " + to_string(report.unexpected.front()));
    return report;
}

ReferenceFixture load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_fixture: cannot open " + path);
    const json j = json::parse(in);
    if (j.value("convention", "theta") != "theta") throw std::runtime_error("load_fixture: expected theta-row convention");
    ReferenceFixture f;
    f.basis = basis_from_json(j.at("basis"));
    for (std::size_t i = 0; i < 3; ++i) f.theta[i] = matrix_from_json(j.at(kMatrixKeys[i]));
    f.d1 = parse_poly(j.at("d1").get<std::string>());
    f.d2 = parse_poly(j.at("d2").get<std::string>());
    f.d3 = parse_poly(j.at("d3").get<std::string>());
    return f;
}

FixtureReport compare_fixture(const PfaffianSystem& system, const ReferenceFixture& fixture) {
    if (system.basis != fixture.basis) throw std::invalid_argument("compare_fixture: basis mismatch");
    FixtureReport report;
    report.map = "derived M_x multiplied by x (theta-rows) on every row";
    for (Var v : kVars) {
        const RatMatrix derived = system.theta_matrix(v);
        const RatMatrix& printed = fixture.theta[index(v)];
        for (std::size_t i = 0; i < derived.size(); ++i)
            for (std::size_t k = 0; k < derived.size(); ++k) {
                ++report.compared;
                if (!(derived[i][k] == printed[i][k])) report.mismatches.push_back({v, i, k, derived[i][k], printed[i][k]});
            }
    }
    return report;
}

std::size_t series_consistency_failures(const PfaffianSystem& system, std::uint32_t cap) {
    const TruncatedSeries u = period_series(cap);
    std::vector<TruncatedSeries> images;
    for (const auto& w : system.basis) images.push_back(apply(ThetaOperator::term(w, MultiPoly::constant(1)), u));
    std::size_t failures = 0;
    for (Var v : kVars) {
        const RatMatrix a = system.theta_matrix(v);
        for (std::size_t j = 0; j < a.size(); ++j) {
            MultiPoly den = MultiPoly::constant(1);
            for (const auto& e : a[j]) {
                const MultiPoly g = gcd(den, e.denominator());
                den = den * *e.denominator().divide_exact(g);
            }
            // Multiplying a cap-truncated series by a polynomial is exact
            // through the cap, so both sides agree term by term.
            const TruncatedSeries lhs = TruncatedSeries::from_poly(den, cap) *
                                        apply(ThetaOperator::term(add(unit(v), system.basis[j]), MultiPoly::constant(1)), u);
            TruncatedSeries rhs(cap);
            for (std::size_t k = 0; k < a.size(); ++k) {
                if (a[j][k].is_zero()) continue;
                const MultiPoly coeff = *(den * a[j][k].numerator()).divide_exact(a[j][k].denominator());
                rhs = rhs + TruncatedSeries::from_poly(coeff, cap) * images[k];
            }
            if (!(lhs == rhs)) ++failures;
        }
    }
    return failures;
}

std::string basis_label(const Exponent3& e) {
    if (order_of(e) == 0) return "1";
    std::string out;
    constexpr std::array<const char*, 3> names{"θp", "θq", "θr"};
    for (std::size_t i = 0; i < 3; ++i) {
        if (e[i] == 0) continue;
        out += names[i];
        if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out;
}

std::string to_json(const PfaffianSystem& system) {
    json j;
    j["convention"] = "d";
    j["basis"] = json::array();
    for (const auto& e : system.basis) j["basis"].push_back({e[0], e[1], e[2]});
    for (std::size_t i = 0; i < 3; ++i) {
        json m = json::array();
        for (const auto& row : system.m[i]) {
            json r = json::array();
            for (const auto& e : row) r.push_back(e.to_string());
            m.push_back(std::move(r));
        }
        j[kMatrixKeys[i]] = std::move(m);
    }
    return j.dump(1);
}

PfaffianSystem pfaffian_from_json(const std::string& text) {
    const json j = json::parse(text);
    std::vector<Exponent3> basis = basis_from_json(j.at("basis"));
    std::array<RatMatrix, 3> m;
    for (std::size_t i = 0; i < 3; ++i) m[i] = matrix_from_json(j.at(kMatrixKeys[i]));
    const std::string convention = j.value("convention", "d");
    if (convention == "theta") return PfaffianSystem::from_theta_matrices(std::move(basis), std::move(m));
    if (convention != "d") throw std::runtime_error("pfaffian_from_json: unknown convention " + convention);
    return PfaffianSystem{std::move(basis), std::move(m)};
}

}  // namespace kummer

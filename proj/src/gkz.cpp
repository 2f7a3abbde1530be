#include "kummer/gkz.hpp"

#include <stdexcept>

namespace kummer {

namespace {

IntMatrix to_matrix(std::initializer_list<std::initializer_list<long>> rows) {
    IntMatrix m;
    for (const auto& row : rows) {
        IntVector v;
        for (long x : row) v.emplace_back(x);
        m.push_back(std::move(v));
    }
    return m;
}

IntVector to_vector(std::initializer_list<long> xs) {
    IntVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

using RatMatrix = std::vector<std::vector<BigRational>>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(RatMatrix& m, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
        std::size_t pr = r;
        while (pr < m.size() && m[pr][c].is_zero()) ++pr;
        if (pr == m.size()) continue;
        std::swap(m[r], m[pr]);
        const BigRational inv = m[r][c].inverse();
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            const BigRational f = m[i][c];
            for (std::size_t k = 0; k < m[i].size(); ++k) m[i][k] -= f * m[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Solves Σ_k x_k columns[k] = rhs exactly. nullopt if inconsistent; throws
// when the columns are dependent.
std::optional<std::vector<BigRational>> solve_columns(const std::vector<IntVector>& columns, const IntVector& rhs) {
    const std::size_t n = rhs.size(), m = columns.size();
    RatMatrix aug(n, std::vector<BigRational>(m + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            if (columns[k].size() != n) throw std::invalid_argument("solve_columns: dimension mismatch");
            aug[i][k] = BigRational(columns[k][i]);
        }
        aug[i][m] = BigRational(rhs[i]);
    }
    const auto pivots = row_reduce(aug, m);
    if (pivots.size() != m) throw std::invalid_argument("solve_columns: columns are linearly dependent");
    for (std::size_t i = m; i < n; ++i)
        if (!aug[i][m].is_zero()) return std::nullopt;
    std::vector<BigRational> x(m);
    for (std::size_t k = 0; k < m; ++k) x[k] = aug[k][m];
    return x;
}

}  // namespace

GkzData kummer_gkz() {
    GkzData g;
    g.a = to_matrix({{1, 1, 0, 0, 0, 0, 0}, {0, 0, 1, 1, 1, 1, 1}, {1, 0, 1, 0, 0, 0, 0}, {0, 2, 0, 3, 2, 1, 0}});
    g.gamma = {BigRational(-1, 2), BigRational(-1, 2), BigRational(-1, 2), BigRational(-1)};
    return g;
}

std::vector<IntVector> kummer_kernel_vectors() {
    return {to_vector({0, 0, 0, 0, 1, -2, 1}), to_vector({0, 0, 0, 1, -2, 1, 0}), to_vector({1, -1, -1, 0, 1, 0, 0}),
            to_vector({0, 0, 0, 1, -1, -1, 1})};
}

IntVector multiply(const IntMatrix& a, const IntVector& b) {
    IntVector out;
    for (const auto& row : a) {
        if (row.size() != b.size()) throw std::invalid_argument("multiply: dimension mismatch");
        Integer s = 0;
        for (std::size_t j = 0; j < b.size(); ++j) s += row[j] * b[j];
        out.push_back(s);
    }
    return out;
}

std::size_t rank(const IntMatrix& a) {
    if (a.empty()) return 0;
    RatMatrix m;
    for (const auto& row : a) {
        std::vector<BigRational> r;
        for (const auto& x : row) r.emplace_back(x);
        m.push_back(std::move(r));
    }
    return row_reduce(m, m.front().size()).size();
}

std::vector<IntVector> kernel_basis(const IntMatrix& a) {
    const std::size_t k = a.size();
    if (k == 0) throw std::invalid_argument("kernel_basis: empty matrix");
    const std::size_t n = a.front().size();
    // Rows of [A^T | I_n]; unimodular row operations keep the right block a
    // basis change of Z^n.
    IntMatrix m(n, IntVector(k + n, Integer(0)));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < k; ++i) m[j][i] = a[i][j];
        m[j][k + j] = 1;
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < k && r < n; ++c) {
        for (;;) {
            std::size_t best = n;
            for (std::size_t i = r; i < n; ++i)
                if (m[i][c] != 0 && (best == n || abs(m[i][c]) < abs(m[best][c]))) best = i;
            if (best == n) break;
            std::swap(m[r], m[best]);
            bool reduced = true;
            for (std::size_t i = r + 1; i < n; ++i) {
                if (m[i][c] == 0) continue;
                Integer qt;
                mpz_fdiv_q(qt.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
                for (std::size_t col = 0; col < k + n; ++col) m[i][col] -= qt * m[r][col];
                if (m[i][c] != 0) reduced = false;
            }
            if (reduced) {
                ++r;
                break;
            }
        }
    }
    if (r != k) throw std::invalid_argument("kernel_basis: matrix does not have full row rank");
    std::vector<IntVector> basis;
    for (std::size_t i = r; i < n; ++i) basis.emplace_back(m[i].begin() + static_cast<long>(k), m[i].end());
    return basis;
}

std::optional<IntVector> lattice_coordinates(const std::vector<IntVector>& basis, const IntVector& v) {
    auto x = solve_columns(basis, v);
    if (!x) return std::nullopt;
    IntVector out;
    for (const auto& c : *x) {
        if (!c.is_integer()) return std::nullopt;
        out.push_back(c.numerator());
    }
    return out;
}

SubstitutionTable kummer_substitution() {
    SubstitutionTable t;
    t.pqr_in_c = {to_vector({1, -1, -1, 0, 1, 0, 0}), to_vector({2, -2, -2, 1, 0, 1, 0}),
                  to_vector({3, -3, -3, 2, 0, 0, 1})};
    const ThetaOperator tp = ThetaOperator::theta(Var::p), tq = ThetaOperator::theta(Var::q),
                        tr = ThetaOperator::theta(Var::r);
    auto k = [](long v) { return MultiPoly::constant(v); };
    const ThetaOperator euler = tp + k(2) * tq + k(3) * tr;
    const ThetaOperator shifted = -(euler + ThetaOperator::constant(BigRational(1, 2)));
    t.theta_of = {euler, shifted, shifted, tq + k(2) * tr, tp, tq, tr};
    return t;
}

std::vector<ThetaOperator> euler_residues(const GkzData& gkz, const SubstitutionTable& table) {
    if (table.theta_of.size() != gkz.cols()) throw std::invalid_argument("euler_residues: table size mismatch");
    std::vector<ThetaOperator> out;
    for (std::size_t i = 0; i < gkz.rows(); ++i) {
        ThetaOperator sum = -ThetaOperator::constant(gkz.gamma[i]);
        for (std::size_t j = 0; j < gkz.cols(); ++j)
            sum = sum + MultiPoly(BigRational(gkz.a[i][j])) * table.theta_of[j];
        out.push_back(std::move(sum));
    }
    return out;
}

bool verify_euler_elimination(const GkzData& gkz, const SubstitutionTable& table) {
    for (const auto& r : euler_residues(gkz, table))
        if (!r.is_zero()) return false;
    return true;
}

std::vector<ThetaOperator> solve_euler_relations(const GkzData& gkz, const SubstitutionTable& table) {
    const std::size_t n = gkz.cols(), k = gkz.rows();
    // θ_j is known by the chain rule when c_j occurs in exactly one of p, q, r
    // and nowhere else in the change of variables.
    std::vector<ThetaOperator> known(n);
    std::vector<bool> is_known(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        int hits = 0;
        std::size_t which = 0;
        for (std::size_t x = 0; x < 3; ++x)
            if (table.pqr_in_c[x][j] != 0) {
                ++hits;
                which = x;
            }
        if (hits == 1 && table.pqr_in_c[which][j] == 1) {
            is_known[j] = true;
            known[j] = ThetaOperator::theta(static_cast<Var>(which));
        }
    }
    std::vector<std::size_t> unknown;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_known[j]) unknown.push_back(j);
    if (unknown.size() != k) throw std::invalid_argument("solve_euler_relations: system is not square");
    // Solve over the constant-coefficient operators by Gaussian elimination
    // on a k×k rational matrix with operator right-hand sides.
    RatMatrix m(k, std::vector<BigRational>(k));
    std::vector<ThetaOperator> rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t u = 0; u < k; ++u) m[i][u] = BigRational(gkz.a[i][unknown[u]]);
        rhs[i] = ThetaOperator::constant(gkz.gamma[i]);
        for (std::size_t j = 0; j < n; ++j)
            if (is_known[j]) rhs[i] = rhs[i] - MultiPoly(BigRational(gkz.a[i][j])) * known[j];
    }
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t pr = c;
        while (pr < k && m[pr][c].is_zero()) ++pr;
        if (pr == k) throw std::invalid_argument("solve_euler_relations: singular Euler system");
        std::swap(m[c], m[pr]);
        std::swap(rhs[c], rhs[pr]);
        const BigRational inv = m[c][c].inverse();
        for (auto& x : m[c]) x *= inv;
        rhs[c] = MultiPoly(inv) * rhs[c];
        for (std::size_t i = 0; i < k; ++i) {
            if (i == c || m[i][c].is_zero()) continue;
            const BigRational f = m[i][c];
            for (std::size_t col = 0; col < k; ++col) m[i][col] -= f * m[c][col];
            rhs[i] = rhs[i] - MultiPoly(f) * rhs[c];
        }
    }
    std::vector<ThetaOperator> out = known;
    for (std::size_t u = 0; u < k; ++u) out[unknown[u]] = rhs[u];
    return out;
}

BoxOperator box_operator(const IntVector& b) {
    BoxOperator op;
    op.b = b;
    for (const auto& x : b) {
        if (!Integer(abs(x)).fits_uint_p()) throw std::invalid_argument("box_operator: entry too large");
        op.plus.push_back(x > 0 ? static_cast<std::uint32_t>(x.get_ui()) : 0U);
        op.minus.push_back(x < 0 ? static_cast<std::uint32_t>(Integer(abs(x)).get_ui()) : 0U);
    }
    return op;
}

std::array<long, 3> monomial_in_pqr(const IntVector& b, const SubstitutionTable& table) {
    const std::vector<IntVector> cols(table.pqr_in_c.begin(), table.pqr_in_c.end());
    if (rank(IntMatrix(cols.begin(), cols.end())) != 3)
        throw std::logic_error("monomial_in_pqr: p, q, r are not multiplicatively independent");
    auto x = solve_columns(cols, b);
    if (!x) throw std::invalid_argument("monomial_in_pqr: c^b is not a monomial in p, q, r (b not in ker A)");
    std::array<long, 3> e{};
    for (std::size_t i = 0; i < 3; ++i) {
        if (!(*x)[i].is_integer()) throw std::invalid_argument("monomial_in_pqr: non-integral exponent");
        e[i] = (*x)[i].numerator().get_si();
    }
    return e;
}

ThetaOperator falling_factorial(const ThetaOperator& theta, std::uint32_t k) {
    ThetaOperator out = ThetaOperator::constant(BigRational(1));
    for (std::uint32_t i = 0; i < k; ++i)
        out = compose(out, theta - ThetaOperator::constant(BigRational(static_cast<long>(i))));
    return out;
}

ThetaOperator reduce_to_pqr(const IntVector& b, const SubstitutionTable& table) {
    const BoxOperator box = box_operator(b);
    if (box.plus.size() != table.theta_of.size()) throw std::invalid_argument("reduce_to_pqr: dimension mismatch");
    const auto e = monomial_in_pqr(b, table);
    ThetaOperator lhs = ThetaOperator::constant(BigRational(1)), rhs = lhs;
    for (std::size_t j = 0; j < box.plus.size(); ++j) {
        if (box.plus[j]) lhs = compose(lhs, falling_factorial(table.theta_of[j], box.plus[j]));
        if (box.minus[j]) rhs = compose(rhs, falling_factorial(table.theta_of[j], box.minus[j]));
    }
    Exponent3 clear{}, shifted{};
    for (std::size_t x = 0; x < 3; ++x) {
        clear[x] = static_cast<std::uint32_t>(e[x] < 0 ? -e[x] : 0);
        shifted[x] = static_cast<std::uint32_t>(static_cast<long>(clear[x]) + e[x]);
    }
    return MultiPoly::monomial(clear, BigRational(1)) * lhs - MultiPoly::monomial(shifted, BigRational(1)) * rhs;
}

}  // namespace kummer

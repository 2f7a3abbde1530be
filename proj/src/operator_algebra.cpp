#include "kummer/operator_algebra.hpp"

namespace kummer {

namespace {

// Expansion of (θ_v + k)^n as coefficients of θ_v^j, j = 0..n.
std::vector<BigRational> shifted_power(std::uint32_t n, std::uint32_t k) {
    std::vector<BigRational> out(n + 1);
    BigRational kp(1);
    for (std::uint32_t j = n + 1; j-- > 0;) {
        out[j] = binomial(n, j) * kp;
        kp *= BigRational(static_cast<long>(k));
    }
    return out;
}

}  // namespace

ThetaOperator::ThetaOperator(const MultiPoly& poly) { add(Exponent3{}, poly); }

ThetaOperator ThetaOperator::theta(Var v) {
    Exponent3 e{};
    e[index(v)] = 1;
    return term(e, MultiPoly::constant(1));
}

ThetaOperator ThetaOperator::term(const Exponent3& exponent, const MultiPoly& coeff) {
    ThetaOperator op;
    op.add(exponent, coeff);
    return op;
}

void ThetaOperator::add(const Exponent3& exponent, const MultiPoly& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(exponent, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

std::uint32_t ThetaOperator::order() const {
    std::uint32_t o = 0;
    for (const auto& [e, c] : terms_) o = std::max(o, total_degree(e));
    return o;
}

MultiPoly ThetaOperator::coefficient(const Exponent3& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? MultiPoly{} : it->second;
}

std::uint32_t ThetaOperator::coefficient_degree() const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, c.total_degree());
    return d;
}

ThetaOperator ThetaOperator::operator-() const {
    ThetaOperator out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

ThetaOperator operator+(const ThetaOperator& a, const ThetaOperator& b) {
    ThetaOperator out = a;
    for (const auto& [e, c] : b.terms_) out.add(e, c);
    return out;
}

ThetaOperator operator-(const ThetaOperator& a, const ThetaOperator& b) { return a + (-b); }

ThetaOperator operator*(const MultiPoly& c, const ThetaOperator& a) {
    ThetaOperator out;
    for (const auto& [e, v] : a.terms_) out.add(e, c * v);
    return out;
}

std::string ThetaOperator::to_string() const {
    if (terms_.empty()) return "0";
    static constexpr std::array<const char*, 3> names{"θp", "θq", "θr"};
    std::string out;
    for (const auto& [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + kummer::to_string(c) + ")";
        for (std::size_t v = 0; v < 3; ++v) {
            if (e[v] == 0) continue;
            out += std::string(" ") + names[v];
            if (e[v] > 1) out += "^" + std::to_string(e[v]);
        }
    }
    return out;
}

ThetaOperator compose(const ThetaOperator& a, const ThetaOperator& b) {
    ThetaOperator out;
    for (const auto& [alpha, ca] : a.terms()) {
        for (const auto& [beta, cb] : b.terms()) {
            // θ^alpha ∘ x^f = x^f Π_v (θ_v + f_v)^{alpha_v}
            for (const auto& t : cb.terms()) {
                std::array<std::vector<BigRational>, 3> factors;
                for (std::size_t v = 0; v < 3; ++v) factors[v] = shifted_power(alpha[v], t.exponent[v]);
                const MultiPoly left = ca * MultiPoly::monomial(t.exponent, t.coeff);
                for (std::uint32_t i = 0; i <= alpha[0]; ++i) {
                    if (factors[0][i].is_zero()) continue;
                    for (std::uint32_t j = 0; j <= alpha[1]; ++j) {
                        if (factors[1][j].is_zero()) continue;
                        for (std::uint32_t k = 0; k <= alpha[2]; ++k) {
                            const BigRational w = factors[0][i] * factors[1][j] * factors[2][k];
                            if (w.is_zero()) continue;
                            out = out + ThetaOperator::term({i + beta[0], j + beta[1], k + beta[2]}, left.scaled(w));
                        }
                    }
                }
            }
        }
    }
    return out;
}

ThetaOperator power(const ThetaOperator& a, std::uint32_t k) {
    ThetaOperator out = ThetaOperator::constant(BigRational(1));
    for (std::uint32_t i = 0; i < k; ++i) out = compose(out, a);
    return out;
}

TruncatedSeries apply(const ThetaOperator& op, const TruncatedSeries& s) {
    TruncatedSeries out(s.cap());
    for (const auto& [alpha, coeff] : op.terms()) {
        // Diagonal action first, then multiplication by the coefficient.
        TruncatedSeries image(s.cap());
        for (const auto& [f, c] : s.terms()) {
            BigRational eigen(1);
            for (std::size_t v = 0; v < 3; ++v)
                for (std::uint32_t k = 0; k < alpha[v]; ++k) eigen *= BigRational(static_cast<long>(f[v]));
            image.add_term(f, c * eigen);
        }
        for (const auto& t : coeff.terms()) out = out + image.times_monomial(t.exponent, t.coeff);
    }
    return out;
}

std::vector<ThetaOperator> build_canonical_system() {
    const ThetaOperator tp = ThetaOperator::theta(Var::p), tq = ThetaOperator::theta(Var::q),
                        tr = ThetaOperator::theta(Var::r);
    auto k = [](long v) { return MultiPoly::constant(v); };
    auto one = ThetaOperator::constant(BigRational(1));
    auto half = ThetaOperator::constant(BigRational(1, 2));
    auto x = [](const char* s) { return parse_poly(s); };

    std::vector<ThetaOperator> ops;
    ops.push_back(x("q^2") * compose(tp, tr) - x("p r") * compose(tq, tq - one));
    ops.push_back(x("p^2") * compose(tq, tq + k(2) * tr) - x("q") * compose(tp, tp - one));
    const ThetaOperator euler = tp + k(2) * tq + k(3) * tr;
    ops.push_back(compose(tp, euler) - x("p") * power(euler + half, 2));
    ops.push_back(x("p q") * compose(tr, tq + k(2) * tr) - x("r") * compose(tp, tq));
    ops.push_back(x("9 * q r") * compose(tp, one + k(2) * tr) - x("4 * p r") * compose(tq, k(2) * tq + k(3) * tr) -
                  x("4 * p^2 q") * compose(tr, tq + k(2) * tr) +
                  x("4 * p^2 r") * compose(tq, tp + k(4) * tq + k(6) * tr) +
                  x("p q^2") * compose(tr, one + k(16) * tq + k(30) * tr));
    return ops;
}

Polynomial<BigRational, 3> identity_expansion() {
    using P3 = Polynomial<BigRational, 3>;
    static constexpr std::array<std::string_view, 3> names{"l", "m", "n"};
    auto x = [](const char* s) { return parse_poly<3>(s, names); };
    const P3 s4 = x("l + 2 * m + 3 * n + -4");
    const P3 w = x("2 * l + 4 * m + 6 * n + -9");
    return x("9") * x("2 * n + -1") * x("m + 2 * n + -2") * s4 - w * w * x("2 * m + 3 * n + -3") -
           w * w * x("l + -1") + x("4") * x("l + -1") * s4 * x("l + 4 * m + 6 * n + -8") +
           x("m + -1") * s4 * x("16 * m + 30 * n + -31");
}

}  // namespace kummer

#include "kummer/rat_func.hpp"

#include <cctype>
#include <cmath>

namespace kummer {

namespace {

MultiPoly exact_quotient(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_constant()) return a.scaled(b.constant_term().inverse());
    auto q = a.divide_exact(b);
    if (!q) throw std::logic_error("RatFunc: expected exact division failed");
    return *std::move(q);
}

bool is_one(const MultiPoly& p) { return p.is_constant() && p.constant_term().is_one(); }

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Position just past the parenthesis matching the one at s[0].
std::size_t matching_paren(std::string_view s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')' && --depth == 0) return i + 1;
    }
    throw std::invalid_argument("RatFunc::parse: unbalanced parentheses in '" + std::string(s) + "'");
}

}  // namespace

RatFunc::RatFunc(const MultiPoly& num, const MultiPoly& den) {
    if (den.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    if (num.is_zero()) {
        den_ = MultiPoly::constant(1);
        return;
    }
    if (den.is_constant()) {
        num_ = num.scaled(den.constant_term().inverse());
        den_ = MultiPoly::constant(1);
        return;
    }
    const MultiPoly g = gcd(num, den);
    *this = normalize_units(exact_quotient(num, g), exact_quotient(den, g));
}

RatFunc RatFunc::normalize_units(MultiPoly num, MultiPoly den) {
    auto split = primitive_split(den);
    return RatFunc(num.scaled(split.scale.inverse()), to_multi(split.primitive), Canonical{});
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Canonical{}); }

RatFunc operator+(const RatFunc& x, const RatFunc& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    const MultiPoly &a = x.num_, &b = x.den_, &c = y.num_, &d = y.den_;
    if (b == d) {
        MultiPoly t = a + c;
        if (t.is_zero()) return {};
        if (is_one(b)) return RatFunc(std::move(t), b, RatFunc::Canonical{});
        const MultiPoly h = gcd(t, b);
        return RatFunc(exact_quotient(t, h), exact_quotient(b, h), RatFunc::Canonical{});
    }
    const MultiPoly g = gcd(b, d);
    if (is_one(g)) return RatFunc(a * d + c * b, b * d, RatFunc::Canonical{});
    const MultiPoly b1 = exact_quotient(b, g), d1 = exact_quotient(d, g);
    MultiPoly t = a * d1 + c * b1;
    if (t.is_zero()) return {};
    const MultiPoly h = gcd(t, g);
    return RatFunc(exact_quotient(t, h), b1 * exact_quotient(d, h), RatFunc::Canonical{});
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& x, const RatFunc& y) {
    if (x.is_zero() || y.is_zero()) return {};
    if (x.is_polynomial() && y.is_polynomial()) return RatFunc(x.num_ * y.num_, x.den_, RatFunc::Canonical{});
    const MultiPoly g1 = gcd(x.num_, y.den_), g2 = gcd(y.num_, x.den_);
    return RatFunc(exact_quotient(x.num_, g1) * exact_quotient(y.num_, g2),
                   exact_quotient(x.den_, g2) * exact_quotient(y.den_, g1), RatFunc::Canonical{});
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
    return normalize_units(den_, num_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::partial_derivative(Var v) const {
    const std::size_t i = index(v);
    if (is_polynomial()) return RatFunc(num_.derivative(i), den_, Canonical{});
    return RatFunc(num_.derivative(i) * den_ - num_ * den_.derivative(i), den_ * den_);
}

std::complex<double> RatFunc::evaluate(const std::array<std::complex<double>, 3>& point, double floor) const {
    const std::complex<double> n = kummer::evaluate(num_, point);
    if (is_polynomial()) return n;
    std::complex<double> d = 0.0;
    double scale = 0.0;
    for (const auto& t : den_.terms()) {
        std::complex<double> term = t.coeff.to_double();
        for (std::size_t v = 0; v < 3; ++v)
            for (std::uint32_t k = 0; k < t.exponent[v]; ++k) term *= point[v];
        d += term;
        scale += std::abs(term);
    }
    if (std::abs(d) <= floor * scale)
        throw NearSingularError("rational function evaluated on its polar locus: |den| = " + std::to_string(std::abs(d)));
    return n / d;
}

std::string RatFunc::to_string() const { return "(" + kummer::to_string(num_) + ")/(" + kummer::to_string(den_) + ")"; }

RatFunc RatFunc::parse(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw std::invalid_argument("RatFunc::parse: empty input");
    if (s.front() != '(') return RatFunc(parse_poly(s));
    const std::size_t end_num = matching_paren(s);
    const MultiPoly num = parse_poly(s.substr(1, end_num - 2));
    std::string_view rest = trim(s.substr(end_num));
    if (rest.empty()) return RatFunc(num);
    if (rest.front() != '/') throw std::invalid_argument("RatFunc::parse: expected '/' in '" + std::string(text) + "'");
    rest = trim(rest.substr(1));
    if (rest.empty() || rest.front() != '(' || matching_paren(rest) != rest.size())
        throw std::invalid_argument("RatFunc::parse: malformed denominator in '" + std::string(text) + "'");
    return RatFunc(num, parse_poly(rest.substr(1, rest.size() - 2)));
}

}  // namespace kummer

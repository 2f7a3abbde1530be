#include "kummer/multi_poly.hpp"

#include <cctype>
#include <map>
#include <stdexcept>

namespace kummer {

namespace {

constexpr std::array<std::string_view, 3> kPqrNames{"p", "q", "r"};

class PolyParser {
public:
    PolyParser(std::string_view text, std::span<const std::string_view> names) : text_(text), names_(names) {}

    template <std::size_t N>
    Polynomial<BigRational, N> parse() {
        using P = Polynomial<BigRational, N>;
        std::vector<typename P::Term> terms;
        skip_ws();
        if (done()) fail("empty polynomial");
        bool first = true;
        while (!done()) {
            bool negative = false;
            if (!first) {
                if (peek() == '+') {
                    ++pos_;
                } else if (peek() == '-') {
                    ++pos_;
                    negative = true;
                } else {
                    fail("expected '+' or '-'");
                }
                skip_ws();
            }
            while (peek() == '+' || peek() == '-') {
                if (peek() == '-') negative = !negative;
                ++pos_;
                skip_ws();
            }
            typename P::Term term;
            term.coeff = BigRational(1);
            bool have_coeff = false;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                term.coeff = read_number();
                have_coeff = true;
                skip_ws();
                if (peek() == '*') {
                    ++pos_;
                    skip_ws();
                    read_monomial<N>(term.exponent, true);
                }
            } else {
                read_monomial<N>(term.exponent, true);
            }
            (void)have_coeff;
            if (negative) term.coeff = -term.coeff;
            terms.push_back(std::move(term));
            skip_ws();
            first = false;
        }
        return P::from_terms(std::move(terms));
    }

private:
    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }
    void skip_ws() {
        while (!done() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("polynomial parse error at " + std::to_string(pos_) + ": " + what + " in '" +
                                    std::string(text_) + "'");
    }

    std::string read_digits() {
        std::size_t start = pos_;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::string(text_.substr(start, pos_ - start));
    }

    BigRational read_number() {
        std::string num = read_digits();
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            skip_ws();
            std::string den = read_digits();
            return BigRational(Integer(num), Integer(den));
        }
        return BigRational(Integer(num));
    }

    template <std::size_t N>
    void read_monomial(std::array<std::uint32_t, N>& exponent, bool required) {
        bool any = false;
        for (;;) {
            skip_ws();
            std::size_t matched = names_.size();
            for (std::size_t i = 0; i < names_.size(); ++i) {
                const auto& n = names_[i];
                if (text_.substr(pos_, n.size()) == n) {
                    const std::size_t after = pos_ + n.size();
                    if (after < text_.size() && std::isalnum(static_cast<unsigned char>(text_[after])) &&
                        !std::isdigit(static_cast<unsigned char>(text_[after])))
                        continue;
                    matched = i;
                    break;
                }
            }
            if (matched == names_.size()) break;
            pos_ += names_[matched].size();
            skip_ws();
            std::uint32_t power = 1;
            if (peek() == '^') {
                ++pos_;
                skip_ws();
                power = static_cast<std::uint32_t>(std::stoul(read_digits()));
            }
            exponent[matched] += power;
            any = true;
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                continue;
            }
        }
        if (required && !any) fail("expected a variable");
    }

    std::string_view text_;
    std::span<const std::string_view> names_;
    std::size_t pos_ = 0;
};

Integer max_norm(const IntPoly& p) {
    Integer m = 0;
    for (const auto& t : p.terms())
        if (mpz_cmpabs(t.coeff.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(t.coeff);
    return m;
}

IntPoly normalize_sign(IntPoly p) {
    if (!p.is_zero() && sgn(p.leading_term().coeff) < 0) p = -p;
    return p;
}

IntPoly::Exponent min_exponent(const IntPoly& p) {
    IntPoly::Exponent m{};
    bool first = true;
    for (const auto& t : p.terms()) {
        for (std::size_t i = 0; i < 3; ++i) m[i] = first ? t.exponent[i] : std::min(m[i], t.exponent[i]);
        first = false;
    }
    return m;
}

IntPoly divide_monomial(const IntPoly& p, const IntPoly::Exponent& e) {
    auto q = p.divide_exact(IntPoly::monomial(e, Integer(1)));
    return *q;
}

IntPoly divide_integer(const IntPoly& p, const Integer& c) {
    if (c == 1) return p;
    std::vector<IntPoly::Term> terms = p.terms();
    for (auto& t : terms) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
    return IntPoly::from_terms(std::move(terms));
}

// Writes each integer coefficient of `h` in symmetric base `xi` and uses the
// digits as coefficients of powers of variable `var`.
IntPoly interpolate(const IntPoly& h, const Integer& xi, std::size_t var) {
    std::vector<IntPoly::Term> out;
    const Integer half = xi / 2;
    for (const auto& t : h.terms()) {
        Integer c = t.coeff;
        std::uint32_t power = 0;
        while (c != 0) {
            Integer d;
            mpz_fdiv_r(d.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
            if (d > half) d -= xi;
            if (d != 0) {
                IntPoly::Term term;
                term.exponent = t.exponent;
                term.exponent[var] = power;
                term.coeff = d;
                out.push_back(std::move(term));
            }
            c -= d;
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
            ++power;
        }
    }
    return IntPoly::from_terms(std::move(out));
}

// Heuristic gcd over Z[x_0..x_{k-1}]; the result carries the integer content
// gcd and a positive leading coefficient. nullopt when every evaluation point
// tried produced a spurious candidate.
std::optional<IntPoly> heuristic_gcd(const IntPoly& a, const IntPoly& b, std::size_t k) {
    if (a.is_zero()) return normalize_sign(b);
    if (b.is_zero()) return normalize_sign(a);
    while (k > 0 && !a.contains_variable(k - 1) && !b.contains_variable(k - 1)) --k;
    if (k == 0) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), a.constant_term().get_mpz_t(), b.constant_term().get_mpz_t());
        return IntPoly(g);
    }
    const Integer ca = content(a), cb = content(b);
    Integer gc;
    mpz_gcd(gc.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    const IntPoly pa = divide_integer(a, ca), pb = divide_integer(b, cb);
    const std::size_t var = k - 1;
    Integer xi = 2 * std::min(max_norm(pa), max_norm(pb)) + 29;
    for (int attempt = 0; attempt < 6; ++attempt) {
        const IntPoly ea = pa.substitute(var, xi), eb = pb.substitute(var, xi);
        if (!ea.is_zero() && !eb.is_zero()) {
            if (auto h = heuristic_gcd(ea, eb, var)) {
                IntPoly g = normalize_sign(primitive_part(interpolate(*h, xi, var)));
                if (!g.is_zero() && pa.divide_exact(g) && pb.divide_exact(g)) return g.scaled(gc);
            }
        }
        Integer root4;
        mpz_root(root4.get_mpz_t(), xi.get_mpz_t(), 4);
        xi = xi * 73794 * root4 / 27011;
    }
    return std::nullopt;
}

// Coefficients of `p` viewed as a univariate polynomial in `var`.
std::map<std::uint32_t, IntPoly> coefficients_in(const IntPoly& p, std::size_t var) {
    std::map<std::uint32_t, std::vector<IntPoly::Term>> parts;
    for (const auto& t : p.terms()) {
        IntPoly::Term c = t;
        c.exponent[var] = 0;
        parts[t.exponent[var]].push_back(std::move(c));
    }
    std::map<std::uint32_t, IntPoly> out;
    for (auto& [d, terms] : parts) out.emplace(d, IntPoly::from_terms(std::move(terms)));
    return out;
}

IntPoly prs_gcd_impl(const IntPoly& a, const IntPoly& b);

IntPoly content_in(const IntPoly& p, std::size_t var) {
    IntPoly g;
    for (const auto& [d, c] : coefficients_in(p, var)) {
        g = g.is_zero() ? normalize_sign(primitive_part(c)) : prs_gcd_impl(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

IntPoly pseudo_remainder(IntPoly a, const IntPoly& b, std::size_t var) {
    const std::uint32_t db = b.degree(var);
    const auto bc = coefficients_in(b, var);
    const IntPoly& lcb = bc.rbegin()->second;
    while (!a.is_zero() && a.degree(var) >= db) {
        const std::uint32_t da = a.degree(var);
        const IntPoly lca = coefficients_in(a, var).rbegin()->second;
        IntPoly::Exponent shift{};
        shift[var] = da - db;
        a = a * lcb - (lca * b).times_monomial(shift);
    }
    return a;
}

// Primitive PRS gcd on primitive, sign-normalized inputs.
IntPoly prs_gcd_impl(const IntPoly& a0, const IntPoly& b0) {
    IntPoly a = normalize_sign(primitive_part(a0));
    IntPoly b = normalize_sign(primitive_part(b0));
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() || b.is_constant()) return IntPoly::constant(1);
    std::size_t var = 3;
    while (var > 0 && !a.contains_variable(var - 1) && !b.contains_variable(var - 1)) --var;
    --var;
    const IntPoly ca = content_in(a, var), cb = content_in(b, var);
    const IntPoly c = prs_gcd_impl(ca, cb);
    a = *a.divide_exact(ca);
    b = *b.divide_exact(cb);
    if (a.degree(var) < b.degree(var)) std::swap(a, b);
    while (!b.is_zero() && b.degree(var) > 0) {
        IntPoly r = pseudo_remainder(a, b, var);
        a = std::move(b);
        if (r.is_zero()) {
            b = IntPoly{};
            break;
        }
        b = primitive_part(r);
        const IntPoly cr = content_in(b, var);
        b = *b.divide_exact(cr);
    }
    IntPoly g = b.is_zero() ? a : IntPoly::constant(1);
    return normalize_sign(primitive_part(c * g));
}

}  // namespace

template <std::size_t N>
std::string to_string(const Polynomial<BigRational, N>& poly, const std::array<std::string_view, N>& names) {
    if (poly.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : poly.terms()) {
        if (!first) out += " + ";
        first = false;
        out += t.coeff.to_string();
        bool any = false;
        for (std::size_t v = 0; v < N; ++v) {
            if (t.exponent[v] == 0) continue;
            out += any ? " " : " * ";
            any = true;
            out += names[v];
            if (t.exponent[v] != 1) out += "^" + std::to_string(t.exponent[v]);
        }
    }
    return out;
}

template <std::size_t N>
Polynomial<BigRational, N> parse_poly(std::string_view text, const std::array<std::string_view, N>& names) {
    PolyParser parser(text, std::span<const std::string_view>(names.data(), names.size()));
    return parser.parse<N>();
}

template std::string to_string<1>(const Polynomial<BigRational, 1>&, const std::array<std::string_view, 1>&);
template std::string to_string<3>(const Polynomial<BigRational, 3>&, const std::array<std::string_view, 3>&);
template std::string to_string<4>(const Polynomial<BigRational, 4>&, const std::array<std::string_view, 4>&);
template std::string to_string<5>(const Polynomial<BigRational, 5>&, const std::array<std::string_view, 5>&);
template Polynomial<BigRational, 1> parse_poly<1>(std::string_view, const std::array<std::string_view, 1>&);
template Polynomial<BigRational, 3> parse_poly<3>(std::string_view, const std::array<std::string_view, 3>&);
template Polynomial<BigRational, 4> parse_poly<4>(std::string_view, const std::array<std::string_view, 4>&);
template Polynomial<BigRational, 5> parse_poly<5>(std::string_view, const std::array<std::string_view, 5>&);

std::string to_string(const MultiPoly& poly) { return to_string<3>(poly, kPqrNames); }

MultiPoly parse_poly(std::string_view text) { return parse_poly<3>(text, kPqrNames); }

Integer content(const IntPoly& poly) {
    Integer g = 0;
    for (const auto& t : poly.terms()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly primitive_part(const IntPoly& poly) {
    if (poly.is_zero()) return poly;
    return divide_integer(poly, content(poly));
}

PrimitiveSplit primitive_split(const MultiPoly& poly) {
    if (poly.is_zero()) return {BigRational(0), IntPoly{}};
    Integer den_lcm = 1;
    for (const auto& t : poly.terms()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.value().get_den_mpz_t());
    std::vector<IntPoly::Term> terms;
    terms.reserve(poly.size());
    Integer g = 0;
    for (const auto& t : poly.terms()) {
        Integer c = t.coeff.value().get_num() * (den_lcm / t.coeff.value().get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        terms.push_back({t.exponent, std::move(c)});
    }
    if (sgn(terms.back().coeff) < 0) g = -g;
    for (auto& t : terms) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
    IntPoly prim;
    prim = IntPoly::from_terms(std::move(terms));
    return {BigRational(g, den_lcm), std::move(prim)};
}

MultiPoly to_multi(const IntPoly& poly) {
    std::vector<MultiPoly::Term> terms;
    terms.reserve(poly.size());
    for (const auto& t : poly.terms()) terms.push_back({t.exponent, BigRational(t.coeff)});
    return MultiPoly::from_terms(std::move(terms));
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd: both arguments are zero");
    if (a.is_zero()) return normalize_sign(primitive_part(b));
    if (b.is_zero()) return normalize_sign(primitive_part(a));
    const auto ma = min_exponent(a), mb = min_exponent(b);
    IntPoly::Exponent common{};
    for (std::size_t i = 0; i < 3; ++i) common[i] = std::min(ma[i], mb[i]);
    IntPoly ra = normalize_sign(primitive_part(divide_monomial(a, ma)));
    IntPoly rb = normalize_sign(primitive_part(divide_monomial(b, mb)));
    const IntPoly mono = IntPoly::monomial(common, Integer(1));
    if (ra.is_constant() || rb.is_constant()) return mono;
    if (ra == rb) return ra.times_monomial(common);
    if (auto g = heuristic_gcd(ra, rb, 3)) return normalize_sign(primitive_part(*g)).times_monomial(common);
    return prs_gcd_impl(ra, rb).times_monomial(common);
}

IntPoly gcd_prs(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd: both arguments are zero");
    return prs_gcd_impl(a, b);
}

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd: both arguments are zero");
    return to_multi(gcd(primitive_split(a).primitive, primitive_split(b).primitive));
}

std::complex<double> evaluate(const MultiPoly& poly, const std::array<std::complex<double>, 3>& point) {
    return poly.evaluate<std::complex<double>>(point);
}

}  // namespace kummer

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kummer/big_rational.hpp"

namespace kummer {

namespace coeff {

inline bool is_zero(const BigRational& c) { return c.is_zero(); }
inline bool is_zero(const Integer& c) { return sgn(c) == 0; }

inline void add_product(BigRational& acc, const BigRational& a, const BigRational& b) { acc += a * b; }
inline void add_product(Integer& acc, const Integer& a, const Integer& b) {
    mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

inline bool divide(const BigRational& a, const BigRational& b, BigRational& out) {
    out = a / b;
    return true;
}
inline bool divide(const Integer& a, const Integer& b, Integer& out) {
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return false;
    mpz_divexact(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return true;
}

inline BigRational from_uint(std::uint64_t v) { return BigRational(Integer(static_cast<unsigned long>(v))); }

template <class C>
C make(long v) {
    return C(v);
}

}  // namespace coeff

/// Sparse polynomial in N variables. Terms are kept sorted lexicographically
/// ascending on the exponent vector, with no zero coefficients.
template <class C, std::size_t N>
class Polynomial {
public:
    using Coeff = C;
    using Exponent = std::array<std::uint32_t, N>;
    static constexpr std::size_t num_vars = N;

    struct Term {
        Exponent exponent{};
        C coeff{};
        friend bool operator==(const Term&, const Term&) = default;
    };

    Polynomial() = default;
    explicit Polynomial(C constant) {
        if (!coeff::is_zero(constant)) terms_.push_back({Exponent{}, std::move(constant)});
    }

    static Polynomial constant(long v) { return Polynomial(C(v)); }

    static Polynomial variable(std::size_t index, std::uint32_t power = 1) {
        Exponent e{};
        e.at(index) = power;
        return monomial(e, C(1));
    }

    static Polynomial monomial(const Exponent& e, C c) {
        Polynomial out;
        if (!coeff::is_zero(c)) out.terms_.push_back({e, std::move(c)});
        return out;
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unordered) terms.
    static Polynomial from_terms(std::vector<Term> terms) {
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
        Polynomial out;
        for (auto& t : terms) {
            if (!out.terms_.empty() && out.terms_.back().exponent == t.exponent) {
                out.terms_.back().coeff += t.coeff;
            } else {
                if (!out.terms_.empty() && coeff::is_zero(out.terms_.back().coeff)) out.terms_.pop_back();
                out.terms_.push_back(std::move(t));
            }
        }
        if (!out.terms_.empty() && coeff::is_zero(out.terms_.back().coeff)) out.terms_.pop_back();
        return out;
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent == Exponent{}); }
    bool is_monomial() const { return terms_.size() == 1; }

    C constant_term() const {
        if (!terms_.empty() && terms_.front().exponent == Exponent{}) return terms_.front().coeff;
        return C(0);
    }

    C coefficient(const Exponent& e) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, const Exponent& x) { return t.exponent < x; });
        if (it != terms_.end() && it->exponent == e) return it->coeff;
        return C(0);
    }

    /// Lexicographically largest term. Undefined on zero.
    const Term& leading_term() const {
        if (terms_.empty()) throw std::logic_error("leading_term of zero polynomial");
        return terms_.back();
    }

    std::uint32_t degree(std::size_t var) const {
        std::uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.exponent[var]);
        return d;
    }

    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (const auto& t : terms_) {
            std::uint32_t s = 0;
            for (auto e : t.exponent) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    bool contains_variable(std::size_t var) const {
        for (const auto& t : terms_)
            if (t.exponent[var] != 0) return true;
        return false;
    }

    Polynomial operator-() const {
        Polynomial out = *this;
        for (auto& t : out.terms_) t.coeff = -t.coeff;
        return out;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }
    Polynomial& operator+=(const Polynomial& b) { return *this = merge(*this, b, false); }
    Polynomial& operator-=(const Polynomial& b) { return *this = merge(*this, b, true); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply(a, b); }
    Polynomial& operator*=(const Polynomial& b) { return *this = multiply(*this, b); }

    Polynomial scaled(const C& c) const {
        if (coeff::is_zero(c)) return {};
        Polynomial out = *this;
        for (auto& t : out.terms_) t.coeff *= c;
        return out;
    }

    /// Multiplication by x^e preserves the term order.
    Polynomial times_monomial(const Exponent& e) const {
        Polynomial out = *this;
        for (auto& t : out.terms_)
            for (std::size_t i = 0; i < N; ++i) t.exponent[i] += e[i];
        return out;
    }

    Polynomial pow(std::uint32_t k) const {
        Polynomial result = constant(1);
        Polynomial base = *this;
        while (k) {
            if (k & 1U) result *= base;
            k >>= 1U;
            if (k) base *= base;
        }
        return result;
    }

    Polynomial derivative(std::size_t var) const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            if (t.exponent[var] == 0) continue;
            Term d = t;
            d.coeff *= C(static_cast<long>(t.exponent[var]));
            d.exponent[var] -= 1;
            out.push_back(std::move(d));
        }
        // Lowering one exponent of distinct monomials keeps them distinct
        // and in the same relative order.
        Polynomial p;
        p.terms_ = std::move(out);
        return p;
    }

    /// Replaces variable `var` by the constant `value`.
    Polynomial substitute(std::size_t var, const C& value) const {
        std::uint32_t maxd = degree(var);
        std::vector<C> powers(maxd + 1);
        powers[0] = C(1);
        for (std::uint32_t i = 1; i <= maxd; ++i) powers[i] = powers[i - 1] * value;
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            Term s = t;
            s.coeff *= powers[t.exponent[var]];
            s.exponent[var] = 0;
            out.push_back(std::move(s));
        }
        return from_terms(std::move(out));
    }

    template <class T>
    T evaluate(const std::array<T, N>& point) const {
        std::array<std::vector<T>, N> powers;
        for (std::size_t v = 0; v < N; ++v) {
            std::uint32_t d = degree(v);
            powers[v].resize(d + 1);
            powers[v][0] = T(1);
            for (std::uint32_t i = 1; i <= d; ++i) powers[v][i] = powers[v][i - 1] * point[v];
        }
        T sum(0);
        for (const auto& t : terms_) {
            T term = convert<T>(t.coeff);
            for (std::size_t v = 0; v < N; ++v)
                if (t.exponent[v]) term = term * powers[v][t.exponent[v]];
            sum = sum + term;
        }
        return sum;
    }

    /// Exact division. Returns nullopt when `divisor` does not divide this
    /// polynomial (over the coefficient ring).
    std::optional<Polynomial> divide_exact(const Polynomial& divisor) const {
        if (divisor.is_zero()) throw std::domain_error("Polynomial: division by zero polynomial");
        if (is_zero()) return Polynomial{};
        if (divisor.is_monomial()) {
            const auto& lt = divisor.terms_[0];
            std::vector<Term> out;
            out.reserve(terms_.size());
            for (const auto& t : terms_) {
                Term q;
                for (std::size_t i = 0; i < N; ++i) {
                    if (t.exponent[i] < lt.exponent[i]) return std::nullopt;
                    q.exponent[i] = t.exponent[i] - lt.exponent[i];
                }
                if (!coeff::divide(t.coeff, lt.coeff, q.coeff)) return std::nullopt;
                out.push_back(std::move(q));
            }
            Polynomial p;
            p.terms_ = std::move(out);
            return p;
        }
        for (std::size_t i = 0; i < N; ++i)
            if (divisor.degree(i) > degree(i)) return std::nullopt;
        return divide_general(divisor);
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

private:
    template <class T>
    static T convert(const C& c) {
        if constexpr (requires { typename T::Term; }) {
            return T(c);
        } else if constexpr (std::is_same_v<C, BigRational>) {
            if constexpr (std::is_same_v<T, BigRational>) return c;
            else return T(c.to_double());
        } else {
            if constexpr (std::is_same_v<T, Integer>) return c;
            else if constexpr (std::is_same_v<T, BigRational>) return BigRational(c);
            else return T(c.get_d());
        }
    }

    static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
        Polynomial out;
        out.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].exponent < b.terms_[j].exponent)) {
                out.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].exponent < a.terms_[i].exponent) {
                out.terms_.push_back(b.terms_[j++]);
                if (subtract) out.terms_.back().coeff = -out.terms_.back().coeff;
            } else {
                C c = a.terms_[i].coeff;
                if (subtract) c -= b.terms_[j].coeff;
                else c += b.terms_[j].coeff;
                if (!coeff::is_zero(c)) out.terms_.push_back({a.terms_[i].exponent, std::move(c)});
                ++i;
                ++j;
            }
        }
        return out;
    }

    static constexpr unsigned pack_bits = 64 / N;

    static bool packable(const Polynomial& a, const Polynomial& b) {
        for (std::size_t v = 0; v < N; ++v)
            if (static_cast<std::uint64_t>(a.degree(v)) + b.degree(v) >= (std::uint64_t{1} << pack_bits)) return false;
        return true;
    }

    static std::uint64_t pack(const Exponent& e) {
        std::uint64_t key = 0;
        for (std::size_t v = 0; v < N; ++v) key = (key << pack_bits) | e[v];
        return key;
    }

    static Exponent unpack(std::uint64_t key) {
        Exponent e{};
        const std::uint64_t mask = (std::uint64_t{1} << pack_bits) - 1;
        for (std::size_t v = N; v-- > 0;) {
            e[v] = static_cast<std::uint32_t>(key & mask);
            key >>= pack_bits;
        }
        return e;
    }

    static Polynomial multiply(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.terms_.size() == 1 || b.terms_.size() == 1) {
            const Polynomial& mono = a.terms_.size() == 1 ? a : b;
            const Polynomial& other = a.terms_.size() == 1 ? b : a;
            return other.times_monomial(mono.terms_[0].exponent).scaled(mono.terms_[0].coeff);
        }
        if (!packable(a, b)) {
            std::vector<Term> all;
            all.reserve(a.size() * b.size());
            for (const auto& x : a.terms_)
                for (const auto& y : b.terms_) {
                    Term t;
                    for (std::size_t v = 0; v < N; ++v) t.exponent[v] = x.exponent[v] + y.exponent[v];
                    t.coeff = x.coeff * y.coeff;
                    all.push_back(std::move(t));
                }
            return from_terms(std::move(all));
        }
        // Lex order on exponents equals numeric order on the packed keys.
        std::unordered_map<std::uint64_t, C> acc;
        acc.reserve(a.size() * b.size() / 2 + 16);
        std::vector<std::uint64_t> bkeys(b.size());
        for (std::size_t j = 0; j < b.size(); ++j) bkeys[j] = pack(b.terms_[j].exponent);
        for (const auto& x : a.terms_) {
            const std::uint64_t ka = pack(x.exponent);
            for (std::size_t j = 0; j < b.size(); ++j) coeff::add_product(acc[ka + bkeys[j]], x.coeff, b.terms_[j].coeff);
        }
        std::vector<std::pair<std::uint64_t, C>> flat;
        flat.reserve(acc.size());
        for (auto& [k, c] : acc)
            if (!coeff::is_zero(c)) flat.emplace_back(k, std::move(c));
        std::sort(flat.begin(), flat.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
        Polynomial out;
        out.terms_.reserve(flat.size());
        for (auto& [k, c] : flat) out.terms_.push_back({unpack(k), std::move(c)});
        return out;
    }

    std::optional<Polynomial> divide_general(const Polynomial& divisor) const {
        // Remainder kept as a map ordered descending; every step cancels the
        // current leading term against the divisor's leading term.
        struct Desc {
            bool operator()(const Exponent& x, const Exponent& y) const { return y < x; }
        };
        std::map<Exponent, C, Desc> rem;
        for (const auto& t : terms_) rem.emplace(t.exponent, t.coeff);
        const Term& lt = divisor.terms_.back();
        Exponent bound;
        for (std::size_t i = 0; i < N; ++i) bound[i] = degree(i) - divisor.degree(i);
        std::vector<Term> quotient;
        while (!rem.empty()) {
            auto it = rem.begin();
            Term q;
            for (std::size_t i = 0; i < N; ++i) {
                if (it->first[i] < lt.exponent[i]) return std::nullopt;
                q.exponent[i] = it->first[i] - lt.exponent[i];
                if (q.exponent[i] > bound[i]) return std::nullopt;
            }
            if (!coeff::divide(it->second, lt.coeff, q.coeff)) return std::nullopt;
            rem.erase(it);
            for (std::size_t k = 0; k + 1 < divisor.terms_.size(); ++k) {
                const Term& d = divisor.terms_[k];
                Exponent e;
                for (std::size_t i = 0; i < N; ++i) e[i] = d.exponent[i] + q.exponent[i];
                auto [pos, inserted] = rem.try_emplace(e, C(0));
                pos->second -= q.coeff * d.coeff;
                if (coeff::is_zero(pos->second)) rem.erase(pos);
            }
            quotient.push_back(std::move(q));
        }
        std::reverse(quotient.begin(), quotient.end());
        Polynomial out;
        out.terms_ = std::move(quotient);
        return out;
    }

    std::vector<Term> terms_;
};

}  // namespace kummer

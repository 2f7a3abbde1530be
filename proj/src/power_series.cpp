#include "kummer/power_series.hpp"

#include <stdexcept>
#include <tuple>

namespace kummer {

std::uint32_t total_degree(const Exponent3& e) { return e[0] + e[1] + e[2]; }

TruncatedSeries TruncatedSeries::from_poly(const MultiPoly& poly, std::uint32_t cap) {
    TruncatedSeries s(cap);
    for (const auto& t : poly.terms()) s.add_term(t.exponent, t.coeff);
    return s;
}

BigRational TruncatedSeries::coefficient(const Exponent3& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? BigRational(0) : it->second;
}

void TruncatedSeries::add_term(const Exponent3& e, const BigRational& c) {
    if (total_degree(e) > cap_ || c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

std::optional<std::uint32_t> TruncatedSeries::lowest_degree() const {
    std::optional<std::uint32_t> low;
    for (const auto& [e, c] : terms_) {
        const std::uint32_t d = total_degree(e);
        if (!low || d < *low) low = d;
    }
    return low;
}

bool TruncatedSeries::vanishes_through(std::uint32_t degree) const {
    auto low = lowest_degree();
    return !low || *low > degree;
}

MultiPoly TruncatedSeries::to_poly() const {
    std::vector<MultiPoly::Term> terms;
    terms.reserve(terms_.size());
    for (const auto& [e, c] : terms_) terms.push_back({e, c});
    return MultiPoly::from_terms(std::move(terms));
}

TruncatedSeries TruncatedSeries::truncated(std::uint32_t cap) const {
    TruncatedSeries out(cap);
    for (const auto& [e, c] : terms_)
        if (total_degree(e) <= cap) out.terms_.emplace(e, c);
    return out;
}

TruncatedSeries TruncatedSeries::scaled(const BigRational& c) const {
    TruncatedSeries out(cap_);
    if (c.is_zero()) return out;
    for (const auto& [e, v] : terms_) out.terms_.emplace(e, v * c);
    return out;
}

TruncatedSeries TruncatedSeries::times_monomial(const Exponent3& shift, const BigRational& c) const {
    TruncatedSeries out(cap_);
    if (c.is_zero()) return out;
    for (const auto& [e, v] : terms_) {
        const Exponent3 f{e[0] + shift[0], e[1] + shift[1], e[2] + shift[2]};
        if (total_degree(f) <= cap_) out.terms_.emplace(f, v * c);
    }
    return out;
}

namespace {

void require_same_cap(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.cap() != b.cap())
        throw std::invalid_argument("TruncatedSeries: degree cap mismatch (" + std::to_string(a.cap()) + " vs " +
                                    std::to_string(b.cap()) + ")");
}

}  // namespace

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_cap(a, b);
    TruncatedSeries out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_cap(a, b);
    TruncatedSeries out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
    return out;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_cap(a, b);
    TruncatedSeries out(a.cap_);
    for (const auto& [ea, ca] : a.terms_) {
        const std::uint32_t da = total_degree(ea);
        for (const auto& [eb, cb] : b.terms_) {
            if (da + total_degree(eb) > a.cap_) continue;
            out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
        }
    }
    return out;
}

BigRational period_coefficient(const Exponent3& index) {
    const auto [l, m, n] = index;
    const std::uint32_t s = l + 2 * m + 3 * n;
    const BigRational f2s = factorial(2 * s), fs = factorial(s);
    BigRational value = f2s * f2s / (fs * fs * fs);
    value /= factorial(l) * factorial(m) * factorial(n) * factorial(m + 2 * n);
    value /= BigRational(Integer(Integer(1) << (4 * s)));
    return value;
}

TruncatedSeries period_series(std::uint32_t cap) {
    TruncatedSeries s(cap);
    for (const auto& e : indices_up_to(cap)) s.add_term(e, period_coefficient(e));
    return s;
}

BigRational residue_oracle(const Exponent3& index) {
    const auto [l, m, n] = index;
    const int max_n = static_cast<int>(l + 2 * m + 3 * n);
    // Laurent states: exponents of (p, q, r, t) -> integer multiplicity.
    using State = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, int>;
    BigRational total(0);
    BigRational weight(1);  // ((1/2)_N / N!)^2, updated incrementally
    for (int big_n = 0; big_n <= max_n; ++big_n) {
        if (big_n > 0) {
            const BigRational step = BigRational(2 * big_n - 1, 2 * big_n);
            weight *= step * step;
        }
        std::map<State, Integer> states{{{0U, 0U, 0U, 0}, Integer(1)}};
        for (int factor = 0; factor < big_n; ++factor) {
            const int remaining = big_n - factor - 1;
            std::map<State, Integer> next;
            for (const auto& [st, mult] : states) {
                const auto [a, b, c, e] = st;
                const std::array<State, 4> moves{State{a, b, c, e + 1}, State{a + 1, b, c, e},
                                                 State{a, b + 1, c, e - 1}, State{a, b, c + 1, e - 2}};
                for (const auto& mv : moves) {
                    const auto [na, nb, nc, ne] = mv;
                    if (na > l || nb > m || nc > n) continue;
                    // t-exponent must still be able to return to zero.
                    if (ne + remaining < 0 || ne - 2 * remaining > 0) continue;
                    next[mv] += mult;
                }
            }
            states = std::move(next);
        }
        auto it = states.find(State{l, m, n, 0});
        if (it != states.end()) total += weight * BigRational(it->second);
    }
    return total;
}

SeriesValue evaluate_series(const TruncatedSeries& s, const std::array<std::complex<double>, 3>& point) {
    std::vector<std::complex<double>> layers(s.cap() + 1, 0.0);
    std::vector<double> magnitudes(s.cap() + 1, 0.0);
    for (const auto& [e, c] : s.terms()) {
        std::complex<double> term = c.to_double();
        for (std::size_t v = 0; v < 3; ++v)
            for (std::uint32_t k = 0; k < e[v]; ++k) term *= point[v];
        const std::uint32_t d = total_degree(e);
        layers[d] += term;
        magnitudes[d] += std::abs(term);
    }
    SeriesValue out;
    out.value = 0.0;
    for (std::size_t d = layers.size(); d-- > 0;) out.value += layers[d];
    out.tail = s.cap() == 0 ? 0.0 : magnitudes.back();
    return out;
}

std::vector<Exponent3> indices_up_to(std::uint32_t cap) {
    std::vector<Exponent3> out;
    for (std::uint32_t a = 0; a <= cap; ++a)
        for (std::uint32_t b = 0; a + b <= cap; ++b)
            for (std::uint32_t c = 0; a + b + c <= cap; ++c) out.push_back({a, b, c});
    return out;
}

}  // namespace kummer

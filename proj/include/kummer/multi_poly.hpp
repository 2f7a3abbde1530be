#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <string_view>

#include "kummer/big_rational.hpp"
#include "kummer/polynomial.hpp"

namespace kummer {

/// Variables of the parameter space. The index is the exponent slot.
enum class Var : std::size_t { p = 0, q = 1, r = 2 };

constexpr std::size_t index(Var v) { return static_cast<std::size_t>(v); }

using MultiPoly = Polynomial<BigRational, 3>;
using IntPoly = Polynomial<Integer, 3>;
using Exponent3 = MultiPoly::Exponent;

inline MultiPoly var_poly(Var v, std::uint32_t power = 1) { return MultiPoly::variable(index(v), power); }

/// Text form `c * p^a q^b r^c` joined by " + ", lex ascending. The constant
/// term is written as the bare coefficient. Zero is "0".
std::string to_string(const MultiPoly& poly);
MultiPoly parse_poly(std::string_view text);

/// Same encoding with caller-supplied variable names; used for polynomials in
/// auxiliary variables (series indices, discriminant variables).
template <std::size_t N>
std::string to_string(const Polynomial<BigRational, N>& poly, const std::array<std::string_view, N>& names);
template <std::size_t N>
Polynomial<BigRational, N> parse_poly(std::string_view text, const std::array<std::string_view, N>& names);

/// Writes `poly = scale * prim` with `prim` an integer polynomial of content
/// one and positive lex-leading coefficient.
struct PrimitiveSplit {
    BigRational scale;
    IntPoly primitive;
};
PrimitiveSplit primitive_split(const MultiPoly& poly);
MultiPoly to_multi(const IntPoly& poly);

Integer content(const IntPoly& poly);
IntPoly primitive_part(const IntPoly& poly);

/// Greatest common divisor normalized to integer content one and positive
/// lex-leading coefficient. Both-zero input throws std::invalid_argument.
IntPoly gcd(const IntPoly& a, const IntPoly& b);
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

/// Reference gcd by recursive primitive pseudo-remainder sequences. Slower
/// than `gcd`; kept as its fallback and as a cross-check.
IntPoly gcd_prs(const IntPoly& a, const IntPoly& b);

std::complex<double> evaluate(const MultiPoly& poly, const std::array<std::complex<double>, 3>& point);

}  // namespace kummer

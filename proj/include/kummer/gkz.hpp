#pragma once

#include <array>
#include <optional>
#include <vector>

#include "kummer/operator_algebra.hpp"

namespace kummer {

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

/// GKZ data (A, γ): A is k×n with integer entries, γ a k-vector.
struct GkzData {
    IntMatrix a;
    std::vector<BigRational> gamma;

    std::size_t rows() const { return a.size(); }
    std::size_t cols() const { return a.empty() ? 0 : a.front().size(); }
};

/// A_K and γ_K for the Kummer family.
GkzData kummer_gkz();

/// The four kernel vectors whose box operators give the reduced system.
std::vector<IntVector> kummer_kernel_vectors();

IntVector multiply(const IntMatrix& a, const IntVector& b);
std::size_t rank(const IntMatrix& a);

/// Integer basis of ker(A) ∩ Z^n from unimodular row reduction of [A^T | I].
/// Throws std::invalid_argument when A does not have full row rank.
std::vector<IntVector> kernel_basis(const IntMatrix& a);

/// Integer coordinates of `v` in the lattice spanned by `basis`, or nullopt
/// when `v` is not an integer combination.
std::optional<IntVector> lattice_coordinates(const std::vector<IntVector>& basis, const IntVector& v);

/// How the c-variables map to (p,q,r): c-exponent vectors of p, q, r and
/// every θ_j (j = 1..n) as an affine expression in θp, θq, θr.
struct SubstitutionTable {
    std::array<IntVector, 3> pqr_in_c;
    std::vector<ThetaOperator> theta_of;
};

/// The table for A_K: θ5,θ6,θ7 -> θp,θq,θr and the Euler eliminations of
/// θ1..θ4, entered as data.
SubstitutionTable kummer_substitution();

/// Solves the Euler relations Σ_j A_ij θ_j = γ_i for the θ_j not in the
/// image of (p,q,r). Independent of the hand-entered table.
std::vector<ThetaOperator> solve_euler_relations(const GkzData& gkz, const SubstitutionTable& table);

/// Residues Σ_j A_ij θ_j − γ_i after substitution; all zero on success.
std::vector<ThetaOperator> euler_residues(const GkzData& gkz, const SubstitutionTable& table);
bool verify_euler_elimination(const GkzData& gkz, const SubstitutionTable& table);

/// Box operator of b after clearing with c^{b+}: both sides as products of
/// falling factorials in θ_1..θ_n (θ_j written as the j-th generator of a
/// formal commutative ring, exponents indexed by j).
struct BoxOperator {
    IntVector b;
    /// Falling-factorial orders [θ_j]_{b_j^+} on the left and [θ_j]_{b_j^-}
    /// on the right: u is annihilated by Π[θ_j]_{plus_j} − c^b Π[θ_j]_{minus_j}.
    std::vector<std::uint32_t> plus, minus;
};
BoxOperator box_operator(const IntVector& b);

/// (p,q,r)-exponents of the c-monomial c^b. Throws std::invalid_argument when
/// c^b is not a Laurent monomial in p, q, r.
std::array<long, 3> monomial_in_pqr(const IntVector& b, const SubstitutionTable& table);

/// [θ]_k = θ(θ−1)…(θ−k+1) for an operator θ with constant coefficients.
ThetaOperator falling_factorial(const ThetaOperator& theta, std::uint32_t k);

/// Three-variable annihilator obtained from b, with negative powers of p, q, r
/// cleared by left multiplication.
ThetaOperator reduce_to_pqr(const IntVector& b, const SubstitutionTable& table);

}  // namespace kummer

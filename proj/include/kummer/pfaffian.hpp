#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kummer/operator_algebra.hpp"
#include "kummer/rat_func.hpp"

namespace kummer {

using RatMatrix = std::vector<std::vector<RatFunc>>;

enum class BasisChoice { theta_p2, theta_q2 };

/// {1, θp, θq, θr, θp²} or {1, θp, θq, θr, θq²}.
std::vector<Exponent3> rank5_basis(BasisChoice choice = BasisChoice::theta_p2);
/// {1, θp, θq, θr, θp², θq²}.
std::vector<Exponent3> rank6_basis();

/// Order-2 θ-monomials outside the basis, each written as a Q(p,q,r)-linear
/// combination of the basis.
struct RewriteTable {
    std::vector<Exponent3> basis;
    std::map<Exponent3, std::vector<RatFunc>> rules;
};

/// Solves the order-2 relations for the non-basis order-2 monomials. Throws
/// std::runtime_error when some monomial is not determined.
RewriteTable build_rewrite_table(const std::vector<ThetaOperator>& relations, const std::vector<Exponent3>& basis);

/// Coordinates of an operator of order <= 2 modulo the table.
std::vector<RatFunc> reduce_order2(const RewriteTable& table, const ThetaOperator& op);

/// dφ = (Mp dp + Mq dq + Mr dr) φ with φ_j = basis_j u, so row j of M_x
/// holds ∂/∂x of basis_j u in the basis.
struct PfaffianSystem {
    std::vector<Exponent3> basis;
    std::array<RatMatrix, 3> m;

    const RatMatrix& matrix(Var v) const { return m[index(v)]; }
    /// x·M_x: row j expresses θ_x(basis_j u).
    RatMatrix theta_matrix(Var v) const;
    static PfaffianSystem from_theta_matrices(std::vector<Exponent3> basis, std::array<RatMatrix, 3> theta);
};

enum class Closure { closed, underdetermined, inconsistent };
std::string to_string(Closure c);

struct Derivation {
    Closure status = Closure::closed;
    std::optional<PfaffianSystem> system;
    /// θ-monomials needed by the action that the relations leave free.
    std::vector<Exponent3> undetermined;
    /// Relations that reduce to a nontrivial dependency among basis elements.
    std::size_t basis_relations = 0;
};

/// Order-2 table from `relations`, then order-3 relations θ_x∘R solved for
/// every order-3 monomial θ_x·basis_j outside the basis. Exact throughout.
Derivation derive_pfaffian(const std::vector<ThetaOperator>& relations, const std::vector<Exponent3>& basis);

struct IntegrabilityWitness {
    /// Nonzero entries of ∂_x M_y − ∂_y M_x − [M_x, M_y] for (p,q), (q,r), (p,r).
    std::array<std::size_t, 3> nonzero{};
    std::size_t residual() const;
    bool holds() const { return residual() == 0; }
};
IntegrabilityWitness check_integrability(const PfaffianSystem& system, unsigned threads = 1);

struct SingularReport {
    std::vector<std::string> occurring;
    /// Non-constant cofactors left after removing every candidate factor.
    std::vector<MultiPoly> unexpected;
    bool contains(const std::string& name) const;
};
/// Trial-divides every denominator by p, q, r, d1, d2, d3. In strict mode a
/// non-constant cofactor throws std::runtime_error.
SingularReport singular_factors(const PfaffianSystem& system, bool strict = true);

/// Published reference matrices, in θ-rows: row j of the fixture matrix for x
/// expresses θ_x(basis_j u).
struct ReferenceFixture {
    std::vector<Exponent3> basis;
    std::array<RatMatrix, 3> theta;
    MultiPoly d1, d2, d3;
};
ReferenceFixture load_fixture(const std::string& path);

struct EntryDiff {
    Var x;
    std::size_t row, col;
    RatFunc derived, fixture;
};
struct FixtureReport {
    std::string map;
    std::size_t compared = 0;
    std::vector<EntryDiff> mismatches;
};
FixtureReport compare_fixture(const PfaffianSystem& system, const ReferenceFixture& fixture);

/// Multiplies each row's θ_x-identity by the row's common denominator and
/// compares both sides on period_series(cap). Returns the number of failing
/// (x, row) pairs.
std::size_t series_consistency_failures(const PfaffianSystem& system, std::uint32_t cap);

std::string to_json(const PfaffianSystem& system);
PfaffianSystem pfaffian_from_json(const std::string& text);
std::string basis_label(const Exponent3& e);

}  // namespace kummer

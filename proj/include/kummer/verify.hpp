#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kummer/pfaffian.hpp"

namespace kummer {

struct VerifyConfig {
    std::uint32_t oracle_degree = 8;
    std::size_t identity_samples = 100;
    std::uint32_t annihilation_cap = 12;
    /// Degree through which annihilation must hold for full coverage.
    std::uint32_t annihilation_target = 9;
    bool include_extra_operator = true;
    std::uint64_t seed = 20240611;
    std::uint32_t transport_cap = 16;
    double transport_tol = 1e-10;
    unsigned threads = 1;
    std::string fixture_path;
    /// When set, the fixture diff report is written here.
    std::string artifact_dir;
};

enum class CheckStatus { pass, fail, reported };
std::string to_string(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string detail;
    double seconds = 0.0;
    std::vector<std::string> artifacts;
    bool hard() const { return status == CheckStatus::fail; }
};

/// Shared state for one verification run: the relation list and the
/// Pfaffian systems derived from it, each computed once.
class VerifyContext {
public:
    explicit VerifyContext(VerifyConfig config);

    const VerifyConfig& config() const { return config_; }
    const std::vector<ThetaOperator>& relations() const { return relations_; }
    const std::vector<ThetaOperator>& gkz_relations() const { return gkz_; }
    const Derivation& rank5();
    const Derivation& rank5_alternate();
    const Derivation& rank6();

private:
    VerifyConfig config_;
    std::vector<ThetaOperator> relations_, gkz_;
    std::optional<Derivation> rank5_, alternate_, rank6_;
};

CheckResult check_series_oracle(VerifyContext& ctx);
CheckResult check_coefficient_identity(VerifyContext& ctx);
CheckResult check_annihilation(VerifyContext& ctx);
CheckResult check_gkz_reduction(VerifyContext& ctx);
CheckResult check_rank6_pfaffian(VerifyContext& ctx);
CheckResult check_rank5_pfaffian(VerifyContext& ctx);
CheckResult check_rank5_needs_extra_operator(VerifyContext& ctx);
CheckResult check_integrability_rank5(VerifyContext& ctx);
CheckResult check_singular_loci(VerifyContext& ctx);
CheckResult check_fixture(VerifyContext& ctx);
CheckResult check_discriminants(VerifyContext& ctx);
CheckResult check_homogeneity(VerifyContext& ctx);
CheckResult check_transport(VerifyContext& ctx);

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool ok() const;
    std::string to_json() const;
};

/// Runs every check in the documented order.
VerificationReport verify_all(const VerifyConfig& config);

/// Coefficient of p^e0 q^e1 r^e2 in op(u) for u = Σ period_coefficient(k) x^k.
BigRational image_coefficient(const ThetaOperator& op, const Exponent3& e);

}  // namespace kummer

// One line per acceptance criterion; exit status 1 if any line is FAIL.
#include <cstdio>
#include <string>
#include <vector>

#include "kummer/verify.hpp"

using namespace kummer;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::vector<CheckResult (*)(VerifyContext&)> checks;
};

}  // namespace

int main() {
    VerifyConfig config;
    config.artifact_dir = "acceptance_artifacts";
    VerifyContext ctx(config);

    const std::vector<Criterion> criteria = {
        {1, "series/oracle equivalence (165 triples, exact)", {check_series_oracle}},
        {2, "coefficient identity (symbolic zero + 100 seeded triples)", {check_coefficient_identity}},
        {3, "annihilation of period_series(12) through degree 9", {check_annihilation}},
        {4, "GKZ reduction to the four (p,q,r) operators", {check_gkz_reduction}},
        {5, "rank-6 and rank-5 closure, extra operator required",
         {check_rank6_pfaffian, check_rank5_pfaffian, check_rank5_needs_extra_operator}},
        {6, "rank-5 integrability, zero residual", {check_integrability_rank5}},
        {7, "singular factors of both rank-5 bases", {check_singular_loci}},
        {8, "discriminant identities", {check_discriminants}},
        {9, "fixture comparison, rows 1-4 exact", {check_fixture}},
        {10, "weighted homogeneity of the t-map", {check_homogeneity}},
        {11, "transport consistency (1e-8, 1e2*tol, 1e-6)", {check_transport}},
    };

    bool all = true;
    for (const auto& c : criteria) {
        bool ok = true;
        double seconds = 0.0;
        std::string detail;
        for (auto* check : c.checks) {
            const CheckResult r = check(ctx);
            // Reduced coverage counts as a failure at acceptance caps.
            ok = ok && r.status == CheckStatus::pass;
            seconds += r.seconds;
            detail += (detail.empty() ? "" : " | ") + r.detail;
        }
        all = all && ok;
        std::printf("[%s] %2d %s (%.2fs): %s\n", ok ? "PASS" : "FAIL", c.number, c.title.c_str(), seconds,
                    detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return all ? 0 : 1;
}

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kummer/geometry.hpp"
#include "kummer/gkz.hpp"
#include "kummer/transport.hpp"
#include "kummer/verify.hpp"

using namespace kummer;
using nlohmann::json;

namespace {

struct Globals {
    bool json = false;
    std::uint64_t seed = VerifyConfig{}.seed;
    unsigned threads = 1;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

json exponent_json(const Exponent3& e) { return json::array({e[0], e[1], e[2]}); }

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Point point_from(const json& j) { return {complex_from(j.at(0)), complex_from(j.at(1)), complex_from(j.at(2))}; }

Var var_from(const std::string& s) {
    if (s == "p") return Var::p;
    if (s == "q") return Var::q;
    if (s == "r") return Var::r;
    throw std::invalid_argument("coordinate must be p, q or r: " + s);
}

// {"segments": [{"kind": "line", "from": P, "to": P} |
//               {"kind": "circle", "center": P, "coordinate": "r", "radius": x, "turns": n}]}
// with P = [p, q, r] and each entry a number or [re, im].
Path path_from(const json& j) {
    Path path;
    for (const auto& s : j.at("segments")) {
        const std::string kind = s.value("kind", "line");
        if (kind == "line")
            path.segments.push_back(Segment::line(point_from(s.at("from")), point_from(s.at("to"))));
        else if (kind == "circle")
            path.segments.push_back(Segment::circle(point_from(s.at("center")), var_from(s.value("coordinate", "r")),
                                                    s.at("radius").get<double>(), s.value("turns", 1.0)));
        else
            throw std::invalid_argument("unknown segment kind " + kind);
    }
    path.check_continuity();
    return path;
}

json matrix_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_json(m(i, k)));
        rows.push_back(row);
    }
    return rows;
}

std::vector<Exponent3> basis_from(const std::string& name) {
    if (name == "p2") return rank5_basis(BasisChoice::theta_p2);
    if (name == "q2") return rank5_basis(BasisChoice::theta_q2);
    if (name == "rank6") return rank6_basis();
    throw std::invalid_argument("basis must be p2, q2 or rank6");
}

std::vector<ThetaOperator> relations_for(const std::string& basis) {
    auto relations = build_canonical_system();
    if (basis == "rank6") relations.pop_back();
    return relations;
}

PfaffianSystem derive_or_throw(const std::string& basis) {
    Derivation d = derive_pfaffian(relations_for(basis), basis_from(basis));
    if (!d.system) throw std::runtime_error("basis " + basis + " does not close: " + to_string(d.status));
    return *d.system;
}

PfaffianSystem load_or_derive(const std::string& in, const std::string& basis) {
    return in.empty() ? derive_or_throw(basis) : pfaffian_from_json(read_file(in));
}

void emit(const Globals& g, const json& j, const std::string& text) {
    if (g.json)
        std::cout << j.dump(1) << "\n";
    else
        std::cout << text;
}

std::array<BigRational, 3> rationals3(const std::vector<std::string>& xs) {
    if (xs.size() != 3) throw std::invalid_argument("expected three rationals");
    return {BigRational::parse(xs[0]), BigRational::parse(xs[1]), BigRational::parse(xs[2])};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Period integrals of the Kummer surface family: series, operators, Pfaffian systems, transport"};
    app.require_subcommand(1);
    Globals g;
    app.add_flag("--json", g.json, "Machine-readable output");
    app.add_option("--seed", g.seed, "Seed for randomized checks");
    app.add_option("--threads", g.threads, "Worker threads for integrability checks")->check(CLI::PositiveNumber);

    int exit_code = 0;

    // series
    auto* series = app.add_subcommand("series", "Coefficients of the normalized period series");
    std::uint32_t series_cap = 4;
    bool with_oracle = false;
    series->add_option("--cap", series_cap, "Total degree cap");
    series->add_flag("--oracle", with_oracle, "Compare every coefficient with the residue oracle");
    series->callback([&] {
        json terms = json::array();
        std::ostringstream text;
        std::size_t mismatches = 0;
        for (const auto& e : indices_up_to(series_cap)) {
            const BigRational c = period_coefficient(e);
            json t{{"exponent", exponent_json(e)}, {"coefficient", c.to_string()}};
            if (with_oracle) {
                const bool same = residue_oracle(e) == c;
                mismatches += same ? 0 : 1;
                t["oracle_agrees"] = same;
            }
            terms.push_back(t);
            text << e[0] << " " << e[1] << " " << e[2] << "  " << c.to_string() << "\n";
        }
        if (with_oracle) text << "oracle mismatches: " << mismatches << "\n";
        emit(g, json{{"cap", series_cap}, {"terms", terms}, {"oracle_mismatches", mismatches}}, text.str());
        if (mismatches) exit_code = 1;
    });

    // annihilate
    auto* annihilate = app.add_subcommand("annihilate", "Apply the five operators to the truncated period series");
    std::uint32_t ann_cap = 12;
    annihilate->add_option("--cap", ann_cap, "Series cap");
    annihilate->callback([&] {
        const TruncatedSeries u = period_series(ann_cap);
        json ops = json::array();
        std::ostringstream text;
        for (const auto& op : build_canonical_system()) {
            const std::uint32_t margin = std::max(op.coefficient_degree(), kDegreeSafetyMargin);
            const std::uint32_t through = ann_cap >= margin ? ann_cap - margin : 0;
            const TruncatedSeries image = apply(op, u);
            const bool ok = image.vanishes_through(through);
            const auto low = image.lowest_degree();
            ops.push_back({{"operator", op.to_string()}, {"checked_through", through}, {"vanishes", ok},
                           {"lowest_nonzero_degree", low ? json(*low) : json(nullptr)}});
            text << (ok ? "ok   " : "FAIL ") << "through degree " << through << ": " << op.to_string() << "\n";
            if (!ok) exit_code = 1;
        }
        emit(g, json{{"cap", ann_cap}, {"operators", ops}}, text.str());
    });

    // gkz
    auto* gkz_cmd = app.add_subcommand("gkz", "Kernel lattice and reduction of the box operators to (p,q,r)");
    gkz_cmd->callback([&] {
        const GkzData data = kummer_gkz();
        const SubstitutionTable table = kummer_substitution();
        const auto canonical = build_canonical_system();
        const auto basis = kernel_basis(data.a);
        auto vec_json = [](const IntVector& v) {
            json a = json::array();
            for (const auto& x : v) a.push_back(x.get_str());
            return a;
        };
        json kernel = json::array(), reduced = json::array();
        std::ostringstream text;
        for (const auto& v : basis) kernel.push_back(vec_json(v));
        const auto vectors = kummer_kernel_vectors();
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            const ThetaOperator op = reduce_to_pqr(vectors[i], table);
            const bool same = op == canonical[i];
            const bool in_lattice = lattice_coordinates(basis, vectors[i]).has_value();
            if (!same || !in_lattice) exit_code = 1;
            reduced.push_back({{"vector", vec_json(vectors[i])}, {"operator", op.to_string()},
                               {"matches_canonical", same}, {"in_lattice", in_lattice}});
            text << "b" << i + 1 << ": " << (same ? "matches" : "DIFFERS") << (in_lattice ? "" : " (not in lattice)")
                 << "\n  " << op.to_string() << "\n";
        }
        const bool euler = verify_euler_elimination(data, table);
        if (!euler) exit_code = 1;
        text << "kernel rank " << basis.size() << ", Euler elimination " << (euler ? "consistent" : "INCONSISTENT")
             << "\n";
        emit(g, json{{"kernel_basis", kernel}, {"reduced", reduced}, {"euler_consistent", euler}}, text.str());
    });

    // pfaffian
    auto* pf = app.add_subcommand("pfaffian", "Derive and check Pfaffian systems");
    pf->require_subcommand(1);
    std::string pf_basis = "p2", pf_out, pf_in, pf_fixture = KUMMER_FIXTURE_PATH;
    std::uint32_t pf_cap = 10;

    auto* derive = pf->add_subcommand("derive", "Derive the Pfaffian matrices in a basis");
    derive->add_option("--basis", pf_basis, "p2, q2 or rank6 (GKZ operators only)")
        ->check(CLI::IsMember({"p2", "q2", "rank6"}));
    derive->add_option("--out", pf_out, "Write the system as JSON");
    derive->callback([&] {
        const Derivation d = derive_pfaffian(relations_for(pf_basis), basis_from(pf_basis));
        json undetermined = json::array();
        for (const auto& e : d.undetermined) undetermined.push_back(basis_label(e));
        json out{{"basis", pf_basis}, {"status", to_string(d.status)}, {"undetermined", undetermined}};
        std::ostringstream text;
        text << "basis " << pf_basis << ": " << to_string(d.status) << "\n";
        if (!d.system) {
            exit_code = 1;
        } else if (!pf_out.empty()) {
            std::ofstream(pf_out) << to_json(*d.system) << "\n";
            out["written"] = pf_out;
            text << "written to " << pf_out << "\n";
        } else if (!g.json) {
            text << to_json(*d.system) << "\n";
        } else {
            out["system"] = json::parse(to_json(*d.system));
        }
        emit(g, out, text.str());
    });

    auto* check = pf->add_subcommand("check", "Integrability and series consistency");
    check->add_option("--in", pf_in, "System JSON (default: derive in --basis)");
    check->add_option("--basis", pf_basis, "p2, q2 or rank6")->check(CLI::IsMember({"p2", "q2", "rank6"}));
    check->add_option("--cap", pf_cap, "Series cap for the consistency check");
    check->callback([&] {
        const PfaffianSystem s = load_or_derive(pf_in, pf_basis);
        const IntegrabilityWitness w = check_integrability(s, g.threads);
        const std::size_t series_bad = series_consistency_failures(s, pf_cap);
        if (!w.holds() || series_bad) exit_code = 1;
        std::ostringstream text;
        text << "integrability residual " << w.residual() << " (pq " << w.nonzero[0] << ", qr " << w.nonzero[1]
             << ", pr " << w.nonzero[2] << ")\nseries consistency failures " << series_bad << "\n";
        emit(g, json{{"integrability_nonzero", w.nonzero}, {"series_failures", series_bad}}, text.str());
    });

    auto* compare = pf->add_subcommand("compare", "Compare with the transcribed fixture");
    compare->add_option("--in", pf_in, "System JSON (default: derive in the θp² basis)");
    compare->add_option("--fixture", pf_fixture, "Fixture JSON");
    compare->callback([&] {
        const PfaffianSystem s = load_or_derive(pf_in, "p2");
        const FixtureReport r = compare_fixture(s, load_fixture(pf_fixture));
        json diffs = json::array();
        std::ostringstream text;
        text << r.compared << " entries compared (" << r.map << "), " << r.mismatches.size() << " mismatches\n";
        for (const auto& m : r.mismatches) {
            const char* x = m.x == Var::p ? "p" : m.x == Var::q ? "q" : "r";
            diffs.push_back({{"matrix", x}, {"row", m.row + 1}, {"col", m.col + 1},
                             {"derived", m.derived.to_string()}, {"fixture", m.fixture.to_string()}});
            text << "M" << x << "[" << m.row + 1 << "," << m.col + 1 << "]: derived " << m.derived.to_string()
                 << " fixture " << m.fixture.to_string() << "\n";
            if (m.row < 4) exit_code = 1;
        }
        emit(g, json{{"map", r.map}, {"compared", r.compared}, {"mismatches", diffs}}, text.str());
    });

    auto* singular = pf->add_subcommand("singular", "Factor the denominators over p, q, r, d1, d2, d3");
    singular->add_option("--in", pf_in, "System JSON (default: derive in --basis)");
    singular->add_option("--basis", pf_basis, "p2, q2 or rank6")->check(CLI::IsMember({"p2", "q2", "rank6"}));
    singular->callback([&] {
        const SingularReport r = singular_factors(load_or_derive(pf_in, pf_basis), false);
        json unexpected = json::array();
        std::ostringstream text;
        text << "factors:";
        for (const auto& n : r.occurring) text << " " << n;
        text << "\n";
        for (const auto& u : r.unexpected) {
            unexpected.push_back(to_string(u));
            text << "other factor: " << to_string(u) << "\n";
        }
        emit(g, json{{"occurring", r.occurring}, {"unexpected", unexpected}}, text.str());
    });

    // params
    auto* params = app.add_subcommand("params", "Parameter maps and divisors");
    params->require_subcommand(1);
    std::vector<std::string> values;
    double floor = 1e-12;

    auto* lambda = params->add_subcommand("lambda", "(λ1,λ2,λ3) -> (p,q,r), exact");
    lambda->add_option("values", values, "λ1 λ2 λ3 as rationals")->expected(3)->required();
    lambda->callback([&] {
        const auto pqr = lambda_to_pqr(rationals3(values));
        emit(g, json{{"p", pqr[0].to_string()}, {"q", pqr[1].to_string()}, {"r", pqr[2].to_string()}},
             "p = " + pqr[0].to_string() + "\nq = " + pqr[1].to_string() + "\nr = " + pqr[2].to_string() + "\n");
    });

    auto* tmap = params->add_subcommand("tmap", "(p,q,r,b) -> (t4,t6,t10,t12), exact");
    tmap->add_option("values", values, "p q r b as rationals")->expected(4)->required();
    tmap->callback([&] {
        std::array<BigRational, 4> x;
        for (std::size_t i = 0; i < 4; ++i) x[i] = BigRational::parse(values.at(i));
        const auto t = pqrb_to_t(x);
        json j;
        std::ostringstream text;
        for (std::size_t i = 0; i < 4; ++i) {
            const std::string name = "t" + std::to_string(kTWeights[i]);
            j[name] = t[i].to_string();
            text << name << " = " << t[i].to_string() << "\n";
        }
        emit(g, j, text.str());
    });

    auto* divisors = params->add_subcommand("divisors", "Which of p, q, r, d2, d3 vanish at a point");
    bool as_float = false;
    divisors->add_option("values", values, "p q r")->expected(3)->required();
    divisors->add_flag("--float", as_float, "Read the point as doubles and use a scaled floor");
    divisors->add_option("--floor", floor, "Relative floor in float mode");
    divisors->callback([&] {
        DivisorReport r;
        if (as_float)
            r = singular_divisor_membership(
                std::array<Complex, 3>{std::stod(values[0]), std::stod(values[1]), std::stod(values[2])}, floor);
        else
            r = singular_divisor_membership(rationals3(values));
        std::ostringstream text;
        text << "on:";
        for (const auto& n : r.on) text << " " << n;
        text << "\n";
        for (const auto& [n, v] : r.values) text << n << " = " << v << "\n";
        emit(g, json{{"on", r.on}, {"values", r.values}}, text.str());
    });

    // transport
    auto* tr = app.add_subcommand("transport", "Integrate the Pfaffian system along a path");
    std::string path_file, tr_in;
    TransportOptions topts;
    bool want_monodromy = false;
    tr->add_option("--path", path_file, "Path JSON")->required();
    tr->add_option("--in", tr_in, "System JSON (default: derive in the θp² basis)");
    tr->add_option("--tol", topts.tol, "Local error tolerance");
    tr->add_option("--clearance", topts.min_clearance, "Minimum scaled distance to the divisors");
    tr->add_flag("--monodromy", want_monodromy, "Treat the path as a loop and report the monodromy");
    tr->callback([&] {
        const CompiledPfaffian omega(load_or_derive(tr_in, "p2"));
        const Path path = path_from(json::parse(read_file(path_file)));
        std::ostringstream text;
        text.precision(12);
        json j;
        if (want_monodromy) {
            const Monodromy m = monodromy(omega, path, topts);
            json eig = json::array();
            for (const auto& z : m.eigenvalues) eig.push_back(complex_json(z));
            j = {{"matrix", matrix_json(m.matrix)}, {"eigenvalues", eig}, {"det", complex_json(m.det)},
                 {"exp_trace_integral", complex_json(m.liouville)}, {"steps", m.run.step_count},
                 {"rejected", m.run.rejected}, {"condition", m.run.condition}};
            text << "monodromy\n" << m.matrix << "\neigenvalues";
            for (const auto& z : m.eigenvalues) text << " " << z;
            text << "\ndet " << m.det << "  exp(∮tr) " << m.liouville << "\n";
        } else {
            const TransportResult r = fundamental_matrix(omega, path, topts);
            j = {{"matrix", matrix_json(r.state)}, {"steps", r.step_count}, {"rejected", r.rejected},
                 {"condition", r.condition}};
            text << r.state << "\n";
        }
        text << j["steps"] << " steps, " << j["rejected"] << " rejected\n";
        emit(g, j, text.str());
    });

    // verify-all
    auto* verify = app.add_subcommand("verify-all", "Run every reproduction check and report");
    VerifyConfig vc;
    bool no_extra = false;
    std::string report_path;
    verify->add_option("--oracle-degree", vc.oracle_degree, "Degree bound for the oracle comparison");
    verify->add_option("--samples", vc.identity_samples, "Random triples for the coefficient identity");
    verify->add_option("--cap", vc.annihilation_cap, "Series cap for annihilation");
    verify->add_option("--transport-tol", vc.transport_tol, "Transport tolerance");
    verify->add_option("--fixture", vc.fixture_path, "Fixture JSON");
    verify->add_option("--artifacts", vc.artifact_dir, "Directory for diff reports");
    verify->add_option("--report", report_path, "Also write the JSON report here");
    verify->add_flag("--without-extra-operator", no_extra, "Drop the non-GKZ operator from the relations");
    verify->callback([&] {
        vc.seed = g.seed;
        vc.threads = g.threads;
        vc.include_extra_operator = !no_extra;
        const VerificationReport report = verify_all(vc);
        std::ostringstream text;
        for (const auto& c : report.checks) {
            text << "[" << to_string(c.status) << "] " << c.name << " (" << c.seconds << "s): " << c.detail << "\n";
        }
        text << (report.ok() ? "all hard checks pass" : "hard check failures") << "\n";
        if (!report_path.empty()) std::ofstream(report_path) << report.to_json() << "\n";
        if (g.json)
            std::cout << report.to_json() << "\n";
        else
            std::cout << text.str();
        if (!report.ok()) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>

#include "nccf/errors.hpp"
#include "nccf/json_io.hpp"
#include "nccf/selftest.hpp"

namespace {

// Exit codes: 0 ok / not-refuted, 1 parse or schema error, 2 invalid initial
// segment, 3 infeasible, 4 selftest failure.
constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitSegment = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitSelftest = 4;

struct GlobalFlags {
    std::uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 0;
    int restarts = 0;
    int grid = 0;
    double tol = 0.0;
    bool tol_set = false;
    bool verbose = false;
};

std::uint64_t env_seed() {
    const char* s = std::getenv("NCCF_SEED");
    if (!s) return 0;
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        return 0;
    }
}

// Precedence: --seed flag, then the problem file, then NCCF_SEED, then 0.
void apply_flags(nccf::ProblemFile& pf, const GlobalFlags& g) {
    if (g.seed_set)
        pf.config.seed = g.seed;
    else if (!pf.seed_in_file)
        pf.config.seed = env_seed();
    if (g.jobs > 0) pf.config.jobs = g.jobs;
    if (g.restarts > 0) pf.config.restarts = g.restarts;
    if (g.tol_set) pf.config.feas_tol = g.tol;
}

void emit(const nccf::Json& j) { std::cout << j.dump() << "\n"; }

int run_check(const std::string& path, const GlobalFlags& g, bool with_verdict) {
    nccf::ProblemFile pf = nccf::load_problem(path);
    apply_flags(pf, g);
    if (with_verdict) {
        nccf::FeasibilityReport rep =
            nccf::feasibility(pf.polynomial, pf.lambda, pf.domain, pf.bound, pf.config);
        emit(nccf::feasibility_to_json(rep, pf.config.seed));
        if (g.verbose)
            std::cerr << "criterion value " << rep.certificate.value << " against bound "
                      << rep.bound << ": "
                      << (rep.verdict == nccf::Verdict::Infeasible ? "infeasible" : "not refuted")
                      << "\n";
        return rep.verdict == nccf::Verdict::Infeasible ? kExitInfeasible : kExitOk;
    }
    nccf::NormCertificate cert =
        nccf::nilpotent_norm(pf.polynomial, pf.lambda, pf.domain, pf.config);
    emit(nccf::certificate_to_json(cert));
    if (g.verbose)
        std::cerr << "criterion value " << cert.value << " via " << cert.method
                  << " witness of size " << cert.witness.n << "\n";
    return kExitOk;
}

int run_oracle(const std::string& path, const GlobalFlags& g) {
    std::vector<nccf::CMat> c = nccf::load_coeff_list(path);
    double value = nccf::op_norm(nccf::schur_matrix(c));
    emit(nccf::Json(value));
    if (g.verbose) std::cerr << "block Toeplitz of " << c.size() << " coefficients\n";
    return kExitOk;
}

int run_selftest(const GlobalFlags& g, const std::string& level, const std::string& fault) {
    nccf::SelftestOptions opt;
    opt.seed = g.seed_set ? g.seed : env_seed();
    opt.level = level == "full" ? nccf::SelftestLevel::Full : nccf::SelftestLevel::Quick;
    if (g.grid > 0) opt.grid = g.grid;
    opt.inject_fault = fault;

    auto results = nccf::run_selftest(opt);
    int passed = 0, failed = 0;
    std::string first_failure;
    nccf::Json props = nccf::Json::array();
    for (const auto& r : results) {
        (r.ok ? passed : failed)++;
        if (!r.ok && first_failure.empty()) first_failure = r.name;
        props.push_back(nccf::Json{{"name", r.name}, {"ok", r.ok}, {"detail", r.detail}});
        if (g.verbose)
            std::cerr << (r.ok ? "pass " : "FAIL ") << r.name << "  [" << r.seconds << "s]"
                      << (r.detail.empty() ? "" : "  (" + r.detail + ")") << "\n";
    }
    nccf::Json summary{{"level", level},
                       {"seed", opt.seed},
                       {"passed", passed},
                       {"failed", failed},
                       {"first_failure", first_failure.empty() ? nccf::Json(nullptr)
                                                               : nccf::Json(first_failure)},
                       {"properties", props}};
    emit(summary);
    if (failed > 0) {
        std::cerr << "selftest failed at " << first_failure << "\n";
        return kExitSelftest;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feasibility criterion for Caratheodory-Fejer interpolation on nc domains"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags g;
    app.add_option("--seed", g.seed, "base seed for all randomness")
        ->each([&g](const std::string&) { g.seed_set = true; });
    app.add_option("--jobs", g.jobs, "parallel optimizer restarts");
    app.add_option("--restarts", g.restarts, "multistart restarts");
    app.add_option("--grid", g.grid, "contour grid for selftest bound checks");
    app.add_option("--tol", g.tol, "feasibility tolerance")
        ->each([&g](const std::string&) { g.tol_set = true; });
    app.add_flag("--verbose", g.verbose, "human summary on stderr");

    std::string problem_path, coeff_path;
    std::string level = "quick", fault;

    CLI::App* check = app.add_subcommand("check", "feasibility verdict for a problem file");
    check->add_option("problem", problem_path, "problem JSON file")->required();

    CLI::App* norm = app.add_subcommand("norm", "criterion value without the verdict threshold");
    norm->add_option("problem", problem_path, "problem JSON file")->required();

    CLI::App* oracle = app.add_subcommand("oracle", "classical d=1 block Toeplitz norm");
    oracle->add_option("coeffs", coeff_path, "coefficient JSON file")->required();

    CLI::App* selftest = app.add_subcommand("selftest", "run the module invariant suites");
    selftest->add_option("--level", level, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));
    selftest->add_option("--inject-fault", fault, "test-harness corruption hook")->group("");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return run_check(problem_path, g, true);
        if (norm->parsed()) return run_check(problem_path, g, false);
        if (oracle->parsed()) return run_oracle(coeff_path, g);
        if (selftest->parsed()) return run_selftest(g, level, fault);
    } catch (const nccf::NotFactorClosed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSegment;
    } catch (const nccf::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const nccf::UnsupportedSupport& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const nccf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitParse;
}

#include "nccf/json_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "nccf/errors.hpp"

namespace nccf {

namespace {

const Json& require(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing key \"") + key + "\"");
    return *it;
}

Eigen::MatrixXd real_part_from(const Json& rows, const char* what) {
    if (!rows.is_array() || rows.empty() || !rows[0].is_array())
        throw ParseError(std::string(what) + " must be a non-empty array of rows");
    const std::size_t r = rows.size(), c = rows[0].size();
    Eigen::MatrixXd m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (!rows[i].is_array() || rows[i].size() != c)
            throw ParseError(std::string(what) + " rows have inconsistent lengths");
        for (std::size_t k = 0; k < c; ++k) {
            if (!rows[i][k].is_number()) throw ParseError(std::string(what) + " entry not a number");
            m(i, k) = rows[i][k].get<double>();
        }
    }
    return m;
}

}  // namespace

Json matrix_to_json(const CMat& m) {
    Json re = Json::array(), im = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json rrow = Json::array(), irow = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

CMat matrix_from_json(const Json& j) {
    Eigen::MatrixXd re = real_part_from(require(j, "re"), "\"re\"");
    CMat m = re.cast<Complex>();
    if (j.contains("im")) {
        Eigen::MatrixXd im = real_part_from(j["im"], "\"im\"");
        if (im.rows() != re.rows() || im.cols() != re.cols())
            throw ParseError("\"re\" and \"im\" shapes differ");
        m += Complex(0, 1) * im.cast<Complex>();
    }
    return m;
}

Json matpoly_to_json(const MatPoly& f) {
    Json terms = Json::array();
    for (const auto& [w, c] : f.terms()) {
        Json t = matrix_to_json(c);
        t = Json{{"word", format_word(w)}, {"re", t["re"]}, {"im", t["im"]}};
        terms.push_back(std::move(t));
    }
    return Json{{"d", f.alphabet_size()}, {"p", f.rows()}, {"q", f.cols()},
                {"terms", std::move(terms)}};
}

MatPoly matpoly_from_json(const Json& j) {
    const int d = require(j, "d").get<int>();
    const int p = require(j, "p").get<int>();
    const int q = require(j, "q").get<int>();
    if (d < 1 || p < 1 || q < 1) throw ParseError("polynomial needs d, p, q >= 1");
    MatPoly f(d, p, q);
    for (const Json& t : require(j, "terms")) {
        Word w = parse_word(require(t, "word").get<std::string>());
        CMat c = matrix_from_json(t);
        if (c.rows() != p || c.cols() != q)
            throw ParseError("coefficient at " + format_word(w) + " is not " +
                             std::to_string(p) + "x" + std::to_string(q));
        try {
            f.add_coeff(w, c);
        } catch (const Error& e) {
            throw ParseError(e.what());
        }
    }
    return f;
}

Json domain_to_json(const DomainSpec& dom) {
    Json j{{"kind", dom.kind == DomainKind::Polydisc   ? "polydisc"
                    : dom.kind == DomainKind::MixedBall ? "mixedball"
                                                        : "rowball"},
           {"d", dom.d}};
    if (dom.kind == DomainKind::MixedBall) j["dprime"] = dom.dprime;
    if (dom.kind == DomainKind::RowBall) j["gamma"] = dom.gamma;
    return j;
}

DomainSpec domain_from_json(const Json& j) {
    const std::string kind = require(j, "kind").get<std::string>();
    const int d = require(j, "d").get<int>();
    if (d < 1) throw ParseError("domain needs d >= 1");
    if (kind == "polydisc") return DomainSpec::polydisc(d);
    if (kind == "mixedball") {
        const int dp = require(j, "dprime").get<int>();
        if (dp < 1) throw ParseError("mixed ball needs dprime >= 1");
        return DomainSpec::mixed_ball(d, dp);
    }
    if (kind == "rowball") {
        const double g = require(j, "gamma").get<double>();
        if (!(g > 0.0)) throw ParseError("row ball needs gamma > 0");
        return DomainSpec::row_ball(g, d);
    }
    throw ParseError("unknown domain kind \"" + kind + "\"");
}

Json mattuple_to_json(const MatTuple& x) {
    Json mats = Json::array();
    for (const CMat& m : x.mats) mats.push_back(matrix_to_json(m));
    return Json{{"n", x.n}, {"matrices", std::move(mats)}};
}

MatTuple mattuple_from_json(const Json& j) {
    const int n = require(j, "n").get<int>();
    const Json& mats = require(j, "matrices");
    MatTuple x(static_cast<int>(mats.size()), n);
    for (std::size_t k = 0; k < mats.size(); ++k) {
        CMat m = matrix_from_json(mats[k]);
        if (m.rows() != n || m.cols() != n) throw ParseError("witness matrices must be n x n");
        x.mats[k] = std::move(m);
    }
    return x;
}

Json certificate_to_json(const NormCertificate& cert) {
    return Json{{"value", cert.value},
                {"method", cert.method},
                {"witness", mattuple_to_json(cert.witness)},
                {"iterations", cert.iterations},
                {"residual", cert.residual},
                {"seed", cert.seed}};
}

Json feasibility_to_json(const FeasibilityReport& rep, std::uint64_t seed) {
    return Json{{"value", rep.certificate.value},
                {"method", rep.certificate.method},
                {"witness", mattuple_to_json(rep.certificate.witness)},
                {"verdict", rep.verdict == Verdict::Infeasible ? "infeasible" : "not-refuted"},
                {"bound", rep.bound},
                {"seed", seed}};
}

ProblemFile problem_from_json(const Json& j) {
    ProblemFile pf;
    pf.domain = domain_from_json(require(j, "domain"));
    pf.polynomial = matpoly_from_json(require(j, "polynomial"));

    std::vector<Word> words;
    for (const Json& s : require(j, "lambda")) {
        if (!s.is_string()) throw ParseError("lambda entries must be word strings");
        words.push_back(parse_word(s.get<std::string>()));
    }
    if (pf.polynomial.alphabet_size() != pf.domain.tuple_len())
        throw ParseError("polynomial alphabet " + std::to_string(pf.polynomial.alphabet_size()) +
                         " does not match the domain tuple length " +
                         std::to_string(pf.domain.tuple_len()));
    pf.lambda = InitialSegment::validate(pf.domain.tuple_len(), std::move(words));

    pf.bound = j.contains("bound") ? j["bound"].get<double>() : 1.0;
    if (!(pf.bound > 0.0)) throw ParseError("bound must be positive");

    if (j.contains("config")) {
        const Json& c = j["config"];
        if (c.contains("seed")) {
            pf.config.seed = c["seed"].get<std::uint64_t>();
            pf.seed_in_file = true;
        }
        if (c.contains("restarts")) pf.config.restarts = c["restarts"].get<int>();
        if (c.contains("max_iters")) pf.config.max_iters = c["max_iters"].get<int>();
        if (c.contains("jobs")) pf.config.jobs = c["jobs"].get<int>();
        if (c.contains("margin")) pf.config.margin = c["margin"].get<double>();
        if (c.contains("fd_step")) pf.config.fd_step = c["fd_step"].get<double>();
        if (c.contains("rel_tol")) pf.config.rel_tol = c["rel_tol"].get<double>();
        if (c.contains("boundary_eps")) pf.config.boundary_eps = c["boundary_eps"].get<double>();
        if (c.contains("feas_tol")) pf.config.feas_tol = c["feas_tol"].get<double>();
        if (c.contains("n_max")) pf.config.n_max = c["n_max"].get<int>();
    }
    return pf;
}

namespace {

Json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return j;
}

}  // namespace

ProblemFile load_problem(const std::string& path) { return problem_from_json(parse_file(path)); }

std::vector<CMat> coeff_list_from_json(const Json& j) {
    const Json& coeffs = require(j, "coeffs");
    if (!coeffs.is_array() || coeffs.empty()) throw ParseError("\"coeffs\" must be a non-empty array");
    std::vector<CMat> out;
    for (const Json& c : coeffs) {
        if (c.is_number()) {
            CMat m(1, 1);
            m(0, 0) = c.get<double>();
            out.push_back(std::move(m));
        } else {
            out.push_back(matrix_from_json(c));
        }
    }
    for (const CMat& c : out)
        if (c.rows() != out[0].rows() || c.cols() != out[0].cols() || c.rows() != c.cols())
            throw ParseError("coefficients must be square matrices of a common size");
    return out;
}

std::vector<CMat> load_coeff_list(const std::string& path) {
    return coeff_list_from_json(parse_file(path));
}

}  // namespace nccf

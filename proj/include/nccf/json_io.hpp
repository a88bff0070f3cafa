#ifndef NCCF_JSON_IO_HPP
#define NCCF_JSON_IO_HPP

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "nccf/cfp.hpp"

namespace nccf {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const CMat& m);
CMat matrix_from_json(const Json& j);

// { "d": ..., "p": ..., "q": ..., "terms": [ { "word": "g1g2", "re": [[..]], "im": [[..]] } ] }
Json matpoly_to_json(const MatPoly& f);
MatPoly matpoly_from_json(const Json& j);

// { "kind": "polydisc" | "mixedball" | "rowball", "d": ..., "dprime"?, "gamma"? }
Json domain_to_json(const DomainSpec& dom);
DomainSpec domain_from_json(const Json& j);

// { "n": ..., "matrices": [ { "re": .., "im": .. } ] }
Json mattuple_to_json(const MatTuple& x);
MatTuple mattuple_from_json(const Json& j);

Json certificate_to_json(const NormCertificate& cert);
Json feasibility_to_json(const FeasibilityReport& rep, std::uint64_t seed);

struct ProblemFile {
    DomainSpec domain;
    InitialSegment lambda;
    MatPoly polynomial;
    double bound = 1.0;
    OptimizerConfig config;
    bool seed_in_file = false;
};

// Parses and cross-validates a problem: alphabet sizes must agree and the
// word list must validate as an initial segment (NotFactorClosed propagates).
ProblemFile problem_from_json(const Json& j);
ProblemFile load_problem(const std::string& path);

// d=1 oracle input: { "q"?: int, "coeffs": [ {"re": [[..]], "im": [[..]]}, ... ] },
// or the scalar shorthand { "coeffs": [c0, c1, ...] } with real entries.
std::vector<CMat> coeff_list_from_json(const Json& j);
std::vector<CMat> load_coeff_list(const std::string& path);

}  // namespace nccf

#endif

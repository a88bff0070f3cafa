#ifndef NCCF_CFP_HPP
#define NCCF_CFP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nccf/domains.hpp"
#include "nccf/nilpotent.hpp"

namespace nccf {

// Best computed lower bound for the nilpotent sup, with the witness tuple
// that certifies it. value equals ||p(witness)|| up to the stored residual.
struct NormCertificate {
    double value = 0.0;
    MatTuple witness;
    std::string method;  // "shift" | "optimizer" | "oracle"
    int iterations = 0;
    double residual = 0.0;
    std::uint64_t seed = 0;
};

struct OptimizerConfig {
    int restarts = 32;
    int max_iters = 500;
    double fd_step = 1e-3;       // finite-difference probe step
    double rel_tol = 1e-9;       // stop when relative ascent improvement drops below
    double margin = 1e-6;        // re-projection margin during ascent
    double boundary_eps = 1e-9;  // shift candidate / final polish gap to the boundary
    double feas_tol = 1e-9;      // INFEASIBLE when value > bound * (1 + feas_tol)
    int jobs = 1;                // parallel restarts; merge is deterministic regardless
    int n_max = 0;               // graded witness size cap, 0 = automatic
    std::uint64_t seed = 0;
};

// Block lower-triangular Toeplitz matrix of the classical criterion: c[0] on
// the diagonal, c[k] on the k-th subdiagonal. Coefficients must share shape.
CMat schur_matrix(const std::vector<CMat>& coeffs);

// Best lower bound for sup{ ||p(X)|| : X in D, X segment-nilpotent } over the
// all-ones shift candidate and multistart ascent on sampler parametrizations.
// Requires support(p) inside the segment (UnsupportedSupport otherwise).
NormCertificate nilpotent_norm(const MatPoly& p, const InitialSegment& seg,
                               const DomainSpec& dom, const OptimizerConfig& cfg);

enum class Verdict { Infeasible, NotRefuted };

struct FeasibilityReport {
    Verdict verdict = Verdict::NotRefuted;
    double bound = 1.0;
    NormCertificate certificate;
};

// Refutation-only verdict for the interpolation criterion normalized to
// bound: INFEASIBLE ships a witness with ||p(witness)|| > bound; otherwise
// the criterion value is reported without a feasibility claim.
FeasibilityReport feasibility(const MatPoly& p, const InitialSegment& seg, const DomainSpec& dom,
                              double bound, const OptimizerConfig& cfg);

// Linear pencil L = sum_j A_j g_j with k x k coefficients.
struct Pencil {
    int k = 0;
    std::vector<CMat> coeffs;
};

// L(X) = sum_j A_j kron X_j.
CMat pencil_eval(const Pencil& l, const MatTuple& x);

// L(X) (2 - L(X))^{-1}; throws SingularResolvent when 2 - L(X) is
// numerically singular.
CMat phi_transform(const Pencil& l, const MatTuple& x);

// Smallest eigenvalue of 2 - L(X) - L(X)*; positive iff the strict LMI holds.
double lmi_check(const Pencil& l, const MatTuple& x);

// Min over a uniform theta grid of the smallest eigenvalue of
// 2 - e^{i theta} L(X) - e^{-i theta} L(X)*.
double circled_lmi_sweep(const Pencil& l, const MatTuple& x, int grid);

}  // namespace nccf

#endif

#ifndef NCCF_NILPOTENT_HPP
#define NCCF_NILPOTENT_HPP

#include <cstdint>

#include "nccf/domains.hpp"
#include "nccf/fock.hpp"

namespace nccf {

enum class SampleStrategy { WeightedShift, GradedRandom, UnitaryConjugated, DirectSumMix };

struct NilpotentSampleConfig {
    SampleStrategy strategy = SampleStrategy::WeightedShift;
    int n_max = 0;          // 0 picks the natural size for the strategy
    std::uint64_t seed = 0;
    double margin = 0.05;   // relative gap kept to the domain boundary
};

// Checks ||X^v|| <= tol for every minimal non-member of the segment (length
// at most max_length + 1). Every longer outside word contains one of these as
// a factor, so its power vanishes structurally once the generators do.
bool is_lambda_nilpotent(const MatTuple& x, const InitialSegment& seg, double tol);

// A random segment-nilpotent point of the domain; nilpotency holds with
// structural exact zeros and membership is strict.
MatTuple sample_nilpotent(const DomainSpec& dom, const InitialSegment& seg,
                          const NilpotentSampleConfig& cfg);

// t (V* T_1 V, ..., V* T_d V) for an isometry V and 0 <= t < 1.
MatTuple compress(const MatTuple& t, const CMat& v, double scale);

}  // namespace nccf

#endif

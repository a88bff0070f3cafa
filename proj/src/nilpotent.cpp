#include "nccf/nilpotent.hpp"

#include <cmath>

#include "nccf/errors.hpp"

namespace nccf {

bool is_lambda_nilpotent(const MatTuple& x, const InitialSegment& seg, double tol) {
    if (x.d != seg.alphabet_size())
        throw DimensionMismatch("tuple length differs from the segment alphabet");
    for (const Word& v : seg.minimal_non_members())
        if (op_norm(word_eval(x, v)) > tol) return false;
    return true;
}

namespace {

MatTuple rescale_into(const DomainSpec& dom, const MatTuple& x, double margin) {
    double r = scaling_radius(dom, x);
    if (!std::isfinite(r)) return x;  // zero tuple, already interior
    return x.scaled(r * (1.0 - margin));
}

MatTuple sample_weighted_shift(const DomainSpec& dom, const InitialSegment& seg,
                               std::uint64_t seed, double margin) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<ShiftEdge, Complex>> weights;
    for (const ShiftEdge& e : shift_edges(seg)) {
        CMat g = ginibre(1, 1, rng);
        weights.emplace_back(e, g(0, 0));
    }
    return rescale_into(dom, lambda_shift(seg, weights), margin);
}

bool is_ball_segment(const InitialSegment& seg) {
    std::size_t count = 0, layer = 1;
    for (int j = 0; j <= seg.max_length(); ++j) {
        count += layer;
        layer *= static_cast<std::size_t>(seg.alphabet_size());
    }
    return seg.size() == count;
}

MatTuple sample_graded(const DomainSpec& dom, const InitialSegment& seg, std::uint64_t seed,
                       int n_max, double margin) {
    if (!is_ball_segment(seg))
        throw InvalidKey("graded sampling is defined for ball segments only");
    std::mt19937_64 rng(seed);
    const int levels = seg.max_length() + 1;
    int n = std::max(n_max, levels);
    std::vector<int> sizes(levels, 1);
    std::uniform_int_distribution<int> pick(0, levels - 1);
    for (int extra = n - levels; extra > 0; --extra) ++sizes[pick(rng)];
    std::vector<int> offsets(levels + 1, 0);
    for (int i = 0; i < levels; ++i) offsets[i + 1] = offsets[i] + sizes[i];

    // One-step-down block structure: any product longer than max_length walks
    // off the grading, so X^v = 0 with structural zeros.
    MatTuple x(seg.alphabet_size(), n);
    for (int j = 0; j < x.d; ++j)
        for (int i = 0; i + 1 < levels; ++i)
            x.mats[j].block(offsets[i + 1], offsets[i], sizes[i + 1], sizes[i]) =
                ginibre(sizes[i + 1], sizes[i], rng);
    return rescale_into(dom, x, margin);
}

}  // namespace

MatTuple sample_nilpotent(const DomainSpec& dom, const InitialSegment& seg,
                          const NilpotentSampleConfig& cfg) {
    if (seg.alphabet_size() != dom.tuple_len())
        throw DimensionMismatch("segment alphabet differs from the domain tuple length");
    switch (cfg.strategy) {
        case SampleStrategy::WeightedShift:
            return sample_weighted_shift(dom, seg, cfg.seed, cfg.margin);
        case SampleStrategy::GradedRandom:
            return sample_graded(dom, seg, cfg.seed, cfg.n_max, cfg.margin);
        case SampleStrategy::UnitaryConjugated: {
            MatTuple x = sample_weighted_shift(dom, seg, mix_seed(cfg.seed, 1), cfg.margin);
            std::mt19937_64 rng(mix_seed(cfg.seed, 2));
            CMat u = haar_unitary(x.n, rng);
            return conjugate_isometry(x, u);
        }
        case SampleStrategy::DirectSumMix: {
            NilpotentSampleConfig a = cfg;
            a.strategy = SampleStrategy::WeightedShift;
            a.seed = mix_seed(cfg.seed, 3);
            NilpotentSampleConfig b = cfg;
            b.strategy = is_ball_segment(seg) ? SampleStrategy::GradedRandom
                                              : SampleStrategy::UnitaryConjugated;
            b.seed = mix_seed(cfg.seed, 4);
            return direct_sum(sample_nilpotent(dom, seg, a), sample_nilpotent(dom, seg, b));
        }
    }
    throw Error("unknown sampling strategy");
}

MatTuple compress(const MatTuple& t, const CMat& v, double scale) {
    if (scale < 0.0 || scale >= 1.0)
        throw Error("compression scale must lie in [0, 1)");
    return conjugate_isometry(t, v).scaled(scale);
}

}  // namespace nccf

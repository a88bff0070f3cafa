#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nccf/errors.hpp"
#include "nccf/nilpotent.hpp"
#include "test_util.hpp"

using namespace nccf;
using nccf::testutil::random_tuple;

TEST_CASE("lambda nilpotency detection") {
    // truncated shifts are nilpotent for their own ball at tol zero
    for (int d = 1; d <= 2; ++d)
        for (int l = 0; l <= 3; ++l)
            CHECK(is_lambda_nilpotent(creation_truncated(d, l), InitialSegment::ball(d, l), 0.0));

    // the identity is not: X^{l+1} = I
    MatTuple id(1, 2);
    id.mats[0] = CMat::Identity(2, 2);
    CHECK_FALSE(is_lambda_nilpotent(id, InitialSegment::ball(1, 3), 1e-12));

    // random weighted shifts vanish on every minimal non-member, exactly
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        InitialSegment seg = trial % 2 == 0
                                 ? InitialSegment::ball(2, 2)
                                 : InitialSegment::validate(2, {Word(), Word({1}), Word({1, 1})});
        std::vector<std::pair<ShiftEdge, Complex>> w;
        for (const ShiftEdge& e : shift_edges(seg)) {
            CMat g = ginibre(1, 1, rng);
            w.emplace_back(e, g(0, 0));
        }
        MatTuple x = lambda_shift(seg, w);
        CHECK(is_lambda_nilpotent(x, seg, 0.0));
        for (const Word& v : seg.minimal_non_members())
            CHECK(word_eval(x, v).cwiseAbs().maxCoeff() == 0.0);
    }

    // shift off its own segment: the ball(1,2) shift cubes to zero but its
    // square does not, so it fails the ball(1,1) test
    CHECK_FALSE(is_lambda_nilpotent(creation_truncated(1, 2), InitialSegment::ball(1, 1), 1e-12));
}

TEST_CASE("samplers produce sound witnesses") {
    std::vector<DomainSpec> doms = {DomainSpec::polydisc(2), DomainSpec::mixed_ball(2, 1),
                                    DomainSpec::row_ball(0.7, 2)};
    std::vector<InitialSegment> segs = {
        InitialSegment::ball(2, 2),
        InitialSegment::validate(2, {Word(), Word({1}), Word({2}), Word({1, 1})}),
    };
    std::uint64_t seed = 1000;
    for (const auto& dom : doms)
        for (const auto& seg : segs)
            for (SampleStrategy st :
                 {SampleStrategy::WeightedShift, SampleStrategy::GradedRandom,
                  SampleStrategy::UnitaryConjugated, SampleStrategy::DirectSumMix}) {
                NilpotentSampleConfig cfg;
                cfg.strategy = st;
                cfg.seed = ++seed;
                cfg.n_max = 6;
                bool ball = seg.size() == 7;
                if (st == SampleStrategy::GradedRandom && !ball) {
                    CHECK_THROWS_AS(sample_nilpotent(dom, seg, cfg), InvalidKey);
                    continue;
                }
                MatTuple x = sample_nilpotent(dom, seg, cfg);
                CHECK(member(dom, x));
                CHECK(is_lambda_nilpotent(x, seg, 1e-12));
            }
}

TEST_CASE("graded samples for the flat segment") {
    // ball(2,1): both coordinates live on one off-diagonal block and all
    // length-2 products vanish
    NilpotentSampleConfig cfg;
    cfg.strategy = SampleStrategy::GradedRandom;
    cfg.seed = 7;
    cfg.n_max = 5;
    InitialSegment seg = InitialSegment::ball(2, 1);
    MatTuple x = sample_nilpotent(DomainSpec::polydisc(2), seg, cfg);
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b)
            CHECK(word_eval(x, Word({a, b})).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("jordan witness for the classical segment") {
    NilpotentSampleConfig cfg;
    cfg.strategy = SampleStrategy::WeightedShift;
    cfg.seed = 3;
    InitialSegment seg = InitialSegment::ball(1, 3);
    MatTuple x = sample_nilpotent(DomainSpec::polydisc(1), seg, cfg);
    CHECK(x.n == 4);
    CHECK(op_norm(x.mats[0]) < 1.0);
    CHECK(word_eval(x, Word({1, 1, 1, 1})).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("closure operations preserve nilpotency") {
    std::mt19937_64 rng(42);
    InitialSegment seg = InitialSegment::ball(2, 2);
    NilpotentSampleConfig cfg;
    cfg.strategy = SampleStrategy::WeightedShift;
    cfg.seed = 9;
    DomainSpec dom = DomainSpec::polydisc(2);
    MatTuple x = sample_nilpotent(dom, seg, cfg);

    // unitary conjugation: (U*XU)^v = U* X^v U
    CMat u = haar_unitary(x.n, rng);
    MatTuple ux = conjugate_isometry(x, u);
    CHECK(is_lambda_nilpotent(ux, seg, 1e-12));
    for (const Word& v : seg.minimal_non_members()) {
        CMat lhs = word_eval(ux, v);
        CMat rhs = u.adjoint() * word_eval(x, v) * u;
        CHECK(op_norm(lhs - rhs) < 1e-12);
    }

    // direct sums: (X + Y)^v = X^v + Y^v blockwise
    cfg.seed = 10;
    MatTuple y = sample_nilpotent(dom, seg, cfg);
    MatTuple s = direct_sum(x, y);
    CHECK(is_lambda_nilpotent(s, seg, 0.0));
    Word v({1, 2});
    CMat sv = word_eval(s, v);
    CHECK(op_norm(sv.topLeftCorner(x.n, x.n) - word_eval(x, v)) < 1e-13);
    CHECK(op_norm(sv.bottomRightCorner(y.n, y.n) - word_eval(y, v)) < 1e-13);
    CHECK(sv.topRightCorner(x.n, y.n).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("compression") {
    std::mt19937_64 rng(43);

    // identity isometry just rescales
    MatTuple t = random_tuple(2, 4, rng, 0.5);
    MatTuple c = compress(t, CMat::Identity(4, 4), 0.5);
    for (int j = 0; j < 2; ++j)
        CHECK((c.mats[j] - 0.5 * t.mats[j]).cwiseAbs().maxCoeff() == 0.0);

    // from the closure into the strict interior, all three kinds
    for (const DomainSpec& dom : {DomainSpec::polydisc(2), DomainSpec::mixed_ball(2, 1),
                                  DomainSpec::row_ball(0.6, 2)}) {
        for (int trial = 0; trial < 10; ++trial) {
            MatTuple raw = random_tuple(dom.tuple_len(), 4, rng);
            MatTuple boundary = raw.scaled(scaling_radius(dom, raw));  // gauge == threshold
            CMat v = random_isometry(4, 2, rng);
            MatTuple z = compress(boundary, v, 0.99);
            CHECK(member(dom, z));
        }
    }

    // compression by the range-spanning isometry reproduces V* T^w V on the segment
    InitialSegment seg = InitialSegment::ball(2, 1);
    MatTuple shift = creation_truncated(2, 2);
    // The span of {T^w e_0 : w in ball(2,1)} is the first 1+2 basis vectors.
    CMat v = CMat::Zero(shift.n, 3);
    v(0, 0) = v(1, 1) = v(2, 2) = 1.0;
    MatTuple z = compress(shift, v, 0.9);
    for (const Word& w : seg.words()) {
        CMat lhs = word_eval(z, w);
        CMat rhs = std::pow(0.9, w.length()) * (v.adjoint() * word_eval(shift, w) * v);
        CHECK(op_norm(lhs - rhs) < 1e-13);
    }

    CHECK_THROWS_AS(compress(t, ginibre(4, 2, rng), 0.5), NotIsometry);
    CHECK_THROWS_AS(compress(t, CMat::Identity(4, 4), 1.0), Error);
}

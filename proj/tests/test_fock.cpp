#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nccf/domains.hpp"
#include "nccf/errors.hpp"
#include "nccf/fock.hpp"
#include "test_util.hpp"

using namespace nccf;
using nccf::testutil::random_poly;

namespace {

CMat vacuum_complement_projection(int n) {
    CMat p = CMat::Identity(n, n);
    p(0, 0) = 0.0;  // basis index 0 is the empty word
    return p;
}

}  // namespace

TEST_CASE("truncated creation matrices") {
    // d=1, l=2: lower Jordan shift on {1, g1, g1^2}
    MatTuple s = creation_truncated(1, 2);
    REQUIRE(s.n == 3);
    CMat expected = CMat::Zero(3, 3);
    expected(1, 0) = 1.0;
    expected(2, 1) = 1.0;
    CHECK((s.mats[0] - expected).cwiseAbs().maxCoeff() == 0.0);

    // d=2, l=1: each letter maps the vacuum to its own basis vector
    MatTuple s2 = creation_truncated(2, 1);
    REQUIRE(s2.n == 3);
    for (int j = 0; j < 2; ++j) {
        CMat e = CMat::Zero(3, 3);
        e(1 + j, 0) = 1.0;
        CHECK((s2.mats[j] - e).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("co-isometry identity is exact") {
    for (int d = 1; d <= 3; ++d)
        for (int l = 0; l <= 4; ++l) {
            MatTuple s = creation_truncated(d, l);
            CMat acc = CMat::Zero(s.n, s.n);
            for (const CMat& m : s.mats) acc += m * m.adjoint();
            CMat p = l == 0 ? CMat::Zero(1, 1) : vacuum_complement_projection(s.n);
            CHECK((acc - p).cwiseAbs().maxCoeff() == 0.0);
        }
}

TEST_CASE("partial isometry structure") {
    for (int d = 1; d <= 3; ++d)
        for (int l = 1; l <= 3; ++l) {
            InitialSegment seg = InitialSegment::ball(d, l);
            MatTuple s = creation_truncated(d, l);
            for (int j = 0; j < d; ++j) {
                CMat g = s.mats[j].adjoint() * s.mats[j];
                // diagonal projection onto words of length < l
                CMat proj = CMat::Zero(s.n, s.n);
                for (std::size_t k = 0; k < seg.words().size(); ++k)
                    if (seg.words()[k].length() < l) proj(k, k) = 1.0;
                CHECK((g - proj).cwiseAbs().maxCoeff() == 0.0);
            }
        }
}

TEST_CASE("scaled shift sits on the row-ball shell") {
    for (int d = 1; d <= 3; ++d)
        for (int l = 1; l <= 3; ++l) {
            MatTuple s = creation_truncated(d, l);
            MatTuple ts = s.scaled(0.45);
            CMat row(ts.n, ts.n * d);
            for (int j = 0; j < d; ++j) row.middleCols(j * ts.n, ts.n) = ts.mats[j];
            CHECK(std::abs(op_norm(row) - 0.45) < 1e-12);
            // member of C_gamma for t < gamma
            CHECK(member(DomainSpec::row_ball(0.46, d), ts));
        }
}

TEST_CASE("lambda shift") {
    // all-ones weighting reproduces the truncated creation tuple
    for (int d = 1; d <= 2; ++d)
        for (int l = 0; l <= 3; ++l) {
            InitialSegment seg = InitialSegment::ball(d, l);
            MatTuple a = lambda_shift_all_ones(seg);
            MatTuple b = creation_truncated(d, l);
            for (int j = 0; j < d; ++j)
                CHECK((a.mats[j] - b.mats[j]).cwiseAbs().maxCoeff() == 0.0);
        }

    // on {1, g1, g2} all length-2 products vanish exactly
    InitialSegment flat = InitialSegment::ball(2, 1);
    MatTuple x = lambda_shift_all_ones(flat);
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b)
            CHECK(word_eval(x, Word({a, b})).cwiseAbs().maxCoeff() == 0.0);

    // scaling the weights scales the shift
    InitialSegment line = InitialSegment::ball(1, 2);
    std::vector<std::pair<ShiftEdge, Complex>> w;
    for (const ShiftEdge& e : shift_edges(line)) w.emplace_back(e, Complex(0.25, 0));
    MatTuple t = lambda_shift(line, w);
    CHECK((t.mats[0] - 0.25 * creation_truncated(1, 2).mats[0]).cwiseAbs().maxCoeff() == 0.0);

    // nonzero weight off the segment is rejected
    InitialSegment tiny = InitialSegment::validate(2, {Word(), Word({1})});
    std::vector<std::pair<ShiftEdge, Complex>> bad = {{{2, Word({1})}, Complex(1, 0)}};
    CHECK_THROWS_AS(lambda_shift(tiny, bad), InvalidKey);
    // zero weight on the same edge is simply ignored
    std::vector<std::pair<ShiftEdge, Complex>> zero = {{{2, Word({1})}, Complex(0, 0)}};
    CHECK_NOTHROW(lambda_shift(tiny, zero));
}

TEST_CASE("coefficient extraction") {
    std::mt19937_64 rng(31);

    // constants extract directly
    CMat c = ginibre(2, 3, rng);
    MatPoly cf = MatPoly::constant(2, c);
    CHECK((coeff_extract(cf, Word(), 0.7) - c).cwiseAbs().maxCoeff() < 1e-13);

    // every stored coefficient is recovered at t = 0.5
    MatPoly f = random_poly(2, 2, 2, 3, rng);
    for (const auto& [w, coeff] : f.terms())
        CHECK((coeff_extract(f, w, 0.5) - coeff).cwiseAbs().maxCoeff() < 1e-10);

    // absent words come back as zero
    MatPoly g(2, 1, 1);
    CMat one = CMat::Identity(1, 1);
    g.set_coeff(Word({1}), one);
    CHECK(coeff_extract(g, Word({2}), 0.5).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("coefficient decay margins") {
    std::mt19937_64 rng(32);

    // constants: the single margin is exactly zero
    MatPoly cf = MatPoly::constant(1, ginibre(2, 2, rng));
    auto rep = coeff_decay_check(cf, 0.5, 64);
    REQUIRE(rep.margins.size() == 1);
    CHECK(std::abs(rep.margins[0]) < 1e-14);

    // f = g1 + g2: the degree-1 slice at tS has norm t sqrt(2) against t per word
    MatPoly f = add(MatPoly::letter(2, 1), MatPoly::letter(2, 2));
    auto rep2 = coeff_decay_check(f, 0.6, 64);
    const double t = 0.99 * 0.6;
    REQUIRE(rep2.margins.size() == 2);
    for (double m : rep2.margins) CHECK(std::abs(m - t * (std::sqrt(2.0) - 1.0)) < 1e-12);

    // random polynomials stay above -1e-10
    for (int trial = 0; trial < 6; ++trial) {
        MatPoly h = random_poly(2, 2, 2, 3, rng);
        auto r = coeff_decay_check(h, 0.99 / std::sqrt(2.0), 128);
        CHECK(r.min_margin() >= -1e-10);
    }
}

TEST_CASE("fock basis indexing") {
    FockBasis basis(InitialSegment::ball(2, 2));
    CHECK(basis.dimension() == 7);
    CHECK(basis.index(Word()) == 0);
    CHECK(basis.index(Word({2, 1})) == 5);
    CHECK(basis.index(Word({1, 1, 1})) == -1);
}

#include "nccf/domains.hpp"

#include <cmath>
#include <limits>

#include "nccf/errors.hpp"

namespace nccf {

DomainSpec DomainSpec::polydisc(int d) {
    DomainSpec s;
    s.kind = DomainKind::Polydisc;
    s.d = d;
    s.gamma = 0.99 / std::sqrt(double(d));
    s.Gamma = 1.01 * std::sqrt(double(d));
    return s;
}

DomainSpec DomainSpec::mixed_ball(int d, int dprime) {
    DomainSpec s;
    s.kind = DomainKind::MixedBall;
    s.d = d;
    s.dprime = dprime;
    s.gamma = 0.99 / std::sqrt(double(d) * dprime);
    s.Gamma = 1.01 * std::sqrt(double(d) * dprime);
    return s;
}

DomainSpec DomainSpec::row_ball(double gamma, int d) {
    DomainSpec s;
    s.kind = DomainKind::RowBall;
    s.d = d;
    s.gamma = gamma;
    s.Gamma = gamma;
    return s;
}

int DomainSpec::tuple_len() const {
    return kind == DomainKind::MixedBall ? d * dprime : d;
}

namespace {

void check_len(const DomainSpec& dom, const MatTuple& x) {
    if (x.d != dom.tuple_len())
        throw DimensionMismatch("domain expects " + std::to_string(dom.tuple_len()) +
                                " coordinates, point has " + std::to_string(x.d));
}

CMat row_concat(const MatTuple& x) {
    CMat row(x.n, x.n * x.d);
    for (int j = 0; j < x.d; ++j) row.middleCols(j * x.n, x.n) = x.mats[j];
    return row;
}

CMat block_assembly(const DomainSpec& dom, const MatTuple& x) {
    CMat b(dom.d * x.n, dom.dprime * x.n);
    for (int i = 0; i < dom.d; ++i)
        for (int j = 0; j < dom.dprime; ++j)
            b.block(i * x.n, j * x.n, x.n, x.n) = x.mats[i * dom.dprime + j];
    return b;
}

}  // namespace

double domain_gauge(const DomainSpec& dom, const MatTuple& x) {
    check_len(dom, x);
    switch (dom.kind) {
        case DomainKind::Polydisc: {
            double g = 0.0;
            for (const CMat& m : x.mats) g = std::max(g, op_norm(m));
            return g;
        }
        case DomainKind::MixedBall:
            return op_norm(block_assembly(dom, x));
        case DomainKind::RowBall:
            return op_norm(row_concat(x));
    }
    return 0.0;
}

double gauge_threshold(const DomainSpec& dom) {
    return dom.kind == DomainKind::RowBall ? dom.gamma : 1.0;
}

bool member(const DomainSpec& dom, const MatTuple& x) {
    return domain_gauge(dom, x) < gauge_threshold(dom);
}

double scaling_radius(const DomainSpec& dom, const MatTuple& x) {
    double g = domain_gauge(dom, x);
    if (g == 0.0) return std::numeric_limits<double>::infinity();
    return gauge_threshold(dom) / g;
}

MatTuple sample(const DomainSpec& dom, int n, std::uint64_t seed, double margin) {
    std::mt19937_64 rng(seed);
    MatTuple x(dom.tuple_len(), n);
    for (int j = 0; j < x.d; ++j) x.mats[j] = ginibre(n, n, rng);
    double r = scaling_radius(dom, x);
    if (!std::isfinite(r)) return x;  // the zero tuple, keep as is
    return x.scaled(r * (1.0 - margin));
}

MatTuple direct_sum(const MatTuple& x, const MatTuple& y) {
    if (x.d != y.d) throw DimensionMismatch("direct sum needs equal tuple lengths");
    MatTuple out(x.d, x.n + y.n);
    for (int j = 0; j < x.d; ++j) {
        out.mats[j].topLeftCorner(x.n, x.n) = x.mats[j];
        out.mats[j].bottomRightCorner(y.n, y.n) = y.mats[j];
    }
    return out;
}

MatTuple conjugate_isometry(const MatTuple& x, const CMat& v) {
    if (v.rows() != x.n)
        throw DimensionMismatch("isometry domain size " + std::to_string(v.cols()) +
                                "->" + std::to_string(v.rows()) + " does not match tuple size " +
                                std::to_string(x.n));
    if (!is_isometry(v)) throw NotIsometry("V*V deviates from the identity beyond 1e-12");
    MatTuple out(x.d, static_cast<int>(v.cols()));
    for (int j = 0; j < x.d; ++j) out.mats[j] = v.adjoint() * x.mats[j] * v;
    return out;
}

}  // namespace nccf

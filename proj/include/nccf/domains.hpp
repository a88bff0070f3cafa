#ifndef NCCF_DOMAINS_HPP
#define NCCF_DOMAINS_HPP

#include <cstdint>

#include "nccf/poly.hpp"

namespace nccf {

enum class DomainKind { Polydisc, MixedBall, RowBall };

// Descriptor of one of the three concrete circled matrix convex sets, with
// the row-ball sandwich bounds gamma, Gamma pinned at construction.
struct DomainSpec {
    DomainKind kind = DomainKind::Polydisc;
    int d = 1;        // generators (polydisc/rowball) or block rows (mixed ball)
    int dprime = 0;   // block columns, mixed ball only
    double gamma = 0.0;   // lower sandwich radius; the rowball's own radius
    double Gamma = 0.0;   // upper sandwich radius

    static DomainSpec polydisc(int d);
    static DomainSpec mixed_ball(int d, int dprime);
    static DomainSpec row_ball(double gamma, int d);

    // Number of coordinates of a point: d, or d*dprime for the mixed ball.
    int tuple_len() const;
};

// The gauge whose strict sublevel set defines membership: max_j ||X_j||
// (polydisc), the norm of the d x d' block assembly (mixed ball), or the norm
// of the row concatenation (row ball, threshold gamma).
double domain_gauge(const DomainSpec& dom, const MatTuple& x);
double gauge_threshold(const DomainSpec& dom);

// Strict membership, no tolerance. Throws DimensionMismatch on a wrong
// tuple length.
bool member(const DomainSpec& dom, const MatTuple& x);

// sup{s > 0 : sX in D}; +infinity for the zero tuple.
double scaling_radius(const DomainSpec& dom, const MatTuple& x);

// Ginibre tuple rescaled to relative radius 1 - margin; deterministic per seed.
MatTuple sample(const DomainSpec& dom, int n, std::uint64_t seed, double margin);

// Coordinatewise block-diagonal sum; size n + m.
MatTuple direct_sum(const MatTuple& x, const MatTuple& y);

// (V* X_1 V, ..., V* X_d V) for an isometry V (validated to 1e-12).
MatTuple conjugate_isometry(const MatTuple& x, const CMat& v);

}  // namespace nccf

#endif

#include "nccf/fock.hpp"

#include <cmath>
#include <limits>

#include "nccf/errors.hpp"

namespace nccf {

MatTuple creation_truncated(int d, int max_len) {
    InitialSegment seg = InitialSegment::ball(d, max_len);
    int n = static_cast<int>(seg.size());
    MatTuple s(d, n);
    for (int j = 1; j <= d; ++j) {
        for (int col = 0; col < n; ++col) {
            const Word& w = seg.words()[col];
            Word target = concat(Word({j}), w);
            int row = seg.index_of(target);
            if (row >= 0) s.mats[j - 1](row, col) = 1.0;
        }
    }
    return s;
}

std::vector<ShiftEdge> shift_edges(const InitialSegment& seg) {
    std::vector<ShiftEdge> edges;
    for (const Word& w : seg.words())
        for (int j = 1; j <= seg.alphabet_size(); ++j)
            if (seg.contains(concat(Word({j}), w))) edges.push_back({j, w});
    return edges;
}

MatTuple lambda_shift(const InitialSegment& seg,
                      const std::vector<std::pair<ShiftEdge, Complex>>& weights) {
    int n = static_cast<int>(seg.size());
    MatTuple x(seg.alphabet_size(), n);
    for (const auto& [edge, weight] : weights) {
        if (weight == Complex(0, 0)) continue;
        int col = seg.index_of(edge.source);
        int row = col < 0 ? -1 : seg.index_of(concat(Word({edge.letter}), edge.source));
        if (col < 0 || row < 0 || edge.letter < 1 || edge.letter > seg.alphabet_size())
            throw InvalidKey("shift edge (" + std::to_string(edge.letter) + ", " +
                             format_word(edge.source) + ") leaves the segment");
        x.mats[edge.letter - 1](row, col) += weight;
    }
    return x;
}

MatTuple lambda_shift_all_ones(const InitialSegment& seg) {
    std::vector<std::pair<ShiftEdge, Complex>> ones;
    for (const ShiftEdge& e : shift_edges(seg)) ones.emplace_back(e, Complex(1, 0));
    return lambda_shift(seg, ones);
}

CMat coeff_extract(const MatPoly& f, const Word& w, double t) {
    const int len = w.length();
    InitialSegment seg = InitialSegment::ball(f.alphabet_size(), len);
    FockBasis basis(seg);
    MatTuple ts = creation_truncated(f.alphabet_size(), len).scaled(t);
    CMat val = evaluate(f, ts);
    // (S^v e_empty) = e_v for |v| <= len, so the (row w, col empty) entry of
    // each coefficient block reads off t^{|w|} (f_w)_{a,b}.
    const int n = basis.dimension();
    const int row = basis.index(w);
    const int col = basis.index(Word());
    CMat out(f.rows(), f.cols());
    for (int a = 0; a < f.rows(); ++a)
        for (int b = 0; b < f.cols(); ++b) out(a, b) = val(a * n + row, b * n + col);
    return out / std::pow(t, len);
}

double DecayReport::min_margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (double v : margins) m = std::min(m, v);
    for (double v : sup_margins) m = std::min(m, v);
    return m;
}

DecayReport coeff_decay_check(const MatPoly& f, double gamma, int grid, double tol) {
    DecayReport rep;
    const double t = 0.99 * gamma;
    for (const auto& [w, c] : f.terms()) {
        const int len = w.length();
        MatTuple ts = creation_truncated(f.alphabet_size(), len).scaled(t);
        auto slices = homogeneous_slices(f, ts);
        double slice_norm =
            len < static_cast<int>(slices.size()) ? op_norm(slices[static_cast<std::size_t>(len)]) : 0.0;
        double sup = circle_sup(f, ts, grid);
        rep.words.push_back(w);
        rep.margins.push_back(slice_norm - std::pow(t, len) * op_norm(c));
        rep.sup_margins.push_back(sup - slice_norm);
    }
    if (rep.min_margin() < -tol)
        throw ViolationError("coefficient decay bound violated by " +
                             std::to_string(-rep.min_margin()));
    return rep;
}

}  // namespace nccf

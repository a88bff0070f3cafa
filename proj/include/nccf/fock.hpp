#ifndef NCCF_FOCK_HPP
#define NCCF_FOCK_HPP

#include <vector>

#include "nccf/poly.hpp"
#include "nccf/words.hpp"

namespace nccf {

// Length-lex ordered basis for the span of an initial segment's words.
struct FockBasis {
    InitialSegment segment;

    explicit FockBasis(InitialSegment seg) : segment(std::move(seg)) {}
    int dimension() const { return static_cast<int>(segment.size()); }
    int index(const Word& w) const { return segment.index_of(w); }
};

// Truncated creation tuple S(l): basis shift e_w -> e_{g_j w} when the target
// stays within the length-l ball, zero otherwise. Entries are exactly 0/1.
MatTuple creation_truncated(int d, int max_len);

// An edge of the segment's shift graph: e_source -> e_{g_letter source}.
struct ShiftEdge {
    int letter = 0;
    Word source;
};

// All valid edges (letter, w) with both w and g_letter w in the segment,
// enumerated deterministically (letters ascending within length-lex sources).
std::vector<ShiftEdge> shift_edges(const InitialSegment& seg);

// General weighted segment-compressed shift: X_j e_w = weight * e_{g_j w}.
// Unspecified edges get weight zero; a nonzero weight on an edge leaving the
// segment throws InvalidKey. The result is segment-nilpotent by construction.
MatTuple lambda_shift(const InitialSegment& seg,
                      const std::vector<std::pair<ShiftEdge, Complex>>& weights);

// The all-ones weighting; agrees with creation_truncated on ball segments.
MatTuple lambda_shift_all_ones(const InitialSegment& seg);

// Recovers the coefficient f_w from matrix elements of f(t S(|w|)) against
// the basis vectors at the empty word and at w; returns f_w itself.
CMat coeff_extract(const MatPoly& f, const Word& w, double t);

struct DecayReport {
    std::vector<Word> words;          // support words checked
    std::vector<double> margins;      // ||A_{|w|}(tS)|| - t^{|w|} ||f_w||
    std::vector<double> sup_margins;  // circle sup at tS minus ||A_{|w|}(tS)||
    double min_margin() const;
};

// Checks t^{|w|} ||f_w|| <= ||A_{|w|}(t S(|w|))|| for every support word at
// t = 0.99 gamma, plus the contour bound on the slice itself; throws
// ViolationError if either margin drops below -tol.
DecayReport coeff_decay_check(const MatPoly& f, double gamma, int grid, double tol = 1e-10);

}  // namespace nccf

#endif

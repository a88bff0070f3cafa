#ifndef NCCF_POLY_HPP
#define NCCF_POLY_HPP

#include <map>
#include <vector>

#include "nccf/linalg.hpp"
#include "nccf/words.hpp"

namespace nccf {

// A point X of M_n(C^d): d square complex matrices of common size n.
struct MatTuple {
    int d = 0;
    int n = 0;
    std::vector<CMat> mats;

    MatTuple() = default;
    MatTuple(int d_, int n_) : d(d_), n(n_), mats(d_, CMat::Zero(n_, n_)) {}
    MatTuple(int d_, int n_, std::vector<CMat> ms) : d(d_), n(n_), mats(std::move(ms)) {}

    MatTuple scaled(Complex s) const;
    bool is_zero() const;
};

// Finitely supported formal nc polynomial with p x q matrix coefficients.
// Exact-zero coefficients are never stored, so the support map is canonical.
class MatPoly {
public:
    MatPoly() = default;
    MatPoly(int d, int p, int q) : d_(d), p_(p), q_(q) {}

    static MatPoly constant(int d, const CMat& c);
    // Scalar 1x1 coefficient `c` at the word g_j.
    static MatPoly letter(int d, int j, Complex c = Complex(1, 0));

    int alphabet_size() const { return d_; }
    int rows() const { return p_; }
    int cols() const { return q_; }
    // Max word length carrying a nonzero coefficient; 0 for the zero polynomial.
    int degree() const;

    const std::map<Word, CMat, WordOrder>& terms() const { return terms_; }
    CMat coeff(const Word& w) const;  // zero matrix if absent

    // Stores a coefficient; exact-zero matrices prune the word instead.
    void set_coeff(const Word& w, const CMat& c);
    void add_coeff(const Word& w, const CMat& c);

private:
    int d_ = 0, p_ = 0, q_ = 0;
    std::map<Word, CMat, WordOrder> terms_;
};

MatPoly add(const MatPoly& f, const MatPoly& g);
MatPoly scale(Complex a, const MatPoly& f);

// Convolution product: (fg)_w = sum over uv = w of f_u g_v. Shapes p x q
// times q x r give p x r; throws ShapeMismatch otherwise.
MatPoly convolve(const MatPoly& f, const MatPoly& g);

// Block-diagonal direct sum of coefficients, (p1+p2) x (q1+q2).
MatPoly poly_direct_sum(const MatPoly& f, const MatPoly& g);

// Ordered product X^w; the empty word gives the identity.
CMat word_eval(const MatTuple& x, const Word& w);

// Degree slices A_j = sum over |w| = j of f_w kron X^w, j = 0..degree.
// Word powers are memoized along the prefix tree of the support.
std::vector<CMat> homogeneous_slices(const MatPoly& f, const MatTuple& x);

// f(X) = sum_j A_j as a (p n) x (q n) matrix, summed degree by degree.
CMat evaluate(const MatPoly& f, const MatTuple& x);

// The degree-j slice of evaluate(f, X); zero above the degree.
CMat homogeneous_part(const MatPoly& f, const MatTuple& x, int j);

// Max over a uniform grid of theta of ||f(e^{i theta} X)||.
double circle_sup(const MatPoly& f, const MatTuple& x, int grid);

struct CauchyReport {
    double sup = 0.0;              // circle sup of f at rX
    std::vector<double> margins;   // sup - r^j ||A_j(X)|| per degree
    double min_margin() const;
};

// Certifies r^j ||A_j(X)|| <= circle_sup(f, rX, grid) + tol for every j up to
// the degree; throws ViolationError (an implementation-bug signal) otherwise.
CauchyReport cauchy_bound_check(const MatPoly& f, const MatTuple& x, double r, int grid,
                                double tol = 1e-8);

}  // namespace nccf

#endif

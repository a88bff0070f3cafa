#include "nccf/poly.hpp"

#include <cmath>
#include <limits>

#include "nccf/errors.hpp"

namespace nccf {

MatTuple MatTuple::scaled(Complex s) const {
    MatTuple out(d, n);
    for (int j = 0; j < d; ++j) out.mats[j] = s * mats[j];
    return out;
}

bool MatTuple::is_zero() const {
    for (const CMat& m : mats)
        if (m.cwiseAbs().maxCoeff() != 0.0) return false;
    return true;
}

MatPoly MatPoly::constant(int d, const CMat& c) {
    MatPoly f(d, static_cast<int>(c.rows()), static_cast<int>(c.cols()));
    f.set_coeff(Word(), c);
    return f;
}

MatPoly MatPoly::letter(int d, int j, Complex c) {
    MatPoly f(d, 1, 1);
    CMat m(1, 1);
    m(0, 0) = c;
    f.set_coeff(Word({j}), m);
    return f;
}

int MatPoly::degree() const {
    int deg = 0;
    for (const auto& [w, c] : terms_) deg = std::max(deg, w.length());
    return deg;
}

CMat MatPoly::coeff(const Word& w) const {
    auto it = terms_.find(w);
    if (it == terms_.end()) return CMat::Zero(p_, q_);
    return it->second;
}

void MatPoly::set_coeff(const Word& w, const CMat& c) {
    if (c.rows() != p_ || c.cols() != q_)
        throw ShapeMismatch("coefficient shape " + std::to_string(c.rows()) + "x" +
                            std::to_string(c.cols()) + " does not match " + std::to_string(p_) +
                            "x" + std::to_string(q_));
    for (int l : w.letters)
        if (l < 1 || l > d_) throw ParseError("word " + format_word(w) + " outside alphabet");
    if (c.cwiseAbs().maxCoeff() == 0.0) {
        terms_.erase(w);
        return;
    }
    terms_[w] = c;
}

void MatPoly::add_coeff(const Word& w, const CMat& c) { set_coeff(w, coeff(w) + c); }

MatPoly add(const MatPoly& f, const MatPoly& g) {
    if (f.rows() != g.rows() || f.cols() != g.cols() || f.alphabet_size() != g.alphabet_size())
        throw ShapeMismatch("polynomial sum needs matching shapes and alphabet");
    MatPoly out = f;
    for (const auto& [w, c] : g.terms()) out.add_coeff(w, c);
    return out;
}

MatPoly scale(Complex a, const MatPoly& f) {
    MatPoly out(f.alphabet_size(), f.rows(), f.cols());
    for (const auto& [w, c] : f.terms()) out.set_coeff(w, a * c);
    return out;
}

MatPoly convolve(const MatPoly& f, const MatPoly& g) {
    if (f.cols() != g.rows())
        throw ShapeMismatch("convolution inner shapes " + std::to_string(f.cols()) + " and " +
                            std::to_string(g.rows()) + " differ");
    if (f.alphabet_size() != g.alphabet_size())
        throw ShapeMismatch("convolution needs a common alphabet");
    MatPoly out(f.alphabet_size(), f.rows(), g.cols());
    for (const auto& [u, fu] : f.terms())
        for (const auto& [v, gv] : g.terms()) out.add_coeff(concat(u, v), fu * gv);
    return out;
}

MatPoly poly_direct_sum(const MatPoly& f, const MatPoly& g) {
    if (f.alphabet_size() != g.alphabet_size())
        throw ShapeMismatch("direct sum needs a common alphabet");
    MatPoly out(f.alphabet_size(), f.rows() + g.rows(), f.cols() + g.cols());
    auto blocked = [&](const CMat& a, const CMat& b) {
        CMat m = CMat::Zero(f.rows() + g.rows(), f.cols() + g.cols());
        m.topLeftCorner(f.rows(), f.cols()) = a;
        m.bottomRightCorner(g.rows(), g.cols()) = b;
        return m;
    };
    for (const auto& [w, c] : f.terms()) out.set_coeff(w, blocked(c, g.coeff(w)));
    for (const auto& [w, c] : g.terms())
        if (f.terms().find(w) == f.terms().end()) out.set_coeff(w, blocked(f.coeff(w), c));
    return out;
}

CMat word_eval(const MatTuple& x, const Word& w) {
    CMat acc = CMat::Identity(x.n, x.n);
    for (int l : w.letters) acc = acc * x.mats[l - 1];
    return acc;
}

namespace {

// Word powers along the prefix tree: X^{u g_j} = X^u X_j.
const CMat& word_power(const MatTuple& x, const Word& w, std::map<Word, CMat, WordOrder>& memo) {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    CMat val;
    if (w.empty()) {
        val = CMat::Identity(x.n, x.n);
    } else {
        const CMat& parent = word_power(x, w.prefix(w.length() - 1), memo);
        val = parent * x.mats[w.letters.back() - 1];
    }
    return memo.emplace(w, std::move(val)).first->second;
}

}  // namespace

std::vector<CMat> homogeneous_slices(const MatPoly& f, const MatTuple& x) {
    if (f.alphabet_size() != x.d)
        throw DimensionMismatch("polynomial over " + std::to_string(f.alphabet_size()) +
                                " letters evaluated at a " + std::to_string(x.d) + "-tuple");
    const int pn = f.rows() * x.n;
    const int qn = f.cols() * x.n;
    std::vector<CMat> slices(static_cast<std::size_t>(f.degree()) + 1, CMat::Zero(pn, qn));
    std::map<Word, CMat, WordOrder> memo;
    for (const auto& [w, c] : f.terms())
        slices[static_cast<std::size_t>(w.length())] += kron(c, word_power(x, w, memo));
    return slices;
}

CMat evaluate(const MatPoly& f, const MatTuple& x) {
    auto slices = homogeneous_slices(f, x);
    CMat acc = CMat::Zero(slices[0].rows(), slices[0].cols());
    for (const CMat& a : slices) acc += a;
    return acc;
}

CMat homogeneous_part(const MatPoly& f, const MatTuple& x, int j) {
    if (j > f.degree()) return CMat::Zero(f.rows() * x.n, f.cols() * x.n);
    return homogeneous_slices(f, x)[static_cast<std::size_t>(j)];
}

namespace {

double circle_sup_of_slices(const std::vector<CMat>& slices, int grid) {
    double best = 0.0;
    for (int k = 0; k < grid; ++k) {
        double theta = 2.0 * M_PI * k / grid;
        CMat acc = CMat::Zero(slices[0].rows(), slices[0].cols());
        for (std::size_t j = 0; j < slices.size(); ++j)
            acc += std::polar(1.0, theta * static_cast<double>(j)) * slices[j];
        best = std::max(best, op_norm(acc));
    }
    return best;
}

}  // namespace

double circle_sup(const MatPoly& f, const MatTuple& x, int grid) {
    return circle_sup_of_slices(homogeneous_slices(f, x), grid);
}

double CauchyReport::min_margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (double v : margins) m = std::min(m, v);
    return m;
}

CauchyReport cauchy_bound_check(const MatPoly& f, const MatTuple& x, double r, int grid,
                                double tol) {
    auto slices = homogeneous_slices(f, x);
    // Slices of f at rX are r^j A_j(X); reuse them for both sides.
    std::vector<CMat> scaled(slices.size());
    double rj = 1.0;
    for (std::size_t j = 0; j < slices.size(); ++j) {
        scaled[j] = rj * slices[j];
        rj *= r;
    }
    CauchyReport rep;
    rep.sup = circle_sup_of_slices(scaled, grid);
    for (const CMat& a : scaled) rep.margins.push_back(rep.sup - op_norm(a));
    if (rep.min_margin() < -tol)
        throw ViolationError("degree slice exceeds the contour bound by " +
                             std::to_string(-rep.min_margin()));
    return rep;
}

}  // namespace nccf

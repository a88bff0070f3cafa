#ifndef NCCF_TEST_UTIL_HPP
#define NCCF_TEST_UTIL_HPP

#include <random>

#include "nccf/poly.hpp"
#include "nccf/words.hpp"

namespace nccf::testutil {

inline MatTuple random_tuple(int d, int n, std::mt19937_64& rng, double scale = 1.0) {
    MatTuple x(d, n);
    for (int j = 0; j < d; ++j) x.mats[j] = scale * ginibre(n, n, rng);
    return x;
}

// Random polynomial with a dense-ish support up to the given degree.
inline MatPoly random_poly(int d, int p, int q, int degree, std::mt19937_64& rng,
                           double keep_prob = 0.6) {
    MatPoly f(d, p, q);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int j = 0; j <= degree; ++j)
        for (const Word& w : words_of_length(d, j))
            if (u(rng) < keep_prob) f.set_coeff(w, ginibre(p, q, rng));
    return f;
}

// Brute-force evaluation: no memoization, no slice bookkeeping.
inline CMat naive_evaluate(const MatPoly& f, const MatTuple& x) {
    CMat acc = CMat::Zero(f.rows() * x.n, f.cols() * x.n);
    for (const auto& [w, c] : f.terms()) {
        CMat pw = CMat::Identity(x.n, x.n);
        for (int l : w.letters) pw = pw * x.mats[l - 1];
        acc += kron(c, pw);
    }
    return acc;
}

}  // namespace nccf::testutil

#endif

#ifndef NCCF_LINALG_HPP
#define NCCF_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace nccf {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Largest singular value; 0 for an empty matrix.
double op_norm(const CMat& a);

// Smallest eigenvalue of the Hermitian part (a + a*)/2.
double min_eig_hermitian(const CMat& a);

// Spectral radius (general square matrix).
double spectral_radius(const CMat& a);

CMat kron(const CMat& a, const CMat& b);

// v* v == I within tol.
bool is_isometry(const CMat& v, double tol = 1e-12);

// Derives an independent stream seed from a base seed (splitmix64 step).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// iid standard complex normal entries, E|z|^2 = 1.
CMat ginibre(int rows, int cols, std::mt19937_64& rng);

CMat haar_unitary(int n, std::mt19937_64& rng);

// rows >= cols, columns orthonormal.
CMat random_isometry(int rows, int cols, std::mt19937_64& rng);

}  // namespace nccf

#endif

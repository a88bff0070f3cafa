#include "nccf/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "nccf/errors.hpp"

namespace nccf {

double op_norm(const CMat& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
    if (std::min(a.rows(), a.cols()) <= 2) {
        Eigen::JacobiSVD<CMat> svd(a);
        return svd.singularValues()(0);
    }
    // Largest eigenvalue of the smaller Gram matrix. Squaring halves the
    // attainable precision for the small singular values, but the top one
    // keeps full relative accuracy, which is all this norm reports.
    CMat g = a.rows() <= a.cols() ? CMat(a * a.adjoint()) : CMat(a.adjoint() * a);
    Eigen::SelfAdjointEigenSolver<CMat> es(g, Eigen::EigenvaluesOnly);
    double top = es.eigenvalues()(es.eigenvalues().size() - 1);
    return std::sqrt(std::max(top, 0.0));
}

double min_eig_hermitian(const CMat& a) {
    if (a.rows() == 0) return 0.0;
    CMat h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

double spectral_radius(const CMat& a) {
    if (a.rows() == 0) return 0.0;
    Eigen::ComplexEigenSolver<CMat> es(a, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

bool is_isometry(const CMat& v, double tol) {
    if (v.rows() < v.cols()) return false;
    CMat g = v.adjoint() * v;
    g -= CMat::Identity(v.cols(), v.cols());
    return g.cwiseAbs().maxCoeff() <= tol;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CMat ginibre(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    const double s = 1.0 / std::sqrt(2.0);
    CMat out(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) out(i, j) = Complex(g(rng) * s, g(rng) * s);
    return out;
}

CMat haar_unitary(int n, std::mt19937_64& rng) {
    CMat z = ginibre(n, n, rng);
    Eigen::HouseholderQR<CMat> qr(z);
    CMat q = qr.householderQ();
    CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix column phases so the distribution is Haar, not merely unitary.
    for (int j = 0; j < n; ++j) {
        Complex d = r(j, j);
        double ad = std::abs(d);
        q.col(j) *= (ad > 0) ? d / ad : Complex(1, 0);
    }
    return q;
}

CMat random_isometry(int rows, int cols, std::mt19937_64& rng) {
    if (rows < cols) throw NotIsometry("isometry needs rows >= cols");
    return haar_unitary(rows, rng).leftCols(cols);
}

}  // namespace nccf

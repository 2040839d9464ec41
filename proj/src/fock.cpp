#include "tfd/fock.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace tfd {

FockSpace make_space(Statistics stat, int cutoff) {
  if (stat == Statistics::fermion) return {stat, 2};
  if (cutoff < 1) throw std::invalid_argument("boson cutoff must be at least 1");
  return {stat, cutoff + 1};
}

Mat annihilator(const FockSpace& space) {
  Mat a = Mat::Zero(space.dim, space.dim);
  for (int n = 1; n < space.dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Mat creator(const FockSpace& space) { return annihilator(space).adjoint(); }

Mat number_op(const FockSpace& space) {
  Mat n = Mat::Zero(space.dim, space.dim);
  for (int k = 0; k < space.dim; ++k) n(k, k) = double(k);
  return n;
}

Vec basis_ket(const FockSpace& space, int n) {
  if (n < 0 || n >= space.dim) throw std::out_of_range("basis index outside the ladder");
  Vec k = Vec::Zero(space.dim);
  k(n) = 1.0;
  return k;
}

Vec apply(const Mat& op, const Vec& k) {
  if (op.cols() != k.size())
    throw std::invalid_argument("operator and ket live on different spaces");
  return op * k;
}

Complex inner(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("kets live on different spaces");
  return a.dot(b);
}

double norm_of(const Vec& k) { return k.norm(); }

Vec scale_add(Complex z, const Vec& a, Complex w, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("kets live on different spaces");
  return z * a + w * b;
}

Mat matrix_exp(const Mat& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("matrix exponential needs a square matrix");
  if (!m.allFinite())
    throw std::invalid_argument("matrix exponential given non-finite entries");
  // Every generator in this code base is real once the leading i has been
  // absorbed, and the real Pade path is severalfold faster than the complex
  // one at the dimensions the bosonic runs reach.
  if ((m.imag().array() == 0.0).all()) {
    Eigen::MatrixXd e = m.real().exp();
    return e.cast<Complex>();
  }
  return m.exp();
}

Hamiltonian oscillator_hamiltonian(const FockSpace& space, double omega) {
  if (omega <= 0) throw std::invalid_argument("oscillator frequency must be positive");
  Hamiltonian h;
  h.op = omega * number_op(space);
  h.spectrum = omega * Eigen::VectorXd::LinSpaced(space.dim, 0.0, double(space.dim - 1));
  return h;
}

}  // namespace tfd

#include "tfd/doubled.hpp"

#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace tfd {

namespace {

void require_phys_op(const DoubledSpace& ds, const Mat& op) {
  if (op.rows() != ds.phys.dim || op.cols() != ds.phys.dim)
    throw std::invalid_argument("operator does not act on the single-mode space");
}

}  // namespace

KleinConvention klein_for(Statistics stat) {
  return {stat == Statistics::fermion};
}

int DoubledSpace::flat(int n, int m) const {
  if (n < 0 || n >= phys.dim || m < 0 || m >= phys.dim)
    throw std::out_of_range("occupation pair outside the doubled ladder");
  return n * phys.dim + m;
}

std::pair<int, int> DoubledSpace::unflat(int i) const {
  if (i < 0 || i >= dim()) throw std::out_of_range("flat index outside the doubled ladder");
  return {i / phys.dim, i % phys.dim};
}

DoubledSpace doubled(const FockSpace& phys) { return {phys}; }

Vec basis_ket(const DoubledSpace& ds, int n, int m) {
  Vec k = Vec::Zero(ds.dim());
  k(ds.flat(n, m)) = 1.0;
  return k;
}

Mat parity_op(const FockSpace& space) {
  Mat p = Mat::Zero(space.dim, space.dim);
  for (int n = 0; n < space.dim; ++n) p(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return p;
}

Mat lift_physical(const DoubledSpace& ds, const Mat& op) {
  require_phys_op(ds, op);
  Mat id = Mat::Identity(ds.phys.dim, ds.phys.dim);
  return Eigen::kroneckerProduct(op, id);
}

Mat lift_tilde(const DoubledSpace& ds, const Mat& op, const KleinConvention& klein) {
  require_phys_op(ds, op);
  if (klein.enabled != (ds.phys.stat == Statistics::fermion))
    throw std::invalid_argument("Klein convention does not match the statistics");
  Mat id = Mat::Identity(ds.phys.dim, ds.phys.dim);
  Mat c = op.conjugate();
  if (!klein.enabled) return Eigen::kroneckerProduct(id, c);
  // Only the parity-odd piece of the operator drags the Klein string along
  // the physical slot. Lifting the string uniformly would flip signs on even
  // products such as a'a and break the mirror-algebra product rule.
  Mat p = parity_op(ds.phys);
  Mat even = 0.5 * (c + p * c * p);
  Mat odd = 0.5 * (c - p * c * p);
  return Eigen::kroneckerProduct(id, even) + Eigen::kroneckerProduct(p, odd);
}

Mat lift_tilde(const DoubledSpace& ds, const Mat& op) {
  return lift_tilde(ds, op, klein_for(ds.phys.stat));
}

Vec tilde_map_ket_real(const Vec& k) { return k; }

Vec tilde_map_ket(const Vec& k) { return k.conjugate(); }

Vec tensor(const DoubledSpace& ds, const Vec& phys_ket, const Vec& tilde_ket) {
  if (phys_ket.size() != ds.phys.dim || tilde_ket.size() != ds.phys.dim)
    throw std::invalid_argument("tensor factors do not match the single-mode space");
  Vec out(ds.dim());
  for (int n = 0; n < ds.phys.dim; ++n)
    for (int m = 0; m < ds.phys.dim; ++m) out(n * ds.phys.dim + m) = phys_ket(n) * tilde_ket(m);
  return out;
}

Mat partial_trace_tilde(const DoubledSpace& ds, const Mat& rho2) {
  if (rho2.rows() != rho2.cols()) throw std::invalid_argument("density matrix must be square");
  if (rho2.rows() != ds.dim())
    throw std::invalid_argument("density matrix does not act on the doubled space");
  const int d = ds.phys.dim;
  Mat rho = Mat::Zero(d, d);
  for (int n = 0; n < d; ++n)
    for (int np = 0; np < d; ++np)
      for (int m = 0; m < d; ++m) rho(n, np) += rho2(n * d + m, np * d + m);
  return rho;
}

}  // namespace tfd

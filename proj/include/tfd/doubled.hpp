#pragma once

#include <utility>

#include "tfd/fock.hpp"

namespace tfd {

// Whether tilde-side operators carry the fermionic parity string. The flag is
// fixed by the statistics; it is spelled out as a type so call sites show
// which sign convention they are committed to.
struct KleinConvention {
  bool enabled;
};

KleinConvention klein_for(Statistics stat);

// Two copies of one mode, glued index-wise by flat(n, m) = n*dim + m with n
// the physical occupation and m the tilde occupation.
struct DoubledSpace {
  FockSpace phys;

  int dim() const { return phys.dim * phys.dim; }
  int flat(int n, int m) const;
  std::pair<int, int> unflat(int i) const;
};

DoubledSpace doubled(const FockSpace& phys);

Vec basis_ket(const DoubledSpace& ds, int n, int m);

Mat parity_op(const FockSpace& space);

Mat lift_physical(const DoubledSpace& ds, const Mat& op);
Mat lift_tilde(const DoubledSpace& ds, const Mat& op, const KleinConvention& klein);
Mat lift_tilde(const DoubledSpace& ds, const Mat& op);

// Copies of a physical ket on the tilde slot: plain (real-coefficient) and
// conjugated (the antilinear convention).
Vec tilde_map_ket_real(const Vec& k);
Vec tilde_map_ket(const Vec& k);

Vec tensor(const DoubledSpace& ds, const Vec& phys_ket, const Vec& tilde_ket);

Mat partial_trace_tilde(const DoubledSpace& ds, const Mat& rho2);

}  // namespace tfd

#include "tfd/thermal.hpp"

#include <cmath>
#include <stdexcept>

namespace tfd {

namespace {

const Complex kI(0.0, 1.0);

void require_params(const DoubledSpace& ds, const ThermalParams& p) {
  if (p.stat != ds.phys.stat)
    throw std::invalid_argument("thermal parameters carry the wrong statistics");
}

// Matrix elements of the pair creator a' b~' along the paired ladder
// |k, k~> -> |k+1, (k+1)~>. Mirrors the kron structure of lift_physical and
// lift_tilde, including the graded sign the Klein string puts on odd mirror
// operators; the unit tests pin this against the full-space product.
Mat pair_creator_on_ladder(const FockSpace& space) {
  Mat c = creator(space);
  Mat t = c.conjugate();
  if (space.stat != Statistics::fermion) return c.cwiseProduct(t);
  Mat p = parity_op(space);
  Mat even = 0.5 * (t + p * t * p);
  Mat odd = 0.5 * (t - p * t * p);
  Mat x(space.dim, space.dim);
  for (int k = 0; k < space.dim; ++k) {
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    x.col(k) = c.col(k).cwiseProduct(even.col(k) + sign * odd.col(k));
  }
  return x;
}

}  // namespace

ThermalParams mixing_angle(double beta, double omega, Statistics stat) {
  if (std::isnan(beta) || std::isnan(omega))
    throw std::invalid_argument("mixing angle given NaN input");
  if (omega <= 0.0) throw std::invalid_argument("mode frequency must be positive");
  if (beta < 0.0) throw std::invalid_argument("inverse temperature must be nonnegative");
  if (beta == 0.0 && stat == Statistics::boson)
    throw std::invalid_argument("bosonic mixing angle diverges at infinite temperature");

  ThermalParams p;
  p.beta = beta;
  p.omega = omega;
  p.stat = stat;
  if (std::isinf(beta)) {
    p.theta = 0.0;
    p.u = 1.0;
    p.v = 0.0;
    return p;
  }
  double x = std::exp(-beta * omega / 2.0);
  if (stat == Statistics::fermion) {
    p.theta = std::atan(x);
    p.u = std::cos(p.theta);
    p.v = std::sin(p.theta);
  } else {
    p.theta = std::atanh(x);
    p.u = std::cosh(p.theta);
    p.v = std::sinh(p.theta);
  }
  return p;
}

BogoliubovGenerator bogoliubov_generator(const DoubledSpace& ds, const ThermalParams& params) {
  require_params(ds, params);
  // i*theta*(X - X') with X the pair creator a' b~'. Writing the lowering
  // term as the adjoint of X fixes the operator ordering so the generator
  // stays Hermitian for fermions, where the lifted slots anticommute.
  Mat x = lift_physical(ds, creator(ds.phys)) * lift_tilde(ds, creator(ds.phys));
  BogoliubovGenerator gen;
  gen.op = kI * params.theta * (x - Mat(x.adjoint()));
  gen.params = params;
  return gen;
}

ThermalState thermal_vacuum_series(const DoubledSpace& ds, double beta, const Hamiltonian& h) {
  if (h.spectrum.size() != ds.phys.dim)
    throw std::invalid_argument("Hamiltonian does not act on the single-mode space");
  if (std::isnan(beta) || beta < 0.0)
    throw std::invalid_argument("inverse temperature must be nonnegative");

  const int d = ds.phys.dim;
  const double e0 = h.spectrum.minCoeff();
  ThermalState ts;
  ts.beta = beta;
  ts.ket = Vec::Zero(ds.dim());

  if (std::isinf(beta)) {
    int ground = 0;
    h.spectrum.minCoeff(&ground);
    ts.ket(ds.flat(ground, ground)) = 1.0;
    ts.z_partition = (e0 == 0.0) ? 1.0 : 0.0;
    return ts;
  }

  // shift by the ground energy so large beta cannot underflow everything
  double shifted_z = 0.0;
  for (int n = 0; n < d; ++n) shifted_z += std::exp(-beta * (h.spectrum(n) - e0));
  for (int n = 0; n < d; ++n)
    ts.ket(ds.flat(n, n)) = std::exp(-beta * (h.spectrum(n) - e0) / 2.0) / std::sqrt(shifted_z);
  ts.z_partition = std::exp(-beta * e0) * shifted_z;
  return ts;
}

ThermalState thermal_vacuum_unitary(const DoubledSpace& ds, const ThermalParams& params) {
  require_params(ds, params);
  const int d = ds.phys.dim;
  // The generator only moves |n, m~> to |n+-1, (m+-1)~>, so the paired ladder
  // holding the cold vacuum is an invariant subspace and the rotation can be
  // exponentiated on its d x d restriction. Exact, and it keeps deep bosonic
  // cutoffs affordable; thermal_op still exponentiates on the full space.
  Mat x = pair_creator_on_ladder(ds.phys);
  Mat g = kI * params.theta * (x - Mat(x.adjoint()));
  Mat u = matrix_exp(-kI * g);
  ThermalState ts;
  ts.beta = params.beta;
  ts.ket = Vec::Zero(ds.dim());
  for (int n = 0; n < d; ++n) ts.ket(ds.flat(n, n)) = u(n, 0);
  double amp = std::abs(ts.ket(ds.flat(0, 0)));
  if (amp <= 0.0) throw std::runtime_error("cold-vacuum amplitude vanished; cannot recover Z");
  ts.z_partition = 1.0 / (amp * amp);
  return ts;
}

Mat thermal_op(const DoubledSpace& ds, const Mat& doubled_op, const BogoliubovGenerator& gen) {
  if (doubled_op.rows() != ds.dim() || doubled_op.cols() != ds.dim())
    throw std::invalid_argument("operator does not act on the doubled space");
  Mat u = matrix_exp(-kI * gen.op);
  return u * doubled_op * u.adjoint();
}

Vec excitation(const DoubledSpace& ds, const BogoliubovGenerator& gen, Mode which) {
  // U a' U^-1 U |0,0~> collapses to U a' |0,0~>, which keeps unit norm.
  Mat lifted = (which == Mode::phys) ? lift_physical(ds, creator(ds.phys))
                                     : lift_tilde(ds, creator(ds.phys));
  Mat u = matrix_exp(-kI * gen.op);
  return u * (lifted * basis_ket(ds, 0, 0));
}

Mat hbar_op(const DoubledSpace& ds, double omega) {
  if (omega <= 0.0) throw std::invalid_argument("mode frequency must be positive");
  Mat n = number_op(ds.phys);
  return omega * (lift_physical(ds, n) - lift_tilde(ds, n));
}

Complex expectation(const DoubledSpace& ds, const Vec& state, const Mat& phys_op) {
  const int d = ds.phys.dim;
  if (state.size() != ds.dim()) throw std::invalid_argument("state does not live on the doubled space");
  if (phys_op.rows() != d || phys_op.cols() != d)
    throw std::invalid_argument("observable does not act on the single-mode space");
  // contract <psi| (op x 1) |psi> through the d x d amplitude table instead of
  // forming the lifted operator; big bosonic cutoffs stay cheap this way
  Mat psi(d, d);
  for (int n = 0; n < d; ++n)
    for (int m = 0; m < d; ++m) psi(n, m) = state(n * d + m);
  return (psi.adjoint() * phys_op * psi).trace();
}

double mean_occupation(double beta, double omega, Statistics stat) {
  if (std::isnan(beta) || std::isnan(omega))
    throw std::invalid_argument("mean occupation given NaN input");
  if (omega <= 0.0) throw std::invalid_argument("mode frequency must be positive");
  if (beta < 0.0) throw std::invalid_argument("inverse temperature must be nonnegative");
  if (std::isinf(beta)) return 0.0;
  if (stat == Statistics::fermion) return 1.0 / (std::exp(beta * omega) + 1.0);
  if (beta == 0.0) throw std::invalid_argument("bosonic occupation diverges at infinite temperature");
  return 1.0 / std::expm1(beta * omega);
}

}  // namespace tfd

#include "tfd/noclone.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tfd {

namespace {

Vec kron_vec(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) out(i * b.size() + j) = a(i) * b(j);
  return out;
}

void check_pair(const DoubledSpace& ds, const CloneSpec& spec) {
  const int d = ds.phys.dim;
  if (spec.n < 0 || spec.n >= d || spec.m < 0 || spec.m >= d)
    throw std::invalid_argument("clone levels outside the space");
  if (spec.n == spec.m) throw std::invalid_argument("clone levels must differ");
  double nrm = std::norm(spec.z) + std::norm(spec.w);
  if (std::abs(nrm - 1.0) > 1e-10)
    throw std::invalid_argument("clone coefficients must be normalized");
}

void check_thermal(const ThermalCloneSpec& spec) {
  if (!std::isfinite(spec.beta_omega) || spec.beta_omega <= 0.0)
    throw std::invalid_argument("beta * omega must be positive and finite");
  double nrm = std::norm(spec.u) + std::norm(spec.v);
  if (std::abs(nrm - 1.0) > 1e-10)
    throw std::invalid_argument("clone coefficients must be normalized");
}

}  // namespace

Vec d_tfd_basis(const DoubledSpace& ds, int n) { return basis_ket(ds, n, n); }

Vec d_tfd_clone(const DoubledSpace& ds, const CloneSpec& spec) {
  check_pair(ds, spec);
  const int d = ds.phys.dim;
  Vec phys = Vec::Zero(d);
  phys(spec.n) = spec.z;
  phys(spec.m) = spec.w;
  Vec mirror = Vec::Zero(d);
  if (spec.branch == TildeBranch::real) {
    mirror(spec.n) = spec.z;
    mirror(spec.m) = spec.w;
  } else {
    mirror(spec.n) = std::conj(spec.z);
    mirror(spec.m) = std::conj(spec.w);
  }
  return kron_vec(phys, mirror);
}

Vec d_tfd_linear(const DoubledSpace& ds, const CloneSpec& spec) {
  check_pair(ds, spec);
  return spec.z * d_tfd_basis(ds, spec.n) + spec.w * d_tfd_basis(ds, spec.m);
}

double cloning_residual(const Vec& linear, const Vec& clone) {
  if (linear.size() != clone.size())
    throw std::invalid_argument("residual needs vectors of equal length");
  return (linear - clone).norm();
}

double distance_up_to_phase(const Vec& a, const Vec& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("distance needs vectors of equal length");
  double s = a.squaredNorm() + b.squaredNorm() - 2.0 * std::abs(a.dot(b));
  return std::sqrt(std::max(s, 0.0));
}

MachineCloneResult generic_machine_clone(const FockSpace& space, const CloneSpec& spec,
                                         MachineStates machine, int ancilla_dim) {
  DoubledSpace copies = doubled(space);  // two copies of the same mode, no mirror role
  check_pair(copies, spec);
  if (ancilla_dim < 3) throw std::invalid_argument("machine register needs at least 3 states");

  const int d = space.dim;
  Vec sup = Vec::Zero(d);
  sup(spec.n) = spec.z;
  sup(spec.m) = spec.w;

  Vec a_n = Vec::Zero(ancilla_dim);
  a_n(1) = 1.0;
  Vec a_m = Vec::Zero(ancilla_dim);
  a_m(machine == MachineStates::equal ? 1 : 2) = 1.0;

  // Linearity fixes the output from the basis action |A_0>|k> -> |A_k>|k,k>.
  Vec nn = basis_ket(copies, spec.n, spec.n);
  Vec mm = basis_ket(copies, spec.m, spec.m);
  Vec output = spec.z * kron_vec(a_n, nn) + spec.w * kron_vec(a_m, mm);
  Vec desired = kron_vec(a_n, kron_vec(sup, sup));

  MachineCloneResult res;
  res.residual = (desired - output).norm();

  Mat coeff(ancilla_dim, d * d);
  for (int i = 0; i < ancilla_dim; ++i)
    for (int j = 0; j < d * d; ++j) coeff(i, j) = output(i * d * d + j);
  Eigen::JacobiSVD<Mat> svd(coeff);
  res.schmidt = svd.singularValues();
  return res;
}

namespace {

struct ThermalPair {
  Vec ground;  // |0(beta)>
  Vec first;   // normalized thermal one-quantum state over it
};

ThermalPair thermal_pair(const DoubledSpace& ds, double beta_omega) {
  ThermalParams params = mixing_angle(beta_omega, 1.0, ds.phys.stat);
  BogoliubovGenerator gen = bogoliubov_generator(ds, params);
  ThermalPair pair;
  pair.ground = thermal_vacuum_unitary(ds, params).ket;
  pair.first = excitation(ds, gen, Mode::phys);
  return pair;
}

}  // namespace

Vec c_tfd_clone(const DoubledSpace& ds, const ThermalCloneSpec& spec) {
  check_thermal(spec);
  ThermalPair pair = thermal_pair(ds, spec.beta_omega);
  Vec psi = spec.u * pair.ground + spec.v * pair.first;
  return kron_vec(psi, psi);
}

Vec c_tfd_linear(const DoubledSpace& ds, const ThermalCloneSpec& spec) {
  check_thermal(spec);
  ThermalPair pair = thermal_pair(ds, spec.beta_omega);
  return spec.u * kron_vec(pair.ground, pair.ground) +
         spec.v * kron_vec(pair.first, pair.first);
}

CloneReport scan(const DoubledSpace& ds, ScanTarget which, TildeBranch branch, int resolution,
                 double beta_omega, double tol) {
  if (resolution < 2) throw std::invalid_argument("scan needs at least two grid points");
  if (!(tol > 0.0)) throw std::invalid_argument("scan tolerance must be positive");

  CloneReport report;
  report.which = which;
  report.branch = branch;
  report.resolution = resolution;
  report.beta_omega = which == ScanTarget::c_tfd ? beta_omega : 0.0;
  report.tol = tol;

  // Thermal pair is beta-dependent but phi-independent; build it once.
  ThermalPair pair;
  if (which == ScanTarget::c_tfd) {
    if (!std::isfinite(beta_omega) || beta_omega <= 0.0)
      throw std::invalid_argument("beta * omega must be positive and finite");
    pair = thermal_pair(ds, beta_omega);
  }

  const double chi =
      (which == ScanTarget::d_tfd && branch == TildeBranch::conjugate) ? M_PI / 2.0 : 0.0;
  const Complex phase = std::exp(Complex(0.0, chi));

  auto states_at = [&](double phi) -> std::pair<Vec, Vec> {
    Complex z = std::cos(phi);
    Complex w = phase * std::sin(phi);
    if (which == ScanTarget::d_tfd) {
      CloneSpec spec{0, 1, z, w, branch};
      return {d_tfd_linear(ds, spec), d_tfd_clone(ds, spec)};
    }
    Vec psi = z * pair.ground + w * pair.first;
    Vec linear = z * kron_vec(pair.ground, pair.ground) + w * kron_vec(pair.first, pair.first);
    return {linear, kron_vec(psi, psi)};
  };

  report.entries.reserve(resolution);
  report.max_residual = 0.0;
  report.phi_at_max = 0.0;
  double min_nonzero = std::numeric_limits<double>::infinity();
  for (int k = 0; k < resolution; ++k) {
    double phi = static_cast<double>(k) * (M_PI / 2.0) / (resolution - 1);
    auto [linear, clone] = states_at(phi);
    CloneScanEntry entry;
    entry.phi = phi;
    entry.z = std::cos(phi);
    entry.w = phase * std::sin(phi);
    entry.residual = cloning_residual(linear, clone);
    if (entry.residual < tol) {
      report.zero_locus.push_back(k);
    } else {
      min_nonzero = std::min(min_nonzero, entry.residual);
    }
    if (entry.residual > report.max_residual) {
      report.max_residual = entry.residual;
      report.phi_at_max = phi;
    }
    report.entries.push_back(entry);
  }
  report.min_nonzero = std::isfinite(min_nonzero) ? min_nonzero : 0.0;

  auto [lin0, cl0] = states_at(0.0);
  auto [lin1, cl1] = states_at(M_PI / 2.0);
  report.corner_defect =
      std::max(distance_up_to_phase(lin0, cl0), distance_up_to_phase(lin1, cl1));

  report.nontrivial_zero = false;
  for (int idx : report.zero_locus)
    if (idx != 0 && idx != resolution - 1) report.nontrivial_zero = true;

  return report;
}

}  // namespace tfd

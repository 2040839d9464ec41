#include "tfd/entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace tfd {

namespace {

constexpr double kEigenFloor = -1e-12;

Eigen::VectorXd spectrum_of(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigenvalue computation failed");
  return solver.eigenvalues();
}

}  // namespace

DensityMatrix density_matrix(Mat m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("density matrix must be square");
  if (!m.allFinite()) throw std::invalid_argument("density matrix has non-finite entries");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(m.trace() - Complex(1.0)) > 1e-12)
    throw std::invalid_argument("density matrix trace is not 1");
  if (spectrum_of(m).minCoeff() < kEigenFloor)
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  return DensityMatrix{std::move(m)};
}

DensityMatrix gibbs_density(const FockSpace& space, double beta, const Hamiltonian& h) {
  if (h.spectrum.size() != space.dim)
    throw std::invalid_argument("Hamiltonian does not act on the given space");
  if (std::isnan(beta) || beta < 0.0)
    throw std::invalid_argument("inverse temperature must be nonnegative");
  const double e0 = h.spectrum.minCoeff();
  Mat rho = Mat::Zero(space.dim, space.dim);
  if (std::isinf(beta)) {
    int ground = 0;
    h.spectrum.minCoeff(&ground);
    rho(ground, ground) = 1.0;
    return DensityMatrix{std::move(rho)};
  }
  double z = 0.0;
  for (int n = 0; n < space.dim; ++n) z += std::exp(-beta * (h.spectrum(n) - e0));
  for (int n = 0; n < space.dim; ++n)
    rho(n, n) = std::exp(-beta * (h.spectrum(n) - e0)) / z;
  return DensityMatrix{std::move(rho)};
}

DensityMatrix pure_density(const Vec& k) {
  if (std::abs(k.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("pure state must be normalized");
  return DensityMatrix{Mat(k * k.adjoint())};
}

DensityMatrix reduced_state_of_vacuum(const DoubledSpace& ds, const ThermalState& ts) {
  Mat projector = ts.ket * ts.ket.adjoint();
  return density_matrix(partial_trace_tilde(ds, projector));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::VectorXd lambda = spectrum_of(rho.mat);
  double s = 0.0;
  for (int i = 0; i < lambda.size(); ++i) {
    double p = lambda(i);
    if (p < kEigenFloor) throw std::invalid_argument("density matrix has a negative eigenvalue");
    if (p <= 0.0) continue;
    s -= p * std::log(p);
  }
  return s;
}

double entropy_closed_form_fermion(double beta, double omega) {
  if (std::isnan(beta) || beta < 0.0)
    throw std::invalid_argument("inverse temperature must be nonnegative");
  if (omega <= 0.0) throw std::invalid_argument("mode frequency must be positive");
  if (std::isinf(beta)) return 0.0;
  double bw = beta * omega;
  double x = std::exp(-bw);
  // log1p keeps the deep-cold points alive; at bw = 100 the entropy is ~4e-42
  return bw * x / (1.0 + x) + std::log1p(x);
}

double log_partition(double beta, const Hamiltonian& h) {
  if (std::isnan(beta) || beta < 0.0)
    throw std::invalid_argument("inverse temperature must be nonnegative");
  const double e0 = h.spectrum.minCoeff();
  if (std::isinf(beta)) {
    if (e0 > 0.0) return -std::numeric_limits<double>::infinity();
    int count = 0;
    for (int n = 0; n < h.spectrum.size(); ++n)
      if (h.spectrum(n) == e0) ++count;
    return std::log(double(count));
  }
  double shifted = 0.0;
  for (int n = 0; n < h.spectrum.size(); ++n) shifted += std::exp(-beta * (h.spectrum(n) - e0));
  return -beta * e0 + std::log(shifted);
}

double entropy_identity_check(const DensityMatrix& rho, double beta, const Hamiltonian& h,
                              double z) {
  if (z <= 0.0) throw std::invalid_argument("partition function must be positive");
  double s = von_neumann_entropy(rho);
  double energy = (rho.mat * h.op).trace().real();
  double heat;
  if (std::isinf(beta)) {
    // ground sector: beta*<H> tends to 0 whenever <H> vanishes with 1/beta
    heat = (std::abs(energy) <= 1e-12) ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    heat = beta * energy;
  }
  return std::abs(s - (heat + std::log(z)));
}

double purity_defect(const DensityMatrix& rho) {
  Mat m = rho.mat - rho.mat * rho.mat;
  return spectrum_of(m).cwiseAbs().maxCoeff();
}

std::vector<EntropyPoint> entropy_curve(const std::vector<double>& t_grid) {
  std::vector<EntropyPoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t > 0.0)) throw std::invalid_argument("temperatures must be positive");
    out.push_back({t, entropy_closed_form_fermion(1.0 / t, 1.0)});
  }
  return out;
}

std::vector<double> default_temperature_grid() {
  const int count = 200;
  const double lo = 1e-2, hi = 1e3;
  std::vector<double> grid(count);
  grid.front() = lo;
  grid.back() = hi;
  const double step = (std::log10(hi) - std::log10(lo)) / (count - 1);
  for (int k = 1; k + 1 < count; ++k) grid[k] = std::pow(10.0, std::log10(lo) + k * step);
  return grid;
}

}  // namespace tfd

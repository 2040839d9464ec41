#pragma once

#include <vector>

#include "tfd/thermal.hpp"

namespace tfd {

// Density matrix vetted on construction: Hermitian, unit trace, spectrum
// bounded below by -1e-12. Use the factories below rather than filling the
// struct by hand.
struct DensityMatrix {
  Mat mat;
};

DensityMatrix density_matrix(Mat m);
DensityMatrix gibbs_density(const FockSpace& space, double beta, const Hamiltonian& h);
DensityMatrix pure_density(const Vec& k);
DensityMatrix reduced_state_of_vacuum(const DoubledSpace& ds, const ThermalState& ts);

// -Tr rho ln rho in nats; eigenvalues in [-1e-12, 0] are treated as 0.
double von_neumann_entropy(const DensityMatrix& rho);

// beta*omega*e^{-beta*omega}/(1+e^{-beta*omega}) + ln(1+e^{-beta*omega})
double entropy_closed_form_fermion(double beta, double omega);

// ln Z evaluated with the spectrum shifted by its ground energy, so large
// beta stays finite.
double log_partition(double beta, const Hamiltonian& h);

// |S(rho) - (beta <H> + ln Z)|; zero for a Gibbs state.
double entropy_identity_check(const DensityMatrix& rho, double beta, const Hamiltonian& h,
                              double z);

// Spectral norm of rho(1 - rho); zero exactly on pure states.
double purity_defect(const DensityMatrix& rho);

struct EntropyPoint {
  double t_over_omega;
  double entropy;
};

// Fermion entropy against temperature, one point per grid value T/omega.
std::vector<EntropyPoint> entropy_curve(const std::vector<double>& t_grid);

// 200 log-spaced temperatures spanning [1e-2, 1e3], endpoints exact.
std::vector<double> default_temperature_grid();

}  // namespace tfd

#pragma once

#include "tfd/doubled.hpp"

namespace tfd {

// beta = +infinity is accepted everywhere as the zero-temperature limit flag.

struct ThermalParams {
  double beta;
  double omega;
  Statistics stat;
  double theta;  // mixing angle
  double u;      // cos(theta) for fermions, cosh(theta) for bosons
  double v;      // sin(theta) for fermions, sinh(theta) for bosons
};

ThermalParams mixing_angle(double beta, double omega, Statistics stat);

// Hermitian generator G; exp(-iG) rotates the cold doubled vacuum into the
// thermal one.
struct BogoliubovGenerator {
  Mat op;
  ThermalParams params;
};

BogoliubovGenerator bogoliubov_generator(const DoubledSpace& ds, const ThermalParams& params);

struct ThermalState {
  Vec ket;
  double beta;
  double z_partition;
};

// Ladder of e^{-beta E_n / 2} weights on the pair basis |n, n~>.
ThermalState thermal_vacuum_series(const DoubledSpace& ds, double beta, const Hamiltonian& h);

// exp(-iG) applied to |0, 0~>; the partition function is recovered from the
// surviving amplitude of the cold vacuum.
ThermalState thermal_vacuum_unitary(const DoubledSpace& ds, const ThermalParams& params);

// Conjugation e^{-iG} op e^{+iG} of an operator on the doubled space.
Mat thermal_op(const DoubledSpace& ds, const Mat& doubled_op, const BogoliubovGenerator& gen);

enum class Mode { phys, tilde };

// Normalized one-quantum excitation over the thermal vacuum, on either slot.
Vec excitation(const DoubledSpace& ds, const BogoliubovGenerator& gen, Mode which);

// omega * (N_phys - N_tilde); annihilates every thermal vacuum.
Mat hbar_op(const DoubledSpace& ds, double omega);

// <state| (op x 1) |state> for an operator on the physical slot, contracted
// without materializing the lifted matrix.
Complex expectation(const DoubledSpace& ds, const Vec& state, const Mat& phys_op);

double mean_occupation(double beta, double omega, Statistics stat);

}  // namespace tfd

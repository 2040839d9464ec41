#pragma once

#include <vector>

#include "tfd/thermal.hpp"

namespace tfd {

// How superposition amplitudes ride onto the mirror slot when a basis-defined
// doubling map is pushed through a superposition: copied as-is, or conjugated
// (the antilinear extension). Both fail to clone; the scans check each.
enum class TildeBranch { real, conjugate };

struct CloneSpec {
  int n = 0;
  int m = 1;
  Complex z;
  Complex w;
  TildeBranch branch = TildeBranch::real;
};

// |n> -> |n, n~>, the doubling map on a basis ket.
Vec d_tfd_basis(const DoubledSpace& ds, int n);

// The doubling map applied to z|n> + w|m| as if it were a cloner: the mirror
// slot receives its own copy of the superposition (branch-dependent).
Vec d_tfd_clone(const DoubledSpace& ds, const CloneSpec& spec);

// What linearity actually produces: z|n,n~> + w|m,m~>.
Vec d_tfd_linear(const DoubledSpace& ds, const CloneSpec& spec);

// Plain Euclidean distance. No phase quotient; see distance_up_to_phase.
double cloning_residual(const Vec& linear, const Vec& clone);

// min over alpha of || a - e^{i alpha} b ||.
double distance_up_to_phase(const Vec& a, const Vec& b);

enum class MachineStates { equal, distinct };

struct MachineCloneResult {
  double residual;
  Eigen::VectorXd schmidt;  // coefficients across the machine | copies cut
};

// A would-be universal copier with an explicit machine register: the linear
// evolution sends |A_0>|psi> to sum_k c_k |A_k>|k,k>. The residual compares
// that against |A_n> tensor the perfect double copy; the Schmidt vector
// diagnoses machine-copy entanglement. Machine kets are orthonormal ancilla
// basis vectors (|A_n> = |A_m> in equal mode).
MachineCloneResult generic_machine_clone(const FockSpace& space, const CloneSpec& spec,
                                         MachineStates machine, int ancilla_dim = 3);

// Thermal cloning on the fourfold space: two copies of the doubled space.
struct ThermalCloneSpec {
  double beta_omega;
  Complex u;  // coefficient on |0(beta)>
  Complex v;  // coefficient on |1(beta)>
};

Vec c_tfd_clone(const DoubledSpace& ds, const ThermalCloneSpec& spec);
Vec c_tfd_linear(const DoubledSpace& ds, const ThermalCloneSpec& spec);

enum class ScanTarget { d_tfd, c_tfd };

struct CloneScanEntry {
  double phi;
  Complex z;
  Complex w;
  double residual;
};

struct CloneReport {
  ScanTarget which;
  TildeBranch branch;
  int resolution;
  double beta_omega;  // c_tfd only; 0 otherwise
  double tol;
  std::vector<CloneScanEntry> entries;
  std::vector<int> zero_locus;  // entry indices with residual < tol
  double min_nonzero;           // smallest residual outside the locus
  double max_residual;
  double phi_at_max;
  double corner_defect;  // worst phase-quotiented residual at the two corners
  bool nontrivial_zero;  // locus reaches beyond the corners: a cloning claim
};

// Sweep z = cos(phi), w = e^{i chi} sin(phi) over phi in [0, pi/2]. The real
// branch keeps chi = 0; the conjugate branch fixes chi = pi/2 so complex
// amplitudes are actually exercised. c_tfd applies (u, v) to the thermal pair
// and ignores the branch, which only concerns the mirror-slot copy rule.
CloneReport scan(const DoubledSpace& ds, ScanTarget which, TildeBranch branch, int resolution,
                 double beta_omega, double tol = 1e-9);

}  // namespace tfd

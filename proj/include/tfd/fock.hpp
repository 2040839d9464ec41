#pragma once

#include <complex>

#include <Eigen/Dense>

namespace tfd {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

enum class Statistics { boson, fermion };

// Single oscillator mode. Fermions occupy {|0>, |1>}; bosons live on the
// truncated ladder {|0>, ..., |cutoff>} and every routine downstream is
// expected to pick the cutoff so the Boltzmann tail it cares about is
// negligible.
struct FockSpace {
  Statistics stat;
  int dim;
};

FockSpace make_space(Statistics stat, int cutoff = 1);

Mat annihilator(const FockSpace& space);
Mat creator(const FockSpace& space);
Mat number_op(const FockSpace& space);
Vec basis_ket(const FockSpace& space, int n);

// Thin wrappers over the dense algebra that turn silent shape mismatches into
// exceptions. inner() conjugates its first argument.
Vec apply(const Mat& op, const Vec& k);
Complex inner(const Vec& a, const Vec& b);
double norm_of(const Vec& k);
Vec scale_add(Complex z, const Vec& a, Complex w, const Vec& b);

Mat matrix_exp(const Mat& m);

struct Hamiltonian {
  Mat op;
  Eigen::VectorXd spectrum;
};

Hamiltonian oscillator_hamiltonian(const FockSpace& space, double omega);

}  // namespace tfd

#include <doctest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "tfd/doubled.hpp"

using namespace tfd;

namespace {
const Complex I_UNIT(0.0, 1.0);

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("flat index layout") {
  auto ds = doubled(make_space(Statistics::boson, 3));
  CHECK(ds.dim() == 16);
  CHECK(ds.flat(2, 1) == 9);
  CHECK(ds.unflat(9) == std::pair<int, int>(2, 1));
  for (int n = 0; n < 4; ++n)
    for (int m = 0; m < 4; ++m) CHECK(ds.unflat(ds.flat(n, m)) == std::pair<int, int>(n, m));
  CHECK_THROWS_AS(ds.flat(4, 0), std::out_of_range);
  CHECK_THROWS_AS(ds.unflat(16), std::out_of_range);

  Vec k = basis_ket(ds, 2, 1);
  CHECK(k(9) == Complex(1.0));
  CHECK(norm_of(k) == 1.0);
}

TEST_CASE("physical lift is an exact algebra homomorphism") {
  auto ds = doubled(make_space(Statistics::boson, 4));
  std::mt19937 rng(7);
  Mat x = oracle::random_matrix(ds.phys.dim, rng);
  Mat y = oracle::random_matrix(ds.phys.dim, rng);
  CHECK(max_abs(lift_physical(ds, x * y) - lift_physical(ds, x) * lift_physical(ds, y)) <= 1e-13);
  CHECK(max_abs(lift_physical(ds, Mat::Identity(5, 5)) - Mat::Identity(25, 25)) == 0.0);
  CHECK_THROWS_AS(lift_physical(ds, Mat::Zero(3, 3)), std::invalid_argument);
}

TEST_CASE("boson lifts commute across the slots") {
  auto ds = doubled(make_space(Statistics::boson, 5));
  Mat a = annihilator(ds.phys);
  Mat at = creator(ds.phys);
  for (const Mat& phys : {a, at}) {
    for (const Mat& tild : {a, at}) {
      Mat p = lift_physical(ds, phys);
      Mat t = lift_tilde(ds, tild);
      CHECK(max_abs(p * t - t * p) == 0.0);
    }
  }
}

TEST_CASE("fermion lifts anticommute across the slots") {
  auto ds = doubled(make_space(Statistics::fermion));
  Mat a = annihilator(ds.phys);
  Mat at = creator(ds.phys);
  for (const Mat& phys : {a, at}) {
    for (const Mat& tild : {a, at}) {
      Mat p = lift_physical(ds, phys);
      Mat t = lift_tilde(ds, tild);
      CHECK(max_abs(p * t + t * p) == 0.0);
    }
  }
}

TEST_CASE("Klein string signs on the fermion basis") {
  auto ds = doubled(make_space(Statistics::fermion));
  Mat bt_dag = lift_tilde(ds, creator(ds.phys));
  CHECK(norm_of(tfd::apply(bt_dag, basis_ket(ds, 0, 0)) - basis_ket(ds, 0, 1)) == 0.0);
  // parity of the occupied physical slot flips the sign
  CHECK(norm_of(tfd::apply(bt_dag, basis_ket(ds, 1, 0)) + basis_ket(ds, 1, 1)) == 0.0);
}

TEST_CASE("mirror lift obeys the product rule on even products") {
  auto ds = doubled(make_space(Statistics::fermion));
  Mat a = annihilator(ds.phys);
  Mat at = creator(ds.phys);
  Mat n = at * a;

  CHECK(max_abs(lift_tilde(ds, n) - lift_tilde(ds, at) * lift_tilde(ds, a)) <= 1e-15);
  CHECK(max_abs(lift_tilde(ds, a * at) - lift_tilde(ds, a) * lift_tilde(ds, at)) <= 1e-15);
  CHECK(max_abs(lift_tilde(ds, n * n) - lift_tilde(ds, n) * lift_tilde(ds, n)) <= 1e-15);
}

TEST_CASE("boson mirror lift is a product-rule homomorphism on random operators") {
  auto ds = doubled(make_space(Statistics::boson, 3));
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Mat x = oracle::random_matrix(ds.phys.dim, rng);
    Mat y = oracle::random_matrix(ds.phys.dim, rng);
    CHECK(max_abs(lift_tilde(ds, x * y) - lift_tilde(ds, x) * lift_tilde(ds, y)) <= 1e-13);
  }
}

TEST_CASE("mirror lift is antilinear") {
  for (auto space : {make_space(Statistics::boson, 3), make_space(Statistics::fermion)}) {
    auto ds = doubled(space);
    std::mt19937 rng(13);
    Mat x = oracle::random_matrix(ds.phys.dim, rng);
    Mat y = oracle::random_matrix(ds.phys.dim, rng);
    Complex z(0.3, -1.2), w(-0.7, 0.4);
    Mat lhs = lift_tilde(ds, z * x + w * y);
    Mat rhs = std::conj(z) * lift_tilde(ds, x) + std::conj(w) * lift_tilde(ds, y);
    CHECK(max_abs(lhs - rhs) <= 1e-14);
  }
}

TEST_CASE("Klein convention must match the statistics") {
  auto fds = doubled(make_space(Statistics::fermion));
  auto bds = doubled(make_space(Statistics::boson, 2));
  CHECK(klein_for(Statistics::fermion).enabled);
  CHECK(!klein_for(Statistics::boson).enabled);
  CHECK_THROWS_AS(lift_tilde(fds, annihilator(fds.phys), KleinConvention{false}),
                  std::invalid_argument);
  CHECK_THROWS_AS(lift_tilde(bds, annihilator(bds.phys), KleinConvention{true}),
                  std::invalid_argument);
}

TEST_CASE("ket copies onto the mirror slot") {
  auto f = make_space(Statistics::fermion);
  Vec k = I_UNIT * basis_ket(f, 0);
  CHECK(norm_of(tilde_map_ket_real(k) - k) == 0.0);
  CHECK(norm_of(tilde_map_ket(k) + k) == 0.0);  // conjugation flips i|0> to -i|0>

  auto ds = doubled(f);
  Vec prod = tensor(ds, basis_ket(f, 1), tilde_map_ket_real(k));
  CHECK(std::abs(prod(ds.flat(1, 0)) - I_UNIT) == 0.0);
}

TEST_CASE("tensor places amplitudes at flat indices") {
  auto b = make_space(Statistics::boson, 2);
  auto ds = doubled(b);
  Vec x = basis_ket(b, 2), y = basis_ket(b, 1);
  Vec t = tensor(ds, x, y);
  CHECK(t(ds.flat(2, 1)) == Complex(1.0));
  CHECK(norm_of(t) == 1.0);
  CHECK_THROWS_AS(tensor(ds, Vec::Zero(2), y), std::invalid_argument);
}

TEST_CASE("partial trace over the mirror slot") {
  auto b = make_space(Statistics::boson, 2);
  auto ds = doubled(b);

  // product state traces back to its physical factor
  Vec phys = (basis_ket(b, 0) + I_UNIT * basis_ket(b, 2)) / std::sqrt(2.0);
  Vec tild = basis_ket(b, 1);
  Vec prod = tensor(ds, phys, tild);
  Mat rho2 = prod * prod.adjoint();
  Mat reduced = partial_trace_tilde(ds, rho2);
  CHECK(max_abs(reduced - phys * phys.adjoint()) <= 1e-15);
  CHECK(std::abs(reduced.trace() - Complex(1.0)) <= 1e-15);

  // maximally mixed reduction of a pair-correlated state
  Vec bell = (basis_ket(ds, 0, 0) + basis_ket(ds, 1, 1)) / std::sqrt(2.0);
  Mat rb = partial_trace_tilde(ds, Mat(bell * bell.adjoint()));
  CHECK(std::abs(rb(0, 0) - Complex(0.5)) <= 1e-15);
  CHECK(std::abs(rb(1, 1) - Complex(0.5)) <= 1e-15);
  CHECK(std::abs(rb(2, 2)) <= 1e-15);
  CHECK(std::abs(rb(0, 1)) <= 1e-15);

  CHECK_THROWS_AS(partial_trace_tilde(ds, Mat::Zero(9, 8)), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace_tilde(ds, Mat::Zero(4, 4)), std::invalid_argument);
}

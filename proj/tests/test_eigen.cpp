#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "qsu2/eigen.hpp"
#include "qsu2/root_params.hpp"
#include "qsu2/rng.hpp"

using namespace qsu2;

namespace {

// random unitary from Gram-Schmidt on a seeded complex Gaussian matrix
ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  ComplexMatrix q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    ComplexVector col(n);
    for (auto& c : col) c = {rng.next_gaussian(), rng.next_gaussian()};
    for (std::size_t prev = 0; prev < j; ++prev) {
      complexd ip{};
      for (std::size_t i = 0; i < n; ++i) ip += std::conj(q(i, prev)) * col[i];
      for (std::size_t i = 0; i < n; ++i) col[i] -= ip * q(i, prev);
    }
    double nrm = vec_norm(col);
    for (std::size_t i = 0; i < n; ++i) q(i, j) = col[i] / nrm;
  }
  return q;
}

ComplexMatrix hermitian_with_spectrum(const std::vector<double>& spec, std::uint64_t seed) {
  std::size_t n = spec.size();
  ComplexMatrix q = random_unitary(n, seed);
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      complexd acc{};
      for (std::size_t k = 0; k < n; ++k) acc += q(i, k) * spec[k] * std::conj(q(j, k));
      a(i, j) = acc;
    }
  return a;
}

}  // namespace

TEST_CASE("dense eigensolver recovers constructed spectra") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    std::vector<double> spec;
    SplitMix64 rng(seed * 97);
    std::size_t n = 8 + seed * 5;
    for (std::size_t i = 0; i < n; ++i) spec.push_back(10.0 * (rng.next_double() - 0.3));
    ComplexMatrix a = hermitian_with_spectrum(spec, seed);
    HermitianEigenResult res = hermitian_eigen(a);
    std::sort(spec.begin(), spec.end());
    REQUIRE(res.values.size() == n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(res.values[i] == doctest::Approx(spec[i]).epsilon(1e-10));
    // residual ||A v - lambda v|| per eigenpair
    for (std::size_t j = 0; j < n; ++j) {
      ComplexVector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = res.vectors(i, j);
      ComplexVector av = matvec(a, v);
      for (std::size_t i = 0; i < n; ++i) av[i] -= res.values[j] * v[i];
      CHECK(vec_norm(av) <= 1e-9);
    }
    CHECK(unitarity_residual(res.vectors) <= 1e-9);
  }
}

TEST_CASE("dense eigensolver on degenerate and tiny inputs") {
  ComplexMatrix one(1, 1);
  one(0, 0) = -3.5;
  auto res = hermitian_eigen(one);
  CHECK(res.values[0] == doctest::Approx(-3.5));

  // repeated eigenvalues
  ComplexMatrix a = hermitian_with_spectrum({2.0, 2.0, 2.0, 5.0}, 9);
  auto res2 = hermitian_eigen(a);
  CHECK(res2.values[0] == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(res2.values[2] == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(res2.values[3] == doctest::Approx(5.0).epsilon(1e-11));
}

TEST_CASE("eigensolver is deterministic") {
  ComplexMatrix a = hermitian_with_spectrum({1, 2, 3, 4, 5, 6}, 42);
  auto r1 = hermitian_eigen(a);
  auto r2 = hermitian_eigen(a);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(r1.values[i] == r2.values[i]);
    for (std::size_t j = 0; j < 6; ++j) CHECK(r1.vectors(i, j) == r2.vectors(i, j));
  }
}

TEST_CASE("lanczos matches dense smallest eigenvalue") {
  for (std::uint64_t seed : {11ULL, 12ULL}) {
    std::vector<double> spec;
    SplitMix64 rng(seed);
    std::size_t n = 60;
    for (std::size_t i = 0; i < n; ++i) spec.push_back(rng.next_double() * 8.0 + 0.5);
    spec[0] = 0.137;  // isolated bottom
    ComplexMatrix a = hermitian_with_spectrum(spec, seed + 100);
    LinearOperator apply = [&a](const ComplexVector& x, ComplexVector& y) { y = matvec(a, x); };
    LanczosResult lr = lanczos_smallest(apply, n, {}, seed);
    REQUIRE(lr.converged);
    CHECK(lr.value == doctest::Approx(0.137).epsilon(1e-9));
    ComplexVector av = matvec(a, lr.vector);
    for (std::size_t i = 0; i < n; ++i) av[i] -= lr.value * lr.vector[i];
    CHECK(vec_norm(av) <= 1e-8);
  }
}

TEST_CASE("lanczos deflation finds the gap above a known kernel") {
  std::vector<double> spec = {0.0, 0.0, 0.31, 1.0, 2.0, 3.0, 4.0, 5.0};
  ComplexMatrix a = hermitian_with_spectrum(spec, 77);
  HermitianEigenResult dense = hermitian_eigen(a);
  std::vector<ComplexVector> kernel;
  for (int j = 0; j < 2; ++j) {
    ComplexVector v(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) v[i] = dense.vectors(i, static_cast<std::size_t>(j));
    kernel.push_back(std::move(v));
  }
  LinearOperator apply = [&a](const ComplexVector& x, ComplexVector& y) { y = matvec(a, x); };
  LanczosResult lr = lanczos_smallest(apply, spec.size(), kernel, 5);
  REQUIRE(lr.converged);
  CHECK(lr.value == doctest::Approx(0.31).epsilon(1e-8));
}

#ifndef QSU2_EIGEN_HPP
#define QSU2_EIGEN_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qsu2/matrix.hpp"

namespace qsu2 {

struct EigensolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HermitianEigenResult {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column j pairs with values[j]
};

// Dense Hermitian eigensolve: Householder reduction to real symmetric
// tridiagonal, then implicit-shift QL with accumulated transforms.
// Deterministic; eigenvector phases canonicalized (largest entry positive
// real).  Throws EigensolverError if QL fails to converge.
HermitianEigenResult hermitian_eigen(const ComplexMatrix& a);

// Eigenvalues of a real symmetric tridiagonal; optionally accumulates the
// rotations into z (pass an identity of matching size).
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, RealMatrix* z);

using LinearOperator = std::function<void(const ComplexVector&, ComplexVector&)>;

struct LanczosResult {
  bool converged = false;
  double value = 0.0;
  ComplexVector vector;
  int iterations = 0;
};

// Smallest eigenvalue of a Hermitian operator given by matvec, with full
// reorthogonalization; `deflate` spans a subspace the iteration stays
// orthogonal to.  Deterministic for a fixed seed.
LanczosResult lanczos_smallest(const LinearOperator& apply, std::size_t dim,
                               std::span<const ComplexVector> deflate, std::uint64_t seed,
                               int max_iter = 700, double tol = 1e-11);

}  // namespace qsu2

#endif

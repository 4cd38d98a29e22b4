#ifndef QSU2_SPHERE_REP_HPP
#define QSU2_SPHERE_REP_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qsu2/matrix.hpp"
#include "qsu2/recoupling.hpp"
#include "qsu2/root_params.hpp"

namespace qsu2 {

// Admissible labelings of the interior edges of the fixed caterpillar spine
// of an n-punctured sphere (n-3 interior edges), lexicographically ordered.
struct SphereBasis {
  int n = 0;
  std::vector<std::int64_t> boundary;
  RootParams params;
  std::vector<std::vector<std::int64_t>> labelings;

  std::size_t dim() const { return labelings.size(); }
};

SphereBasis enumerate_basis(int n, std::span<const std::int64_t> boundary,
                            const RootParams& params);

// Representation of the 4-punctured-sphere mapping class group with boundary
// (a,a,a,a) in the orthonormal H-spine basis: u1 twists along the H-bar
// (diagonal), u2 is the dual twist conjugated back through the F-move.
struct SphereRep {
  SphereBasis basis;
  ComplexVector u1_diag;
  ComplexMatrix u2;
  FMatrix f;
};

SphereRep build_m04_rep(std::int64_t a, const RootParams& params);

struct AlmostInvariantReport {
  std::int64_t r = 0;
  std::int64_t a = 0;
  std::size_t dim = 0;
  double f_exponent = 0.0;
  double disp_v_u1 = 0.0;  // projective displacement of v under each twist
  double disp_v_u2 = 0.0;
  double disp_w_u1 = 0.0;  // displacement of v (x) conj(v) under the tensor rep
  double disp_w_u2 = 0.0;
  double diag_component = 0.0;
  double antidiag_component = 0.0;
};

// largest integer a with a^(1/exponent) <= r, i.e. floor(r^exponent) computed
// without floating-point fencepost errors at exact powers
std::int64_t floor_power(std::int64_t r, double exponent);

// The uniform superposition over the boundary-(a,a,a,a) basis with
// a = floor(r^f_exponent), plus its displacement/diagonal report.
std::pair<ComplexVector, AlmostInvariantReport> almost_invariant_vector(
    const RootParams& params, double f_exponent = 1.0 / 3.0);

// Generators of rho (x) conj(rho) on the d^2 space, row-major tensor index.
// Materialized densely; callers at large d use the structured spectral path.
struct TensorSphereRep {
  std::size_t dim = 0;  // d^2
  ComplexVector u1_diag;
  ComplexMatrix u2;
};

TensorSphereRep tensor_conjugate_rep(const SphereRep& rep);

// Norms of the projections of a unit vector in the d^2 space onto the
// diagonal span {u_b (x) conj(u_b)} and the anti-diagonal span (label pairs
// (b, r-2-b) present in the basis).
std::pair<double, double> diagonal_components(const ComplexVector& w, const SphereBasis& basis);

struct InteriorBound {
  std::int64_t max_interior = 0;
  bool ok = false;
};

// Max interior label over the all-boundary-a caterpillar basis, checked
// against the tree bound (n-2)*a.
InteriorBound interior_bound_check(int n, std::int64_t a, const RootParams& params);

}  // namespace qsu2

#endif

#ifndef QSU2_SPECTRAL_HPP
#define QSU2_SPECTRAL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qsu2/matrix.hpp"

namespace qsu2 {

struct GeneratorFamily {
  std::string name;
  std::vector<ComplexMatrix> gens;  // same-dimension unitaries
};

// lambda_min is the literal bottom of H = sum_s (2I - U_s - U_s^dag); it is
// zero exactly when the family has a common fixed vector.
struct GapReport {
  double lambda_min = 0.0;
  ComplexVector minimizer;
  std::vector<double> per_gen_displacement;
  std::size_t fixed_dim = 0;
};

GapReport gap_sum(const GeneratorFamily& fam);

// Orthonormal basis of the common eigenvalue-1 subspace.
std::vector<ComplexVector> fixed_subspace(const GeneratorFamily& fam, double tol = 1e-8);

// sqrt(max(0, 2n - 2|tr(A^dag B)|)); zero iff A = e^{i phi} B.
double projective_distance(const ComplexMatrix& a, const ComplexMatrix& b);

enum class SweepFamily { torus, m04_tensor };

struct GapSweepOptions {
  double f_exponent = 1.0 / 3.0;
  std::uint64_t seed = 0;
};

// One sweep row per level.  lambda_min here is the spectral gap on the
// orthogonal complement of the common fixed subspace (the tensor families
// always fix vec(identity), so the literal bottom eigenvalue is identically
// zero and carries no information).
struct GapSweepRow {
  std::int64_t k = 0;
  std::int64_t r = 0;
  std::size_t dim = 0;
  double lambda_min = 0.0;
  double max_disp = 0.0;
  std::size_t fixed_dim = 0;
  bool has_constructed_v = false;
  double disp_w_u1 = 0.0;
  double disp_w_u2 = 0.0;
  std::string error;  // per-row failure, sweep continues
};

std::vector<GapSweepRow> gap_sweep(SweepFamily family, std::span<const std::int64_t> k_values,
                                   const GapSweepOptions& options = {});

}  // namespace qsu2

#endif

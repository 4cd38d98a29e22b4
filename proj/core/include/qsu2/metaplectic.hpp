#ifndef QSU2_METAPLECTIC_HPP
#define QSU2_METAPLECTIC_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsu2/matrix.hpp"
#include "qsu2/root_params.hpp"

namespace qsu2 {

bool is_odd_prime(std::int64_t p);

// Odd-function model of the metaplectic representation at an odd prime p,
// realized on functions on Z/2p restricted to the odd subspace spanned by
// u_x = (delta_x - delta_{2p-x})/sqrt(2), x = 1..p-1.  dim = p-1.
struct FiniteMetaplectic {
  std::int64_t p = 0;
  std::size_t dim = 0;
  ComplexMatrix s;       // <u_x, S u_y> = i sqrt(2/p) sin(pi x y / p)
  ComplexVector t_diag;  // exp(-i pi x^2 / (2p))
};

FiniteMetaplectic build_finite_metaplectic(std::int64_t p);

// Entrywise identification of the level-(p-2) torus representation with the
// odd metaplectic model under l <-> x = l+1, up to constant phases.
struct QuantumMetaplecticMatch {
  std::int64_t p = 0;
  double d_proj_s = 0.0;
  double d_proj_t = 0.0;
  complexd phase_s;  // rho(g) ~ phase_g * mu'(g)
  complexd phase_t;
};

QuantumMetaplecticMatch compare_with_quantum(std::int64_t p);

struct CongruenceProbeOptions {
  std::vector<std::int64_t> candidates;  // empty -> {p, 2p, 4p}
  std::int64_t trials = 10000;
  std::size_t max_word_length = 60;
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

struct CongruenceCandidateResult {
  std::int64_t modulus = 0;
  double max_proj_distance = 0.0;
  std::int64_t pairs_tested = 0;
};

struct CongruenceProbe {
  std::int64_t p = 0;
  std::vector<CongruenceCandidateResult> candidates;
  std::optional<std::int64_t> reported_level;  // smallest passing candidate
  std::int64_t t_projective_order = 0;
};

// Samples random word pairs with equal SL(2,Z/N) images and measures the
// projective distance of their representation matrices.
CongruenceProbe congruence_level(std::int64_t p, const CongruenceProbeOptions& options = {});

struct ImageOrderResult {
  bool exceeded_cap = false;
  std::size_t order = 0;
};

// Breadth-first closure of the projectivized image of the renormalized
// level-(p-2) representation; the seed shuffles the generator application
// order, which the result must not depend on.
ImageOrderResult projective_image_order(std::int64_t p, std::size_t cap,
                                        std::uint64_t seed = 0);

// --- continuous side -------------------------------------------------------

struct FunctionDescriptor {
  std::string name;
  std::function<double(double)> f;
  bool odd = true;
};

// Registry names accepted by the CLI: "hermite1", "gaussian",
// "indicator(a,b)".
FunctionDescriptor lookup_function(const std::string& name);

enum class PairingKernel { sin, cos, gaussian_phase };

struct QuadratureOptions {
  double x_max = 6.0;
  double step = 1.0 / 512.0;
};

struct PairingResult {
  complexd value;
  double error_estimate = 0.0;
  double truncated_mass = 0.0;
  bool truncation_warning = false;
};

// (f, K f) by composite midpoint quadrature on [-x_max, x_max], with a
// Richardson error estimate from step and step/2.
PairingResult sin_cos_pairing(const FunctionDescriptor& fd, PairingKernel kernel,
                              const QuadratureOptions& options = {});

struct StepEmbedding {
  std::int64_t k = 0;
  std::int64_t r = 0;
  double h = 0.0;  // 1/sqrt(2r)
  std::vector<double> values;
  double truncated_mass = 0.0;
  bool warning = false;
};

// Step-function embedding of an odd function into the level-k space: sample
// at x_l = (l+1)/sqrt(2r), weight by sqrt(2 h), renormalize to unit length.
StepEmbedding step_embed(const FunctionDescriptor& fd, std::int64_t k);

// (v, S v) and (v, T v) with the level-k kernels, computed without
// materializing the matrices.
complexd quantum_s_pairing(const std::vector<double>& v, const RootParams& params);
complexd quantum_t_pairing(const std::vector<double>& v, const RootParams& params);

struct ConvergenceRow {
  std::int64_t k = 0;
  std::int64_t r = 0;
  complexd quantum_s;
  complexd quantum_t;
  double gap_s = 0.0;
  double gap_t = 0.0;
  double truncated_mass = 0.0;
  bool warning = false;
};

struct ConvergenceReport {
  std::string function_name;
  complexd continuous_s;
  complexd continuous_t;
  double error_s = 0.0;
  double error_t = 0.0;
  std::vector<ConvergenceRow> rows;
};

ConvergenceReport convergence_report(const FunctionDescriptor& fd,
                                     std::span<const std::int64_t> k_list,
                                     const QuadratureOptions& options = {});

struct GaussianResiduals {
  double residual_s = 0.0;
  double residual_t = 0.0;
};

// Residuals of the lattice Gaussian g_l = exp(-pi width l^2 / (2r)) under the
// sine kernel and the twist.
GaussianResiduals gaussian_experiment(const RootParams& params, double width = 1.0);

}  // namespace qsu2

#endif

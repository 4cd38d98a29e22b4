#include "qsu2/metaplectic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qsu2/rng.hpp"
#include "qsu2/spectral.hpp"
#include "qsu2/torus_rep.hpp"

namespace qsu2 {

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

complexd normalized_phase(complexd z) {
  double m = std::abs(z);
  if (m == 0.0) return 1.0;
  return z / m;
}

complexd trace_pairing(const ComplexMatrix& a, const ComplexMatrix& b) {
  // tr(a^dag b)
  complexd tr{};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) tr += std::conj(a(k, i)) * b(k, i);
  return tr;
}

}  // namespace

bool is_odd_prime(std::int64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

FiniteMetaplectic build_finite_metaplectic(std::int64_t p) {
  if (!is_odd_prime(p)) throw std::domain_error("build_finite_metaplectic: p must be an odd prime");
  FiniteMetaplectic rep;
  rep.p = p;
  rep.dim = static_cast<std::size_t>(p - 1);
  rep.t_diag.resize(rep.dim);
  for (std::size_t i = 0; i < rep.dim; ++i) {
    std::int64_t x = static_cast<std::int64_t>(i) + 1;
    rep.t_diag[i] = unit_phase_pi(-x * x, 2 * p);
  }
  rep.s = ComplexMatrix(rep.dim, rep.dim);
  const double scale = std::sqrt(2.0 / static_cast<double>(p));
  const complexd iunit{0.0, 1.0};
  for (std::size_t i = 0; i < rep.dim; ++i)
    for (std::size_t j = 0; j < rep.dim; ++j) {
      std::int64_t x = static_cast<std::int64_t>(i) + 1;
      std::int64_t y = static_cast<std::int64_t>(j) + 1;
      rep.s(i, j) = iunit * scale * sin_pi_frac(x * y, p);
    }
  return rep;
}

QuantumMetaplecticMatch compare_with_quantum(std::int64_t p) {
  FiniteMetaplectic mu = build_finite_metaplectic(p);
  TorusRep rho = build_torus_rep(p - 2);
  if (rho.dim != mu.dim)
    throw std::logic_error("compare_with_quantum: dimension mismatch");

  ComplexMatrix rho_t(rho.dim, rho.dim), mu_t(mu.dim, mu.dim);
  for (std::size_t i = 0; i < rho.dim; ++i) {
    rho_t(i, i) = rho.t_diag[i];
    mu_t(i, i) = mu.t_diag[i];
  }

  QuantumMetaplecticMatch match;
  match.p = p;
  match.d_proj_s = projective_distance(rho.s, mu.s);
  match.d_proj_t = projective_distance(rho_t, mu_t);
  match.phase_s = normalized_phase(trace_pairing(mu.s, rho.s));
  match.phase_t = normalized_phase(trace_pairing(mu_t, rho_t));
  return match;
}

CongruenceProbe congruence_level(std::int64_t p, const CongruenceProbeOptions& options) {
  if (!is_odd_prime(p)) throw std::domain_error("congruence_level: p must be an odd prime");
  CongruenceProbe probe;
  probe.p = p;

  std::vector<std::int64_t> candidates = options.candidates;
  if (candidates.empty()) candidates = {p, 2 * p, 4 * p};
  std::sort(candidates.begin(), candidates.end());

  // exact projective order of T from the integer twist exponents
  std::int64_t order = 1;
  const std::int64_t period = 4 * p;
  for (std::int64_t l = 0; l <= p - 2; ++l) {
    std::int64_t e = (l * (l + 2)) % period;
    std::int64_t m = period / gcd64(period, e == 0 ? period : e);
    order = order / gcd64(order, m) * m;
  }
  probe.t_projective_order = order;

  TorusRep rho = renormalize(build_torus_rep(p - 2));

  for (std::int64_t modulus : candidates) {
    CongruenceCandidateResult cres;
    cres.modulus = modulus;
    SplitMix64 rng(options.seed ^ static_cast<std::uint64_t>(modulus) * 0x9e3779b9ULL);
    std::map<std::array<std::int64_t, 4>, ComplexMatrix> buckets;
    const std::int64_t max_samples = options.trials * 10 + 1000;
    std::int64_t samples = 0;
    while (cres.pairs_tested < options.trials && samples < max_samples) {
      ++samples;
      std::size_t len = 1 + static_cast<std::size_t>(rng.next_below(options.max_word_length));
      GroupWord w = GroupWord::random(rng, len);
      auto key = word_to_sl2(w, modulus);
      ComplexMatrix m = evaluate_word(rho, w);
      auto it = buckets.find(key);
      if (it == buckets.end()) {
        buckets.emplace(key, std::move(m));
      } else {
        cres.max_proj_distance =
            std::max(cres.max_proj_distance, projective_distance(it->second, m));
        ++cres.pairs_tested;
      }
    }
    probe.candidates.push_back(cres);
  }

  for (const auto& cres : probe.candidates)
    if (cres.max_proj_distance <= options.tol) {
      probe.reported_level = cres.modulus;
      break;
    }
  return probe;
}

ImageOrderResult projective_image_order(std::int64_t p, std::size_t cap, std::uint64_t seed) {
  if (!is_odd_prime(p)) throw std::domain_error("projective_image_order: p must be an odd prime");
  TorusRep rho = renormalize(build_torus_rep(p - 2));
  const std::size_t n = rho.dim;

  ComplexMatrix t(n, n), tinv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    t(i, i) = rho.t_diag[i];
    tinv(i, i) = std::conj(rho.t_diag[i]);
  }
  // S is an involution here, so two generators and one diagonal inverse
  std::vector<ComplexMatrix> gens = {rho.s, t, tinv};

  // Phase normalization must pick the same pivot for any two floating-point
  // realizations of one projective element.  Max-modulus entries tie exactly
  // in these structured matrices, so the pivot is the first entry clearing a
  // coarse fraction of the max; the 0.3 threshold sits far from any tie
  // cluster, unlike a near-max cutoff.
  auto canonical_key = [n](const ComplexMatrix& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) best = std::max(best, std::abs(m(i, j)));
    complexd pivot{1.0, 0.0};
    bool found = false;
    for (std::size_t i = 0; i < n && !found; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (std::abs(m(i, j)) >= 0.3 * best) {
          pivot = m(i, j) / std::abs(m(i, j));
          found = true;
          break;
        }
    std::vector<std::int64_t> key;
    key.reserve(2 * n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        complexd z = m(i, j) / pivot;
        key.push_back(std::llround(z.real() * 1e8));
        key.push_back(std::llround(z.imag() * 1e8));
      }
    return key;
  };

  SplitMix64 rng(seed);
  std::map<std::vector<std::int64_t>, bool> visited;
  std::vector<ComplexMatrix> queue;
  ComplexMatrix id = ComplexMatrix::identity(n);
  visited.emplace(canonical_key(id), true);
  queue.push_back(id);

  std::size_t head = 0;
  while (head < queue.size()) {
    ComplexMatrix cur = queue[head++];
    std::array<std::size_t, 3> order = {0, 1, 2};
    for (std::size_t i = 2; i > 0; --i)
      std::swap(order[i], order[rng.next_below(i + 1)]);
    for (std::size_t gi : order) {
      ComplexMatrix next = cur * gens[gi];
      auto key = canonical_key(next);
      if (visited.emplace(std::move(key), true).second) {
        if (visited.size() > cap) return {true, 0};
        queue.push_back(std::move(next));
      }
    }
  }
  return {false, visited.size()};
}

// --- continuous side -------------------------------------------------------

FunctionDescriptor lookup_function(const std::string& name) {
  const double pi = std::numbers::pi;
  if (name == "hermite1") {
    // normalized odd Hermite mode 2^{5/4} sqrt(pi) x e^{-pi x^2}; fixed by the
    // sine transform
    return {"hermite1",
            [pi](double x) { return std::pow(2.0, 1.25) * std::sqrt(pi) * x * std::exp(-pi * x * x); },
            true};
  }
  if (name == "gaussian") {
    return {"gaussian", [pi](double x) { return std::pow(2.0, 0.25) * std::exp(-pi * x * x); },
            false};
  }
  if (name.rfind("indicator(", 0) == 0 && name.back() == ')') {
    std::string args = name.substr(10, name.size() - 11);
    auto comma = args.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("indicator: expected indicator(a,b)");
    double a = std::stod(args.substr(0, comma));
    double b = std::stod(args.substr(comma + 1));
    if (!(b > a && a >= 0.0)) throw std::invalid_argument("indicator: need 0 <= a < b");
    double c = 1.0 / std::sqrt(2.0 * (b - a));
    return {name,
            [a, b, c](double x) {
              double ax = std::abs(x);
              if (ax < a || ax > b) return 0.0;
              return x >= 0 ? c : -c;
            },
            true};
  }
  throw std::invalid_argument("unknown function descriptor: " + name);
}

namespace {

complexd pairing_at_step(const FunctionDescriptor& fd, PairingKernel kernel, double x_max,
                         double step) {
  const double pi = std::numbers::pi;
  const auto n = static_cast<std::size_t>(std::llround(2.0 * x_max / step));
  std::vector<double> fx(n);
  std::vector<double> xs(n);
  for (std::size_t j = 0; j < n; ++j) {
    xs[j] = -x_max + (static_cast<double>(j) + 0.5) * step;
    fx[j] = fd.f(xs[j]);
  }
  complexd acc{};
  if (kernel == PairingKernel::gaussian_phase) {
    for (std::size_t j = 0; j < n; ++j)
      acc += std::polar(1.0, -pi * xs[j] * xs[j]) * fx[j] * fx[j];
    return acc * step;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (fx[i] == 0.0) continue;
    double g = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (fx[j] == 0.0) continue;
      double arg = 2.0 * pi * xs[i] * xs[j];
      g += (kernel == PairingKernel::sin ? std::sin(arg) : std::cos(arg)) * fx[j];
    }
    acc += fx[i] * g;
  }
  return acc * step * step;
}

}  // namespace

PairingResult sin_cos_pairing(const FunctionDescriptor& fd, PairingKernel kernel,
                              const QuadratureOptions& options) {
  PairingResult res;
  complexd coarse = pairing_at_step(fd, kernel, options.x_max, options.step);
  complexd fine = pairing_at_step(fd, kernel, options.x_max, options.step / 2.0);
  res.value = fine;
  res.error_estimate = std::abs(fine - coarse) / 3.0;

  // mass outside the quadrature window
  const auto n = static_cast<std::size_t>(std::llround(4.0 * options.x_max / options.step));
  double inside = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double x = -options.x_max + (static_cast<double>(j) + 0.5) * options.step / 2.0;
    double v = fd.f(x);
    inside += v * v;
  }
  inside *= options.step / 2.0;
  res.truncated_mass = std::max(0.0, 1.0 - inside);
  res.truncation_warning = res.truncated_mass > 1e-3;
  return res;
}

StepEmbedding step_embed(const FunctionDescriptor& fd, std::int64_t k) {
  if (!fd.odd) throw std::invalid_argument("step_embed: odd function required");
  StepEmbedding emb;
  emb.k = k;
  emb.r = k + 2;
  emb.h = 1.0 / std::sqrt(2.0 * static_cast<double>(emb.r));
  const auto n = static_cast<std::size_t>(emb.r - 1);
  emb.values.resize(n);
  double norm2 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    double x = static_cast<double>(l + 1) * emb.h;
    emb.values[l] = std::sqrt(2.0 * emb.h) * fd.f(x);
    norm2 += emb.values[l] * emb.values[l];
  }
  emb.truncated_mass = std::max(0.0, 1.0 - norm2);
  emb.warning = emb.truncated_mass > 0.01;
  if (norm2 > 1e-24) {
    double inv = 1.0 / std::sqrt(norm2);
    for (auto& v : emb.values) v *= inv;
  } else {
    emb.truncated_mass = 1.0;
    emb.warning = true;
  }
  return emb;
}

complexd quantum_s_pairing(const std::vector<double>& v, const RootParams& params) {
  const auto n = static_cast<std::size_t>(params.r - 1);
  if (v.size() != n) throw std::invalid_argument("quantum_s_pairing: size mismatch");
  const double scale = std::sqrt(2.0 / static_cast<double>(params.r));
  double acc = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    if (v[l] == 0.0) continue;
    double row = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      if (v[m] == 0.0) continue;
      row += sin_pi_frac(static_cast<std::int64_t>(l + 1) * static_cast<std::int64_t>(m + 1),
                         params.r) *
             v[m];
    }
    acc += v[l] * row;
  }
  return complexd{scale * acc, 0.0};
}

complexd quantum_t_pairing(const std::vector<double>& v, const RootParams& params) {
  const auto n = static_cast<std::size_t>(params.r - 1);
  if (v.size() != n) throw std::invalid_argument("quantum_t_pairing: size mismatch");
  complexd acc{};
  for (std::size_t l = 0; l < n; ++l)
    acc += v[l] * v[l] * twist_eigenvalue(static_cast<std::int64_t>(l), params);
  return acc;
}

ConvergenceReport convergence_report(const FunctionDescriptor& fd,
                                     std::span<const std::int64_t> k_list,
                                     const QuadratureOptions& options) {
  ConvergenceReport report;
  report.function_name = fd.name;
  PairingResult ps = sin_cos_pairing(fd, PairingKernel::sin, options);
  PairingResult pt = sin_cos_pairing(fd, PairingKernel::gaussian_phase, options);
  report.continuous_s = ps.value;
  report.continuous_t = pt.value;
  report.error_s = ps.error_estimate;
  report.error_t = pt.error_estimate;

  for (std::int64_t k : k_list) {
    ConvergenceRow row;
    row.k = k;
    row.r = k + 2;
    StepEmbedding emb = step_embed(fd, k);
    RootParams params = RootParams::from_level(k);
    row.quantum_s = quantum_s_pairing(emb.values, params);
    row.quantum_t = quantum_t_pairing(emb.values, params);
    row.gap_s = std::abs(row.quantum_s - report.continuous_s);
    row.gap_t = std::abs(row.quantum_t - report.continuous_t);
    row.truncated_mass = emb.truncated_mass;
    row.warning = emb.warning;
    report.rows.push_back(row);
  }
  return report;
}

GaussianResiduals gaussian_experiment(const RootParams& params, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_experiment: width must be positive");
  const auto n = static_cast<std::size_t>(params.r - 1);
  const double pi = std::numbers::pi;
  std::vector<double> g(n);
  double norm2 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    double ll = static_cast<double>(l);
    g[l] = std::exp(-pi * width * ll * ll / (2.0 * static_cast<double>(params.r)));
    norm2 += g[l] * g[l];
  }
  double inv = 1.0 / std::sqrt(norm2);
  for (auto& v : g) v *= inv;

  GaussianResiduals res;
  const double scale = std::sqrt(2.0 / static_cast<double>(params.r));
  double acc = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    double row = 0.0;
    for (std::size_t m = 0; m < n; ++m)
      row += sin_pi_frac(static_cast<std::int64_t>(l + 1) * static_cast<std::int64_t>(m + 1),
                         params.r) *
             g[m];
    double diff = scale * row - g[l];
    acc += diff * diff;
  }
  res.residual_s = std::sqrt(acc);

  complexd z = quantum_t_pairing(g, params);
  res.residual_t = std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(z)));
  return res;
}

}  // namespace qsu2

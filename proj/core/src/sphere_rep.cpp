#include "qsu2/sphere_rep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsu2 {

namespace {

void enumerate_rec(const std::vector<std::int64_t>& boundary, const RootParams& params,
                   std::vector<std::int64_t>& interior, std::size_t pos,
                   std::vector<std::vector<std::int64_t>>& out) {
  const std::size_t n = boundary.size();
  const std::size_t n_interior = n - 3;
  if (pos == n_interior) {
    // close with the last vertex (x_{n-3}, l_{n-1}, l_n)
    if (is_admissible(interior.back(), boundary[n - 2], boundary[n - 1], params))
      out.push_back(interior);
    return;
  }
  for (std::int64_t x = 0; x <= params.max_label(); ++x) {
    bool ok = pos == 0 ? is_admissible(boundary[0], boundary[1], x, params)
                       : is_admissible(interior[pos - 1], boundary[pos + 1], x, params);
    if (!ok) continue;
    interior[pos] = x;
    enumerate_rec(boundary, params, interior, pos + 1, out);
  }
}

}  // namespace

SphereBasis enumerate_basis(int n, std::span<const std::int64_t> boundary,
                            const RootParams& params) {
  if (n < 4) throw std::domain_error("enumerate_basis: need at least 4 punctures");
  if (static_cast<int>(boundary.size()) != n)
    throw std::invalid_argument("enumerate_basis: boundary size != n");
  for (auto l : boundary)
    if (!params.label_in_range(l)) throw std::domain_error("enumerate_basis: boundary label out of range");

  SphereBasis basis;
  basis.n = n;
  basis.boundary.assign(boundary.begin(), boundary.end());
  basis.params = params;
  std::vector<std::int64_t> interior(static_cast<std::size_t>(n - 3), 0);
  enumerate_rec(basis.boundary, params, interior, 0, basis.labelings);
  return basis;
}

SphereRep build_m04_rep(std::int64_t a, const RootParams& params) {
  const std::int64_t bdry[4] = {a, a, a, a};
  SphereRep rep;
  rep.basis = enumerate_basis(4, bdry, params);
  if (rep.basis.dim() == 0) throw std::runtime_error("build_m04_rep: empty basis");

  Recoupling rec(params);
  rep.f = rec.f_matrix(a, a, a, a);
  const std::size_t d = rep.basis.dim();
  if (rep.f.row_labels.size() != d || rep.f.col_labels.size() != d)
    throw std::logic_error("build_m04_rep: basis / F-matrix size mismatch");

  rep.u1_diag.resize(d);
  for (std::size_t i = 0; i < d; ++i)
    rep.u1_diag[i] = twist_eigenvalue(rep.basis.labelings[i][0], params);

  // u2 = F diag(twist(b')) F^T
  ComplexVector dual(d);
  for (std::size_t j = 0; j < d; ++j) dual[j] = twist_eigenvalue(rep.f.col_labels[j], params);
  rep.u2 = ComplexMatrix(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      complexd acc{};
      for (std::size_t k = 0; k < d; ++k) acc += rep.f.m(i, k) * dual[k] * rep.f.m(j, k);
      rep.u2(i, j) = acc;
    }
  return rep;
}

std::int64_t floor_power(std::int64_t r, double exponent) {
  auto a = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(r), exponent)) + 1e-9);
  auto fits = [&](std::int64_t cand) {
    if (cand <= 0) return true;
    return std::pow(static_cast<double>(cand), 1.0 / exponent) <=
           static_cast<double>(r) + 1e-6;
  };
  while (!fits(a)) --a;
  while (fits(a + 1)) ++a;
  return a;
}

std::pair<ComplexVector, AlmostInvariantReport> almost_invariant_vector(const RootParams& params,
                                                                        double f_exponent) {
  if (!(f_exponent > 0.0 && f_exponent < 0.5))
    throw std::invalid_argument("almost_invariant_vector: exponent must lie in (0, 1/2)");
  const std::int64_t a = floor_power(params.r, f_exponent);
  if (a < 0 || a > params.max_label())
    throw std::domain_error("almost_invariant_vector: f(r) outside label range");

  SphereRep rep = build_m04_rep(a, params);
  const std::size_t d = rep.basis.dim();
  ComplexVector v(d, 1.0 / std::sqrt(static_cast<double>(d)));

  AlmostInvariantReport rpt;
  rpt.r = params.r;
  rpt.a = a;
  rpt.dim = d;
  rpt.f_exponent = f_exponent;

  complexd z1{};
  for (std::size_t i = 0; i < d; ++i) z1 += std::norm(v[i]) * rep.u1_diag[i];
  complexd z2 = inner(v, matvec(rep.u2, v));
  auto proj_disp = [](complexd z) { return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(z))); };
  auto tensor_disp = [](complexd z) {
    double m2 = std::norm(z);
    return std::sqrt(std::max(0.0, 2.0 - 2.0 * m2));
  };
  rpt.disp_v_u1 = proj_disp(z1);
  rpt.disp_v_u2 = proj_disp(z2);
  rpt.disp_w_u1 = tensor_disp(z1);
  rpt.disp_w_u2 = tensor_disp(z2);

  ComplexVector w(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) w[i * d + j] = v[i] * std::conj(v[j]);
  auto [diag, antidiag] = diagonal_components(w, rep.basis);
  rpt.diag_component = diag;
  rpt.antidiag_component = antidiag;
  return {std::move(v), rpt};
}

TensorSphereRep tensor_conjugate_rep(const SphereRep& rep) {
  const std::size_t d = rep.basis.dim();
  if (d > 64)
    throw std::invalid_argument(
        "tensor_conjugate_rep: dense tensor limited to d <= 64; use the spectral sweep path");
  TensorSphereRep out;
  out.dim = d * d;
  out.u1_diag.resize(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      out.u1_diag[i * d + j] = rep.u1_diag[i] * std::conj(rep.u1_diag[j]);
  out.u2 = ComplexMatrix(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
          out.u2(i * d + j, k * d + l) = rep.u2(i, k) * std::conj(rep.u2(j, l));
  return out;
}

std::pair<double, double> diagonal_components(const ComplexVector& w, const SphereBasis& basis) {
  const std::size_t d = basis.dim();
  if (w.size() != d * d) throw std::invalid_argument("diagonal_components: vector size != dim^2");
  if (basis.n != 4) throw std::invalid_argument("diagonal_components: n = 4 basis expected");

  double diag2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) diag2 += std::norm(w[i * d + i]);

  double anti2 = 0.0;
  const std::int64_t rm2 = basis.params.r - 2;
  for (std::size_t i = 0; i < d; ++i) {
    const std::int64_t want = rm2 - basis.labelings[i][0];
    for (std::size_t j = 0; j < d; ++j)
      if (basis.labelings[j][0] == want) anti2 += std::norm(w[i * d + j]);
  }
  return {std::sqrt(diag2), std::sqrt(anti2)};
}

InteriorBound interior_bound_check(int n, std::int64_t a, const RootParams& params) {
  if (n < 4) throw std::domain_error("interior_bound_check: need n >= 4");
  std::vector<std::int64_t> bdry(static_cast<std::size_t>(n), a);
  SphereBasis basis = enumerate_basis(n, bdry, params);
  InteriorBound out;
  for (const auto& labeling : basis.labelings)
    for (auto x : labeling) out.max_interior = std::max(out.max_interior, x);
  out.ok = out.max_interior <= static_cast<std::int64_t>(n - 2) * a;
  return out;
}

}  // namespace qsu2

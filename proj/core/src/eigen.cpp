#include "qsu2/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qsu2/rng.hpp"

namespace qsu2 {

namespace {

double pythag(double a, double b) {
  double absa = std::abs(a), absb = std::abs(b);
  if (absa > absb) {
    double t = absb / absa;
    return absa * std::sqrt(1.0 + t * t);
  }
  if (absb == 0.0) return 0.0;
  double t = absa / absb;
  return absb * std::sqrt(1.0 + t * t);
}

// Reduce Hermitian a to real symmetric tridiagonal (d, e); on return q holds
// the accumulated unitary with a = q T q^dag.
void hermitian_to_tridiagonal(ComplexMatrix a, std::vector<double>& d, std::vector<double>& e,
                              ComplexMatrix& q) {
  const std::size_t n = a.rows();
  q = ComplexMatrix::identity(n);
  d.assign(n, 0.0);
  e.assign(n > 0 ? n - 1 : 0, 0.0);
  if (n == 0) return;

  std::vector<std::complex<double>> sub(n > 0 ? n - 1 : 0);
  ComplexVector v(n), p(n);

  for (std::size_t k = 0; k + 2 <= n; ++k) {
    const std::size_t m = n - k - 1;  // size of trailing block
    if (m == 1) {
      sub[k] = a(k + 1, k);
      continue;
    }
    double xnorm = 0.0;
    for (std::size_t i = 0; i < m; ++i) xnorm += std::norm(a(k + 1 + i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) {
      sub[k] = 0.0;
      continue;
    }
    std::complex<double> x0 = a(k + 1, k);
    std::complex<double> phase = std::abs(x0) == 0.0 ? 1.0 : x0 / std::abs(x0);
    std::complex<double> beta = -phase * xnorm;

    double vnorm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      v[i] = a(k + 1 + i, k);
      if (i == 0) v[i] -= beta;
      vnorm2 += std::norm(v[i]);
    }
    sub[k] = beta;
    if (vnorm2 == 0.0) continue;
    const double c = 2.0 / vnorm2;

    // two-sided Hermitian rank-2 update of the trailing block
    for (std::size_t i = 0; i < m; ++i) {
      std::complex<double> acc{};
      for (std::size_t j = 0; j < m; ++j) acc += a(k + 1 + i, k + 1 + j) * v[j];
      p[i] = c * acc;
    }
    std::complex<double> kappa{};
    for (std::size_t i = 0; i < m; ++i) kappa += std::conj(v[i]) * p[i];
    kappa *= 0.5 * c;
    for (std::size_t i = 0; i < m; ++i) p[i] -= kappa * v[i];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        a(k + 1 + i, k + 1 + j) -=
            p[i] * std::conj(v[j]) + v[i] * std::conj(p[j]);

    // q <- q * (I - c v v^dag) acting on columns k+1..n-1
    for (std::size_t row = 0; row < n; ++row) {
      std::complex<double> acc{};
      for (std::size_t j = 0; j < m; ++j) acc += q(row, k + 1 + j) * v[j];
      acc *= c;
      for (std::size_t j = 0; j < m; ++j) q(row, k + 1 + j) -= acc * std::conj(v[j]);
    }
  }

  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();

  // rotate subdiagonal phases onto the basis so the tridiagonal is real
  std::complex<double> u = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double mag = std::abs(sub[i]);
    e[i] = mag;
    std::complex<double> unext = mag == 0.0 ? u : u * (sub[i] / mag);
    for (std::size_t row = 0; row < n; ++row) q(row, i + 1) *= unext;
    u = unext;
  }
}

}  // namespace

void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, RealMatrix* z) {
  const std::size_t n = d.size();
  if (n == 0) return;
  std::vector<double> off(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) off[i] = e[i];
  off[n - 1] = 0.0;

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(off[m]) <= 1e-300 || std::abs(off[m]) + dd == dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw EigensolverError("tridiagonal_ql: too many iterations");
        double g = (d[l + 1] - d[l]) / (2.0 * off[l]);
        double r = pythag(g, 1.0);
        g = d[m] - d[l] + off[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        bool early = false;
        for (std::size_t i1 = m; i1-- > l;) {
          double f = s * off[i1];
          double b = c * off[i1];
          r = pythag(f, g);
          off[i1 + 1] = r;
          if (r == 0.0) {
            d[i1 + 1] -= p;
            off[m] = 0.0;
            early = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i1 + 1] - p;
          r = (d[i1] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i1 + 1] = g + p;
          g = c * r - b;
          if (z) {
            for (std::size_t row = 0; row < z->rows(); ++row) {
              double zf = (*z)(row, i1 + 1);
              (*z)(row, i1 + 1) = s * (*z)(row, i1) + c * zf;
              (*z)(row, i1) = c * (*z)(row, i1) - s * zf;
            }
          }
        }
        if (early) continue;
        d[l] -= p;
        off[l] = g;
        off[m] = 0.0;
      }
    } while (m != l);
  }
}

HermitianEigenResult hermitian_eigen(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_eigen: matrix not square");
  const std::size_t n = a.rows();
  HermitianEigenResult out;
  if (n == 0) {
    out.vectors = ComplexMatrix(0, 0);
    return out;
  }

  std::vector<double> d, e;
  ComplexMatrix q;
  hermitian_to_tridiagonal(a, d, e, q);

  // run QL on the real tridiagonal, tracking rotations in a real matrix, then
  // compose with the complex Householder basis
  RealMatrix rot = RealMatrix::identity(n);
  tridiagonal_ql(d, e, &rot);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });

  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t jj = 0; jj < n; ++jj) {
    const std::size_t src = order[jj];
    out.values[jj] = d[src];
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> acc{};
      for (std::size_t k = 0; k < n; ++k) acc += q(i, k) * rot(k, src);
      out.vectors(i, jj) = acc;
    }
    // canonical phase: largest-modulus entry positive real
    std::size_t imax = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      double m = std::abs(out.vectors(i, jj));
      if (m > best + 1e-15) {
        best = m;
        imax = i;
      }
    }
    if (best > 0.0) {
      std::complex<double> ph = out.vectors(imax, jj) / best;
      for (std::size_t i = 0; i < n; ++i) out.vectors(i, jj) /= ph;
    }
  }
  return out;
}

LanczosResult lanczos_smallest(const LinearOperator& apply, std::size_t dim,
                               std::span<const ComplexVector> deflate, std::uint64_t seed,
                               int max_iter, double tol) {
  LanczosResult res;
  if (dim == 0) return res;

  auto project_off = [&](ComplexVector& x, const std::vector<ComplexVector>& basis) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : deflate) axpy(-inner(b, x), b, x);
      for (const auto& b : basis) axpy(-inner(b, x), b, x);
    }
  };

  SplitMix64 rng(seed ^ 0x517cc1b727220a95ULL);
  ComplexVector v(dim);
  for (auto& c : v) c = {rng.next_gaussian(), rng.next_gaussian()};
  std::vector<ComplexVector> basis;
  project_off(v, basis);
  double nv = vec_norm(v);
  if (nv < 1e-12) {
    // operator domain fully deflated
    res.converged = false;
    return res;
  }
  scale(v, 1.0 / nv);

  std::vector<double> alpha, beta;
  ComplexVector w(dim);
  double prev_ritz = std::numeric_limits<double>::infinity();
  const int iters = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(max_iter), dim));

  for (int j = 0; j < iters; ++j) {
    basis.push_back(v);
    apply(v, w);
    double a_j = inner(v, w).real();
    alpha.push_back(a_j);
    project_off(w, basis);
    double b_j = vec_norm(w);

    bool check_now = (j % 5 == 4) || b_j < 1e-13 || j + 1 == iters;
    if (check_now) {
      std::vector<double> dcopy = alpha;
      std::vector<double> ecopy(alpha.size(), 0.0);
      for (std::size_t i = 0; i + 1 < alpha.size(); ++i) ecopy[i] = beta[i];
      tridiagonal_ql(dcopy, ecopy, nullptr);
      double ritz = *std::min_element(dcopy.begin(), dcopy.end());
      double scale_ref = std::max(1.0, std::abs(ritz));
      if (std::abs(ritz - prev_ritz) < tol * scale_ref || b_j < 1e-13) {
        // assemble the Ritz vector and confirm the residual
        const std::size_t k = alpha.size();
        std::vector<double> dv = alpha;
        std::vector<double> ev(k, 0.0);
        for (std::size_t i = 0; i + 1 < k; ++i) ev[i] = beta[i];
        RealMatrix zz = RealMatrix::identity(k);
        tridiagonal_ql(dv, ev, &zz);
        std::size_t pos = 0;
        for (std::size_t i = 1; i < k; ++i)
          if (dv[i] < dv[pos]) pos = i;
        ComplexVector x(dim, 0.0);
        for (std::size_t i = 0; i < k; ++i) axpy(zz(i, pos), basis[i], x);
        double nx = vec_norm(x);
        if (nx > 0) scale(x, 1.0 / nx);
        ComplexVector hx(dim);
        apply(x, hx);
        double theta_val = inner(x, hx).real();
        axpy(-theta_val, x, hx);
        double resid = vec_norm(hx);
        res.iterations = j + 1;
        if (resid < 1e-9 * std::max(1.0, std::abs(theta_val)) || b_j < 1e-13) {
          res.converged = true;
          res.value = theta_val;
          res.vector = std::move(x);
          return res;
        }
      }
      prev_ritz = ritz;
    }
    if (b_j < 1e-13) break;
    beta.push_back(b_j);
    scale(w, 1.0 / b_j);
    v = w;
  }

  res.converged = false;
  res.iterations = iters;
  return res;
}

}  // namespace qsu2

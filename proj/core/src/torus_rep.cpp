#include "qsu2/torus_rep.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsu2 {

namespace {

// acc <- acc * diag(t) or acc * conj-diag
void scale_columns(ComplexMatrix& acc, const ComplexVector& t, bool conjugate) {
  for (std::size_t i = 0; i < acc.rows(); ++i)
    for (std::size_t j = 0; j < acc.cols(); ++j)
      acc(i, j) *= conjugate ? std::conj(t[j]) : t[j];
}

}  // namespace

GroupWord GroupWord::parse(const std::string& text) {
  GroupWord w;
  auto push = [&](const std::string& tok) {
    if (tok == "S") w.letters.push_back(WordLetter::S);
    else if (tok == "T") w.letters.push_back(WordLetter::T);
    else if (tok == "s" || tok == "S^-1" || tok == "S-1") w.letters.push_back(WordLetter::SInv);
    else if (tok == "t" || tok == "T^-1" || tok == "T-1") w.letters.push_back(WordLetter::TInv);
    else throw std::invalid_argument("GroupWord: unknown letter '" + tok + "'");
  };
  if (text.find(' ') != std::string::npos) {
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) push(tok);
  } else {
    for (char ch : text) push(std::string(1, ch));
  }
  return w;
}

GroupWord GroupWord::random(SplitMix64& rng, std::size_t length) {
  GroupWord w;
  w.letters.reserve(length);
  for (std::size_t i = 0; i < length; ++i)
    w.letters.push_back(static_cast<WordLetter>(rng.next_below(4)));
  return w;
}

std::string GroupWord::str() const {
  static const char* names[4] = {"S", "T", "s", "t"};
  std::string out;
  for (auto l : letters) out += names[static_cast<int>(l)];
  return out;
}

RealMatrix dst_matrix(const RootParams& params) {
  const auto n = static_cast<std::size_t>(params.r - 1);
  const double scale = std::sqrt(2.0 / static_cast<double>(params.r));
  RealMatrix s(n, n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m)
      s(l, m) = scale * sin_pi_frac(static_cast<std::int64_t>(l + 1) *
                                        static_cast<std::int64_t>(m + 1),
                                    params.r);
  return s;
}

TorusRep build_torus_rep(std::int64_t k) {
  TorusRep rep;
  rep.params = RootParams::from_level(k);
  rep.dim = static_cast<std::size_t>(rep.params.r - 1);
  rep.s = to_complex(dst_matrix(rep.params));
  rep.t_diag.resize(rep.dim);
  for (std::size_t l = 0; l < rep.dim; ++l)
    rep.t_diag[l] = twist_eigenvalue(static_cast<std::int64_t>(l), rep.params);
  rep.kind = RepKind::projective;
  return rep;
}

TorusRep renormalize(const TorusRep& rep) {
  // (S T)^3 = c S^2 up to the scalar c; extract c from the normalized trace
  // and verify the defect really is scalar before dividing it out.
  ComplexMatrix st = rep.s;
  scale_columns(st, rep.t_diag, false);
  ComplexMatrix m = st * st * st;
  ComplexMatrix s2 = rep.s * rep.s;
  complexd c{};
  {
    ComplexMatrix prod = m * adjoint(s2);
    for (std::size_t i = 0; i < prod.rows(); ++i) c += prod(i, i);
    c /= static_cast<double>(rep.dim);
  }
  ComplexMatrix cs2 = s2;
  for (std::size_t i = 0; i < cs2.rows(); ++i)
    for (std::size_t j = 0; j < cs2.cols(); ++j) cs2(i, j) *= c;
  if (frobenius_distance(m, cs2) > 1e-8)
    throw std::runtime_error("renormalize: (ST)^3 defect is not scalar");

  complexd root = std::polar(std::pow(std::abs(c), 1.0 / 3.0), std::arg(c) / 3.0);
  TorusRep out = rep;
  for (auto& t : out.t_diag) t /= root;
  out.renorm_scalar = c;
  out.kind = RepKind::linear;
  return out;
}

ComplexMatrix evaluate_word(const TorusRep& rep, const GroupWord& w) {
  ComplexMatrix acc = ComplexMatrix::identity(rep.dim);
  for (auto l : w.letters) {
    switch (l) {
      case WordLetter::S:
      case WordLetter::SInv:
        acc = acc * rep.s;  // S is an involution in this model
        break;
      case WordLetter::T:
        scale_columns(acc, rep.t_diag, false);
        break;
      case WordLetter::TInv:
        scale_columns(acc, rep.t_diag, true);
        break;
    }
  }
  return acc;
}

std::array<std::int64_t, 4> word_to_sl2(const GroupWord& w, std::int64_t modulus) {
  auto reduce = [&](std::int64_t x) {
    if (modulus <= 0) return x;
    x %= modulus;
    if (x < 0) x += modulus;
    return x;
  };
  std::array<std::int64_t, 4> m = {1, 0, 0, 1};
  for (auto l : w.letters) {
    std::array<std::int64_t, 4> g{};
    switch (l) {
      case WordLetter::S: g = {0, 1, -1, 0}; break;
      case WordLetter::SInv: g = {0, -1, 1, 0}; break;
      case WordLetter::T: g = {1, 1, 0, 1}; break;
      case WordLetter::TInv: g = {1, -1, 0, 1}; break;
    }
    std::array<std::int64_t, 4> p = {
        m[0] * g[0] + m[1] * g[2], m[0] * g[1] + m[1] * g[3],
        m[2] * g[0] + m[3] * g[2], m[2] * g[1] + m[3] * g[3]};
    for (auto& x : p) x = reduce(x);
    m = p;
  }
  return m;
}

RelationResiduals relation_residuals(const TorusRep& rep) {
  RelationResiduals res;
  res.unitarity_s = unitarity_residual(rep.s);
  double acc = 0.0;
  for (const auto& t : rep.t_diag) {
    double dmag = std::norm(t) - 1.0;
    acc += dmag * dmag;
  }
  res.unitarity_t = std::sqrt(acc);

  ComplexMatrix s2 = rep.s * rep.s;
  res.s4 = frobenius_distance(s2 * s2, ComplexMatrix::identity(rep.dim));

  ComplexMatrix st = rep.s;
  scale_columns(st, rep.t_diag, false);
  res.braid = frobenius_distance(st * st * st, s2);
  return res;
}

}  // namespace qsu2

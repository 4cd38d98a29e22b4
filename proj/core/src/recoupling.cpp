#include "qsu2/recoupling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsu2/bigfloat.hpp"

namespace qsu2 {

namespace {

// Labels above this use the high-precision path: the alternating tetrahedral
// sum loses roughly maxlabel/12 decimal digits to cancellation.
constexpr std::int64_t kBigLabelThreshold = 40;

// parity of n(n-1)/2, i.e. the sign exponent of the signed factorial
// prod_{j<=n} (-1)^{j-1}[j]
inline int fact_sign_parity(std::int64_t n) {
  return static_cast<int>((n * (n - 1) / 2) & 1);
}

}  // namespace

double quantum_integer(std::int64_t n, const RootParams& params) {
  if (n < 0 || n > 2 * params.r) throw std::domain_error("quantum_integer: n out of [0, 2r]");
  return sin_pi_frac(n, params.r) / sin_pi_frac(1, params.r);
}

bool is_admissible(std::int64_t a, std::int64_t b, std::int64_t c, const RootParams& params) {
  // Negative labels are outside any sensible domain; labels above r-2 are
  // rejected by the triangle + cutoff conditions themselves, so the predicate
  // stays total there (a triple with a label >= r-1 always sums past 2r-4
  // once the triangle inequalities hold).
  if (a < 0 || b < 0 || c < 0) throw std::domain_error("is_admissible: negative label");
  if ((a + b + c) % 2 != 0) return false;
  if (std::abs(a - b) > c || c > a + b) return false;
  return a + b + c <= 2 * params.r - 4;
}

double quantum_dimension(std::int64_t l, const RootParams& params) {
  if (!params.label_in_range(l)) throw std::domain_error("quantum_dimension: label out of range");
  return quantum_integer(l + 1, params);
}

// Positive-factorial table in extended precision, plus the parity bookkeeping
// needed to restore signs of the signed factorials.
struct Recoupling::HighPrecState {
  mpfr_prec_t prec = 0;
  std::vector<BigFloat> fact;  // fact[n] = prod_{j<=n} [j], positive

  void ensure(const RootParams& params, mpfr_prec_t want_prec, std::int64_t want_n) {
    if (want_prec > prec) {
      prec = want_prec;
      fact.clear();
    }
    if (fact.empty()) {
      fact.emplace_back(prec);
      fact[0].set_si(1);
    }
    if (static_cast<std::int64_t>(fact.size()) > want_n) return;
    BigFloat sin1(prec), sinj(prec), qj(prec);
    sin1.set_sin_pi_frac(1, params.r);
    for (std::int64_t n = static_cast<std::int64_t>(fact.size()); n <= want_n; ++n) {
      sinj.set_sin_pi_frac(n % (2 * params.r), params.r);
      qj.div(sinj, sin1);
      BigFloat next(prec);
      next.mul(fact[static_cast<std::size_t>(n - 1)], qj);
      fact.push_back(std::move(next));
    }
  }
};

Recoupling::Recoupling(RootParams params) : params_(params) { log_fact_.push_back(0.0); }
Recoupling::~Recoupling() = default;
Recoupling::Recoupling(Recoupling&&) noexcept = default;
Recoupling& Recoupling::operator=(Recoupling&&) noexcept = default;

void Recoupling::require_label(std::int64_t l) const {
  if (!params_.label_in_range(l)) throw std::domain_error("recoupling: label out of [0, r-2]");
}

void Recoupling::require_admissible(std::int64_t a, std::int64_t b, std::int64_t c) const {
  if (!is_admissible(a, b, c, params_)) throw std::domain_error("recoupling: inadmissible triple");
}

double Recoupling::log_qfactorial(std::int64_t n) const {
  if (n >= params_.r)
    throw std::logic_error("log_qfactorial: argument reached r (vanishing factorial)");
  for (std::int64_t j = static_cast<std::int64_t>(log_fact_.size()); j <= n; ++j)
    log_fact_.push_back(log_fact_[static_cast<std::size_t>(j - 1)] +
                        std::log(sin_pi_frac(j, params_.r) / sin_pi_frac(1, params_.r)));
  return log_fact_[static_cast<std::size_t>(n)];
}

double Recoupling::log_quantum_dimension(std::int64_t l) const {
  require_label(l);
  return std::log(sin_pi_frac(l + 1, params_.r)) - std::log(sin_pi_frac(1, params_.r));
}

SignedLogReal Recoupling::theta(std::int64_t a, std::int64_t b, std::int64_t c) const {
  require_admissible(a, b, c);
  const std::int64_t m = (a + b - c) / 2;
  const std::int64_t n = (b + c - a) / 2;
  const std::int64_t p = (c + a - b) / 2;
  const std::int64_t s = m + n + p;
  // (-1)^s qf(s+1) qf(m) qf(n) qf(p) / (qf(a) qf(b) qf(c)); the parities
  // always cancel to a positive value in this convention.
  int parity = static_cast<int>(s & 1);
  parity ^= fact_sign_parity(s + 1) ^ fact_sign_parity(m) ^ fact_sign_parity(n) ^
            fact_sign_parity(p) ^ fact_sign_parity(a) ^ fact_sign_parity(b) ^ fact_sign_parity(c);
  double lg = log_qfactorial(s + 1) + log_qfactorial(m) + log_qfactorial(n) + log_qfactorial(p) -
              log_qfactorial(a) - log_qfactorial(b) - log_qfactorial(c);
  SignedLogReal out{parity ? -1 : 1, lg};
  if (out.sign <= 0) throw std::logic_error("theta: non-positive evaluation");
  return out;
}

SignedLogReal Recoupling::tet(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                              std::int64_t e, std::int64_t f) const {
  require_admissible(a, b, e);
  require_admissible(c, d, e);
  require_admissible(a, d, f);
  require_admissible(b, c, f);
  const std::int64_t t[4] = {(a + b + e) / 2, (c + d + e) / 2, (a + d + f) / 2, (b + c + f) / 2};
  const std::int64_t q[3] = {(a + b + c + d) / 2, (a + c + e + f) / 2, (b + d + e + f) / 2};
  const std::int64_t edges[6] = {a, b, c, d, e, f};
  const std::int64_t max_label = std::max({a, b, c, d, e, f});
  if (max_label <= kBigLabelThreshold) return tet_double(t, q, edges);
  return tet_big(t, q, edges, max_label);
}

SignedLogReal Recoupling::tet_double(const std::int64_t t[4], const std::int64_t q[3],
                                     const std::int64_t edges[6]) const {
  const std::int64_t s_lo = *std::max_element(t, t + 4);
  const std::int64_t s_hi = *std::min_element(q, q + 3);

  int pre_parity = 0;
  double pre_log = 0.0;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 4; ++i) {
      pre_parity ^= fact_sign_parity(q[j] - t[i]);
      pre_log += log_qfactorial(q[j] - t[i]);
    }
  for (int i = 0; i < 6; ++i) {
    pre_parity ^= fact_sign_parity(edges[i]);
    pre_log -= log_qfactorial(edges[i]);
  }

  std::vector<SignedLogReal> terms;
  terms.reserve(static_cast<std::size_t>(std::max<std::int64_t>(0, s_hi - s_lo + 1)));
  for (std::int64_t s = s_lo; s <= s_hi; ++s) {
    if (s + 1 >= params_.r) break;  // vanishing numerator factorial
    int parity = static_cast<int>(s & 1) ^ fact_sign_parity(s + 1);
    double lg = log_qfactorial(s + 1);
    for (int i = 0; i < 4; ++i) {
      parity ^= fact_sign_parity(s - t[i]);
      lg -= log_qfactorial(s - t[i]);
    }
    for (int j = 0; j < 3; ++j) {
      parity ^= fact_sign_parity(q[j] - s);
      lg -= log_qfactorial(q[j] - s);
    }
    terms.push_back({parity ? -1 : 1, lg});
  }
  SignedLogReal sum = signed_log_sum(terms);
  if (sum.is_zero()) return sum;
  return SignedLogReal{pre_parity ? -sum.sign : sum.sign, pre_log + sum.log_mag};
}

SignedLogReal Recoupling::tet_big(const std::int64_t t[4], const std::int64_t q[3],
                                  const std::int64_t edges[6], std::int64_t max_label) const {
  const std::int64_t s_lo = *std::max_element(t, t + 4);
  const std::int64_t s_hi = *std::min_element(q, q + 3);
  const auto prec = static_cast<mpfr_prec_t>(128 + max_label);
  if (!big_) big_ = std::make_unique<HighPrecState>();
  big_->ensure(params_, prec, std::min<std::int64_t>(s_hi + 1, params_.r - 1));
  const auto& fact = big_->fact;

  int pre_parity = 0;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 4; ++i) pre_parity ^= fact_sign_parity(q[j] - t[i]);
  for (int i = 0; i < 6; ++i) pre_parity ^= fact_sign_parity(edges[i]);

  BigFloat acc(prec), term(prec), tmp(prec);
  for (std::int64_t s = s_lo; s <= s_hi; ++s) {
    if (s + 1 >= params_.r) break;
    int parity = static_cast<int>(s & 1) ^ fact_sign_parity(s + 1);
    term.set(fact[static_cast<std::size_t>(s + 1)]);
    for (int i = 0; i < 4; ++i) {
      parity ^= fact_sign_parity(s - t[i]);
      tmp.div(term, fact[static_cast<std::size_t>(s - t[i])]);
      term.set(tmp);
    }
    for (int j = 0; j < 3; ++j) {
      parity ^= fact_sign_parity(q[j] - s);
      tmp.div(term, fact[static_cast<std::size_t>(q[j] - s)]);
      term.set(tmp);
    }
    if (parity) term.neg();
    tmp.add(acc, term);
    acc.set(tmp);
  }
  if (acc.is_zero()) return SignedLogReal::zero();

  // fold in the factorial prefactor at full precision
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 4; ++i) {
      tmp.mul(acc, fact[static_cast<std::size_t>(q[j] - t[i])]);
      acc.set(tmp);
    }
  for (int i = 0; i < 6; ++i) {
    tmp.div(acc, fact[static_cast<std::size_t>(edges[i])]);
    acc.set(tmp);
  }
  int sign = acc.sign() > 0 ? 1 : -1;
  if (pre_parity) sign = -sign;
  return SignedLogReal{sign, acc.log_abs()};
}

std::vector<std::int64_t> Recoupling::admissible_middle_labels(std::int64_t x1, std::int64_t x2,
                                                               std::int64_t x3,
                                                               std::int64_t x4) const {
  require_label(x1);
  require_label(x2);
  require_label(x3);
  require_label(x4);
  std::vector<std::int64_t> labels;
  for (std::int64_t b = 0; b <= params_.max_label(); ++b)
    if (is_admissible(x1, x2, b, params_) && is_admissible(x3, x4, b, params_))
      labels.push_back(b);
  return labels;
}

FMatrix Recoupling::f_matrix(std::int64_t a1, std::int64_t a2, std::int64_t a3,
                             std::int64_t a4) const {
  FMatrix out;
  out.row_labels = admissible_middle_labels(a1, a2, a3, a4);
  out.col_labels = admissible_middle_labels(a2, a3, a1, a4);
  out.m = RealMatrix(out.row_labels.size(), out.col_labels.size());
  if (out.row_labels.empty() || out.col_labels.empty()) return out;

  for (std::size_t i = 0; i < out.row_labels.size(); ++i) {
    const std::int64_t b = out.row_labels[i];
    const double log_row = theta(a1, a2, b).log_mag + theta(a3, a4, b).log_mag;
    for (std::size_t j = 0; j < out.col_labels.size(); ++j) {
      const std::int64_t bp = out.col_labels[j];
      SignedLogReal tval = tet(a1, a2, a3, a4, b, bp);
      if (tval.is_zero()) continue;
      const double log_col = theta(a2, a3, bp).log_mag + theta(a1, a4, bp).log_mag;
      const double log_norm =
          0.5 * (log_quantum_dimension(b) + log_quantum_dimension(bp) - log_row - log_col);
      out.m(i, j) = tval.sign * std::exp(tval.log_mag + log_norm);
    }
  }
  return out;
}

}  // namespace qsu2

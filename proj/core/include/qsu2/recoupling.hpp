#ifndef QSU2_RECOUPLING_HPP
#define QSU2_RECOUPLING_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "qsu2/matrix.hpp"
#include "qsu2/root_params.hpp"
#include "qsu2/signed_log.hpp"

namespace qsu2 {

// [n] = sin(n*pi/r)/sin(pi/r).  Positive for 1 <= n <= r-1, zero at 0 and r.
double quantum_integer(std::int64_t n, const RootParams& params);

// Triangle inequalities, even parity, quantum cutoff a+b+c <= 2r-4.
bool is_admissible(std::int64_t a, std::int64_t b, std::int64_t c, const RootParams& params);

// Delta_l = [l+1] in the positive convention; always > 0 for labels in range.
double quantum_dimension(std::int64_t l, const RootParams& params);

struct Triple {
  std::int64_t a, b, c;
};

// Unitary-normalized 6j change of basis between the two spines of a
// 4-punctured sphere.  Rows are H-spine interior labels b (admissible with
// (a1,a2,b) and (a3,a4,b)), columns are I-spine labels b' (admissible with
// (a2,a3,b') and (a1,a4,b')).  Real orthogonal.
struct FMatrix {
  std::vector<std::int64_t> row_labels;
  std::vector<std::int64_t> col_labels;
  RealMatrix m;
};

class Recoupling {
 public:
  explicit Recoupling(RootParams params);
  ~Recoupling();
  Recoupling(Recoupling&&) noexcept;
  Recoupling& operator=(Recoupling&&) noexcept;
  Recoupling(const Recoupling&) = delete;
  Recoupling& operator=(const Recoupling&) = delete;

  const RootParams& params() const { return params_; }

  // Theta net evaluation; positive in this convention.
  SignedLogReal theta(std::int64_t a, std::int64_t b, std::int64_t c) const;

  // Tetrahedral net with vertex triples (a,b,e), (c,d,e), (a,d,f), (b,c,f).
  // Carries the signs of the recoupling calculus.
  SignedLogReal tet(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                    std::int64_t e, std::int64_t f) const;

  FMatrix f_matrix(std::int64_t a1, std::int64_t a2, std::int64_t a3, std::int64_t a4) const;

  double log_quantum_dimension(std::int64_t l) const;

  // Labels b admissible with both (x1,x2,b) and (x3,x4,b), ascending.
  std::vector<std::int64_t> admissible_middle_labels(std::int64_t x1, std::int64_t x2,
                                                     std::int64_t x3, std::int64_t x4) const;

 private:
  struct HighPrecState;

  void require_label(std::int64_t l) const;
  void require_admissible(std::int64_t a, std::int64_t b, std::int64_t c) const;

  // log |[n]!| with [j] positive; table grows on demand (single warm thread).
  double log_qfactorial(std::int64_t n) const;

  SignedLogReal tet_double(const std::int64_t t[4], const std::int64_t q[3],
                           const std::int64_t edges[6]) const;
  SignedLogReal tet_big(const std::int64_t t[4], const std::int64_t q[3],
                        const std::int64_t edges[6], std::int64_t max_label) const;

  RootParams params_;
  mutable std::vector<double> log_fact_;  // log_fact_[n] = log |[n]!|
  mutable std::unique_ptr<HighPrecState> big_;
};

}  // namespace qsu2

#endif

#ifndef QSU2_TORUS_REP_HPP
#define QSU2_TORUS_REP_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsu2/matrix.hpp"
#include "qsu2/rng.hpp"
#include "qsu2/root_params.hpp"

namespace qsu2 {

enum class WordLetter { S, T, SInv, TInv };

// Word in the generators S = [[0,1],[-1,0]], T = [[1,1],[0,1]].
struct GroupWord {
  std::vector<WordLetter> letters;

  // "S T S^-1 T^-1" (tokens) or compact "STst" (lowercase = inverse)
  static GroupWord parse(const std::string& text);
  static GroupWord random(SplitMix64& rng, std::size_t length);
  std::string str() const;
};

enum class RepKind { projective, linear };

// Level-k representation of the mapping class group of the closed torus:
// T acts by twist eigenvalues, S by the sine kernel of the discrete Fourier
// transform.  dim = r-1, labels 0..r-2.
struct TorusRep {
  RootParams params;
  std::size_t dim = 0;
  ComplexMatrix s;       // real symmetric involution, stored complex
  ComplexVector t_diag;  // unit-modulus diagonal
  std::optional<complexd> renorm_scalar;
  RepKind kind = RepKind::projective;
};

// S_{l,m} = sqrt(2/r) sin(pi (l+1)(m+1)/r); DST-I, orthogonal, involutive.
RealMatrix dst_matrix(const RootParams& params);

TorusRep build_torus_rep(std::int64_t k);

// Scales T by c^{-1/3} (principal branch) where (ST)^3 = c S^2, so both
// presentation relations hold exactly.  Idempotent.
TorusRep renormalize(const TorusRep& rep);

ComplexMatrix evaluate_word(const TorusRep& rep, const GroupWord& w);

// Image of the word in SL(2,Z) (modulus 0) or SL(2,Z/m); row-major 2x2.
std::array<std::int64_t, 4> word_to_sl2(const GroupWord& w, std::int64_t modulus);

struct RelationResiduals {
  double unitarity_s = 0.0;
  double unitarity_t = 0.0;
  double s4 = 0.0;
  double braid = 0.0;
};

RelationResiduals relation_residuals(const TorusRep& rep);

}  // namespace qsu2

#endif

#ifndef QSU2_CLI_HPP
#define QSU2_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qsu2 {

// One experiment invocation.  Identical configs (including seed) must produce
// byte-identical output files.
struct RunConfig {
  std::string command;  // six-j | torus-rep | sphere-rep | gap-sweep | converge | factor-check | gaussian
  std::vector<std::int64_t> k_values;
  std::int64_t r = 0;  // alternative to k where natural (six-j, sphere-rep, gaussian)
  std::int64_t prime = 0;
  std::vector<std::int64_t> boundary;
  std::string family = "torus";  // torus | m04_tensor
  std::string function_name = "hermite1";
  double f_exponent = 1.0 / 3.0;
  double tol = 1e-10;
  double width = 1.0;
  double quad_x_max = 6.0;
  double quad_step = 1.0 / 512.0;
  std::int64_t trials = 10000;
  std::int64_t max_word_length = 60;
  std::uint64_t seed = 0;
  std::string out_path;        // empty: $QSU2_OUT_DIR/<command>.<ext> if set, else stdout
  std::string format = "json"; // csv | json
};

// "5", "1,2,5" or "1..20"
std::vector<std::int64_t> parse_k_range(const std::string& text);

// 17 significant digits, the serialization contract for every float emitted
std::string format_double(double x);

// Exit codes: 0 success, 1 invariant/consistency failure while computing,
// 2 invalid configuration (nothing written), 3 I/O failure.
int run(const RunConfig& config, std::ostream& diagnostics);

}  // namespace qsu2

#endif

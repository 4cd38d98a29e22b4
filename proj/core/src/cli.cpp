#include "qsu2/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "qsu2/metaplectic.hpp"
#include "qsu2/recoupling.hpp"
#include "qsu2/root_params.hpp"
#include "qsu2/sphere_rep.hpp"
#include "qsu2/spectral.hpp"
#include "qsu2/torus_rep.hpp"

namespace qsu2 {

namespace {

constexpr const char* kToolVersion = "qsu2 0.1.0";
constexpr const char* kConventions =
    "positive quantum dimensions; principal cube root renormalization; "
    "odd Z/2p metaplectic model; embedding grid x_l=(l+1)/sqrt(2r)";

std::string jstr(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string jcplx(complexd z) {
  return "[" + format_double(z.real()) + "," + format_double(z.imag()) + "]";
}

std::string jints(const std::vector<std::int64_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

std::string metadata_json(const RunConfig& config) {
  std::string out = "{";
  out += "\"tool\":" + jstr(kToolVersion);
  out += ",\"command\":" + jstr(config.command);
  out += ",\"seed\":" + std::to_string(config.seed);
  out += ",\"conventions\":" + jstr(kConventions);
  out += "}";
  return out;
}

struct CommandOutput {
  std::string text;
  std::string extension;  // "json" or "csv"
};

std::int64_t single_k(const RunConfig& config) {
  if (config.k_values.size() != 1)
    throw std::invalid_argument(config.command + ": exactly one --k value expected");
  return config.k_values.front();
}

// r from --r if given, else from a single --k
std::int64_t resolve_r(const RunConfig& config) {
  if (config.r > 0) return config.r;
  if (config.k_values.size() == 1) return config.k_values.front() + 2;
  throw std::invalid_argument(config.command + ": provide --r or a single --k");
}

CommandOutput run_six_j(const RunConfig& config) {
  std::int64_t r = resolve_r(config);
  RootParams params = RootParams::from_r(r);
  if (config.boundary.size() != 4)
    throw std::invalid_argument("six-j: --boundary must list exactly 4 labels");
  for (auto l : config.boundary)
    if (!params.label_in_range(l)) throw std::invalid_argument("six-j: boundary label out of [0, r-2]");

  Recoupling rec(params);
  FMatrix f = rec.f_matrix(config.boundary[0], config.boundary[1], config.boundary[2],
                           config.boundary[3]);
  std::string out = "{\"metadata\":" + metadata_json(config);
  out += ",\"r\":" + std::to_string(r);
  out += ",\"boundary\":" + jints(config.boundary);
  out += ",\"row_labels\":" + jints(f.row_labels);
  out += ",\"col_labels\":" + jints(f.col_labels);
  out += ",\"matrix\":[";
  for (std::size_t i = 0; i < f.m.rows(); ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t j = 0; j < f.m.cols(); ++j) {
      if (j) out += ",";
      out += format_double(f.m(i, j));
    }
    out += "]";
  }
  out += "]}\n";
  return {out, "json"};
}

CommandOutput run_torus_rep(const RunConfig& config) {
  std::int64_t k = single_k(config);
  if (k < 1) throw std::invalid_argument("torus-rep: k must be >= 1");
  // full matrices are serialized; keep the output and the dense relation
  // products within reason
  if (k > 1024) throw std::invalid_argument("torus-rep: serialization limited to k <= 1024");
  TorusRep proj = build_torus_rep(k);
  RelationResiduals res_proj = relation_residuals(proj);
  TorusRep lin = renormalize(proj);
  RelationResiduals res_lin = relation_residuals(lin);

  std::string out = "{\"metadata\":" + metadata_json(config);
  out += ",\"k\":" + std::to_string(k);
  out += ",\"r\":" + std::to_string(proj.params.r);
  out += ",\"dim\":" + std::to_string(proj.dim);
  out += ",\"renorm_scalar\":" + jcplx(*lin.renorm_scalar);
  out += ",\"s\":[";
  for (std::size_t i = 0; i < proj.dim; ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t j = 0; j < proj.dim; ++j) {
      if (j) out += ",";
      out += format_double(proj.s(i, j).real());
    }
    out += "]";
  }
  out += "],\"t_diag_projective\":[";
  for (std::size_t i = 0; i < proj.dim; ++i) {
    if (i) out += ",";
    out += jcplx(proj.t_diag[i]);
  }
  out += "],\"t_diag\":[";
  for (std::size_t i = 0; i < lin.dim; ++i) {
    if (i) out += ",";
    out += jcplx(lin.t_diag[i]);
  }
  auto res_json = [](const RelationResiduals& r2) {
    return "{\"unitarity_s\":" + format_double(r2.unitarity_s) +
           ",\"unitarity_t\":" + format_double(r2.unitarity_t) +
           ",\"s4\":" + format_double(r2.s4) + ",\"braid\":" + format_double(r2.braid) + "}";
  };
  out += "],\"residuals_projective\":" + res_json(res_proj);
  out += ",\"residuals\":" + res_json(res_lin);
  out += "}\n";
  return {out, "json"};
}

CommandOutput run_sphere_rep(const RunConfig& config) {
  std::int64_t r = resolve_r(config);
  RootParams params = RootParams::from_r(r);
  if (!(config.f_exponent > 0.0 && config.f_exponent < 0.5))
    throw std::invalid_argument("sphere-rep: --f-exponent must lie in (0, 1/2)");

  auto [v, rpt] = almost_invariant_vector(params, config.f_exponent);
  InteriorBound bound = interior_bound_check(4, rpt.a, params);

  std::string out = "{\"metadata\":" + metadata_json(config);
  out += ",\"r\":" + std::to_string(rpt.r);
  out += ",\"a\":" + std::to_string(rpt.a);
  out += ",\"f_exponent\":" + format_double(rpt.f_exponent);
  out += ",\"dim\":" + std::to_string(rpt.dim);
  out += ",\"disp_v_u1\":" + format_double(rpt.disp_v_u1);
  out += ",\"disp_v_u2\":" + format_double(rpt.disp_v_u2);
  out += ",\"disp_w_u1\":" + format_double(rpt.disp_w_u1);
  out += ",\"disp_w_u2\":" + format_double(rpt.disp_w_u2);
  out += ",\"diag_component\":" + format_double(rpt.diag_component);
  out += ",\"antidiag_component\":" + format_double(rpt.antidiag_component);
  out += ",\"max_interior\":" + std::to_string(bound.max_interior);
  out += ",\"interior_bound_ok\":" + std::string(bound.ok ? "true" : "false");
  out += ",\"notes\":" + jstr("tensor twist eigenvalue convention exp(-i pi (b-c)(b+c+2)/(2r)); "
                              "diagonal/anti-diagonal localization of fixed vectors assumes prime r");
  out += "}\n";
  return {out, "json"};
}

CommandOutput run_gap_sweep(const RunConfig& config) {
  if (config.family != "torus" && config.family != "m04_tensor")
    throw std::invalid_argument("gap-sweep: --family must be torus or m04_tensor");
  for (auto k : config.k_values)
    if (k < 1) throw std::invalid_argument("gap-sweep: k values must be >= 1");
  if (config.family == "m04_tensor" && !(config.f_exponent > 0.0 && config.f_exponent < 0.5))
    throw std::invalid_argument("gap-sweep: --f-exponent must lie in (0, 1/2)");

  GapSweepOptions opts;
  opts.f_exponent = config.f_exponent;
  opts.seed = config.seed;
  SweepFamily fam = config.family == "torus" ? SweepFamily::torus : SweepFamily::m04_tensor;
  std::vector<GapSweepRow> rows = gap_sweep(fam, config.k_values, opts);

  const bool with_v = fam == SweepFamily::m04_tensor;
  std::string out = "k,r,dim,lambda_min,max_disp,fixed_dim";
  if (with_v) out += ",disp_w_u1,disp_w_u2";
  out += "\n";
  for (const auto& row : rows) {
    out += std::to_string(row.k) + "," + std::to_string(row.r) + "," + std::to_string(row.dim);
    out += "," + format_double(row.lambda_min) + "," + format_double(row.max_disp);
    out += "," + std::to_string(row.fixed_dim);
    if (with_v) out += "," + format_double(row.disp_w_u1) + "," + format_double(row.disp_w_u2);
    out += "\n";
    if (!row.error.empty()) out += "# k=" + std::to_string(row.k) + " error: " + row.error + "\n";
  }
  out += "# tool=" + std::string(kToolVersion) + "\n";
  out += "# family=" + config.family + "\n";
  out += "# seed=" + std::to_string(config.seed) + "\n";
  out += "# conventions=" + std::string(kConventions) + "\n";
  return {out, "csv"};
}

CommandOutput run_converge(const RunConfig& config) {
  FunctionDescriptor fd = lookup_function(config.function_name);
  if (config.k_values.empty()) throw std::invalid_argument("converge: --k list required");
  for (auto k : config.k_values)
    if (k < 1) throw std::invalid_argument("converge: k values must be >= 1");
  QuadratureOptions qopts{config.quad_x_max, config.quad_step};
  if (!(qopts.x_max > 0.0) || !(qopts.step > 0.0))
    throw std::invalid_argument("converge: quadrature options must be positive");

  ConvergenceReport report = convergence_report(fd, config.k_values, qopts);
  std::string out = "{\"metadata\":" + metadata_json(config);
  out += ",\"function\":" + jstr(report.function_name);
  out += ",\"continuous\":{\"s\":" + jcplx(report.continuous_s);
  out += ",\"t\":" + jcplx(report.continuous_t);
  out += ",\"error_s\":" + format_double(report.error_s);
  out += ",\"error_t\":" + format_double(report.error_t) + "}";
  out += ",\"rows\":[";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    if (i) out += ",";
    out += "{\"k\":" + std::to_string(row.k) + ",\"r\":" + std::to_string(row.r);
    out += ",\"quantum_s\":" + jcplx(row.quantum_s) + ",\"quantum_t\":" + jcplx(row.quantum_t);
    out += ",\"gap_s\":" + format_double(row.gap_s) + ",\"gap_t\":" + format_double(row.gap_t);
    out += ",\"truncated_mass\":" + format_double(row.truncated_mass);
    out += ",\"warning\":" + std::string(row.warning ? "true" : "false") + "}";
  }
  out += "]}\n";
  return {out, "json"};
}

CommandOutput run_factor_check(const RunConfig& config) {
  if (!is_odd_prime(config.prime))
    throw std::invalid_argument("factor-check: --prime must be an odd prime");
  if (config.trials < 0) throw std::invalid_argument("factor-check: --trials must be >= 0");
  if (config.max_word_length < 1)
    throw std::invalid_argument("factor-check: --max-len must be >= 1");
  if (!(config.tol > 0.0)) throw std::invalid_argument("factor-check: --tol must be positive");

  CongruenceProbeOptions opts;
  opts.trials = config.trials;
  opts.max_word_length = static_cast<std::size_t>(config.max_word_length);
  opts.tol = config.tol;
  opts.seed = config.seed;
  CongruenceProbe probe = congruence_level(config.prime, opts);

  std::string out = "{\"metadata\":" + metadata_json(config);
  out += ",\"p\":" + std::to_string(probe.p);
  out += ",\"candidates\":[";
  for (std::size_t i = 0; i < probe.candidates.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(probe.candidates[i].modulus);
  }
  out += "],\"max_proj_distance_per_candidate\":[";
  for (std::size_t i = 0; i < probe.candidates.size(); ++i) {
    if (i) out += ",";
    out += format_double(probe.candidates[i].max_proj_distance);
  }
  out += "],\"pairs_tested_per_candidate\":[";
  for (std::size_t i = 0; i < probe.candidates.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(probe.candidates[i].pairs_tested);
  }
  out += "],\"reported_level\":";
  out += probe.reported_level ? std::to_string(*probe.reported_level) : std::string("null");
  out += ",\"t_projective_order\":" + std::to_string(probe.t_projective_order);
  out += "}\n";
  return {out, "json"};
}

CommandOutput run_gaussian(const RunConfig& config) {
  std::int64_t r = resolve_r(config);
  RootParams params = RootParams::from_r(r);
  if (!(config.width > 0.0)) throw std::invalid_argument("gaussian: --width must be positive");
  GaussianResiduals res = gaussian_experiment(params, config.width);
  std::string out = "{\"metadata\":" + metadata_json(config);
  out += ",\"r\":" + std::to_string(r);
  out += ",\"width\":" + format_double(config.width);
  out += ",\"residual_s\":" + format_double(res.residual_s);
  out += ",\"residual_t\":" + format_double(res.residual_t);
  out += "}\n";
  return {out, "json"};
}

}  // namespace

std::vector<std::int64_t> parse_k_range(const std::string& text) {
  auto to_int = [](const std::string& s) {
    std::size_t pos = 0;
    std::int64_t v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("parse_k_range: bad integer '" + s + "'");
    return v;
  };
  std::vector<std::int64_t> out;
  auto dots = text.find("..");
  if (dots != std::string::npos) {
    std::int64_t lo = to_int(text.substr(0, dots));
    std::int64_t hi = to_int(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("parse_k_range: empty range " + text);
    for (std::int64_t k = lo; k <= hi; ++k) out.push_back(k);
    return out;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(to_int(item));
  if (out.empty()) throw std::invalid_argument("parse_k_range: empty list");
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int run(const RunConfig& config, std::ostream& diagnostics) {
  CommandOutput result;
  try {
    if (config.format != "json" && config.format != "csv")
      throw std::invalid_argument("run: --format must be json or csv");
    if (config.command == "six-j") result = run_six_j(config);
    else if (config.command == "torus-rep") result = run_torus_rep(config);
    else if (config.command == "sphere-rep") result = run_sphere_rep(config);
    else if (config.command == "gap-sweep") result = run_gap_sweep(config);
    else if (config.command == "converge") result = run_converge(config);
    else if (config.command == "factor-check") result = run_factor_check(config);
    else if (config.command == "gaussian") result = run_gaussian(config);
    else throw std::invalid_argument("run: unknown command '" + config.command + "'");
  } catch (const std::invalid_argument& ex) {
    diagnostics << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::domain_error& ex) {
    diagnostics << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    diagnostics << "failure: " << ex.what() << "\n";
    return 1;
  }

  std::string path = config.out_path;
  if (path.empty()) {
    if (const char* dir = std::getenv("QSU2_OUT_DIR")) {
      path = std::string(dir) + "/" + config.command + "." + result.extension;
    }
  }
  if (path.empty()) {
    std::cout << result.text;
    return std::cout.good() ? 0 : 3;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    diagnostics << "error: cannot open output file " << path << "\n";
    return 3;
  }
  out << result.text;
  out.close();
  if (!out.good()) {
    diagnostics << "error: write failed for " << path << "\n";
    return 3;
  }
  return 0;
}

}  // namespace qsu2

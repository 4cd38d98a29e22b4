#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qsu2/metaplectic.hpp"
#include "qsu2/spectral.hpp"
#include "qsu2/torus_rep.hpp"

using namespace qsu2;

TEST_CASE("finite metaplectic matrices at p = 3") {
  FiniteMetaplectic rep = build_finite_metaplectic(3);
  REQUIRE(rep.dim == 2);
  CHECK(std::abs(rep.t_diag[0] - std::polar(1.0, -std::numbers::pi / 6.0)) <= 1e-14);
  CHECK(std::abs(rep.t_diag[1] - std::polar(1.0, -2.0 * std::numbers::pi / 3.0)) <= 1e-14);
  const complexd iunit{0.0, 1.0};
  const double c = std::sqrt(2.0 / 3.0);
  CHECK(std::abs(rep.s(0, 0) - iunit * c * std::sin(std::numbers::pi / 3.0)) <= 1e-14);
  CHECK(std::abs(rep.s(0, 1) - iunit * c * std::sin(2.0 * std::numbers::pi / 3.0)) <= 1e-14);
  CHECK(std::abs(rep.s(1, 1) - iunit * c * std::sin(4.0 * std::numbers::pi / 3.0)) <= 1e-14);

  CHECK_THROWS_AS(build_finite_metaplectic(2), std::domain_error);
  CHECK_THROWS_AS(build_finite_metaplectic(9), std::domain_error);
}

TEST_CASE("finite metaplectic unitarity") {
  for (std::int64_t p : {3, 5, 7, 11, 31, 101}) {
    FiniteMetaplectic rep = build_finite_metaplectic(p);
    CHECK(unitarity_residual(rep.s) <= 1e-12);
    for (const auto& t : rep.t_diag) CHECK(std::abs(std::abs(t) - 1.0) <= 1e-14);
  }
}

TEST_CASE("quantum representation matches the odd metaplectic model") {
  for (std::int64_t p : {3, 5, 7, 11, 13}) {
    QuantumMetaplecticMatch match = compare_with_quantum(p);
    CHECK(match.d_proj_s <= 1e-9);
    CHECK(match.d_proj_t <= 1e-9);
    complexd expect_t = std::polar(1.0, std::numbers::pi / (2.0 * static_cast<double>(p)));
    CHECK(std::abs(match.phase_t - expect_t) <= 1e-9);
    CHECK(std::abs(std::abs(match.phase_s) - 1.0) <= 1e-12);
  }
}

TEST_CASE("congruence probe at p = 5") {
  CongruenceProbeOptions opts;
  opts.trials = 400;
  opts.max_word_length = 30;
  CongruenceProbe probe = congruence_level(5, opts);
  CHECK(probe.t_projective_order == 20);
  REQUIRE(probe.candidates.size() == 3);
  CHECK(probe.candidates[0].modulus == 5);
  CHECK(probe.candidates[0].max_proj_distance > 0.1);  // level p fails
  CHECK(probe.candidates[1].max_proj_distance > 0.1);  // level 2p fails
  CHECK(probe.candidates[2].max_proj_distance <= opts.tol);
  REQUIRE(probe.reported_level.has_value());
  CHECK(*probe.reported_level == 20);

  // trials = 0: vacuous pass for every candidate
  opts.trials = 0;
  CongruenceProbe vac = congruence_level(5, opts);
  REQUIRE(vac.reported_level.has_value());
  CHECK(*vac.reported_level == 5);
}

TEST_CASE("congruence probe determinism") {
  CongruenceProbeOptions opts;
  opts.trials = 200;
  opts.seed = 17;
  CongruenceProbe a = congruence_level(3, opts);
  CongruenceProbe b = congruence_level(3, opts);
  for (std::size_t i = 0; i < a.candidates.size(); ++i) {
    CHECK(a.candidates[i].max_proj_distance == b.candidates[i].max_proj_distance);
    CHECK(a.candidates[i].pairs_tested == b.candidates[i].pairs_tested);
  }
}

TEST_CASE("projective image order") {
  ImageOrderResult capped = projective_image_order(3, 1);
  CHECK(capped.exceeded_cap);

  ImageOrderResult p3 = projective_image_order(3, 100000);
  REQUIRE_FALSE(p3.exceeded_cap);
  CHECK(p3.order > 1);

  // exploration order must not change the closure
  ImageOrderResult p3b = projective_image_order(3, 100000, 99);
  CHECK(p3.order == p3b.order);
}

TEST_CASE("function registry") {
  FunctionDescriptor h1 = lookup_function("hermite1");
  CHECK(h1.odd);
  CHECK(h1.f(0.0) == doctest::Approx(0.0));
  CHECK(h1.f(-0.7) == doctest::Approx(-h1.f(0.7)).epsilon(1e-14));

  FunctionDescriptor g = lookup_function("gaussian");
  CHECK_FALSE(g.odd);
  CHECK(g.f(0.3) == doctest::Approx(g.f(-0.3)).epsilon(1e-14));

  FunctionDescriptor ind = lookup_function("indicator(0.5,1.5)");
  CHECK(ind.f(1.0) > 0.0);
  CHECK(ind.f(-1.0) == doctest::Approx(-ind.f(1.0)));
  CHECK(ind.f(2.0) == 0.0);

  CHECK_THROWS_AS(lookup_function("nope"), std::invalid_argument);
  CHECK_THROWS_AS(lookup_function("indicator(2,1)"), std::invalid_argument);
}

TEST_CASE("quadrature pairings: eigenfunction identities") {
  QuadratureOptions opts;  // X = 6, step 1/512
  FunctionDescriptor h1 = lookup_function("hermite1");
  PairingResult sin_pair = sin_cos_pairing(h1, PairingKernel::sin, opts);
  CHECK(std::abs(sin_pair.value - complexd{1.0, 0.0}) <= 1e-6 + sin_pair.error_estimate);
  CHECK_FALSE(sin_pair.truncation_warning);

  FunctionDescriptor g = lookup_function("gaussian");
  PairingResult cos_pair = sin_cos_pairing(g, PairingKernel::cos, opts);
  CHECK(std::abs(cos_pair.value - complexd{1.0, 0.0}) <= 1e-6 + cos_pair.error_estimate);

  // zero function pairs to zero
  FunctionDescriptor zero{"zero", [](double) { return 0.0; }, true};
  PairingResult zp = sin_cos_pairing(zero, PairingKernel::sin, opts);
  CHECK(std::abs(zp.value) == 0.0);

  // far-out support triggers the truncation warning
  FunctionDescriptor far = lookup_function("indicator(10,20)");
  PairingResult fp = sin_cos_pairing(far, PairingKernel::gaussian_phase, opts);
  CHECK(fp.truncation_warning);
}

TEST_CASE("quadrature self-consistency under refinement") {
  FunctionDescriptor h1 = lookup_function("hermite1");
  QuadratureOptions coarse{6.0, 1.0 / 128.0};
  QuadratureOptions fine{6.0, 1.0 / 256.0};
  PairingResult pc = sin_cos_pairing(h1, PairingKernel::gaussian_phase, coarse);
  PairingResult pf = sin_cos_pairing(h1, PairingKernel::gaussian_phase, fine);
  CHECK(std::abs(pf.value - pc.value) <= pc.error_estimate + pf.error_estimate + 1e-12);
}

TEST_CASE("step embedding") {
  FunctionDescriptor h1 = lookup_function("hermite1");
  StepEmbedding emb = step_embed(h1, 512);
  CHECK(emb.values.size() == static_cast<std::size_t>(emb.r - 1));
  double norm2 = 0.0;
  for (double v : emb.values) norm2 += v * v;
  CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(emb.truncated_mass <= 1e-3);
  CHECK_FALSE(emb.warning);

  FunctionDescriptor far = lookup_function("indicator(10,20)");
  StepEmbedding bad = step_embed(far, 16);  // grid tops out near sqrt(r/2) = 3
  CHECK(bad.warning);

  FunctionDescriptor g = lookup_function("gaussian");
  CHECK_THROWS_AS(step_embed(g, 64), std::invalid_argument);
}

TEST_CASE("convergence report shrinks the gap") {
  FunctionDescriptor h1 = lookup_function("hermite1");
  std::vector<std::int64_t> ks = {64, 256};
  QuadratureOptions opts{6.0, 1.0 / 256.0};
  ConvergenceReport rep = convergence_report(h1, ks, opts);
  REQUIRE(rep.rows.size() == 2);
  CHECK(std::abs(rep.continuous_s - complexd{1.0, 0.0}) <= 1e-4);
  CHECK(rep.rows[1].gap_s <= rep.rows[0].gap_s + 1e-3);
  CHECK(rep.rows[1].gap_t <= rep.rows[0].gap_t + 1e-3);
  for (const auto& row : rep.rows) {
    CHECK(std::abs(row.quantum_s) <= 1.0 + 1e-6);
    CHECK(std::abs(row.quantum_t) <= 1.0 + 1e-6);
  }
}

TEST_CASE("gaussian experiment residuals") {
  RootParams params = RootParams::from_r(400);
  GaussianResiduals res = gaussian_experiment(params);
  CHECK(res.residual_s >= 0.0);
  CHECK(res.residual_s <= 2.0);
  CHECK(res.residual_t >= 0.0);
  CHECK(res.residual_t <= 2.0);

  // widening the profile spreads the twist phases and grows the T residual
  GaussianResiduals wide = gaussian_experiment(params, 0.05);
  GaussianResiduals narrow = gaussian_experiment(params, 4.0);
  CHECK(wide.residual_t > narrow.residual_t);

  CHECK_THROWS_AS(gaussian_experiment(params, -1.0), std::invalid_argument);
}

TEST_CASE("primality guard") {
  CHECK(is_odd_prime(3));
  CHECK(is_odd_prime(101));
  CHECK_FALSE(is_odd_prime(2));
  CHECK_FALSE(is_odd_prime(1));
  CHECK_FALSE(is_odd_prime(15));
}

// Numerical baseline solver: conditional-gradient minimization of
// S(rho || sigma) over the separable set, checked against closed forms.

#include <catch2/catch_amalgamated.hpp>

#include "qree/families.hpp"
#include "qree/oracle.hpp"
#include "qree/random.hpp"

using namespace qree;

namespace {

oracle::OracleConfig quick_config(std::uint64_t seed = 7) {
  oracle::OracleConfig cfg;
  cfg.restarts = 2;
  cfg.max_iters = 2000;
  cfg.tol = 1e-9;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("oracle on separable states") {
  const auto cfg = quick_config();
  SECTION("maximally mixed state") {
    const auto res = oracle::solve(DensityMatrix::maximally_mixed(), cfg);
    REQUIRE(res.ree < 1e-9);
    REQUIRE(res.ree > -1e-12);
    REQUIRE(res.converged);
  }
  SECTION("separable werner state") {
    const double p = 0.2;
    const Mat4 m = cx(p) * projector(bell_phi_plus()) +
                   cx((1.0 - p) / 4.0) * Mat4::identity();
    const auto res = oracle::solve(DensityMatrix::from_matrix(m), cfg);
    REQUIRE(res.ree < 1e-8);
  }
}

TEST_CASE("oracle on maximally entangled states") {
  const auto cfg = quick_config();
  for (const Vec4& b : {bell_phi_plus(), bell_phi_minus(), bell_psi_plus(), bell_psi_minus()}) {
    const auto res = oracle::solve(DensityMatrix::from_matrix(projector(b)), cfg);
    REQUIRE(res.ree == Catch::Approx(std::log(2.0)).margin(1e-7));
  }
}

TEST_CASE("oracle agrees with closed-form family values") {
  const auto cfg = quick_config();
  SECTION("bell diagonal") {
    const auto f = families::bell_diagonal(0.1, 0.15, 0.6, 0.15);
    const auto res = oracle::solve(f.rho, cfg);
    REQUIRE(res.ree == Catch::Approx(f.ree).margin(1e-6));
    REQUIRE(res.converged);
  }
  SECTION("vedral-plenio") {
    const auto f = families::vedral_plenio(0.5, 0.3, 0.2);
    const auto res = oracle::solve(f.rho, cfg);
    REQUIRE(res.ree == Catch::Approx(f.ree).margin(1e-6));
  }
  SECTION("generalized horodecki") {
    const auto f = families::gen_horodecki(0.6, 0.3, 0.1);
    const auto res = oracle::solve(f.rho, cfg);
    REQUIRE(res.ree == Catch::Approx(f.ree).margin(1e-6));
  }
  SECTION("the shortcut value on the failure family is not the minimum") {
    // The baseline lands at the true value, strictly below the
    // procedure's candidate value.
    const auto f = families::horodecki_type(0.2, 0.1, 0.35, 0.3);
    const auto res = oracle::solve(f.rho, cfg);
    REQUIRE(res.ree == Catch::Approx(f.ree).margin(1e-6));
    REQUIRE(res.ree < f.procedure_ree);
  }
}

TEST_CASE("oracle result structure") {
  const auto f = families::bell_diagonal(0.1, 0.15, 0.6, 0.15);
  const auto cfg = quick_config();
  const auto res = oracle::solve(f.rho, cfg);

  SECTION("minimizer is a valid separable state") {
    REQUIRE(std::abs(trace(res.sigma.matrix()) - 1.0) < 1e-10);
    REQUIRE(min_pt_eigenvalue(res.sigma.matrix()) > -1e-9);
  }
  SECTION("value matches the relative entropy to the minimizer") {
    const RelativeEntropy d = relative_entropy(f.rho, res.sigma);
    REQUIRE(d.finite);
    REQUIRE(d.nats == Catch::Approx(res.ree).margin(1e-8));
  }
  SECTION("bookkeeping fields") {
    REQUIRE(res.iterations > 0);
    REQUIRE(res.per_restart_values.size() == 2);
    for (double v : res.per_restart_values) REQUIRE(v >= res.ree - 1e-12);
    REQUIRE_FALSE(res.objective_trace.empty());
  }
  SECTION("objective trace is monotone up to pruning noise") {
    for (std::size_t i = 1; i < res.objective_trace.size(); ++i)
      REQUIRE(res.objective_trace[i] <= res.objective_trace[i - 1] + 1e-9);
  }
}

TEST_CASE("oracle determinism") {
  const auto f = families::gen_horodecki(0.6, 0.3, 0.1);
  const auto a = oracle::solve(f.rho, quick_config(42));
  const auto b = oracle::solve(f.rho, quick_config(42));
  REQUIRE(a.ree == b.ree);  // bitwise
  REQUIRE(a.iterations == b.iterations);
  REQUIRE(frobenius_norm(a.sigma.matrix() - b.sigma.matrix()) == 0.0);
  REQUIRE(a.per_restart_values == b.per_restart_values);
}

TEST_CASE("oracle on random mixed states stays below the entanglement of formation") {
  // S(rho || sep) <= EOF for every decomposition-based bound; a cheap sanity
  // sandwich: 0 <= REE <= EOF.
  Rng rng(2024);
  const auto cfg = quick_config();
  for (int i = 0; i < 5; ++i) {
    Mat4 m;
    std::array<double, 4> w{};
    rng.simplex(w.data(), 4);
    for (int k = 0; k < 4; ++k) m += cx(w[k]) * projector(rng.pure_state());
    const DensityMatrix rho = DensityMatrix::from_matrix(m);
    const auto res = oracle::solve(rho, cfg);
    REQUIRE(res.ree > -1e-10);
    REQUIRE(res.ree <= entanglement_of_formation(rho) + 1e-6);
  }
}

TEST_CASE("oracle configuration validation") {
  const DensityMatrix rho = DensityMatrix::maximally_mixed();
  oracle::OracleConfig cfg;
  SECTION("restarts must be positive") {
    cfg.restarts = 0;
    REQUIRE_THROWS_AS(oracle::solve(rho, cfg), validation_error);
  }
  SECTION("iteration budget must be positive") {
    cfg.max_iters = 0;
    REQUIRE_THROWS_AS(oracle::solve(rho, cfg), validation_error);
  }
  SECTION("tolerance must be positive") {
    cfg.tol = 0.0;
    REQUIRE_THROWS_AS(oracle::solve(rho, cfg), validation_error);
  }
}

// The four-step construction: optimal decomposition, per-member closest
// separable states, boundary classification of the mixture, and the final
// mixing step toward the source state.

#include <catch2/catch_amalgamated.hpp>

#include "qree/families.hpp"
#include "qree/procedure.hpp"
#include "qree/random.hpp"

using namespace qree;

TEST_CASE("boundary classification") {
  SECTION("entangled state") {
    const BoundaryVerdict v = classify_boundary(projector(bell_phi_plus()));
    REQUIRE(v.entangled);
    REQUIRE_FALSE(v.boundary);
    REQUIRE_FALSE(v.interior);
    REQUIRE(v.min_pt_eigenvalue == Catch::Approx(-0.5).margin(1e-13));
  }
  SECTION("interior state") {
    const BoundaryVerdict v = classify_boundary(0.25 * Mat4::identity());
    REQUIRE(v.interior);
    REQUIRE_FALSE(v.boundary);
    REQUIRE_FALSE(v.entangled);
    REQUIRE(v.min_pt_eigenvalue == Catch::Approx(0.25).margin(1e-13));
  }
  SECTION("boundary state") {
    Mat4 m;
    m(0, 0) = 0.5;
    m(3, 3) = 0.5;  // classical mixture: PT-spectrum touches zero
    const BoundaryVerdict v = classify_boundary(m);
    REQUIRE(v.boundary);
    REQUIRE_FALSE(v.interior);
    REQUIRE_FALSE(v.entangled);
  }
  SECTION("verdicts are mutually exclusive and exhaustive") {
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
      std::array<double, 4> w{};
      rng.simplex(w.data(), 4);
      Mat4 m;
      for (int k = 0; k < 4; ++k) m += w[k] * projector(rng.pure_state());
      const BoundaryVerdict v = classify_boundary(m);
      REQUIRE(int(v.boundary) + int(v.interior) + int(v.entangled) == 1);
    }
  }
}

TEST_CASE("boundary mixing solver") {
  SECTION("bell state against the maximally mixed state gives 1/3") {
    const Mat4 rho = projector(bell_psi_plus());
    const double q0 = solve_boundary_mixing(rho, 0.25 * Mat4::identity());
    REQUIRE(q0 == Catch::Approx(1.0 / 3.0).margin(1e-9));
    // the crossing state really is on the boundary
    const Mat4 pi = cx(q0) * rho + cx(1.0 - q0) * 0.25 * Mat4::identity();
    REQUIRE(std::abs(min_pt_eigenvalue(pi)) < 1e-10);
  }
  SECTION("all four bell states behave identically") {
    for (const Vec4& b :
         {bell_phi_plus(), bell_phi_minus(), bell_psi_plus(), bell_psi_minus()}) {
      const double q0 = solve_boundary_mixing(projector(b), 0.25 * Mat4::identity());
      REQUIRE(q0 == Catch::Approx(1.0 / 3.0).margin(1e-9));
    }
  }
  SECTION("no crossing raises infeasible") {
    // strictly interior toward strictly interior: the segment never reaches
    // the separable boundary
    Mat4 diag;
    diag(0, 0) = 0.4;
    diag(1, 1) = 0.2;
    diag(2, 2) = 0.25;
    diag(3, 3) = 0.15;
    REQUIRE_THROWS_AS(solve_boundary_mixing(diag, 0.25 * Mat4::identity()),
                      infeasible_error);
  }
}

TEST_CASE("full derivation on the closed-form families") {
  SECTION("bell diagonal") {
    const auto f = families::bell_diagonal(0.1, 0.15, 0.6, 0.15);
    const ProcedureTrace tr = ree_from_eof(f.rho);
    REQUIRE(tr.boundary_at_step3.boundary);
    REQUIRE_FALSE(tr.q0.has_value());  // boundary at step 3 skips the mixing step
    REQUIRE_FALSE(tr.x.has_value());
    REQUIRE(frobenius_norm(tr.sigma_star.matrix() - f.css.matrix()) < 1e-8);
    REQUIRE(tr.ree_value == Catch::Approx(f.ree).margin(1e-9));
    REQUIRE(tr.ensemble.members.size() == 4);
    REQUIRE(tr.member_css.size() == tr.ensemble.members.size());
  }
  SECTION("generalized horodecki engages the mixing step") {
    const auto f = families::gen_horodecki(0.6, 0.3, 0.1);
    const ProcedureTrace tr = ree_from_eof(f.rho);
    REQUIRE(tr.boundary_at_step3.interior);
    REQUIRE(tr.q0.has_value());
    REQUIRE(tr.x.has_value());
    REQUIRE(*tr.q0 == Catch::Approx(1.0 - f.x).margin(1e-8));
    REQUIRE(*tr.x == Catch::Approx(1.0 - *tr.q0).margin(1e-15));
    // sigma* = q0 rho + (1-q0) sigma_tilde
    const Mat4 mix = cx(*tr.q0) * f.rho.matrix() + cx(1.0 - *tr.q0) * tr.sigma_tilde.matrix();
    REQUIRE(frobenius_norm(tr.sigma_star.matrix() - mix) < 1e-12);
    REQUIRE(std::abs(min_pt_eigenvalue(tr.sigma_star.matrix())) < 1e-9);
    REQUIRE(tr.ree_value == Catch::Approx(f.ree).margin(1e-9));
  }
  SECTION("separable input is its own closest state") {
    const DensityMatrix id = DensityMatrix::maximally_mixed();
    const ProcedureTrace tr = ree_from_eof(id);
    REQUIRE(tr.ree_value == 0.0);
    REQUIRE(frobenius_norm(tr.sigma_star.matrix() - id.matrix()) == 0.0);
    REQUIRE(tr.ensemble.members.empty());
  }
  SECTION("pure states match the schmidt route") {
    Rng rng(47);
    for (int i = 0; i < 25; ++i) {
      Vec4 v = rng.pure_state();
      if (concurrence(PureState{v}) < 0.05) continue;
      const ProcedureTrace tr = ree_from_eof(DensityMatrix::from_pure(PureState{v}));
      REQUIRE(tr.ree_value == Catch::Approx(ree_pure(PureState{v})).margin(1e-9));
      REQUIRE(tr.boundary_at_step3.boundary);  // pure css sits on the boundary
    }
  }
}

TEST_CASE("trace invariants on random entangled states") {
  Rng rng(53);
  int tested = 0;
  for (int i = 0; tested < 40 && i < 1000; ++i) {
    std::array<double, 4> w{};
    rng.simplex(w.data(), 4);
    Mat4 m;
    for (int k = 0; k < 4; ++k) m += w[k] * projector(rng.pure_state());
    const DensityMatrix rho = DensityMatrix::from_matrix(m);
    if (concurrence(rho) < 0.02) continue;
    ++tested;

    const ProcedureTrace tr = ree_from_eof(rho);
    // the final state is separable (PPT) and the value is the relative entropy
    REQUIRE(min_pt_eigenvalue(tr.sigma_star.matrix()) > -1e-9);
    const RelativeEntropy d = relative_entropy(rho, tr.sigma_star);
    REQUIRE(d.finite);
    REQUIRE(d.nats == Catch::Approx(tr.ree_value).margin(1e-10));
    REQUIRE(tr.ree_value >= -1e-12);
    // q and x describe the same mixture from both ends
    if (tr.q0.has_value()) {
      REQUIRE(tr.x.has_value());
      REQUIRE(*tr.q0 + *tr.x == Catch::Approx(1.0).margin(1e-14));
      REQUIRE(*tr.q0 > 0.0);
      REQUIRE(*tr.q0 < 1.0);
    } else {
      REQUIRE(tr.boundary_at_step3.boundary);
    }
    // member css states are separable boundary states
    for (const DensityMatrix& s : tr.member_css)
      REQUIRE(std::abs(min_pt_eigenvalue(s.matrix())) < 1e-9);
  }
  REQUIRE(tested == 40);
}

TEST_CASE("upper-bound property") {
  // The construction yields a separable state, so its value can exceed the
  // true minimum (that is the point of the failure family) but never sit
  // below any valid relative entropy to a separable state it produces.
  const auto f = families::horodecki_type(0.2, 0.1, 0.35, 0.3);
  const ProcedureTrace tr = ree_from_eof(f.rho);
  REQUIRE(tr.ree_value >= f.ree);
  REQUIRE(tr.ree_value == Catch::Approx(f.procedure_ree).margin(1e-9));
}

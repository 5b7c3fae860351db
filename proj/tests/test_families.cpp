// Closed-form state families: spectra, ensembles, closest separable states,
// and exact relative-entropy values, cross-checked against the generic
// machinery and against each other.

#include <catch2/catch_amalgamated.hpp>

#include "qree/families.hpp"
#include "qree/procedure.hpp"
#include "qree/random.hpp"

using namespace qree;
using namespace qree::families;

namespace {

Mat4 ensemble_density(const Ensemble& ens) {
  Mat4 m;
  for (const EnsembleMember& mem : ens.members) m += mem.p * mem.state.density();
  return m;
}

double member_css_spread(const Ensemble& ens, const Mat4& target) {
  double worst = 0.0;
  for (const EnsembleMember& m : ens.members)
    worst = std::max(worst, frobenius_norm(closest_separable_pure(m.state) - target));
  return worst;
}

}  // namespace

TEST_CASE("bell diagonal family") {
  SECTION("frozen reference value") {
    const auto f = bell_diagonal(0.1, 0.15, 0.6, 0.15);
    REQUIRE(f.ree == Catch::Approx(0.020135513550688766).margin(1e-15));
    REQUIRE(f.ree == Catch::Approx(std::log(2.0) - binary_entropy(0.6)).margin(1e-14));
  }
  SECTION("state has the requested bell spectrum") {
    const auto f = bell_diagonal(0.3, 0.1, 0.55, 0.05);
    const HermitianEig<4> es = f.rho.eigensystem();
    std::array<double, 4> want{0.3, 0.1, 0.55, 0.05};
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 4; ++i)
      REQUIRE(es.values[i] == Catch::Approx(want[i]).margin(1e-12));
  }
  SECTION("dominant weight may sit in any slot") {
    // same spectrum, four placements: ree identical, state reconstructs,
    // ensemble agrees with the state
    const std::array<double, 4> base{0.6, 0.2, 0.15, 0.05};
    for (int slot = 0; slot < 4; ++slot) {
      std::array<double, 4> l = base;
      std::swap(l[0], l[slot]);
      const auto f = bell_diagonal(l[0], l[1], l[2], l[3]);
      REQUIRE(f.ree == Catch::Approx(std::log(2.0) - binary_entropy(0.6)).margin(1e-13));
      REQUIRE(frobenius_norm(ensemble_density(f.ensemble) - f.rho.matrix()) < 1e-12);
      REQUIRE(concurrence(f.rho) == Catch::Approx(2.0 * 0.6 - 1.0).margin(1e-12));
      // css is separable, on the boundary, and optimal: S(rho||css) == ree
      REQUIRE(min_pt_eigenvalue(f.css.matrix()) > -1e-12);
      const RelativeEntropy d = relative_entropy(f.rho, f.css);
      REQUIRE(d.finite);
      REQUIRE(d.nats == Catch::Approx(f.ree).margin(1e-12));
    }
  }
  SECTION("ensemble members all carry the state's concurrence") {
    const auto f = bell_diagonal(0.1, 0.15, 0.6, 0.15);
    REQUIRE(f.ensemble.members.size() == 4);
    for (const EnsembleMember& m : f.ensemble.members) {
      REQUIRE(m.p == Catch::Approx(0.25).margin(1e-14));
      REQUIRE(concurrence(m.state) == Catch::Approx(concurrence(f.rho)).margin(1e-12));
    }
  }
  SECTION("sigma_tilde averages the member css states") {
    const auto f = bell_diagonal(0.1, 0.15, 0.6, 0.15);
    Mat4 mean;
    for (const EnsembleMember& m : f.ensemble.members)
      mean += m.p * closest_separable_pure(m.state);
    REQUIRE(frobenius_norm(mean - f.sigma_tilde) < 1e-12);
    REQUIRE(std::abs(min_pt_eigenvalue(f.sigma_tilde)) < 1e-12);
  }
  SECTION("validation") {
    REQUIRE_THROWS_AS(bell_diagonal(-0.1, 0.4, 0.4, 0.3), validation_error);
    REQUIRE_THROWS_AS(bell_diagonal(0.3, 0.3, 0.3, 0.3), validation_error);  // sum != 1
    REQUIRE_THROWS_AS(bell_diagonal(0.25, 0.25, 0.25, 0.25), separable_error);
    REQUIRE_THROWS_AS(bell_diagonal(0.5, 0.2, 0.2, 0.1), separable_error);  // max == 1/2
  }
}

TEST_CASE("vedral-plenio family") {
  SECTION("frozen reference value") {
    const auto f = vedral_plenio(0.5, 0.3, 0.2);
    REQUIRE(f.ree == Catch::Approx(0.1313085286051623).margin(1e-15));
  }
  SECTION("construction and concurrence") {
    const auto f = vedral_plenio(0.4, 0.35, 0.25);
    REQUIRE(concurrence(f.rho) == Catch::Approx(0.4).margin(1e-12));
    REQUIRE(std::abs(trace(f.rho.matrix()) - 1.0) < 1e-14);
  }
  SECTION("two members, equal weight, one shared css") {
    const auto f = vedral_plenio(0.5, 0.3, 0.2);
    REQUIRE(f.ensemble.members.size() == 2);
    for (const EnsembleMember& m : f.ensemble.members)
      REQUIRE(m.p == Catch::Approx(0.5).margin(1e-14));
    REQUIRE(frobenius_norm(ensemble_density(f.ensemble) - f.rho.matrix()) < 1e-12);
    REQUIRE(member_css_spread(f.ensemble, f.css.matrix()) < 1e-12);
    // the two members are phase partners with equal concurrence; a mixture's
    // concurrence minimizes over decompositions, so theirs bounds the state's
    const double c0 = concurrence(f.ensemble.members[0].state);
    const double c1 = concurrence(f.ensemble.members[1].state);
    REQUIRE(c0 == Catch::Approx(c1).margin(1e-12));
    REQUIRE(c0 >= concurrence(f.rho) - 1e-12);
  }
  SECTION("css realizes the closed-form value") {
    for (auto l : {std::array<double, 3>{0.5, 0.3, 0.2}, {0.2, 0.5, 0.3}, {0.7, 0.1, 0.2}}) {
      const auto f = vedral_plenio(l[0], l[1], l[2]);
      const RelativeEntropy d = relative_entropy(f.rho, f.css);
      REQUIRE(d.finite);
      REQUIRE(d.nats == Catch::Approx(f.ree).margin(1e-12));
      REQUIRE(std::abs(min_pt_eigenvalue(f.css.matrix())) < 1e-12);
    }
  }
  SECTION("degenerate middle weights take the limit branch") {
    const auto f = vedral_plenio(0.5, 0.25, 0.25);
    REQUIRE(frobenius_norm(ensemble_density(f.ensemble) - f.rho.matrix()) < 1e-12);
    REQUIRE(member_css_spread(f.ensemble, f.css.matrix()) < 1e-12);
  }
  SECTION("validation") {
    REQUIRE_THROWS_AS(vedral_plenio(0.0, 0.6, 0.4), separable_error);
    REQUIRE_THROWS_AS(vedral_plenio(0.5, 0.3, 0.3), validation_error);
  }
}

TEST_CASE("generalized horodecki family") {
  SECTION("frozen reference values") {
    REQUIRE(gen_horodecki(0.6, 0.3, 0.1).ree ==
            Catch::Approx(0.032189300825766154).margin(1e-15));
    REQUIRE(gen_horodecki(0.6, 0.3, 0.1).x ==
            Catch::Approx(0.9886751345948129).margin(1e-15));
    REQUIRE(gen_horodecki(0.8, 0.1, 0.1).ree ==
            Catch::Approx(0.19274475702175742).margin(1e-15));
    REQUIRE(gen_horodecki(0.5, 0.3, 0.2).ree ==
            Catch::Approx(5.102308263055244e-05).margin(1e-16));
  }
  SECTION("construction, concurrence, three members") {
    const auto f = gen_horodecki(0.6, 0.3, 0.1);
    REQUIRE(concurrence(f.rho) ==
            Catch::Approx(0.6 - 2.0 * std::sqrt(0.3 * 0.1)).margin(1e-12));
    REQUIRE(f.ensemble.members.size() == 3);
    REQUIRE(frobenius_norm(ensemble_density(f.ensemble) - f.rho.matrix()) < 1e-12);
    for (const EnsembleMember& m : f.ensemble.members)
      REQUIRE(concurrence(m.state) == Catch::Approx(concurrence(f.rho)).margin(1e-12));
  }
  SECTION("css realizes the closed-form value and x mixes to the boundary") {
    const auto f = gen_horodecki(0.6, 0.3, 0.1);
    const RelativeEntropy d = relative_entropy(f.rho, f.css);
    REQUIRE(d.finite);
    REQUIRE(d.nats == Catch::Approx(f.ree).margin(1e-13));
    REQUIRE(std::abs(min_pt_eigenvalue(f.css.matrix())) < 1e-10);
    // sigma* = x sigma_tilde + (1-x) rho
    const Mat4 star = cx(f.x) * f.sigma_tilde + cx(1.0 - f.x) * f.rho.matrix();
    REQUIRE(frobenius_norm(star - f.css.matrix()) < 1e-10);
    // sigma_tilde itself is strictly interior
    REQUIRE(min_pt_eigenvalue(f.sigma_tilde) > 0.0);
  }
  SECTION("equal lower weights give x = 1 (mixture already on the boundary)") {
    const auto f = gen_horodecki(0.8, 0.1, 0.1);
    REQUIRE(f.x == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(std::abs(min_pt_eigenvalue(f.sigma_tilde)) < 1e-12);
  }
  SECTION("validation") {
    REQUIRE_THROWS_AS(gen_horodecki(0.2, 0.5, 0.3), separable_error);  // C <= 0
    REQUIRE_THROWS_AS(gen_horodecki(0.5, 0.4, 0.2), validation_error);
    REQUIRE_THROWS_AS(gen_horodecki(-0.2, 0.8, 0.4), validation_error);
  }
}

TEST_CASE("vedral-plenio-type family") {
  SECTION("frozen reference value") {
    const auto f = vedral_plenio_type(0.7, 0.3, 0.4);
    REQUIRE(f.ree == Catch::Approx(0.4042249881699099).margin(1e-15));
  }
  SECTION("closed form matches the matrix relative entropy") {
    for (auto l : {std::array<double, 3>{0.7, 0.3, 0.4}, {0.5, 0.5, 0.25}, {0.2, 0.8, 0.2}}) {
      const auto f = vedral_plenio_type(l[0], l[1], l[2]);
      REQUIRE(f.ree == Catch::Approx(f.ree_closed).margin(1e-12));
      const RelativeEntropy d = relative_entropy(f.rho, f.css);
      REQUIRE(d.finite);
      REQUIRE(d.nats == Catch::Approx(f.ree_closed).margin(1e-12));
    }
  }
  SECTION("ensemble averages to the state and members share the css") {
    const auto f = vedral_plenio_type(0.7, 0.3, 0.4);
    REQUIRE(frobenius_norm(ensemble_density(f.ensemble) - f.rho.matrix()) < 1e-11);
    double worst = 0.0;
    Mat4 mean;
    for (const EnsembleMember& m : f.ensemble.members)
      mean += m.p * closest_separable_pure(m.state);
    worst = frobenius_norm(mean - f.css.matrix());
    REQUIRE(worst < 1e-11);
  }
  SECTION("pure edge collapses to a single member") {
    const double a2 = 0.6, a3 = 0.4;
    const double d = std::sqrt(a2 * a3);
    const auto f = vedral_plenio_type(a2, a3, d);
    REQUIRE(f.ensemble.members.size() == 1);
    REQUIRE(f.ensemble.members[0].p == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(frobenius_norm(ensemble_density(f.ensemble) - f.rho.matrix()) < 1e-12);
  }
  SECTION("validation") {
    REQUIRE_THROWS_AS(vedral_plenio_type(0.7, 0.3, 0.0), separable_error);
    REQUIRE_THROWS_AS(vedral_plenio_type(0.7, 0.3, 0.5), validation_error);  // d > sqrt(a2 a3)
    REQUIRE_THROWS_AS(vedral_plenio_type(0.8, 0.3, 0.1), validation_error);  // sum > 1
  }
}

TEST_CASE("horodecki-type family") {
  SECTION("frozen reference values for the failure case") {
    const auto f = horodecki_type(0.2, 0.1, 0.35, 0.3);
    REQUIRE(f.x_star == Catch::Approx(0.9958056451579744).margin(1e-13));
    REQUIRE(f.procedure_ree == Catch::Approx(0.05097535829661093).margin(1e-14));
    REQUIRE(f.ree == Catch::Approx(0.050975313759159424).margin(1e-14));
    REQUIRE(frobenius_norm(f.procedure_candidate.matrix() - f.true_css.matrix()) ==
            Catch::Approx(1.0986163427098331e-4).margin(1e-15));
  }
  SECTION("the shortcut value strictly exceeds the true value") {
    const auto f = horodecki_type(0.2, 0.1, 0.35, 0.3);
    REQUIRE(f.procedure_ree > f.ree);
    REQUIRE(f.procedure_ree - f.ree == Catch::Approx(4.4537451504567116e-08).margin(1e-15));
  }
  SECTION("both candidate states are separable and realize their values") {
    const auto f = horodecki_type(0.2, 0.1, 0.35, 0.3);
    REQUIRE(min_pt_eigenvalue(f.procedure_candidate.matrix()) > -1e-8);
    REQUIRE(min_pt_eigenvalue(f.true_css.matrix()) > -1e-10);
    const RelativeEntropy dp = relative_entropy(f.rho, f.procedure_candidate);
    REQUIRE(dp.finite);
    REQUIRE(dp.nats == Catch::Approx(f.procedure_ree).margin(1e-12));
    const RelativeEntropy dt = relative_entropy(f.rho, f.true_css);
    REQUIRE(dt.finite);
    REQUIRE(dt.nats == Catch::Approx(f.ree).margin(1e-12));
  }
  SECTION("ensemble reconstructs and members share the state's concurrence") {
    const auto f = horodecki_type(0.2, 0.1, 0.35, 0.3);
    REQUIRE(f.ensemble.members.size() == 4);
    REQUIRE(frobenius_norm(ensemble_density(f.ensemble) - f.rho.matrix()) < 1e-11);
    for (const EnsembleMember& m : f.ensemble.members)
      REQUIRE(concurrence(m.state) == Catch::Approx(concurrence(f.rho)).margin(1e-11));
  }
  SECTION("gh limit reproduces the gh construction") {
    const double l1 = 0.6, l2 = 0.3, l3 = 0.1;
    const auto fg = gen_horodecki(l1, l2, l3);
    const auto fh = horodecki_type(l2, l3, 0.5 * l1, 0.5 * l1);
    REQUIRE(frobenius_norm(fh.pi_tilde - fg.sigma_tilde) < 1e-8);
    REQUIRE(fh.x_star == Catch::Approx(fg.x).margin(1e-8));
    REQUIRE(fh.procedure_ree == Catch::Approx(fg.ree).margin(1e-10));
  }
  SECTION("validation") {
    REQUIRE_THROWS_AS(horodecki_type(0.3, 0.3, 0.2, 0.1), separable_error);  // d <= sqrt(a1 a4)
    REQUIRE_THROWS_AS(horodecki_type(0.2, 0.1, 0.35, 0.4), validation_error);  // d > A
    REQUIRE_THROWS_AS(horodecki_type(0.3, 0.3, 0.3, 0.1), validation_error);  // sum != 1
  }
}

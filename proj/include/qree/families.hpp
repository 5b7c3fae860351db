#pragma once
// Five families of two-qubit states with closed-form entanglement data:
// Bell-diagonal states, two generalized Vedral-Plenio forms, and two
// Horodecki-form families (the second of which is the documented case where
// the constructive procedure's candidate is NOT the true closest separable
// state).
//
// Each factory validates its parameters, rejects separable input, and
// returns the state together with every derived intermediate of its closed
// forms, so tests and callers can audit each quantity independently.

#include <array>

#include "qree/procedure.hpp"

namespace qree::families {

// ---------------------------------------------------------------------------
// Bell-diagonal states  rho = sum_i lambda_i |beta_i><beta_i|
//
// Closed forms are stated in the frame where the dominant weight sits on
// beta_3 = (|01> + |10>)/sqrt(2).  Other inputs are handled by conjugating
// with a local unitary 1 (x) sigma that permutes the Bell projectors; the
// relative entropy and the boundary structure are invariant under it, and
// all returned states are mapped back to the input frame.
// ---------------------------------------------------------------------------

struct BellDiagonal {
  std::array<double, 4> lambda{};            // input weights
  std::array<double, 4> canonical_lambda{};  // dominant weight moved to slot 3
  Mat4 local_u;       // rho_input = U rho_canonical U^dag (U Hermitian here)
  int dominant = 2;   // input slot (0-based) of the dominant weight

  // Derived quantities of the closed forms, canonical frame.
  cx mu;                                     // sqrt(l1) + i sqrt(l2)
  double nu_plus = 0, nu_minus = 0;          // 2(1-l3)sqrt(l3) +- sqrt(l4)
  double d_plus = 0, d_minus = 0;            // (1-l3+l4) +- 4(1-l3)sqrt(l3 l4)
  double n_plus = 0, n_minus = 0;            // Schmidt basis normalizers
  Vec2 basis_a0, basis_a1, basis_b0, basis_b1;  // member-1 Schmidt bases

  Mat4 sigma1;        // closest separable state of the first member (canonical frame)
  Mat4 sigma_tilde;   // ensemble-averaged member candidates (input frame)
  DensityMatrix rho;
  DensityMatrix css;  // closest separable state (input frame)
  double ree = 0.0;   // ln 2 - h(max lambda)
  Ensemble ensemble;  // equal-concurrence decomposition, 4 members at p=1/4
};

namespace detail {

inline Mat4 one_x(const Mat2& s) { return kron(Mat2::identity(), s); }

inline Vec4 bell(int i) {
  switch (i) {
    case 0: return bell_phi_plus();
    case 1: return bell_phi_minus();
    case 2: return bell_psi_plus();
    default: return bell_psi_minus();
  }
}

}  // namespace detail

inline BellDiagonal bell_diagonal(double l1, double l2, double l3, double l4) {
  BellDiagonal f;
  f.lambda = {l1, l2, l3, l4};
  double sum = 0.0;
  for (double l : f.lambda) {
    if (l < -1e-15)
      throw validation_error("bell_diagonal: negative weight " + std::to_string(l));
    sum += l;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw validation_error("bell_diagonal: weights sum to " + std::to_string(sum) +
                           ", expected 1");

  int dom = 0;
  for (int i = 1; i < 4; ++i)
    if (f.lambda[i] > f.lambda[dom]) dom = i;
  if (f.lambda[dom] <= 0.5)
    throw separable_error("bell_diagonal: max weight <= 1/2, the state is separable");
  f.dominant = dom;

  // Local unitary moving the dominant projector to slot 3; each choice
  // permutes the four Bell projectors as a pair of swaps.
  std::array<int, 4> perm{0, 1, 2, 3};  // canonical slot -> input slot
  switch (dom) {
    case 0:
      f.local_u = detail::one_x(pauli_x());
      perm = {2, 3, 0, 1};
      break;
    case 1:
      f.local_u = detail::one_x(pauli_y());
      perm = {3, 2, 1, 0};
      break;
    case 2:
      f.local_u = Mat4::identity();
      break;
    case 3:
      f.local_u = detail::one_x(pauli_z());
      perm = {1, 0, 3, 2};
      break;
  }
  for (int c = 0; c < 4; ++c) f.canonical_lambda[c] = f.lambda[perm[c]];

  const double c1 = f.canonical_lambda[0], c2 = f.canonical_lambda[1];
  const double c3 = f.canonical_lambda[2], c4 = f.canonical_lambda[3];
  const double s1 = std::sqrt(c1), s2 = std::sqrt(c2), s3 = std::sqrt(c3),
               s4 = std::sqrt(c4);

  f.mu = cx(s1, s2);
  f.nu_plus = 2.0 * (1.0 - c3) * s3 + s4;
  f.nu_minus = 2.0 * (1.0 - c3) * s3 - s4;
  f.d_plus = (1.0 - c3 + c4) + 4.0 * (1.0 - c3) * std::sqrt(c3 * c4);
  f.d_minus = (1.0 - c3 + c4) - 4.0 * (1.0 - c3) * std::sqrt(c3 * c4);

  const double sq13 = std::sqrt(1.0 - c3);
  f.n_plus = std::sqrt(2.0 * sq13 * (sq13 + s4));
  f.n_minus = std::sqrt(2.0 * sq13 * (sq13 - s4));
  const cx m_conj(s1, -s2);  // sqrt(l1) - i sqrt(l2)
  f.basis_a0 = {(sq13 + s4) / f.n_plus, m_conj / f.n_plus};
  f.basis_a1 = {-(sq13 - s4) / f.n_minus, m_conj / f.n_minus};
  f.basis_b0 = {f.mu / f.n_plus, (sq13 + s4) / f.n_plus};
  f.basis_b1 = {f.mu / f.n_minus, -(sq13 - s4) / f.n_minus};

  // First-member closest separable state, canonical frame.
  {
    const double mm = std::norm(f.mu);
    const cx mu = f.mu;
    Mat4 m;
    m(0, 0) = mm;
    m(0, 1) = mu * f.nu_plus;
    m(0, 2) = mu * f.nu_minus;
    m(0, 3) = mu * mu;
    m(1, 0) = std::conj(m(0, 1));
    m(1, 1) = f.d_plus;
    m(1, 2) = mm;
    m(1, 3) = mu * f.nu_plus;
    m(2, 0) = std::conj(m(0, 2));
    m(2, 1) = mm;
    m(2, 2) = f.d_minus;
    m(2, 3) = mu * f.nu_minus;
    m(3, 0) = std::conj(mu) * std::conj(mu);
    m(3, 1) = std::conj(m(1, 3));
    m(3, 2) = std::conj(m(2, 3));
    m(3, 3) = mm;
    f.sigma1 = (1.0 / (4.0 * (1.0 - c3))) * m;
  }

  // Ensemble-averaged candidate, canonical frame, then mapped back.
  Mat4 st;
  st(0, 0) = c1 + c2;
  st(0, 3) = c1 - c2;
  st(1, 1) = 1.0 - c3 + c4;
  st(1, 2) = c1 + c2;
  st(2, 1) = c1 + c2;
  st(2, 2) = 1.0 - c3 + c4;
  st(3, 0) = c1 - c2;
  st(3, 3) = c1 + c2;
  st *= cx(1.0 / (4.0 * (1.0 - c3)));

  const double fcoef = 1.0 / (2.0 * (1.0 - c3));
  Mat4 css_canon = c1 * fcoef * projector(detail::bell(0)) +
                   c2 * fcoef * projector(detail::bell(1)) +
                   0.5 * projector(detail::bell(2)) +
                   c4 * fcoef * projector(detail::bell(3));

  Mat4 rho_m;
  for (int i = 0; i < 4; ++i) rho_m += f.lambda[i] * projector(detail::bell(i));

  const Mat4& u = f.local_u;
  f.sigma_tilde = u * st * dagger(u);
  f.rho = DensityMatrix::from_matrix(rho_m);
  f.css = DensityMatrix::from_matrix(u * css_canon * dagger(u));
  f.ree = std::log(2.0) - binary_entropy(c3);

  // Equal-concurrence ensemble: sign patterns (+,+,+), (+,-,-), (-,+,-),
  // (-,-,+) on the last three amplitudes, canonical frame.
  const int signs[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  for (const auto& sg : signs) {
    Vec4 v{};
    const Vec4 b1v = detail::bell(0), b2v = detail::bell(1), b3v = detail::bell(2),
               b4v = detail::bell(3);
    for (int k = 0; k < 4; ++k)
      v[k] = s1 * b1v[k] + cx(0, 1) * (sg[0] * s2) * b2v[k] + (sg[1] * s3) * b3v[k] +
             (sg[2] * s4) * b4v[k];
    Vec4 vi = u * v;
    f.ensemble.members.push_back({0.25, PureState(scaled(vi, 1.0 / norm(vi)))});
  }
  return f;
}

// ---------------------------------------------------------------------------
// Generalized Vedral-Plenio, Bell-plus-diagonal form:
//   rho = l1 |beta_3><beta_3| + l2 |01><01| + l3 |10><10|
// ---------------------------------------------------------------------------

struct VedralPlenio {
  double lambda1 = 0, lambda2 = 0, lambda3 = 0;

  double r = 0;                                // sqrt(l1^2 + (l2-l3)^2)
  double big_lambda_plus = 0, big_lambda_minus = 0;  // (1 +- r)/2
  double a = 0, b = 0, c = 0;                  // member-phase coefficients
  double omega = 0;                            // phase normalizer
  double n = 0;                                // eigenvector normalizer
  Vec4 eig_plus, eig_minus;                    // subnormalized sqrt(L+-)|L+->

  DensityMatrix rho;
  DensityMatrix css;
  double ree = 0.0;
  Ensemble ensemble;  // two members at p = 1/2
};

inline VedralPlenio vedral_plenio(double l1, double l2, double l3) {
  if (l1 < -1e-15 || l2 < -1e-15 || l3 < -1e-15)
    throw validation_error("vedral_plenio: negative weight");
  if (std::abs(l1 + l2 + l3 - 1.0) > 1e-12)
    throw validation_error("vedral_plenio: weights must sum to 1");
  if (l1 <= 0.0)
    throw separable_error("vedral_plenio: lambda1 = 0, the state is separable");

  VedralPlenio f;
  f.lambda1 = l1;
  f.lambda2 = l2;
  f.lambda3 = l3;

  Mat4 rho_m = l1 * projector(bell_psi_plus()) + l2 * projector(ket01()) +
               l3 * projector(ket10());
  f.rho = DensityMatrix::from_matrix(rho_m);

  Mat4 css_m = (0.5 * l1 + l2) * projector(ket01()) + (0.5 * l1 + l3) * projector(ket10());
  f.css = DensityMatrix::from_matrix(css_m);

  f.r = std::sqrt(l1 * l1 + (l2 - l3) * (l2 - l3));
  f.big_lambda_plus = 0.5 * (1.0 + f.r);
  f.big_lambda_minus = 0.5 * (1.0 - f.r);
  f.ree = binary_entropy(0.5 * l1 + l2) - binary_entropy(f.big_lambda_plus);

  const double lp = f.big_lambda_plus, lm = f.big_lambda_minus;
  f.a = l1 * lp / f.r;
  f.b = -(l2 - l3) * std::sqrt(lp * lm) / f.r;
  f.c = -l1 * lm / f.r;
  f.n = std::sqrt(2.0 * f.r * (f.r + (l2 - l3)));

  // Eigenvectors of rho in the {|01>, |10>} block, subnormalized by
  // sqrt(big_lambda).
  Vec4 lp_vec{}, lm_vec{};
  lp_vec[1] = (f.r + (l2 - l3)) / f.n;
  lp_vec[2] = l1 / f.n;
  lm_vec[1] = l1 / f.n;
  lm_vec[2] = -(f.r + (l2 - l3)) / f.n;
  f.eig_plus = scaled(lp_vec, std::sqrt(lp));
  f.eig_minus = scaled(lm_vec, std::sqrt(lm));

  // Phases combining the eigenvectors into two equal-concurrence members.
  const double ac = f.a - f.c;
  const double hyp = std::sqrt(ac * ac + 4.0 * f.b * f.b);
  cx c1, c2;
  if (std::abs(f.b) < 1e-14) {
    // Limit of vanishing eigenbasis skew (l2 == l3).
    f.omega = 0.0;
    c1 = cx(0, -1);
    c2 = cx(0, -1);
  } else {
    f.omega = std::sqrt(2.0 * (ac * ac + 4.0 * f.b * f.b - ac * hyp));
    const double root = hyp - ac;
    c1 = cx(0, -1) / f.omega * (cx(2.0 * f.b, 0) - cx(0, 1) * root);
    c2 = cx(0, -1) / f.omega * (cx(2.0 * f.b, 0) + cx(0, 1) * root);
  }

  Vec4 w1{}, w2{};
  for (int k = 0; k < 4; ++k) {
    w1[k] = c1 * (f.eig_plus[k] + cx(0, 1) * f.eig_minus[k]);
    w2[k] = c2 * (f.eig_plus[k] - cx(0, 1) * f.eig_minus[k]);
  }
  f.ensemble.members.push_back({0.5, PureState(scaled(w1, 1.0 / norm(w1)))});
  f.ensemble.members.push_back({0.5, PureState(scaled(w2, 1.0 / norm(w2)))});
  return f;
}

// ---------------------------------------------------------------------------
// Generalized Horodecki, Bell-plus-corners form:
//   rho = l1 |beta_3><beta_3| + l2 |00><00| + l3 |11><11|
// The candidate mixture lands strictly inside the separable set (unless
// l2 = l3), so the boundary push of step 4 engages; its closed-form mixing
// parameter is x = 1 - q0.
// ---------------------------------------------------------------------------

struct GenHorodecki {
  double lambda1 = 0, lambda2 = 0, lambda3 = 0;

  double r2 = 0;      // R^2 = 2 l1 + (sqrt(l2) - sqrt(l3))^2
  double x = 0;       // boundary mixing weight of sigma_tilde in sigma*
  double a_coef = 0;  // member-candidate corner coefficients
  double b_coef = 0;

  Mat4 sigma_tilde;                  // candidate mixture (strict interior)
  std::array<Mat4, 3> member_css;    // per-member closest separable states
  DensityMatrix rho;
  DensityMatrix css;
  double ree = 0.0;
  Ensemble ensemble;                 // three members at p = 1/3
};

inline GenHorodecki gen_horodecki(double l1, double l2, double l3) {
  if (l1 < -1e-15 || l2 < -1e-15 || l3 < -1e-15)
    throw validation_error("gen_horodecki: negative weight");
  if (std::abs(l1 + l2 + l3 - 1.0) > 1e-12)
    throw validation_error("gen_horodecki: weights must sum to 1");
  const double conc = l1 - 2.0 * std::sqrt(l2 * l3);
  if (l1 <= 0.0 || conc <= 0.0)
    throw separable_error("gen_horodecki: l1 - 2 sqrt(l2 l3) <= 0, the state is separable");

  GenHorodecki f;
  f.lambda1 = l1;
  f.lambda2 = l2;
  f.lambda3 = l3;
  const double s2 = std::sqrt(l2), s3 = std::sqrt(l3);

  Mat4 rho_m = l1 * projector(bell_psi_plus()) + l2 * projector(ket00()) +
               l3 * projector(ket11());
  f.rho = DensityMatrix::from_matrix(rho_m);

  Mat4 css_m = 0.5 * (l1 + 2.0 * l2) * (l1 + 2.0 * l3) * projector(bell_psi_plus()) +
               0.25 * (l1 + 2.0 * l2) * (l1 + 2.0 * l2) * projector(ket00()) +
               0.25 * (l1 + 2.0 * l3) * (l1 + 2.0 * l3) * projector(ket11());
  f.css = DensityMatrix::from_matrix(css_m);

  double ree = 2.0 * binary_entropy(0.5 * l1 + l2) - l1 * std::log(2.0);
  for (double li : {l1, l2, l3})
    if (li > 0.0) ree += li * std::log(li);
  f.ree = ree;

  f.r2 = 2.0 * l1 + (s2 - s3) * (s2 - s3);
  f.x = f.r2 * (l1 + 2.0 * std::sqrt(l2 * l3)) / (2.0 * l1);

  f.sigma_tilde = Mat4{};
  f.sigma_tilde(0, 0) = 0.5 * (l1 + 2.0 * l2) - 0.5 * l1 / f.r2;
  f.sigma_tilde(3, 3) = 0.5 * (l1 + 2.0 * l3) - 0.5 * l1 / f.r2;
  f.sigma_tilde(1, 1) = f.sigma_tilde(2, 2) = f.sigma_tilde(1, 2) = f.sigma_tilde(2, 1) =
      0.5 * l1 / f.r2;

  const double pref = std::sqrt(2.0 * l1) / (4.0 * f.r2);
  const double shared = (s2 + s3) * (l1 - 2.0 * std::sqrt(l2 * l3));
  f.a_coef = pref * (2.0 * s2 + shared);
  f.b_coef = pref * (2.0 * s3 + shared);

  for (int j = 0; j < 3; ++j) {
    const double th = 2.0 * kPi * j / 3.0;
    const cx e = std::exp(cx(0.0, th));
    const cx ec = std::conj(e);

    Vec4 v{};
    const Vec4 b3v = bell_psi_plus();
    for (int k = 0; k < 4; ++k) v[k] = std::sqrt(l1) * b3v[k];
    v[0] += s2 * e;
    v[3] += s3 * ec;
    f.ensemble.members.push_back({1.0 / 3.0, PureState(scaled(v, 1.0 / norm(v)))});

    Mat4 m;
    const double mid = 0.5 * l1 / f.r2;
    m(0, 0) = 0.5 * (l1 + 2.0 * l2) - mid;
    m(3, 3) = 0.5 * (l1 + 2.0 * l3) - mid;
    m(1, 1) = m(2, 2) = m(1, 2) = m(2, 1) = mid;
    m(0, 1) = m(0, 2) = f.a_coef * e;
    m(1, 0) = m(2, 0) = f.a_coef * ec;
    m(1, 3) = m(2, 3) = f.b_coef * e;
    m(3, 1) = m(3, 2) = f.b_coef * ec;
    m(0, 3) = mid * e * e;
    m(3, 0) = mid * ec * ec;
    f.member_css[j] = m;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Vedral-Plenio-type (theorem form with one off-diagonal):
//   rho = A2 |01><01| + A3 |10><10| + D (|01><10| + |10><01|)
// The candidate mixture lands exactly on the boundary (step 3 closes).
// ---------------------------------------------------------------------------

struct VedralPlenioType {
  double a2 = 0, a3 = 0, d = 0;

  double r = 0;                       // sqrt((A2-A3)^2 + 4 D^2)
  double theta = 0;                   // eigenvector mixing angle
  double lambda1 = 0, lambda2 = 0;    // eigenvalues of the middle block
  Vec4 v1, v2;                        // block eigenvectors
  double p1 = 0, p2 = 0;              // member weights
  double xi_plus = 0, xi_minus = 0;
  double eta_plus = 0, eta_minus = 0;
  double y_plus = 0, y_minus = 0;     // member normalizers
  std::array<Mat4, 2> member_css;     // diagonal closed forms

  DensityMatrix rho;
  DensityMatrix css;
  double ree = 0.0;   // S(rho || css)
  double ree_closed = 0.0;  // h(A2) - h((1+R)/2)
  Ensemble ensemble;
};

inline VedralPlenioType vedral_plenio_type(double a2, double a3, double d) {
  if (a2 < -1e-15 || a3 < -1e-15)
    throw validation_error("vedral_plenio_type: negative diagonal weight");
  if (std::abs(a2 + a3 - 1.0) > 1e-12)
    throw validation_error("vedral_plenio_type: diagonal weights must sum to 1");
  if (d < 0.0)
    throw validation_error("vedral_plenio_type: off-diagonal D must be nonnegative");
  if (d > std::sqrt(a2 * a3) + 1e-15)
    throw validation_error("vedral_plenio_type: D > sqrt(A2 A3), the matrix is not a state");
  if (d <= 0.0)
    throw separable_error("vedral_plenio_type: D = 0, the state is separable");

  VedralPlenioType f;
  f.a2 = a2;
  f.a3 = a3;
  f.d = d;

  Mat4 rho_m;
  rho_m(1, 1) = a2;
  rho_m(2, 2) = a3;
  rho_m(1, 2) = rho_m(2, 1) = d;
  f.rho = DensityMatrix::from_matrix(rho_m);

  Mat4 css_m;
  css_m(1, 1) = a2;
  css_m(2, 2) = a3;
  f.css = DensityMatrix::from_matrix(css_m);

  f.r = std::sqrt((a2 - a3) * (a2 - a3) + 4.0 * d * d);
  f.ree_closed = binary_entropy(a2) - binary_entropy(0.5 * (1.0 + f.r));
  f.ree = relative_entropy(f.rho, f.css).value();

  f.theta = 0.5 * std::atan2(2.0 * d, a2 - a3);
  f.lambda1 = 0.5 * ((a2 + a3) + f.r);
  f.lambda2 = 0.5 * ((a2 + a3) - f.r);
  const double ct = std::cos(f.theta), stn = std::sin(f.theta);
  f.v1 = Vec4{};
  f.v1[1] = ct;
  f.v1[2] = stn;
  f.v2 = Vec4{};
  f.v2[1] = stn;
  f.v2[2] = -ct;

  const double pure_gap = std::sqrt(a2 * a3) - d;
  if (pure_gap < 1e-12) {
    // D = sqrt(A2 A3): rho is the pure state sqrt(A2)|01> + sqrt(A3)|10>.
    f.p1 = 1.0;
    f.p2 = 0.0;
    f.y_plus = f.y_minus = 0.0;
    Vec4 psi{};
    psi[1] = std::sqrt(a2);
    psi[2] = std::sqrt(a3);
    f.ensemble.members.push_back({1.0, PureState(scaled(psi, 1.0 / norm(psi)))});
    f.member_css[0] = css_m;
    f.member_css[1] = Mat4{};
    return f;
  }

  const double disc = std::sqrt(1.0 - 4.0 * d * d);
  f.p1 = 0.5 * (1.0 + (a2 - a3) / disc);
  f.p2 = 0.5 * (1.0 - (a2 - a3) / disc);
  f.xi_plus = f.r * std::sqrt(a2 * a3) + d * (a2 + a3);
  f.xi_minus = f.r * std::sqrt(a2 * a3) - d * (a2 + a3);
  f.eta_plus = std::sqrt(a2 * a3 * (1.0 - 4.0 * d * d)) + d * (a2 - a3);
  f.eta_minus = std::sqrt(a2 * a3 * (1.0 - 4.0 * d * d)) - d * (a2 - a3);
  f.y_plus = std::sqrt(2.0 * a2 * a3 * f.r * (disc + (a2 - a3)));
  f.y_minus = std::sqrt(2.0 * a2 * a3 * f.r * (disc - (a2 - a3)));

  const double cpp = std::sqrt(f.xi_plus * f.eta_plus) + std::sqrt(f.xi_minus * f.eta_minus);
  const double cpm = std::sqrt(f.xi_plus * f.eta_minus) - std::sqrt(f.xi_minus * f.eta_plus);
  const double sl1 = std::sqrt(f.lambda1), sl2 = std::sqrt(f.lambda2);

  struct MemberSpec {
    double weight, amp01, amp10, yn;
  };
  const MemberSpec specs[2] = {
      {f.p1, (ct * sl1 * cpp + stn * sl2 * cpm), (stn * sl1 * cpp - ct * sl2 * cpm), f.y_plus},
      {f.p2, (ct * sl1 * cpm - stn * sl2 * cpp), (stn * sl1 * cpm + ct * sl2 * cpp), f.y_minus}};
  for (int k = 0; k < 2; ++k) {
    const MemberSpec& ms = specs[k];
    f.member_css[k] = Mat4{};
    if (ms.weight <= 1e-12 || ms.yn <= 1e-14) continue;
    Vec4 w{};
    w[1] = ms.amp01 / ms.yn;
    w[2] = ms.amp10 / ms.yn;
    f.member_css[k](1, 1) = std::norm(w[1]);
    f.member_css[k](2, 2) = std::norm(w[2]);
    f.ensemble.members.push_back({ms.weight, PureState(scaled(w, 1.0 / norm(w)))});
  }
  return f;
}

// ---------------------------------------------------------------------------
// Horodecki-type (theorem form with corners):
//   rho = A1 |00><00| + A4 |11><11| + A (|01><01| + |10><10|)
//       + D (|01><10| + |10><01|)
// Here the candidate construction demonstrably falls short: the pushed
// candidate differs from the theorem's closest separable state, and the
// relative entropy to the candidate is strictly larger.
// ---------------------------------------------------------------------------

struct HorodeckiType {
  double a1 = 0, a4 = 0, a = 0, d = 0;  // input entries

  double conc = 0;                 // 2 (D - sqrt(A1 A4))
  double z_plus = 0, z_minus = 0;  // member Schmidt normalizers

  // Candidate mixture entries (same matrix shape as rho).
  double pt_a1 = 0, pt_a4 = 0, pt_a = 0, pt_d = 0;
  Mat4 pi_tilde;
  double f_shift = 0, g_shift = 0;  // entry shifts: a1 - A1 = f/(1-C^2) etc.

  std::array<double, 2> roots{};  // boundary-crossing equation roots
  int root_count = 0;
  double x_star = 0;  // selected boundary parameter

  // Theorem closed-form closest separable state entries.
  double r1 = 0, r4 = 0, r = 0, y = 0;
  double cap_f = 0, delta = 0;

  DensityMatrix rho;
  DensityMatrix procedure_candidate;  // Pi* = x* pi_tilde + (1 - x*) rho
  DensityMatrix true_css;             // theorem form
  double procedure_ree = 0.0;         // S(rho || Pi*)
  double ree = 0.0;                   // S(rho || true_css), the actual REE
  Ensemble ensemble;                  // four members at p = 1/4
};

inline HorodeckiType horodecki_type(double a1_in, double a4_in, double a_in, double d_in) {
  if (a1_in < -1e-15 || a4_in < -1e-15 || a_in < -1e-15)
    throw validation_error("horodecki_type: negative diagonal entry");
  if (std::abs(a1_in + a4_in + 2.0 * a_in - 1.0) > 1e-12)
    throw validation_error("horodecki_type: diagonal must sum to 1");
  if (d_in < 0.0)
    throw validation_error("horodecki_type: off-diagonal D must be nonnegative");
  if (d_in > a_in + 1e-15)
    throw validation_error("horodecki_type: D > A, the matrix is not a state");
  if (d_in <= std::sqrt(a1_in * a4_in))
    throw separable_error("horodecki_type: D <= sqrt(A1 A4), the state is separable");

  HorodeckiType f;
  f.a1 = a1_in;
  f.a4 = a4_in;
  f.a = a_in;
  f.d = d_in;
  const double sa1 = std::sqrt(a1_in), sa4 = std::sqrt(a4_in);

  Mat4 rho_m;
  rho_m(0, 0) = a1_in;
  rho_m(3, 3) = a4_in;
  rho_m(1, 1) = rho_m(2, 2) = a_in;
  rho_m(1, 2) = rho_m(2, 1) = d_in;
  f.rho = DensityMatrix::from_matrix(rho_m);

  f.conc = 2.0 * (d_in - sa1 * sa4);
  const double cc = f.conc;
  const double c2 = 1.0 - cc * cc;
  const double sqc = std::sqrt(1.0 - cc * cc);
  f.z_plus = std::sqrt(0.5 * sqc * (sqc - (a1_in - a4_in) +
                                    2.0 * std::sqrt(a_in * a_in - d_in * d_in)));
  f.z_minus = std::sqrt(0.5 * sqc * (sqc + (a1_in - a4_in) -
                                     2.0 * std::sqrt(a_in * a_in - d_in * d_in)));

  const double sp = sa1 + sa4, sm = sa1 - sa4;
  f.pt_a1 = ((1.0 + cc) * sp * sp + (1.0 - cc) * sm * sm + 2.0 * c2 * (a1_in - a4_in)) /
            (4.0 * c2);
  f.pt_a4 = ((1.0 + cc) * sp * sp + (1.0 - cc) * sm * sm - 2.0 * c2 * (a1_in - a4_in)) /
            (4.0 * c2);
  f.pt_a = ((1.0 + cc) * (a_in - d_in) + (1.0 - cc) * (a_in + d_in)) / (2.0 * c2);
  f.pt_d = (2.0 * a_in * sa1 * sa4 + d_in * (a1_in + a4_in)) / c2;
  f.pi_tilde = Mat4{};
  f.pi_tilde(0, 0) = f.pt_a1;
  f.pi_tilde(3, 3) = f.pt_a4;
  f.pi_tilde(1, 1) = f.pi_tilde(2, 2) = f.pt_a;
  f.pi_tilde(1, 2) = f.pi_tilde(2, 1) = f.pt_d;

  f.f_shift = cc * (d_in - a_in * cc);
  f.g_shift = cc * (cc * d_in - a_in);
  const double u = f.f_shift / c2;
  const double v = f.g_shift / c2;

  // Boundary crossing of pi(x) = x pi_tilde + (1-x) rho:
  // (x u + A1)(x u + A4) = (x v + D)^2.
  const double qa = u * u - v * v;
  const double qb = u * (a1_in + a4_in) - 2.0 * v * d_in;
  const double qc = a1_in * a4_in - d_in * d_in;
  if (std::abs(qa) < 1e-15) {
    if (std::abs(qb) > 1e-15) f.roots[f.root_count++] = -qc / qb;
  } else {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0) {
      f.roots[f.root_count++] = (-qb + std::sqrt(disc)) / (2.0 * qa);
      f.roots[f.root_count++] = (-qb - std::sqrt(disc)) / (2.0 * qa);
    }
  }
  // Select the largest in-range root that actually lands on the separable
  // boundary of the full state (the quadratic can also vanish on spurious
  // block sign flips).
  double best = -1.0;
  for (int k = 0; k < f.root_count; ++k) {
    const double x = f.roots[k];
    if (x < -1e-12 || x > 1.0 + 1e-12) continue;
    const Mat4 cand = cx(x) * f.pi_tilde + cx(1.0 - x) * rho_m;
    if (std::abs(min_pt_eigenvalue(cand)) < 1e-8) best = std::max(best, x);
  }
  if (best < 0.0)
    throw infeasible_error("horodecki_type: no boundary crossing root in [0, 1]");
  f.x_star = best;
  f.procedure_candidate =
      DensityMatrix::from_matrix(cx(f.x_star) * f.pi_tilde + cx(1.0 - f.x_star) * rho_m);

  // Theorem closed form (middle diagonal entry A plays the role of the
  // second weight).
  const double s = a1_in + a_in + a4_in;  // = 1 - A
  f.cap_f = 2.0 * (s + d_in) * (s - d_in);
  f.delta = d_in * std::sqrt(d_in * d_in * (a1_in - a4_in) * (a1_in - a4_in) +
                             4.0 * a1_in * a4_in * (a1_in + a_in) * (a_in + a4_in));
  f.r1 = (2.0 * a1_in * (a1_in + a_in) * s - d_in * d_in * (a1_in - a4_in) + f.delta) / f.cap_f;
  f.r4 = (2.0 * a4_in * (a_in + a4_in) * s + d_in * d_in * (a1_in - a4_in) + f.delta) / f.cap_f;
  f.r = (2.0 * (a1_in + a_in) * (a_in + a4_in) * s - d_in * d_in * (a1_in + 2.0 * a_in + a4_in) -
         f.delta) /
        f.cap_f;
  f.y = std::sqrt(f.r1 * f.r4);

  Mat4 css_m;
  css_m(0, 0) = f.r1;
  css_m(3, 3) = f.r4;
  css_m(1, 1) = css_m(2, 2) = f.r;
  css_m(1, 2) = css_m(2, 1) = f.y;
  f.true_css = DensityMatrix::from_matrix(css_m);

  f.procedure_ree = relative_entropy(f.rho, f.procedure_candidate).value();
  f.ree = relative_entropy(f.rho, f.true_css).value();

  // Equal-concurrence ensemble, four members at p = 1/4.
  const double sad = std::sqrt(a_in + d_in), smd = std::sqrt(a_in - d_in);
  const Vec4 b3v = bell_psi_plus(), b4v = bell_psi_minus();
  const cx i1(0.0, 1.0);
  const cx coeffs[4][4] = {
      // {B3, B4, K00, K11} amplitudes
      {sad, smd, sa1, sa4},
      {sad, smd, -sa1, -sa4},
      {sad, -smd, i1 * sa1, -i1 * sa4},
      {sad, -smd, -i1 * sa1, i1 * sa4},
  };
  for (const auto& cf : coeffs) {
    Vec4 hv{};
    for (int k = 0; k < 4; ++k) hv[k] = cf[0] * b3v[k] + cf[1] * b4v[k];
    hv[0] += cf[2];
    hv[3] += cf[3];
    f.ensemble.members.push_back({0.25, PureState(scaled(hv, 1.0 / norm(hv)))});
  }
  return f;
}

// Member closest-separable-state Schmidt bases of the first Horodecki-type
// branch member with corner phase theta.
struct HtMemberBases {
  Vec2 a0, a1, b0, b1;
};

inline HtMemberBases ht_member_bases(const HorodeckiType& f, double theta) {
  const double cc = f.conc;
  const double sqp = std::sqrt(1.0 + cc), sqm = std::sqrt(1.0 - cc);
  const double sad = std::sqrt(f.a + f.d), smd = std::sqrt(f.a - f.d);
  const double sa1 = std::sqrt(f.a1), sa4 = std::sqrt(f.a4);
  const double sq2 = std::sqrt(2.0);
  const double sqc2 = std::sqrt(1.0 - cc * cc);
  const double twoad = 2.0 * std::sqrt(f.a * f.a - f.d * f.d);
  const cx em = std::exp(cx(0.0, -theta));
  const cx ep = std::exp(cx(0.0, theta));

  HtMemberBases b;
  b.a0 = {sq2 * (smd * sqp + sad * sqm) / (2.0 * f.z_plus),
          em * ((sa1 + sa4) * sqp - (sa1 - sa4) * sqm) / (2.0 * f.z_plus)};
  b.a1 = {sq2 * (smd * sqp - sad * sqm) / (2.0 * f.z_minus),
          em * ((sa1 + sa4) * sqp + (sa1 - sa4) * sqm) / (2.0 * f.z_minus)};
  const cx btop = sq2 * ep * (sad * (sa1 + sa4) + smd * (sa1 - sa4));
  b.b0 = {btop / (2.0 * f.z_plus),
          cx(-(f.a1 - f.a4) + twoad + sqc2, 0.0) / (2.0 * f.z_plus)};
  b.b1 = {btop / (2.0 * f.z_minus),
          cx(-(f.a1 - f.a4) + twoad - sqc2, 0.0) / (2.0 * f.z_minus)};
  return b;
}

// First-branch member with corner phase theta (theta = 0 gives the first
// ensemble member).
inline PureState ht_member(const HorodeckiType& f, int branch, double theta) {
  const double sad = std::sqrt(f.a + f.d), smd = std::sqrt(f.a - f.d);
  const double sgn = branch == 1 ? 1.0 : -1.0;
  const Vec4 b3v = bell_psi_plus(), b4v = bell_psi_minus();
  Vec4 v{};
  for (int k = 0; k < 4; ++k) v[k] = sad * b3v[k] + sgn * smd * b4v[k];
  v[0] += std::exp(cx(0.0, theta)) * std::sqrt(f.a1);
  v[3] += std::exp(cx(0.0, -theta)) * std::sqrt(f.a4);
  return PureState(scaled(v, 1.0 / norm(v)));
}

}  // namespace qree::families

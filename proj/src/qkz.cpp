#include "hcs/qkz.hpp"

#include <cmath>

#include "hcs/sampling.hpp"

namespace hcs {

namespace {
// indicator of R0^-: chi(beta) = 1 iff beta is a negative root
int chi_neg(const InitialDatum& D, int root) { return D.is_positive_root(root) ? 0 : 1; }

// translate a Weyl element of the dual datum's table into this datum's table
int dual_w_to_primal(const InitialDatum& D, const InitialDatum& Dt, int e) {
  const IVec& m = Dt.W0.mats[e];
  for (int f = 0; f < D.W0.size(); ++f)
    if (D.W0.mats[f] == m) return f;
  throw std::logic_error("dual_w_to_primal: element not found");
}
}  // namespace

CMat c_left_simple(const InitialDatum& D, int i, const CVec& z, const CVec& xi) {
  const int NW = D.W0.size();
  AffRoot ai = D.simple_affine(i);
  double ki = D.kappa_label(ai.root, ai.r, false);
  Complex ci = D.c_aff(ai, z, -1);
  if (std::abs(ci) < D.pole_guard) throw SingularPoint("c_left_simple: c_i ~ 0");
  CMat M(NW);
  if (i >= 1) {
    int si = D.reflection_of(D.simple[i - 1]);
    int airoot = D.simple[i - 1];
    for (int s = 0; s < NW; ++s) {
      // chi(-sigma^{-1} alpha_i)
      int im = D.act_on_root(D.W0.inv[s], airoot);
      int ch = chi_neg(D, D.neg_root(im));
      M(D.W0.mult[si][s], s) += 1.0 / (qpow(D.q, ki) * ci);
      M(s, s) += (ci - qpow(D.q, -2.0 * ch * ki)) / ci;
    }
  } else {
    int spsi = D.reflection_of(D.psi);
    RVec psit = D.tilde(D.psi);
    for (int s = 0; s < NW; ++s) {
      CVec sxi = D.W0.apply(s, xi);
      int im = D.act_on_root(D.W0.inv[s], D.psi);  // sigma^{-1} psi
      int ch = chi_neg(D, im);
      M(D.W0.mult[spsi][s], s) += qpow(D.q, dot(to_cvec(psit), sxi)) / (qpow(D.q, ki) * ci);
      M(s, s) += (ci - qpow(D.q, -2.0 * ch * ki)) / ci;
    }
  }
  return M;
}

CMat c_left_omega(const InitialDatum& D, const ExtAffine& u, const CVec& z,
                  const CVec& xi) {
  (void)z;
  const int NW = D.W0.size();
  CMat M(NW);
  RVec w0nu = D.W0.apply(D.w_longest(), u.t);
  for (int s = 0; s < NW; ++s) {
    CVec sxi = D.W0.apply(s, xi);
    // v(nu)^{-1} sigma with v(nu) = (linear part)^{-1}
    M(D.W0.mult[u.w][s], s) = qpow(D.q, -dot(to_cvec(w0nu), sxi));
  }
  return M;
}

CMat c_right_simple(const InitialDatum& D, int i, const CVec& z, const CVec& xi) {
  const InitialDatum& Dt = D.dual();
  const int NW = D.W0.size();
  AffRoot ai = Dt.simple_affine(i);
  double ki = Dt.kappa_label(ai.root, ai.r, false);
  Complex ci = Dt.c_aff(ai, xi, -1);
  if (std::abs(ci) < D.pole_guard) throw SingularPoint("c_right_simple: c~_i ~ 0");
  CMat M(NW);
  if (i >= 1) {
    int si = D.reflection_of(D.simple[i - 1]);
    int airoot = D.simple[i - 1];
    for (int s = 0; s < NW; ++s) {
      // chi(-sigma alpha_i)
      int im = D.act_on_root(s, airoot);
      int ch = chi_neg(D, D.neg_root(im));
      M(D.W0.mult[s][si], s) += 1.0 / (qpow(D.q, ki) * ci);
      M(s, s) += (ci - qpow(D.q, -2.0 * ch * ki)) / ci;
    }
  } else {
    // s~_0 = tau(theta) s_theta: index action sigma -> sigma s_theta,
    // coefficient q^{theta(sigma^{-1} z)}
    int stheta = D.reflection_of(D.theta);
    for (int s = 0; s < NW; ++s) {
      CVec sz = D.W0.apply(D.W0.inv[s], z);
      int im = D.act_on_root(s, D.theta);  // sigma theta
      int ch = chi_neg(D, im);
      M(D.W0.mult[s][stheta], s) +=
          qpow(D.q, dot(D.roots[D.theta], sz)) / (qpow(D.q, ki) * ci);
      M(s, s) += (ci - qpow(D.q, -2.0 * ch * ki)) / ci;
    }
  }
  return M;
}

CMat c_right_omega(const InitialDatum& D, const ExtAffine& u_dual, const CVec& z,
                   const CVec& xi) {
  (void)xi;
  const InitialDatum& Dt = D.dual();
  const int NW = D.W0.size();
  CMat M(NW);
  RVec w0lam = D.W0.apply(D.w_longest(), u_dual.t);
  int lin = dual_w_to_primal(D, Dt, u_dual.w);
  int lin_inv = D.W0.inv[lin];
  for (int s = 0; s < NW; ++s) {
    CVec sz = D.W0.apply(D.W0.inv[s], z);
    // v~(lambda) = (linear part)^{-1}: target index sigma v~(lambda)
    M(D.W0.mult[s][lin_inv], s) = qpow(D.q, -dot(to_cvec(w0lam), sz));
  }
  return M;
}

CMat c_left(const InitialDatum& D, const ExtAffine& w, const CVec& z, const CVec& xi) {
  ReducedAffineWord word = D.ea_reduced_word(w);
  CMat M = CMat::identity(D.W0.size());
  CVec zc = z;
  for (int letter : word.letters) {
    M = M.times(c_left_simple(D, letter, zc, xi));
    zc = D.ea_apply_inv(D.s_affine(letter), zc);
  }
  if (D.ea_length(word.omega) != 0)
    throw std::logic_error("c_left: residual is not length zero");
  bool trivial = word.omega.w == 0;
  for (double t : word.omega.t) trivial = trivial && std::abs(t) < 1e-12;
  if (!trivial) M = M.times(c_left_omega(D, word.omega, zc, xi));
  return M;
}

CMat c_right(const InitialDatum& D, const ExtAffine& w_dual, const CVec& z,
             const CVec& xi) {
  const InitialDatum& Dt = D.dual();
  ReducedAffineWord word = Dt.ea_reduced_word(w_dual);
  CMat M = CMat::identity(D.W0.size());
  CVec xic = xi;
  for (int letter : word.letters) {
    M = M.times(c_right_simple(D, letter, z, xic));
    xic = Dt.ea_apply_inv(Dt.s_affine(letter), xic);
  }
  bool trivial = word.omega.w == 0;
  for (double t : word.omega.t) trivial = trivial && std::abs(t) < 1e-12;
  if (!trivial) M = M.times(c_right_omega(D, word.omega, z, xic));
  return M;
}

CMat c_cocycle(const InitialDatum& D, const ExtAffine& w, const ExtAffine& w_dual,
               const CVec& z, const CVec& xi) {
  CMat left = c_left(D, w, z, xi);
  CVec wz = D.ea_apply_inv(w, z);
  return left.times(c_right(D, w_dual, wz, xi));
}

CVec nabla_apply(const InitialDatum& D, const ExtAffine& w, const ExtAffine& w_dual,
                 const VectorFn& f, const CVec& z, const CVec& xi) {
  const InitialDatum& Dt = D.dual();
  CMat C = c_cocycle(D, w, w_dual, z, xi);
  CVec arg1 = D.ea_apply_inv(w, z);
  CVec arg2 = Dt.ea_apply_inv(w_dual, xi);
  return C.times(f(arg1, arg2));
}

Complex chi_map(const InitialDatum& D, const CVec& components) {
  Complex s{0.0, 0.0};
  double kw0 = D.kappa_w[D.w_longest()];
  for (int w = 0; w < D.W0.size(); ++w)
    s += qpow(D.q, kw0 - D.kappa_w[w]) * components[w];
  return s;
}

Complex r0_product(const InitialDatum& D, const RVec& lambda, const CVec& xi) {
  const InitialDatum& Dt = D.dual();
  ExtAffine tau = Dt.ea_translation(lambda);
  // R~+ cap tau(lambda) R~-: a > 0 with tau(-lambda) a < 0
  Complex prod{1.0, 0.0};
  for (const AffRoot& a : Dt.inversion_set(Dt.ea_inv(tau))) {
    Complex c = Dt.c_aff(a, xi, -1);
    if (std::abs(c) < D.pole_guard) throw SingularPoint("r0_product: c~ ~ 0");
    prod *= 1.0 / c;
  }
  return prod;
}

double r0_residual(const InitialDatum& D, const RVec& lambda, const CVec& xi,
                   double depth) {
  const InitialDatum& Dt = D.dual();
  // z at asymptotic depth: the non-constant terms of the expansion carry
  // factors of size q^{depth}
  CVec targets(D.rank);
  for (int i = 0; i < D.rank; ++i) targets[i] = Complex{-depth - 0.37 * i, 0.1 + 0.03 * i};
  CVec z = point_from_alpha_targets(D, targets);

  ExtAffine tau_dual = Dt.ea_translation(lambda);
  CMat C = c_right(D, tau_dual, z, xi);
  int w0 = D.w_longest();
  CVec rtpz(D.dim);
  CVec w0z = D.W0.apply(w0, z);
  for (int d = 0; d < D.dim; ++d) rtpz[d] = D.rhotil[d] + w0z[d];
  Complex Rl = qpow(D.q, dot(to_cvec(lambda), rtpz)) * C(w0, w0);
  Complex prod = r0_product(D, lambda, xi);
  return std::abs(Rl - prod) / std::max(1e-300, std::abs(prod));
}

}  // namespace hcs

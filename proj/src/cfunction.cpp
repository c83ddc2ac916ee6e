#include "hcs/cfunction.hpp"

#include <cmath>

namespace hcs {

RVec delta_s_vee(const InitialDatum& D) {
  // short positive coroots; one root length means everything counts as short
  double minlen = 1e300;
  for (size_t r = 0; r < D.roots.size(); ++r) minlen = std::min(minlen, D.len2(int(r)));
  RVec out(D.dim, 0.0);
  for (int p : D.positive)
    if (std::abs(D.len2(p) - minlen) < 1e-9) out = add(out, scaled(D.covee(p), 0.5));
  return out;
}

Complex vartheta_Lambda(const InitialDatum& D, const CVec& z) {
  return lattice_theta_value(D.L.basis, z, D.ctx);
}

namespace {
Complex vartheta_shifted(const InitialDatum& D, const RVec& re_shift, const CVec& z,
                         const CVec& extra) {
  CVec v(D.dim);
  for (int d = 0; d < D.dim; ++d) v[d] = re_shift[d] + z[d] + extra[d];
  return vartheta_Lambda(D, v);
}
}  // namespace

XiFn xi_sph(const InitialDatum& D) {
  // multiplicity labels at the affine simple root a0 (orbit of psi, parity 1)
  const Kappa4& kpsi = D.kappa(D.psi);
  double k0 = kpsi.a1;      // kappa_{a0}
  double k2a0 = kpsi.a21;   // kappa_{2 a0}
  double k2psi = kpsi.a2;   // kappa_{2 psi}
  RVec dsv = delta_s_vee(D);
  RVec rho = D.rho;
  int w0 = D.w_longest();
  const InitialDatum* Dp = &D;
  return [Dp, dsv, rho, k0, k2a0, k2psi, w0](const CVec& z, const CVec& xi) {
    CVec w0xi = Dp->W0.apply(w0, xi);
    CVec zero(Dp->dim, Complex{0.0, 0.0});
    Complex num = vartheta_shifted(*Dp, add(rho, scaled(dsv, k2a0 - k0)), z, w0xi);
    Complex d1 = vartheta_shifted(*Dp, scaled(dsv, k2a0 - k0), z, zero);
    Complex d2 = vartheta_shifted(*Dp, scaled(dsv, k2a0 - k2psi), neg(xi), zero);
    if (std::abs(d1 * d2) < Dp->pole_guard)
      throw SingularPoint("xi_sph: lattice theta denominator within guard");
    return num / (d1 * d2);
  };
}

Complex c_from_xi(const InitialDatum& D, const XiFn& Xi, const CVec& z, const CVec& xi) {
  Complex prod{1.0, 0.0};
  for (int p : D.positive) {
    AwQuadruple at = D.aw_dual(p);
    double qa2 = at.q_alpha * at.q_alpha;
    QContext cq(qa2, D.ctx.factor_cutoff);
    Complex qa = qpow(D.q, dot(to_cvec(D.tilde(p)), xi));
    Complex den = theta(qa * qa, cq);
    if (std::abs(den) < D.pole_guard) throw SingularPoint("c_from_xi: theta pole");
    prod *= theta(CVec{at.a * qa, at.b * qa, at.c * qa, at.d * qa}, cq) / den;
  }
  return Xi(z, xi) / plane_wave(D, z, xi) * prod;
}

bool c_sph_supported(const InitialDatum& D) {
  return D.bullet == Bullet::T && D.L.same_as(D.Lt);
}

bool c_sph_all_z_branch(const InitialDatum& D) {
  for (size_t o = 0; o < D.orbit_names.size(); ++o)
    if (D.lat_index[o] != 1) return false;
  return true;
}

Complex c_sph(const InitialDatum& D, const CVec& z, const CVec& xi, bool simplified) {
  if (!c_sph_supported(D))
    throw std::invalid_argument("c_sph: requires a twisted equal-lattice datum");
  if (!simplified) return c_from_xi(D, xi_sph(D), z, xi);
  if (!c_sph_all_z_branch(D))
    throw std::invalid_argument("c_sph: simplified branch needs (Lambda,alpha^vee)=Z");
  CVec w0xi = D.W0.apply(D.w_longest(), xi);
  CVec arg(D.dim);
  for (int d = 0; d < D.dim; ++d) arg[d] = D.rho[d] + z[d] + w0xi[d];
  Complex num = vartheta_Lambda(D, arg);
  Complex den = vartheta_Lambda(D, z) * vartheta_Lambda(D, xi);
  if (std::abs(den) < D.pole_guard) throw SingularPoint("c_sph: lattice theta pole");
  Complex prod{1.0, 0.0};
  for (int p : D.positive) {
    double qa = D.q_alpha(p);
    QContext cq(qa, D.ctx.factor_cutoff);
    Complex qax = qpow(D.q, dot(D.roots[p], xi));
    Complex d2 = theta(qax, cq);
    if (std::abs(d2) < D.pole_guard) throw SingularPoint("c_sph: theta pole");
    prod *= theta(qpow(D.q, 2.0 * D.kappa(p).a) * qax, cq) / d2;
  }
  return num / den / plane_wave(D, z, xi) * prod;
}

double xi_quasi_invariance_residual(const InitialDatum& D, const XiFn& Xi,
                                    const CVec& z, const CVec& xi, const RVec& mu,
                                    const RVec& lambda) {
  Complex base = Xi(z, xi);
  CVec zmu = add(to_cvec(mu), z);
  CVec xil = add(to_cvec(lambda), xi);
  CVec w0mu = to_cvec(D.W0.apply(D.w_longest(), mu));
  CVec w0z = D.W0.apply(D.w_longest(), z);
  CVec rho_m_xi(D.dim);
  for (int d = 0; d < D.dim; ++d) rho_m_xi[d] = D.rho[d] - xi[d];
  CVec rhot_m_w0z(D.dim);
  for (int d = 0; d < D.dim; ++d) rhot_m_w0z[d] = D.rhotil[d] - w0z[d];
  Complex r1 = Xi(zmu, xi) - qpow(D.q, dot(rho_m_xi, w0mu)) * base;
  Complex r2 = Xi(z, xil) - qpow(D.q, dot(to_cvec(lambda), rhot_m_w0z)) * base;
  return std::max(std::abs(r1), std::abs(r2)) / std::max(1e-300, std::abs(base));
}

double relationsc_residual(const InitialDatum& D, const CFn& c, int i, const CVec& z,
                           const CVec& xi) {
  int rs = D.simple[D.istar[i] - 1];
  CVec sz = D.W0.apply(D.reflection_of(D.simple[i - 1]), z);
  CVec sxi = D.W0.apply(D.reflection_of(rs), xi);
  MSimple m1 = m_simple(D, i, z, xi);
  MSimple m2 = m_simple(D, i, z, sxi);
  Complex lhs = c(z, xi);
  Complex t1 = m1.ee * c(sz, xi);
  Complex t2 = m2.off * c(sz, sxi);
  double scale = std::max({std::abs(lhs), std::abs(t1), std::abs(t2)});
  return std::abs(lhs - t1 - t2) / std::max(1e-300, scale);
}

double addition_root_residual(const InitialDatum& D, int i, const CVec& z,
                              const CVec& xi) {
  int root = D.simple[i - 1];
  if (D.lat_index[D.orbit_id[root]] != 1)
    throw std::invalid_argument("addition_root_residual: needs (Lambda,alpha_i^vee)=Z");
  int rs = D.simple[D.istar[i] - 1];
  double ki = D.kappa(root).a;
  double qi = D.q_alpha(root);
  QContext cq(qi, D.ctx.factor_cutoff);
  Complex x = dot(D.roots[root], z);
  Complex y = dot(to_cvec(D.tilde(rs)), xi);
  CVec w0xi = D.W0.apply(D.w_longest(), xi);
  CVec sz = D.W0.apply(D.reflection_of(root), z);
  RVec srho = D.W0.apply(D.reflection_of(root), D.rho);
  CVec zero(D.dim, Complex{0.0, 0.0});

  Complex lhs = theta(CVec{qpow(D.q, y), qpow(D.q, 2.0 * ki - x)}, cq) *
                vartheta_shifted(D, D.rho, z, w0xi);
  Complex t1 = theta(CVec{qpow(D.q, Complex{2.0 * ki, 0.0}), qpow(D.q, y - x)}, cq) *
               vartheta_shifted(D, D.rho, sz, w0xi);
  Complex t2 = qpow(D.q, y) *
               theta(CVec{qpow(D.q, 2.0 * ki - y), qpow(D.q, -x)}, cq) *
               vartheta_shifted(D, srho, z, w0xi);
  double scale = std::max({std::abs(lhs), std::abs(t1), std::abs(t2)});
  return std::abs(lhs - (t1 - t2)) / std::max(1e-300, scale);
}

double towards_riemann_residual(const InitialDatum& D, const XiFn& Xi, int i,
                                const CVec& z, const CVec& xi) {
  int root = D.simple[i - 1];
  int rs = D.simple[D.istar[i] - 1];
  double ki = D.kappa(root).a;
  double qi = D.q_alpha(root);
  QContext cq(qi, D.ctx.factor_cutoff);
  Complex x = dot(D.roots[root], z);
  Complex y = dot(to_cvec(D.tilde(rs)), xi);
  CVec sz = D.W0.apply(D.reflection_of(root), z);
  CVec sxi = D.W0.apply(D.reflection_of(rs), xi);

  Complex lhs = theta(CVec{qpow(D.q, y), qpow(D.q, 2.0 * ki - x)}, cq) * Xi(z, xi);
  Complex t1 =
      theta(CVec{qpow(D.q, Complex{2.0 * ki, 0.0}), qpow(D.q, y - x)}, cq) * Xi(sz, xi);
  Complex t2 = qpow(D.q, y) * theta(CVec{qpow(D.q, 2.0 * ki - y), qpow(D.q, -x)}, cq) *
               Xi(sz, sxi);
  double scale = std::max({std::abs(lhs), std::abs(t1), std::abs(t2)});
  return std::abs(lhs - (t1 - t2)) / std::max(1e-300, scale);
}

double alternative_residual(const InitialDatum& D, const XiFn& Xi, int i,
                            const CVec& z, const CVec& xi) {
  int root = D.simple[i - 1];
  int rs = D.simple[D.istar[i] - 1];
  AwQuadruple A = D.aw(root);
  AwQuadruple At = D.aw_dual(root);
  double qi2 = A.q_alpha * A.q_alpha;
  QContext cq(qi2, D.ctx.factor_cutoff);
  Complex x = dot(D.roots[root], z);
  Complex y = dot(to_cvec(D.tilde(rs)), xi);
  CVec sz = D.W0.apply(D.reflection_of(root), z);
  CVec sxi = D.W0.apply(D.reflection_of(rs), xi);
  Complex r = At.d / A.a;

  Complex base = Xi(z, xi);
  Complex lhs1 = Xi(sz, xi);
  Complex den1 = theta(CVec{r * qpow(D.q, y - x), A.d * qpow(D.q, x)}, cq);
  if (std::abs(den1) < D.pole_guard) throw SingularPoint("alternative: theta pole");
  Complex rhs1 =
      theta(CVec{r * qpow(D.q, y + x), A.d * qpow(D.q, -x)}, cq) / den1 * base;

  Complex lhs2 = Xi(z, sxi);
  Complex den2 = theta(CVec{r * qpow(D.q, y - x), At.d * qpow(D.q, -y)}, cq);
  if (std::abs(den2) < D.pole_guard) throw SingularPoint("alternative: theta pole");
  Complex rhs2 =
      theta(CVec{r * qpow(D.q, -y - x), At.d * qpow(D.q, y)}, cq) / den2 * base;

  double s1 = std::abs(lhs1 - rhs1) / std::max(std::abs(lhs1), std::abs(rhs1));
  double s2 = std::abs(lhs2 - rhs2) / std::max(std::abs(lhs2), std::abs(rhs2));
  return std::max(s1, s2);
}

}  // namespace hcs

#include "hcs/connection.hpp"

#include <cmath>
#include <sstream>

namespace hcs {

namespace {
Complex theta_prod(const InitialDatum& D, const CVec& args, double Q) {
  QContext cq(Q, D.ctx.factor_cutoff);
  return theta(args, cq);
}
}  // namespace

Complex frak_e(const InitialDatum& D, int root, Complex x, Complex y) {
  const Kappa4& k = D.kappa(root);
  AwQuadruple A = D.aw(root);
  AwQuadruple At = D.aw_dual(root);
  double mu = D.mu(root);
  double qa2 = A.q_alpha * A.q_alpha;
  Complex qy = qpow(D.q, y);
  Complex pref = qpow(D.q, -(k.a + k.a2 - x) * (k.a + k.a1 - y) / (2.0 * mu));
  Complex num = theta_prod(
      D, CVec{At.a * qy, At.b * qy, At.c * qy, A.d * qpow(D.q, y - x) / At.a}, qa2);
  Complex den =
      theta_prod(D, CVec{qpow(D.q, 2.0 * y), A.d * qpow(D.q, -x)}, qa2);
  if (std::abs(den) < D.pole_guard)
    throw SingularPoint("frak_e: theta denominator within guard");
  return pref * num / den;
}

Complex frak_e_tilde(const InitialDatum& D, int root, Complex x, Complex y) {
  const Kappa4& k = D.kappa(root);
  AwQuadruple A = D.aw(root);
  AwQuadruple At = D.aw_dual(root);
  double mu = D.mu(root);
  double qa2 = A.q_alpha * A.q_alpha;
  Complex qy = qpow(D.q, y);
  Complex pref = qpow(D.q, -(k.a + k.a1 - x) * (k.a + k.a2 - y) / (2.0 * mu));
  Complex num = theta_prod(
      D, CVec{A.a * qy, A.b * qy, A.c * qy, At.d * qpow(D.q, y - x) / A.a}, qa2);
  Complex den =
      theta_prod(D, CVec{qpow(D.q, 2.0 * y), At.d * qpow(D.q, -x)}, qa2);
  if (std::abs(den) < D.pole_guard)
    throw SingularPoint("frak_e_tilde: theta denominator within guard");
  return pref * num / den;
}

MSimple m_simple(const InitialDatum& D, int i, const CVec& z, const CVec& xi) {
  int root = D.simple[i - 1];
  int rs = D.simple[D.istar[i] - 1];
  Complex x = dot(D.roots[root], z);
  Complex y = dot(to_cvec(D.tilde(rs)), xi);
  Complex den = frak_e_tilde(D, root, y, -x);
  if (std::abs(den) < D.pole_guard)
    throw SingularPoint("m_simple: e~(y,-x) within guard");
  MSimple m;
  m.ee = (frak_e(D, root, x, y) - frak_e_tilde(D, root, y, x)) / den;
  m.off = frak_e(D, root, x, -y) / den;
  return m;
}

MSimple m_simple_cus(const InitialDatum& D, int i, const CVec& z, const CVec& xi) {
  int root = D.simple[i - 1];
  if (D.lat_index[D.orbit_id[root]] != 1 || D.lat_index_dual[D.orbit_id[root]] != 1)
    throw std::invalid_argument("m_simple_cus: alpha_i is not a q-ultraspherical root");
  int rs = D.simple[D.istar[i] - 1];
  Complex x = dot(D.roots[root], z);
  Complex y = dot(to_cvec(D.tilde(rs)), xi);
  double mu = D.mu(root);
  double ki = D.kappa(root).a;
  double qi = D.q_alpha(root);
  Complex ai = D.aw(root).a;
  MSimple m;
  {
    Complex pref = qpow(D.q, (2.0 * ki - y) * x / mu);
    Complex num = theta_prod(D, CVec{ai, qpow(D.q, y - x)}, qi);
    Complex den = theta_prod(D, CVec{qpow(D.q, y), ai * qpow(D.q, -x)}, qi);
    if (std::abs(den) < D.pole_guard) throw SingularPoint("m_simple_cus: pole");
    m.ee = pref * num / den;
  }
  {
    Complex pref = qpow(D.q, 2.0 * ki * (x - y) / mu);
    Complex num = theta_prod(D, CVec{ai * qpow(D.q, -y), qpow(D.q, -x)}, qi);
    Complex den = theta_prod(D, CVec{ai * qpow(D.q, -x), qpow(D.q, -y)}, qi);
    if (std::abs(den) < D.pole_guard) throw SingularPoint("m_simple_cus: pole");
    m.off = pref * num / den;
  }
  return m;
}

Complex wronskian(const InitialDatum& D, int i, const std::function<Complex(Complex)>& f,
                  const std::function<Complex(Complex)>& g, Complex x) {
  double mu = D.mu(D.simple[i - 1]);
  Complex w = aw_weight_i(D, i, x);
  Complex A = aw_A_i(D, i, x);
  return w * A * (f(x - 2.0 * mu) * g(x) - f(x) * g(x - 2.0 * mu));
}

Complex wronskian_closed_form(const InitialDatum& D, int i, Complex x, const CVec& xi) {
  int root = D.simple[i - 1];
  int rs = D.simple[D.istar[i] - 1];
  AwQuadruple A = D.aw(root);
  double qi2 = A.q_alpha * A.q_alpha;
  Complex y = dot(to_cvec(D.tilde(rs)), xi);
  CVec sxi = D.W0.apply(D.reflection_of(rs), xi);
  Complex qx = qpow(D.q, x);
  Complex num = theta_prod(D, CVec{qx * qx}, qi2);
  Complex den =
      theta_prod(D, CVec{A.a * qx, A.b * qx, A.c * qx, A.d * qx}, qi2);
  if (std::abs(den) < D.pole_guard)
    throw SingularPoint("wronskian_closed_form: theta pole");
  Complex g0a = gamma0(D, xi), g0b = gamma0(D, sxi);
  Complex sta = singular_S_tilde(D, xi), stb = singular_S_tilde(D, sxi);
  return (qpow(D.q, -y) - qpow(D.q, y)) * plane_wave_i(D, i, x, y) *
         plane_wave_i(D, i, x, -y) * g0a * g0b * num / (sta * stb * den);
}

namespace {
double rel_frobenius(const CMat& a, const CMat& b) {
  double s = a.minus(b).frobenius();
  return s / std::max(1.0, std::max(a.frobenius(), b.frobenius()));
}

CMat msimple_matrix(const InitialDatum& D, int i, const CVec& z, const CVec& xi) {
  const int NW = D.W0.size();
  CMat M(NW);
  int rs = D.simple[D.istar[i] - 1];
  int srefl = D.reflection_of(rs);
  for (int t2 = 0; t2 < NW; ++t2) {
    CVec t2xi = D.W0.apply(D.W0.inv[t2], xi);
    MSimple m = m_simple(D, i, z, t2xi);
    M(t2, t2) += m.ee;
    M(D.W0.mult[t2][srefl], t2) += m.off;
  }
  return M;
}

CVec act(const InitialDatum& D, int e, const CVec& z) { return D.W0.apply(e, z); }
}  // namespace

CMat connection_matrix(const InitialDatum& D, int sigma, const CVec& z, const CVec& xi) {
  CMat M = CMat::identity(D.W0.size());
  CVec zc = z;
  for (int letter : D.W0.words[sigma]) {
    M = M.times(msimple_matrix(D, letter, zc, xi));
    // z -> s_i^{-1} z for the next factor
    zc = D.W0.apply(D.reflection_of(D.simple[letter - 1]), zc);
  }
  return M;
}

double yb_residual(const InitialDatum& D, int i, const CVec& z, const CVec& xi) {
  if (i < 1 || i + 2 > D.rank)
    throw std::invalid_argument("yb_residual: need 1 <= i <= n-2");
  int si = D.reflection_of(D.simple[i - 1]);
  int sj = D.reflection_of(D.simple[i]);
  auto Mi = [&](const CVec& zz) { return msimple_matrix(D, i, zz, xi); };
  auto Mj = [&](const CVec& zz) { return msimple_matrix(D, i + 1, zz, xi); };
  CMat lhs = Mi(z).times(Mj(act(D, si, z))).times(Mi(act(D, D.W0.mult[sj][si], z)));
  CMat rhs = Mj(z).times(Mi(act(D, sj, z))).times(Mj(act(D, D.W0.mult[si][sj], z)));
  return rel_frobenius(lhs, rhs);
}

double reflection_residual(const InitialDatum& D, const CVec& z, const CVec& xi) {
  int n = D.rank;
  if (n < 2) throw std::invalid_argument("reflection_residual: rank >= 2 required");
  int a = n - 1, b = n;
  int sa = D.reflection_of(D.simple[a - 1]);
  int sb = D.reflection_of(D.simple[b - 1]);
  auto Ma = [&](const CVec& zz) { return msimple_matrix(D, a, zz, xi); };
  auto Mb = [&](const CVec& zz) { return msimple_matrix(D, b, zz, xi); };
  auto mul = [&](int e1, int e2) { return D.W0.mult[e1][e2]; };
  CMat lhs = Ma(z)
                 .times(Mb(act(D, sa, z)))
                 .times(Ma(act(D, mul(sb, sa), z)))
                 .times(Mb(act(D, mul(sa, mul(sb, sa)), z)));
  CMat rhs = Mb(z)
                 .times(Ma(act(D, sb, z)))
                 .times(Mb(act(D, mul(sa, sb), z)))
                 .times(Ma(act(D, mul(sb, mul(sa, sb)), z)));
  return rel_frobenius(lhs, rhs);
}

double braid_cocycle_residual(const InitialDatum& D, int i, int j, const CVec& z,
                              const CVec& xi) {
  int si = D.reflection_of(D.simple[i - 1]);
  int sj = D.reflection_of(D.simple[j - 1]);
  auto Mi = [&](const CVec& zz) { return msimple_matrix(D, i, zz, xi); };
  auto Mj = [&](const CVec& zz) { return msimple_matrix(D, j, zz, xi); };
  CMat lhs = Mi(z).times(Mj(act(D, si, z))).times(Mi(act(D, D.W0.mult[sj][si], z)));
  CMat rhs = Mj(z).times(Mi(act(D, sj, z))).times(Mj(act(D, D.W0.mult[si][sj], z)));
  return rel_frobenius(lhs, rhs);
}

namespace {
bool near_int(double x, double tol = 1e-9) {
  return std::abs(x - std::round(x)) < tol;
}
}  // namespace

ReflectionlessCertificate reflectionless_predicate(const InitialDatum& D) {
  ReflectionlessCertificate cert;
  cert.reflectionless = true;
  for (size_t o = 0; o < D.orbit_names.size(); ++o) {
    int rep = -1;
    for (size_t r = 0; r < D.roots.size(); ++r)
      if (D.orbit_id[r] == int(o)) {
        rep = int(r);
        break;
      }
    const Kappa4& k = D.kappas[o];
    double mu = D.mu(rep);
    std::ostringstream detail;
    bool ok = true;
    auto cond = [&](const char* name, double v, double unit) {
      bool c = near_int(v / unit);
      ok = ok && c;
      detail << name << "=" << v << (c ? " in " : " NOT in ") << unit << "Z; ";
    };
    cond("k_a+k_a1", k.a + k.a1, mu);
    cond("k_a-k_a1", k.a - k.a1, mu);
    cond("k_2a+k_2a1", k.a2 + k.a21, mu);
    cond("k_2a-k_2a1", k.a2 - k.a21, mu);
    cond("k_a+k_2a", k.a + k.a2, mu);
    cond("k_a-k_2a", k.a - k.a2, mu);
    cond("k_a1+k_2a1", k.a1 + k.a21, mu);
    cond("k_a1-k_2a1", k.a1 - k.a21, mu);
    cond("sum", k.a + k.a2 + k.a1 + k.a21, 2.0 * mu);
    // specialized q-ultraspherical / q-Jacobi reductions, reported only
    if (D.lat_index[o] == 1 && D.lat_index_dual[o] == 1)
      detail << "(q-ultraspherical: reduces to k_a in " << mu / 2 << "Z)";
    cert.orbits.push_back({D.orbit_names[o], ok, detail.str()});
    cert.reflectionless = cert.reflectionless && ok;
  }
  return cert;
}

double connection_identity_residual(const InitialDatum& D, int i, const CVec& z,
                                    const CVec& xi, int N) {
  int rs = D.simple[D.istar[i] - 1];
  CVec sxi = D.W0.apply(D.reflection_of(rs), xi);
  CVec sz = D.W0.apply(D.reflection_of(D.simple[i - 1]), z);
  MSimple m = m_simple(D, i, z, xi);
  HCSeries h1(D, xi, N);
  HCSeries h2(D, sxi, N);
  Complex lhs = h1.value(sz);
  Complex rhs = m.ee * h1.value(z) + m.off * h2.value(z);
  double scale = std::max({std::abs(lhs), std::abs(m.ee * h1.value(z)),
                           std::abs(m.off * h2.value(z))});
  return std::abs(lhs - rhs) / std::max(1e-300, scale);
}

double connection_identity_residual_rank_one(const InitialDatum& D, int i, Complex x,
                                             const CVec& xi) {
  int rs = D.simple[D.istar[i] - 1];
  CVec sxi = D.W0.apply(D.reflection_of(rs), xi);
  // m entries depend on z only through x = alpha_i(z)
  CVec z(D.dim, Complex{0.0, 0.0});
  {
    // solve alpha_i(z) = x within the span of alpha_i
    RVec ai = to_rvec(D.roots[D.simple[i - 1]]);
    double n2 = dot(ai, ai);
    for (int d = 0; d < D.dim; ++d) z[d] = x * ai[d] / n2;
  }
  MSimple m = m_simple(D, i, z, xi);
  Complex lhs = phi_rank_one(D, i, -x, xi);
  Complex t1 = m.ee * phi_rank_one(D, i, x, xi);
  Complex t2 = m.off * phi_rank_one(D, i, x, sxi);
  double scale = std::max({std::abs(lhs), std::abs(t1), std::abs(t2)});
  return std::abs(lhs - t1 - t2) / std::max(1e-300, scale);
}

}  // namespace hcs

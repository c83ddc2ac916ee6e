#include "hcs/hcseries.hpp"

#include <algorithm>
#include <cmath>

namespace hcs {

Complex plane_wave(const InitialDatum& D, const CVec& z, const CVec& xi) {
  CVec a(D.dim), b(D.dim);
  CVec w0z = D.W0.apply(D.w_longest(), z);
  for (int d = 0; d < D.dim; ++d) {
    a[d] = D.rho[d] - xi[d];
    b[d] = D.rhotil[d] + w0z[d];
  }
  return qpow(D.q, dot(a, b));
}

namespace {
Complex singular_product(const InitialDatum& D, const CVec& v, bool dual) {
  Complex prod{1.0, 0.0};
  for (int p : D.positive) {
    AwQuadruple aw = dual ? D.aw_dual(p) : D.aw(p);
    double qa2 = aw.q_alpha * aw.q_alpha;
    QContext cq(qa2, D.ctx.factor_cutoff);
    CVec root = dual ? to_cvec(D.tilde(p)) : to_cvec(to_rvec(D.roots[p]));
    Complex x = qpow(D.q, -dot(root, v));
    for (Complex par : {aw.a, aw.b, aw.c, aw.d})
      prod *= qpoch_inf(qa2 / par * x, cq);
  }
  return prod;
}
}  // namespace

Complex singular_S(const InitialDatum& D, const CVec& z) {
  return singular_product(D, z, false);
}

Complex singular_S_tilde(const InitialDatum& D, const CVec& xi) {
  return singular_product(D, xi, true);
}

Complex singular_S_i(const InitialDatum& D, int i, Complex x) {
  int root = D.simple[i - 1];
  AwQuadruple aw = D.aw(root);
  double qa2 = aw.q_alpha * aw.q_alpha;
  QContext cq(qa2, D.ctx.factor_cutoff);
  Complex qx = std::exp(-x * std::log(D.q));  // q^{-x}
  Complex prod{1.0, 0.0};
  for (Complex par : {aw.a, aw.b, aw.c, aw.d}) prod *= qpoch_inf(qa2 / par * qx, cq);
  return prod;
}

Complex plane_wave_i(const InitialDatum& D, int i, Complex x, Complex y) {
  int root = D.simple[i - 1];
  const Kappa4& k = D.kappa(root);
  double mu = D.mu(root);
  return qpow(D.q, (k.a + k.a2 - x) * (k.a + k.a1 - y) / (2.0 * mu));
}

HCSeries::HCSeries(const InitialDatum& D, const CVec& xi, int N)
    : D_(&D), xi_(xi), N_(N), gt_(solve_gamma(D, xi, N)) {
  stilde_ = singular_S_tilde(D, xi);
}

Complex HCSeries::psi_value(const CVec& z) const {
  Complex sum{0.0, 0.0};
  for (const auto& kv : gt_.gamma) {
    Complex expo{0.0, 0.0};
    for (int i = 0; i < D_->rank; ++i)
      if (kv.first[i] != 0)
        expo += double(kv.first[i]) * dot(D_->roots[D_->simple[i]], z);
    sum += kv.second * qpow(D_->q, -expo);
  }
  return sum;
}

Complex HCSeries::value(const CVec& z) const {
  Complex s = singular_S(*D_, z);
  if (std::abs(s) < 1e-280) throw SingularPoint("HCSeries: S(z) ~ 0");
  if (std::abs(stilde_) < 1e-280) throw SingularPoint("HCSeries: S~(xi) ~ 0");
  return plane_wave(*D_, z, xi_) / (s * stilde_) * psi_value(z);
}

double HCSeries::tail_ratio(const CVec& z) const {
  double top = 0.0, all = 0.0;
  for (const auto& kv : gt_.gamma) {
    int h = 0;
    for (int x : kv.first) h += x;
    Complex expo{0.0, 0.0};
    for (int i = 0; i < D_->rank; ++i)
      if (kv.first[i] != 0)
        expo += double(kv.first[i]) * dot(D_->roots[D_->simple[i]], z);
    double mag = std::abs(kv.second * qpow(D_->q, -expo));
    all = std::max(all, mag);
    if (h >= N_ - 1) top = std::max(top, mag);
  }
  return all > 0.0 ? top / all : 0.0;
}

Complex phi_rank_one(const InitialDatum& D, int i, Complex x, const CVec& xi) {
  int root = D.simple[i - 1];
  AwQuadruple A = D.aw(root);
  AwQuadruple At = D.aw_dual(root);
  double qi = A.q_alpha;
  double qi2 = qi * qi;
  QContext cq(qi2, D.ctx.factor_cutoff);
  int is = D.istar[i];
  Complex y = dot(to_cvec(D.tilde(D.simple[is - 1])), xi);

  Complex qmx = qpow(D.q, -x);   // q^{-x}
  Complex qmy = qpow(D.q, -y);   // q^{-y}
  Complex z8 = A.d * qmx;
  if (std::abs(z8) >= 1.0)
    throw std::domain_error("phi_rank_one: |d_i q^{-x}| >= 1 (outside series domain)");

  Complex g0 = gamma0(D, xi);
  Complex st = singular_S_tilde(D, xi);
  Complex si = singular_S_i(D, i, x);
  if (std::abs(si * st) < 1e-280) throw SingularPoint("phi_rank_one: singular factor ~ 0");

  CVec poch_args = {qi2 * A.a / At.a * qmx * qmy, qi2 * A.b / At.a * qmx * qmy,
                    qi2 * A.c / At.a * qmx * qmy, qi2 * At.a / A.d * qmx * qmy,
                    A.d * qmx};
  Complex num = qpoch_inf(poch_args, cq);
  Complex den = qpoch_inf(qi2 * qi2 / A.d * qmx * qmy * qmy, cq);
  if (std::abs(den) < 1e-280) throw SingularPoint("phi_rank_one: Pochhammer pole");

  Complex a0 = qi2 / A.d * qmx * qmy * qmy;
  CVec pars = {qi2 / At.a * qmy, qi2 / At.d * qmy, At.b * qmy, At.c * qmy,
               qi2 / A.d * qmx};
  Complex w = w8_7(a0, pars, z8, cq);

  return plane_wave_i(D, i, x, y) * g0 / (si * st) * num / den * w;
}

std::map<IVec, Complex> gamma_hat(const InitialDatum& D, const CVec& xi, int N) {
  GammaTable T = solve_gamma(D, xi, N);
  CVec rmx(D.dim);
  for (int d = 0; d < D.dim; ++d) rmx[d] = D.rho[d] - xi[d];
  Complex pref = qpow(D.q, dot(D.rhotil, rmx)) / singular_S_tilde(D, xi);
  std::map<IVec, Complex> out;
  for (const auto& kv : T.g) out[kv.first] = pref * kv.second;
  return out;
}

Complex phi_plus(const InitialDatum& D, const CVec& z, const CVec& xi, int N) {
  Complex sum{0.0, 0.0};
  for (const CVec& wxi : D.orbit(xi)) {
    HCSeries h(D, wxi, N);
    sum += h.value(z);
  }
  return sum;
}

Complex aw_A_i(const InitialDatum& D, int i, Complex x) {
  int root = D.simple[i - 1];
  AwQuadruple A = D.aw(root);
  AwQuadruple At = D.aw_dual(root);
  double qi2 = A.q_alpha * A.q_alpha;
  Complex qmx = qpow(D.q, -x);
  Complex den = At.a * (1.0 - qmx * qmx) * (1.0 - qi2 * qmx * qmx);
  if (std::abs(den) < D.pole_guard) throw SingularPoint("aw_A_i: denominator within guard");
  return (1.0 - A.a * qmx) * (1.0 - A.b * qmx) * (1.0 - A.c * qmx) * (1.0 - A.d * qmx) /
         den;
}

Complex aw_B_i(const InitialDatum& D, int i, Complex x) {
  int root = D.simple[i - 1];
  AwQuadruple A = D.aw(root);
  double ki = D.kappa(root).a;
  Complex qmx = qpow(D.q, -x);
  Complex den = qpow(D.q, ki) * (1.0 - qmx * qmx);
  if (std::abs(den) < D.pole_guard) throw SingularPoint("aw_B_i: denominator within guard");
  return (1.0 - A.a * qmx) * (1.0 - A.b * qmx) / den;
}

Complex apply_M_i(const InitialDatum& D, int i, const std::function<Complex(Complex)>& g,
                  Complex x) {
  double mu = D.mu(D.simple[i - 1]);
  Complex Ap = aw_A_i(D, i, x), Am = aw_A_i(D, i, -x);
  return Ap * (g(x - 2.0 * mu) - g(x)) + Am * (g(x + 2.0 * mu) - g(x));
}

Complex apply_N_i(const InitialDatum& D, int i, const std::function<Complex(Complex)>& g,
                  Complex x) {
  double mu = D.mu(D.simple[i - 1]);
  return aw_B_i(D, i, x) * g(x - mu) + aw_B_i(D, i, -x) * g(x + mu);
}

Complex aw_weight_i(const InitialDatum& D, int i, Complex x) {
  int root = D.simple[i - 1];
  AwQuadruple A = D.aw(root);
  double qi2 = A.q_alpha * A.q_alpha;
  QContext cq(qi2, D.ctx.factor_cutoff);
  Complex qx = qpow(D.q, x), qmx = qpow(D.q, -x);
  Complex num = qpoch_inf(CVec{qx * qx, qmx * qmx}, cq);
  Complex den = qpoch_inf(CVec{A.a * qx, A.a * qmx, A.b * qx, A.b * qmx, A.c * qx,
                               A.c * qmx, A.d * qx, A.d * qmx},
                          cq);
  if (std::abs(den) < 1e-280) throw SingularPoint("aw_weight_i: pole");
  return num / den;
}

}  // namespace hcs

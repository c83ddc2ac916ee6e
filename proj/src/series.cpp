#include "hcs/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace hcs {

namespace {
int height_of(const IVec& v) {
  int h = 0;
  for (int x : v) h += x;
  return h;
}

IVec vsub(const IVec& a, const IVec& b) {
  IVec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

IVec vadd(const IVec& a, const IVec& b) {
  IVec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

bool in_cone(const IVec& v) {
  for (int x : v)
    if (x < 0) return false;
  return true;
}
}  // namespace

std::vector<IVec> cone_exponents(int n, int N) {
  IVec cur(n, 0);
  // enumerate all nonnegative vectors with coordinate sum <= N, height order
  std::vector<IVec> all;
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n) {
      all.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[pos] = v;
      rec(pos + 1, left - v);
    }
    cur[pos] = 0;
  };
  rec(0, N);
  std::stable_sort(all.begin(), all.end(), [](const IVec& a, const IVec& b) {
    return height_of(a) < height_of(b);
  });
  return all;
}

Series Series::one(int n, int N) {
  Series s(n, N);
  s.c[IVec(n, 0)] = Complex{1.0, 0.0};
  return s;
}

Series Series::monomial(int n, int N, const IVec& beta, Complex v) {
  Series s(n, N);
  if (height_of(beta) <= N) s.c[beta] = v;
  return s;
}

Series Series::geometric(int n, int N, Complex C, const IVec& beta) {
  Series s(n, N);
  int hb = height_of(beta);
  if (hb <= 0) throw std::logic_error("Series::geometric: beta must have positive height");
  IVec e(n, 0);
  Complex Ck{1.0, 0.0};
  for (int k = 0; k * hb <= N; ++k) {
    s.c[e] = Ck;
    e = vadd(e, beta);
    Ck *= C;
  }
  return s;
}

Series Series::qpoch(int n, int N, Complex C, const IVec& beta, double Q) {
  // (C x^beta; Q)_inf = sum_k (-1)^k Q^{k(k-1)/2} C^k / (Q;Q)_k x^{k beta}
  Series s(n, N);
  int hb = height_of(beta);
  if (hb <= 0) throw std::logic_error("Series::qpoch: beta must have positive height");
  IVec e(n, 0);
  Complex term{1.0, 0.0};
  for (int k = 0; k * hb <= N; ++k) {
    s.c[e] = term;
    // advance: term_{k+1} = term_k * (-1) Q^k C / (1 - Q^{k+1})
    term *= -std::pow(Q, k) * C / (1.0 - std::pow(Q, k + 1));
    e = vadd(e, beta);
  }
  return s;
}

Complex Series::coeff(const IVec& beta) const {
  auto it = c.find(beta);
  return it == c.end() ? Complex{0.0, 0.0} : it->second;
}

Series& Series::scale(Complex s) {
  for (auto& kv : c) kv.second *= s;
  return *this;
}

Series Series::plus(const Series& other) const {
  if (n != other.n) throw std::logic_error("Series::plus: rank mismatch");
  // align offsets at the componentwise minimum
  IVec off(n);
  for (int i = 0; i < n; ++i) off[i] = std::min(offset[i], other.offset[i]);
  Series r(n, std::min(N, other.N));
  r.offset = off;
  auto fold = [&](const Series& s) {
    IVec d = vsub(s.offset, off);
    for (const auto& kv : s.c) {
      IVec e = vadd(kv.first, d);
      if (height_of(e) > r.N) continue;
      r.c[e] += kv.second;
    }
  };
  fold(*this);
  fold(other);
  return r;
}

Series Series::times(const Series& other) const {
  if (n != other.n) throw std::logic_error("Series::times: rank mismatch");
  Series r(n, std::min(N, other.N));
  r.offset = vadd(offset, other.offset);
  for (const auto& a : c) {
    int ha = height_of(a.first);
    if (ha > r.N) continue;
    for (const auto& b : other.c) {
      if (ha + height_of(b.first) > r.N) continue;
      r.c[vadd(a.first, b.first)] += a.second * b.second;
    }
  }
  return r;
}

Series Series::inverse() const {
  Complex c0 = coeff(IVec(n, 0));
  if (std::abs(c0) == 0.0)
    throw std::domain_error("Series::inverse: zero constant term");
  Series r(n, N);
  for (int i = 0; i < n; ++i) r.offset[i] = -offset[i];
  // b_0 = 1/c_0;  b_beta = -(1/c_0) sum_{0 < gamma <= beta} a_gamma b_{beta-gamma}
  auto exps = cone_exponents(n, N);
  r.c[IVec(n, 0)] = 1.0 / c0;
  for (const auto& beta : exps) {
    if (height_of(beta) == 0) continue;
    Complex s{0.0, 0.0};
    for (const auto& kv : c) {
      if (height_of(kv.first) == 0) continue;
      IVec rest = vsub(beta, kv.first);
      if (!in_cone(rest)) continue;
      auto it = r.c.find(rest);
      if (it != r.c.end()) s += kv.second * it->second;
    }
    if (s != Complex{0.0, 0.0}) r.c[beta] = -s / c0;
  }
  return r;
}

Series Series::shifted_var(const InitialDatum& D, const RVec& mu) const {
  Series r(*this);
  for (auto& kv : r.c) {
    // absolute exponent alpha = offset + key; multiply by q^{-alpha(mu)}
    IVec abs = vadd(kv.first, offset);
    RVec amb(D.dim, 0.0);
    for (int i = 0; i < n; ++i)
      amb = add(amb, scaled(to_rvec(D.roots[D.simple[i]]), double(abs[i])));
    kv.second *= qpow(D.q, -dot(amb, mu));
  }
  return r;
}

Complex Series::eval(const InitialDatum& D, const CVec& z) const {
  Complex sum{0.0, 0.0};
  for (const auto& kv : c) {
    IVec abs = vadd(kv.first, offset);
    Complex expo{0.0, 0.0};
    for (int i = 0; i < n; ++i)
      if (abs[i] != 0) expo += double(abs[i]) * dot(D.roots[D.simple[i]], z);
    sum += kv.second * qpow(D.q, -expo);
  }
  return sum;
}

namespace {
// secondary product roots of A(z): positive alpha with (psi~, alpha~^vee) = 1
std::vector<int> secondary_roots(const InitialDatum& D) {
  std::vector<int> out;
  RVec psit = D.tilde(D.psi);
  for (int p : D.positive) {
    double pr = dot(psit, D.tilde_covee(p));
    if (std::abs(pr - 1.0) < 1e-9) out.push_back(p);
  }
  return out;
}
}  // namespace

IVec expand_A_offset_from_images(const InitialDatum& D, int w) {
  // numerator factors at image root beta>0 contribute -coords(beta) each;
  // denominator factors at beta>0 contribute +coords(beta) per power of x^{-beta}
  IVec off(D.rank, 0);
  auto add_if_pos = [&](int image, int mult) {
    if (!D.is_positive_root(image)) return;
    for (int i = 0; i < D.rank; ++i) off[i] += mult * D.simple_coords[image][i];
  };
  int ipsi = D.act_on_root(w, D.psi);
  add_if_pos(ipsi, -4);  // four numerator AW factors q^{psi(z)}
  add_if_pos(ipsi, +4);  // two denominator factors q^{2 psi(z)}
  for (int p : secondary_roots(D)) {
    int im = D.act_on_root(w, p);
    add_if_pos(im, -2);
    add_if_pos(im, +2);
  }
  return off;
}

namespace {
struct FactorAccum {
  Series s;
  Complex scale{1.0, 0.0};
  IVec offset;
  FactorAccum(int n, int N) : s(Series::one(n, N)), offset(n, 0) {}

  // multiply by (1 - C x^{e}) where e = -coords(beta_image); e may be <= 0
  void numerator(const InitialDatum& D, Complex C, const IVec& e, int N) {
    if (in_cone(e) && height_of(e) > 0) {
      Series f = Series::one(D.rank, N);
      f.c[e] = -C;
      s = s.times(f);
    } else {
      // extract the monomial: (1 - C x^e) = -C x^e (1 - C^{-1} x^{-e})
      IVec me = e;
      for (auto& x : me) x = -x;
      scale *= -C;
      offset = vadd(offset, e);
      Series f = Series::one(D.rank, N);
      f.c[me] = -1.0 / C;
      s = s.times(f);
    }
  }

  // multiply by 1/(1 - C x^{e})
  void denominator(const InitialDatum& D, Complex C, const IVec& e, int N) {
    if (in_cone(e) && height_of(e) > 0) {
      s = s.times(Series::geometric(D.rank, N, C, e));
    } else {
      // 1/(1 - C x^e) = -C^{-1} x^{-e} / (1 - C^{-1} x^{-e})
      IVec me = e;
      for (auto& x : me) x = -x;
      scale *= -1.0 / C;
      offset = vsub(offset, e);
      s = s.times(Series::geometric(D.rank, N, 1.0 / C, me));
    }
  }
};
}  // namespace

Series expand_A_shifted(const InitialDatum& D, int w, int N) {
  FactorAccum acc(D.rank, N);
  auto image_exp = [&](int image, int mult) {
    // q^{mult * beta(z)} = x^{-mult * coords(beta)}
    IVec e(D.rank, 0);
    for (int i = 0; i < D.rank; ++i) e[i] = -mult * D.simple_coords[image][i];
    return e;
  };

  int ipsi = D.act_on_root(w, D.psi);
  AwQuadruple awp = D.aw(D.psi);
  double qps = D.q_alpha(D.psi);
  acc.numerator(D, awp.a, image_exp(ipsi, 1), N);
  acc.numerator(D, awp.b, image_exp(ipsi, 1), N);
  acc.numerator(D, awp.c, image_exp(ipsi, 1), N);
  acc.numerator(D, awp.d, image_exp(ipsi, 1), N);
  acc.denominator(D, Complex{1.0, 0.0}, image_exp(ipsi, 2), N);
  acc.denominator(D, Complex{qps * qps, 0.0}, image_exp(ipsi, 2), N);

  for (int p : secondary_roots(D)) {
    int im = D.act_on_root(w, p);
    AwQuadruple a2 = D.aw(p);
    acc.numerator(D, a2.a, image_exp(im, 1), N);
    acc.numerator(D, a2.b, image_exp(im, 1), N);
    acc.denominator(D, Complex{1.0, 0.0}, image_exp(im, 2), N);
  }

  Series out = acc.s;
  out.scale(acc.scale);
  out.offset = acc.offset;
  if (std::abs(out.coeff(IVec(D.rank, 0))) < 1e-300)
    throw std::domain_error("expand_A_shifted: vanishing constant term (singular kappa)");
  return out;
}

Complex eval_A_shifted(const InitialDatum& D, int w, const CVec& z) {
  auto qpow_root = [&](int image, double extra) {
    Complex expo = dot(D.roots[image], z);
    return qpow(D.q, extra + expo);
  };
  int ipsi = D.act_on_root(w, D.psi);
  AwQuadruple awp = D.aw(D.psi);
  double qps = D.q_alpha(D.psi);
  Complex xpsi = qpow_root(ipsi, 0.0);
  Complex num = (1.0 - awp.a * xpsi) * (1.0 - awp.b * xpsi) * (1.0 - awp.c * xpsi) *
                (1.0 - awp.d * xpsi);
  Complex den = (1.0 - xpsi * xpsi) * (1.0 - qps * qps * xpsi * xpsi);
  if (std::abs(den) < D.pole_guard)
    throw SingularPoint("eval_A_shifted: psi denominator within guard");
  Complex out = num / den;
  for (int p : secondary_roots(D)) {
    int im = D.act_on_root(w, p);
    AwQuadruple a2 = D.aw(p);
    Complex xa = qpow_root(im, 0.0);
    Complex d2 = (1.0 - xa * xa);
    if (std::abs(d2) < D.pole_guard)
      throw SingularPoint("eval_A_shifted: secondary denominator within guard");
    out *= (1.0 - a2.a * xa) * (1.0 - a2.b * xa) / d2;
  }
  return out;
}

Complex eigenvalue_E(const InitialDatum& D, const CVec& xi) {
  Complex s{0.0, 0.0};
  for (const RVec& eta : D.orbit(to_rvec(D.roots[D.psi])))
    s += qpow(D.q, dot(to_cvec(eta), xi));
  return s;
}

Complex gamma0(const InitialDatum& D, const CVec& xi) {
  Complex prod{1.0, 0.0};
  for (int p : D.positive) {
    double qa2 = D.q_alpha(p) * D.q_alpha(p);
    Complex arg = qa2 * qpow(D.q, -2.0 * dot(to_cvec(D.tilde(p)), xi));
    prod *= qpoch_inf(arg, QContext(qa2, D.ctx.factor_cutoff));
  }
  return prod;
}

GammaTable solve_gamma(const InitialDatum& D, const CVec& xi, int N) {
  const int n = D.rank;
  GammaTable T;
  T.xi = xi;
  T.N = N;
  T.min_denom = 1e300;

  // orbit of psi~ with one coset representative per element
  RVec psit = D.tilde(D.psi);
  struct OrbitTerm {
    RVec eta;        // w psi~
    RVec w0eta;      // w0 w psi~
    Series A;        // expansion of A(w^{-1} z)
    Complex a0;      // constant term
    Complex P;       // q^{(rho - xi, w0 w psi~)}
    double e;        // q^{-(rho, w psi~)}
  };
  std::vector<OrbitTerm> terms;
  {
    std::set<std::vector<long long>> seen;
    for (int e = 0; e < D.W0.size(); ++e) {
      RVec eta = D.W0.apply(e, psit);
      std::vector<long long> key(eta.size());
      for (size_t i = 0; i < eta.size(); ++i) key[i] = llround(eta[i] * 2520.0);
      if (!seen.insert(key).second) continue;
      OrbitTerm t;
      t.eta = eta;
      t.w0eta = D.W0.apply(D.w_longest(), eta);
      t.A = expand_A_shifted(D, e, N);
      for (int i = 0; i < n; ++i)
        if (t.A.offset[i] != 0)
          throw std::logic_error("solve_gamma: unexpected nonzero A offset");
      t.a0 = t.A.coeff(IVec(n, 0));
      terms.push_back(t);
    }
  }
  const double kap0 = qpow(D.q, -dot(D.rho, psit));
  for (auto& t : terms) {
    CVec rho_minus_xi(D.dim);
    for (int d = 0; d < D.dim; ++d) rho_minus_xi[d] = D.rho[d] - xi[d];
    t.P = qpow(D.q, dot(to_cvec(t.w0eta), rho_minus_xi));
    t.e = qpow(D.q, -dot(D.rho, t.eta));
  }

  // consistency canary: the alpha = 0 coefficient of the recurrence must
  // reproduce the eigenvalue sum over the orbit of psi
  Complex E = eigenvalue_E(D, xi);
  {
    Complex echeck{0.0, 0.0};
    double scaleE = std::abs(E);
    for (const auto& t : terms) {
      echeck += kap0 * t.a0 * (t.P - 1.0) + t.e;
      scaleE = std::max(scaleE, std::abs(kap0 * t.a0 * t.P));
    }
    if (std::abs(echeck - E) > 1e-8 * std::max(1.0, scaleE))
      throw std::logic_error("solve_gamma: eigenvalue consistency check failed");
  }

  // triangular solve in height order for g = Psi / S
  auto exps = cone_exponents(n, N);
  std::map<IVec, Complex> g;
  g[IVec(n, 0)] = gamma0(D, xi);
  auto amb_of = [&](const IVec& e) {
    RVec amb(D.dim, 0.0);
    for (int i = 0; i < n; ++i)
      amb = add(amb, scaled(to_rvec(D.roots[D.simple[i]]), double(e[i])));
    return amb;
  };
  for (const auto& alpha : exps) {
    int h = height_of(alpha);
    if (h == 0) continue;
    Complex denom{0.0, 0.0};
    for (const auto& t : terms)
      denom += kap0 * t.a0 * t.P * (1.0 - qpow(D.q, -dot(amb_of(alpha), t.eta)));
    T.min_denom = std::min(T.min_denom, std::abs(denom));
    if (std::abs(denom) < D.pole_guard) {
      std::ostringstream os;
      os << "solve_gamma: resonant spectral point at height " << h << " (alpha =";
      for (int x : alpha) os << ' ' << x;
      os << ")";
      throw SingularPoint(os.str());
    }
    Complex rhs{0.0, 0.0};
    for (const auto& t : terms) {
      for (const auto& kv : t.A.c) {
        const IVec& beta = kv.first;
        if (height_of(beta) == 0 || height_of(beta) > h) continue;
        IVec gamma_e = vsub(alpha, beta);
        if (!in_cone(gamma_e)) continue;
        auto it = g.find(gamma_e);
        if (it == g.end()) continue;
        Complex shift = qpow(D.q, -dot(amb_of(gamma_e), t.eta));
        rhs += kap0 * kv.second * (t.P * shift - 1.0) * it->second;
      }
    }
    g[alpha] = rhs / denom;
  }

  // Gamma = g * S as series
  Series gs(n, N);
  gs.c = g;
  Series S = Series::one(n, N);
  for (int p : D.positive) {
    AwQuadruple awp = D.aw(p);
    double qa2 = awp.q_alpha * awp.q_alpha;
    IVec beta(n);
    for (int i = 0; i < n; ++i) beta[i] = D.simple_coords[p][i];
    for (Complex par : {awp.a, awp.b, awp.c, awp.d})
      S = S.times(Series::qpoch(n, N, qa2 / par, beta, qa2));
  }
  Series gam = gs.times(S);
  T.g = g;
  T.gamma = gam.c;
  return T;
}

}  // namespace hcs

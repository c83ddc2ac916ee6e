#include "hcs/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hcs {

QContext::QContext(double q_, double cutoff, int cap)
    : q(q_), factor_cutoff(cutoff), max_terms(cap) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("QContext: q must lie in (0,1)");
  if (!(cutoff > 0.0)) throw std::domain_error("QContext: cutoff must be positive");
}

Complex qpoch_inf(Complex x, const QContext& ctx) {
  Complex prod{1.0, 0.0};
  Complex t = x;
  for (int j = 0; j < ctx.max_terms; ++j) {
    if (std::abs(t) < ctx.factor_cutoff) break;
    prod *= (1.0 - t);
    t *= ctx.q;
  }
  return prod;
}

Complex qpoch_inf(const CVec& xs, const QContext& ctx) {
  Complex prod{1.0, 0.0};
  for (const auto& x : xs) prod *= qpoch_inf(x, ctx);
  return prod;
}

Complex qpoch_fin(Complex x, int k, const QContext& ctx) {
  if (k < 0) throw std::domain_error("qpoch_fin: k must be >= 0");
  Complex prod{1.0, 0.0};
  Complex t = x;
  for (int j = 0; j < k; ++j) {
    prod *= (1.0 - t);
    t *= ctx.q;
  }
  return prod;
}

Complex theta(Complex x, const QContext& ctx) {
  if (x == Complex{0.0, 0.0}) throw std::domain_error("theta: x = 0");
  return qpoch_inf(x, ctx) * qpoch_inf(ctx.q / x, ctx);
}

Complex theta(const CVec& xs, const QContext& ctx) {
  Complex prod{1.0, 0.0};
  for (const auto& x : xs) prod *= theta(x, ctx);
  return prod;
}

LatticeThetaResult lattice_theta(const std::vector<RVec>& basis, const CVec& z,
                                 const QContext& ctx) {
  const int k = int(basis.size());
  if (k == 0) return {Complex{1.0, 0.0}, 0.0, 0};
  const double lq = std::log(ctx.q);

  // One lattice point q^{|l|^2/2 + (l,z)} from coefficients m.
  auto term = [&](const IVec& m) {
    RVec lam(basis[0].size(), 0.0);
    for (int i = 0; i < k; ++i)
      for (size_t d = 0; d < lam.size(); ++d) lam[d] += m[i] * basis[i][d];
    Complex expo = dot(lam, z) + 0.5 * dot(lam, lam);
    return std::exp(expo * lq);
  };

  Complex total = term(IVec(k, 0));
  double tail = 0.0;
  int radius = 0;
  int quiet = 0;
  for (int R = 1; R <= 80; ++R) {
    // walk the shell max_i |m_i| = R
    Complex shell{0.0, 0.0};
    double shell_abs = 0.0;
    IVec m(k, -R);
    while (true) {
      bool on_shell = false;
      for (int i = 0; i < k; ++i)
        if (std::abs(m[i]) == R) on_shell = true;
      if (on_shell) {
        Complex t = term(m);
        shell += t;
        shell_abs += std::abs(t);
      }
      int i = 0;
      while (i < k && m[i] == R) m[i++] = -R;
      if (i == k) break;
      ++m[i];
    }
    total += shell;
    tail = shell_abs;
    radius = R;
    if (shell_abs < ctx.factor_cutoff * std::max(1.0, std::abs(total)))
      ++quiet;
    else
      quiet = 0;
    if (quiet >= 2) break;
  }
  return {total, tail, radius};
}

Complex lattice_theta_value(const std::vector<RVec>& basis, const CVec& z,
                            const QContext& ctx) {
  return lattice_theta(basis, z, ctx).value;
}

namespace {
bool hits_negative_q_power(Complex a, double q, int scan) {
  double p = 1.0;
  for (int m = 0; m < scan; ++m) {
    if (std::abs(a * p - 1.0) < 1e-13) return true;
    if (std::abs(a) * p < 0.5) break;
    p *= q;
  }
  return false;
}
}  // namespace

Complex phi_series(const CVec& uppers, const CVec& lowers, Complex z,
                   const QContext& ctx) {
  // Termination: an upper parameter equal to q^{-m} cuts the sum at j = m.
  bool terminating = false;
  for (const auto& a : uppers)
    terminating = terminating || hits_negative_q_power(a, ctx.q, ctx.max_terms);
  if (!terminating && std::abs(z) >= 1.0)
    throw std::domain_error("phi_series: |z| >= 1 and series does not terminate");
  for (const auto& b : lowers)
    if (hits_negative_q_power(b, ctx.q, ctx.max_terms))
      throw std::domain_error("phi_series: lower parameter in q^{-Z>=0}");

  Complex sum{0.0, 0.0};
  Complex coeff{1.0, 0.0};  // product of Pochhammer ratios at order j
  Complex zj{1.0, 0.0};
  for (int j = 0; j < ctx.max_terms; ++j) {
    Complex t = coeff * zj;
    sum += t;
    if (j > 2 && std::abs(t) < ctx.factor_cutoff * std::max(1.0, std::abs(sum)) &&
        std::abs(z) < 1.0)
      break;
    // advance the (a;q)_j / (q,b;q)_j ratio by one order
    Complex num{1.0, 0.0}, den{1.0 - std::pow(ctx.q, j + 1), 0.0};
    for (const auto& a : uppers) num *= (1.0 - a * std::pow(ctx.q, j));
    for (const auto& b : lowers) den *= (1.0 - b * std::pow(ctx.q, j));
    if (num == Complex{0.0, 0.0}) break;  // terminated exactly
    coeff *= num / den;
    zj *= z;
  }
  return sum;
}

Complex w8_7(Complex a0, const CVec& a, Complex z, const QContext& ctx) {
  if (a.size() != 5) throw std::invalid_argument("w8_7: need 5 parameters a1..a5");
  // poles a0 = q^{-2r} make the very-well-poised factor blow up
  for (int r = 0; r < 60; ++r)
    if (std::abs(a0 * std::pow(ctx.q, 2 * r) - 1.0) < 1e-12)
      throw std::domain_error("w8_7: a0 within guard of q^{-2r}");
  bool terminating = hits_negative_q_power(a0, ctx.q, ctx.max_terms);
  for (const auto& aj : a)
    terminating = terminating || hits_negative_q_power(aj, ctx.q, ctx.max_terms);
  if (!terminating && std::abs(z) >= 1.0)
    throw std::domain_error("w8_7: |z| >= 1 and series does not terminate");

  Complex sum{0.0, 0.0};
  Complex ratio{1.0, 0.0};  // prod_j (a_j;q)_r / (q a0/a_j;q)_r including j=0
  Complex zr{1.0, 0.0};
  for (int r = 0; r < ctx.max_terms; ++r) {
    Complex t = (1.0 - a0 * std::pow(ctx.q, 2 * r)) / (1.0 - a0) * ratio * zr;
    sum += t;
    if (r > 2 && std::abs(z) < 1.0 &&
        std::abs(t) < ctx.factor_cutoff * std::max(1.0, std::abs(sum)))
      break;
    Complex num = (1.0 - a0 * std::pow(ctx.q, r));
    Complex den = (1.0 - std::pow(ctx.q, r + 1));
    for (const auto& aj : a) {
      num *= (1.0 - aj * std::pow(ctx.q, r));
      den *= (1.0 - (ctx.q * a0 / aj) * std::pow(ctx.q, r));
    }
    if (num == Complex{0.0, 0.0}) break;
    if (std::abs(den) < 1e-300) throw std::domain_error("w8_7: lower-parameter pole");
    ratio *= num / den;
    zr *= z;
  }
  return sum;
}

}  // namespace hcs

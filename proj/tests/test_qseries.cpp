#include <doctest.h>

#include "hcs/qseries.hpp"

using namespace hcs;

namespace {
// Independent theta oracle through the triple-product sum
// (q;q)_inf theta(x;q) = sum_m (-1)^m q^{m(m-1)/2} x^m.
Complex theta_sum_oracle(Complex x, double q) {
  Complex s{0.0, 0.0};
  for (int m = -200; m <= 200; ++m)
    s += ipow(Complex{-1.0, 0.0}, m) * qpow(q, m * (m - 1) / 2.0) * ipow(x, m);
  QContext cq(q, 1e-16);
  return s / qpoch_inf(Complex{q, 0.0}, cq);
}
}  // namespace

TEST_CASE("q-Pochhammer basics and frozen values") {
  QContext cq(0.5, 1e-16);
  CHECK(std::abs(qpoch_inf(Complex{0.0, 0.0}, cq) - 1.0) == 0.0);
  CHECK(std::abs(qpoch_fin(Complex{0.37, 0.2}, 0, cq) - 1.0) == 0.0);
  // reference values computed with an independent arbitrary-precision tool
  CHECK(std::abs(qpoch_inf(Complex{0.7, 0.0}, cq) - 0.13432356028201721) < 1e-14);
  CHECK(std::abs(qpoch_inf(Complex{0.5, 0.0}, cq) - 0.28878809508660242) < 1e-14);
  // truncation self-consistency between cutoffs
  QContext loose(0.5, 1e-12);
  CHECK(std::abs(qpoch_inf(Complex{0.7, 0.0}, loose) - 0.13432356028201721) < 1e-11);
}

TEST_CASE("theta frozen value and sum-form oracle") {
  QContext cq(0.55, 1e-16);
  Complex x{0.3, 0.2};
  Complex t = theta(x, cq);
  CHECK(std::abs(t - Complex{-0.10090835605060047, 0.0063756699531050571}) < 1e-14);
  CHECK(std::abs(t - theta_sum_oracle(x, 0.55)) < 1e-13);
  CHECK(std::abs(theta(Complex{1.0, 0.0}, cq)) == 0.0);
  // x = q/x point: theta(q^{1/2}) = ((q^{1/2};q)_inf)^2
  Complex h = qpoch_inf(Complex{std::sqrt(0.55), 0.0}, cq);
  CHECK(std::abs(theta(Complex{std::sqrt(0.55), 0.0}, cq) - h * h) < 1e-14);
  CHECK_THROWS_AS(theta(Complex{0.0, 0.0}, cq), std::domain_error);
}

TEST_CASE("theta functional equation over integer powers") {
  for (double q : {0.42, 0.63}) {
    QContext cq(q, 1e-16);
    for (int r = -3; r <= 3; ++r) {
      Complex x{1.3, 0.7};
      Complex lhs = theta(qpow(q, Complex{double(r), 0.0}) * x, cq);
      Complex rhs = ipow(-x / std::sqrt(q), -r) * qpow(q, -r * r / 2.0) * theta(x, cq);
      CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-12);
    }
  }
}

TEST_CASE("theta addition formula") {
  double q = 0.47;
  QContext cq(q, 1e-16);
  Complex x{1.1, 0.3}, la{0.8, -0.2}, mu{0.6, 0.4}, nu{1.4, 0.1};
  Complex t1 = theta(CVec{x * la, x / la, mu * nu, mu / nu}, cq);
  Complex t2 = theta(CVec{x * nu, x / nu, la * mu, mu / la}, cq);
  Complex t3 = mu / la * theta(CVec{x * mu, x / mu, la * nu, la / nu}, cq);
  CHECK(std::abs(t1 - t2 - t3) / std::abs(t3) < 1e-13);
}

TEST_CASE("lattice theta: rank one vs frozen value and quasi-periodicity") {
  QContext cq(0.5, 1e-16);
  std::vector<RVec> Z = {{1.0}};
  Complex v = lattice_theta_value(Z, CVec{Complex{0.3, -0.1}}, cq);
  CHECK(std::abs(v - Complex{3.0947423678866947, -0.064362635638231679}) < 1e-13);
  // triple product: vartheta_Z(z) = (q;q)_inf theta(-q^{1/2+z};q)
  Complex tp = qpoch_inf(Complex{0.5, 0.0}, cq) *
               theta(-qpow(0.5, Complex{0.8, -0.1}), cq);
  CHECK(std::abs(v - tp) / std::abs(v) < 1e-13);
  // quasi-periodicity with lambda = 2
  Complex shifted = lattice_theta_value(Z, CVec{Complex{2.3, -0.1}}, cq);
  Complex expect = qpow(0.5, Complex{-2.0 - 2.0 * Complex{0.3, -0.1}.real(), 0.2}) * v;
  expect = qpow(0.5, -2.0 - 2.0 * Complex{0.3, -0.1}) * v;
  CHECK(std::abs(shifted - expect) / std::abs(expect) < 1e-12);
}

TEST_CASE("phi_series edge cases and q-Gauss") {
  QContext cq(0.5, 1e-16, 8000);
  CHECK(std::abs(phi_series(CVec{Complex{0.3, 0.0}}, CVec{}, Complex{0.0, 0.0}, cq) -
                 1.0) == 0.0);
  // an upper parameter equal to 1 truncates at the constant term
  CHECK(std::abs(phi_series(CVec{Complex{1.0, 0.0}, Complex{0.4, 0.0}},
                            CVec{Complex{0.2, 0.0}}, Complex{0.5, 0.0}, cq) -
                 1.0) == 0.0);
  // q-Gauss: 2phi1(a,b;c;q,c/ab) in closed form (frozen independent value)
  Complex a{0.4, 0.0}, b{0.5, 0.0}, c{0.06, 0.0};
  Complex lhs = phi_series(CVec{a, b}, CVec{c}, c / (a * b), cq);
  CHECK(std::abs(lhs - 1.2571428571428571) < 1e-13);
  CHECK_THROWS_AS(phi_series(CVec{Complex{0.3, 0.0}}, CVec{}, Complex{1.5, 0.0}, cq),
                  std::domain_error);
  CHECK_THROWS_AS(phi_series(CVec{Complex{0.3, 0.0}}, CVec{Complex{2.0, 0.0}},
                             Complex{0.5, 0.0}, cq),
                  std::domain_error);
}

TEST_CASE("very-well-poised 8W7") {
  QContext cq(0.5, 1e-16, 8000);
  CVec pars{Complex{0.2, 0.0}, Complex{-0.3, 0.0}, Complex{0.45, 0.0},
            Complex{0.7, 0.0}, Complex{-0.11, 0.0}};
  CHECK(std::abs(w8_7(Complex{0.15, 0.0}, pars, Complex{0.0, 0.0}, cq) - 1.0) == 0.0);
  // frozen independent value
  Complex v = w8_7(Complex{0.15, 0.0}, pars, Complex{0.35, 0.0}, cq);
  CHECK(std::abs(v - 1.1740354741059207) < 1e-13);
  // terminating case: a1 = q^{-3} cuts the series after four terms
  CVec tpars = pars;
  tpars[0] = Complex{8.0, 0.0};
  Complex t = w8_7(Complex{0.15, 0.0}, tpars, Complex{0.2, 0.0}, cq);
  CHECK(std::abs(t - 0.71096101525004147) < 1e-13);
  // two truncation depths agree
  QContext shallow(0.5, 1e-10, 8000);
  Complex v2 = w8_7(Complex{0.15, 0.0}, pars, Complex{0.35, 0.0}, shallow);
  CHECK(std::abs(v - v2) < 1e-9);
  CHECK_THROWS_AS(w8_7(Complex{0.15, 0.0}, pars, Complex{1.2, 0.0}, cq),
                  std::domain_error);
}

#pragma once

#include "hcs/hcseries.hpp"

namespace hcs {

/// Theta-quotient building blocks of the connection coefficients.
Complex frak_e(const InitialDatum& D, int root, Complex x, Complex y);
Complex frak_e_tilde(const InitialDatum& D, int root, Complex x, Complex y);

/// The two nontrivial entries of the generator connection matrix M^{s_i}:
/// (m_ee, m_off) = (m^{s_i}_{e,e}, m^{s_i}_{s_{i*},e}) at (z, xi).
struct MSimple {
  Complex ee;
  Complex off;
};
MSimple m_simple(const InitialDatum& D, int i, const CVec& z, const CVec& xi);

/// Simplified continuous q-ultraspherical form (requires both lattice
/// pairings of alpha_i equal to Z).
MSimple m_simple_cus(const InitialDatum& D, int i, const CVec& z, const CVec& xi);

/// Wronskian [f,g](x) = w_i(x) A_i(x) (f(x-2mu_i) g(x) - f(x) g(x-2mu_i)).
Complex wronskian(const InitialDatum& D, int i, const std::function<Complex(Complex)>& f,
                  const std::function<Complex(Complex)>& g, Complex x);

/// Closed form of [Phi_i(.,xi), Phi_i(., s_{i*}xi)](x).
Complex wronskian_closed_form(const InitialDatum& D, int i, Complex x, const CVec& xi);

/// Full |W0| x |W0| connection matrix M^sigma(z,xi), assembled along a
/// reduced word by the cocycle property; rows/columns in Weyl-table order.
CMat connection_matrix(const InitialDatum& D, int sigma, const CVec& z, const CVec& xi);

/// Frobenius residual of the dynamical Yang-Baxter equation at (i, i+1),
/// 1 <= i <= n-2 (B_n data, n >= 3).
double yb_residual(const InitialDatum& D, int i, const CVec& z, const CVec& xi);

/// Frobenius residual of the dynamical reflection equation in (s_{n-1}, s_n).
double reflection_residual(const InitialDatum& D, const CVec& z, const CVec& xi);

/// Braid-type cocycle residual M^{s_i}M^{s_j}M^{s_i} = M^{s_j}M^{s_i}M^{s_j}
/// with shifts, for a braid pair (i,j) of order 3 (A_2 data).
double braid_cocycle_residual(const InitialDatum& D, int i, int j, const CVec& z,
                              const CVec& xi);

/// Reflectionless parameter test with a per-orbit certificate.
struct ReflectionlessCertificate {
  bool reflectionless = false;
  struct OrbitReport {
    std::string orbit;
    bool ok = false;
    std::string detail;  // which of the integrality conditions fail/hold
  };
  std::vector<OrbitReport> orbits;
};
ReflectionlessCertificate reflectionless_predicate(const InitialDatum& D);

/// |Phi(s_i z, xi) - m_ee Phi(z,xi) - m_off Phi(z, s_{i*} xi)| / scale using
/// the truncated series Phi at height N (series built per spectral point).
double connection_identity_residual(const InitialDatum& D, int i, const CVec& z,
                                    const CVec& xi, int N);

/// Rank-one version of the same identity via the 8W7 closed form.
double connection_identity_residual_rank_one(const InitialDatum& D, int i, Complex x,
                                             const CVec& xi);

}  // namespace hcs

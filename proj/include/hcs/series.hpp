#pragma once

#include <map>

#include "hcs/rootdata.hpp"

namespace hcs {

/// Truncated multivariate power series in the variables x_i = q^{-alpha_i(z)},
/// with an optional global monomial offset:
///     value(z) = x^offset * sum_{beta in Q+, ht(beta) <= N} c[beta] x^beta.
/// Heights are graded by the sum of simple-root coordinates, so products are
/// exact on every retained coefficient.
struct Series {
  int n = 0;  // rank
  int N = 0;  // truncation height (relative to the offset)
  IVec offset;
  std::map<IVec, Complex> c;

  Series() = default;
  Series(int n_, int N_) : n(n_), N(N_), offset(n_, 0) {}

  static Series one(int n, int N);
  static Series monomial(int n, int N, const IVec& beta, Complex v);
  /// geometric series 1/(1 - C x^beta), beta in Q+ \ {0}
  static Series geometric(int n, int N, Complex C, const IVec& beta);
  /// q-binomial expansion of (C x^beta; Q)_infty
  static Series qpoch(int n, int N, Complex C, const IVec& beta, double Q);

  Complex coeff(const IVec& beta) const;
  Series& scale(Complex s);
  Series plus(const Series& other) const;
  Series times(const Series& other) const;
  Series inverse() const;  // needs nonzero constant term
  Series divide(const Series& other) const { return times(other.inverse()); }

  /// effect of z -> z + mu: coefficient at absolute exponent alpha picks up
  /// q^{-alpha(mu)}; `alpha_amb` maps simple coordinates to the ambient vector.
  Series shifted_var(const InitialDatum& D, const RVec& mu) const;

  /// numeric evaluation at x_i = q^{-alpha_i(z)}
  Complex eval(const InitialDatum& D, const CVec& z) const;
};

/// Expansion of the operator coefficient A(w^{-1}z) as offset monomial times
/// power series in x.  Factors with positive image roots contribute to the
/// monomial; the rest expand directly (denominators as geometric series).
Series expand_A_shifted(const InitialDatum& D, int w, int N);

/// Offset of expand_A_shifted computed independently from the root images
/// alone (no series arithmetic); used as a cross-check.
IVec expand_A_offset_from_images(const InitialDatum& D, int w);

/// Direct meromorphic evaluation of A(w^{-1}z) from its defining product.
Complex eval_A_shifted(const InitialDatum& D, int w, const CVec& z);

/// Eigenvalue of L on Phi(., xi): sum over the orbit of psi of q^{(w psi, xi)}.
Complex eigenvalue_E(const InitialDatum& D, const CVec& xi);

/// Output of the Harish-Chandra recurrence at a spectral point xi.
struct GammaTable {
  CVec xi;
  int N = 0;
  std::map<IVec, Complex> gamma;  // coefficients of Psi(z,xi)
  std::map<IVec, Complex> g;      // coefficients of Psi/S (Gamma-hat basis)
  double min_denom = 0.0;         // smallest recurrence denominator met
};

/// Solves the height-triangular recurrence equivalent to the eigenvalue
/// equation for the coefficients of Psi(z,xi) = sum Gamma_alpha(xi) q^{-alpha(z)},
/// normalized by Gamma_0 of the defining product formula.
GammaTable solve_gamma(const InitialDatum& D, const CVec& xi, int N);

/// Gamma_0(xi) = prod_{alpha>0} (q_alpha^2 q^{-2 alpha~(xi)}; q_alpha^2)_infty.
Complex gamma0(const InitialDatum& D, const CVec& xi);

/// All exponents in Q+ with height <= N, ordered by height.
std::vector<IVec> cone_exponents(int n, int N);

}  // namespace hcs

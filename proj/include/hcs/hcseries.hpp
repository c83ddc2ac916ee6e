#pragma once

#include <functional>

#include "hcs/series.hpp"

namespace hcs {

/// Plane wave W(z,xi) = q^{(rho - xi, rho~ + w0 z)}.
Complex plane_wave(const InitialDatum& D, const CVec& z, const CVec& xi);

/// Singular factors S(z) and S~(xi) (products of q-Pochhammer symbols).
Complex singular_S(const InitialDatum& D, const CVec& z);
Complex singular_S_tilde(const InitialDatum& D, const CVec& xi);

/// Rank-one singular factor S_i(x) attached to the simple root alpha_i.
Complex singular_S_i(const InitialDatum& D, int i, Complex x);

/// One-variable plane wave W_i(x,y) of the rank-one reduction.
Complex plane_wave_i(const InitialDatum& D, int i, Complex x, Complex y);

/// Evaluated basic Harish-Chandra series at a fixed spectral point: holds the
/// Gamma table and evaluates Phi(z) = W/(S S~) sum Gamma_alpha q^{-alpha(z)}.
class HCSeries {
 public:
  HCSeries(const InitialDatum& D, const CVec& xi, int N);

  const GammaTable& table() const { return gt_; }
  const CVec& xi() const { return xi_; }
  int trunc() const { return N_; }

  Complex psi_value(const CVec& z) const;  // entire part sum Gamma_alpha q^{-alpha(z)}
  Complex value(const CVec& z) const;      // full Phi(z, xi)

  /// convergence diagnostic: max |term| over the top height / max |term| overall
  double tail_ratio(const CVec& z) const;

 private:
  const InitialDatum* D_;
  CVec xi_;
  int N_;
  GammaTable gt_;
  Complex stilde_;
};

/// Closed-form rank-one series Phi_i(x,xi) attached to alpha_i (8W7 form).
Complex phi_rank_one(const InitialDatum& D, int i, Complex x, const CVec& xi);

/// Gamma^ coefficients: Phi = q^{-(rho+w0 xi, z)} sum Gamma^_alpha q^{-(alpha,z)}.
std::map<IVec, Complex> gamma_hat(const InitialDatum& D, const CVec& xi, int N);

/// Symmetrized series Phi_+(z,xi) = sum_{w in W0} Phi(z, w xi).
Complex phi_plus(const InitialDatum& D, const CVec& z, const CVec& xi, int N);

// --- rank-one operator machinery attached to a simple root ---

/// A_i(x) from the Askey-Wilson second-order operator.
Complex aw_A_i(const InitialDatum& D, int i, Complex x);
/// B_i(x) of the first-order factor.
Complex aw_B_i(const InitialDatum& D, int i, Complex x);
/// (M_i g)(x) = A_i(x)(g(x-2mu_i)-g(x)) + A_i(-x)(g(x+2mu_i)-g(x)).
Complex apply_M_i(const InitialDatum& D, int i, const std::function<Complex(Complex)>& g,
                  Complex x);
/// (N_i g)(x) = B_i(x) g(x-mu_i) + B_i(-x) g(x+mu_i).
Complex apply_N_i(const InitialDatum& D, int i, const std::function<Complex(Complex)>& g,
                  Complex x);
/// Askey-Wilson weight function w_i(x).
Complex aw_weight_i(const InitialDatum& D, int i, Complex x);

}  // namespace hcs

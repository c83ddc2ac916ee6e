#pragma once

#include <vector>

#include "hcs/numeric.hpp"

namespace hcs {

/// Evaluation context for the scalar q-series primitives: base q in (0,1),
/// truncation cutoff for infinite products/sums and a hard term cap.
struct QContext {
  double q = 0.5;
  double factor_cutoff = 1e-15;
  int max_terms = 4000;

  QContext() = default;
  explicit QContext(double q_, double cutoff = 1e-15, int cap = 4000);
};

/// (x;q)_infty, truncated once |x| q^j drops below the cutoff.
Complex qpoch_inf(Complex x, const QContext& ctx);

/// Multi-argument convenience: (x1,...,xm;q)_infty.
Complex qpoch_inf(const CVec& xs, const QContext& ctx);

/// (x;q)_k, finite symbol, k >= 0.
Complex qpoch_fin(Complex x, int k, const QContext& ctx);

/// Normalized Jacobi theta theta(x;q) = (x;q)_inf (q/x;q)_inf, x != 0.
Complex theta(Complex x, const QContext& ctx);

/// theta(x1,...,xm;q) as a product of single-argument values.
Complex theta(const CVec& xs, const QContext& ctx);

/// Lattice theta: sum_{lambda in L} q^{|lambda|^2/2} q^{(lambda,z)} for the
/// lattice spanned by `basis` (ambient coordinates).  The shell radius grows
/// until a full shell contributes below cutoff * |partial sum|.
struct LatticeThetaResult {
  Complex value;
  double tail_estimate;  // abs contribution of the last shell taken
  int radius;            // sup-norm radius of the summation box
};
LatticeThetaResult lattice_theta(const std::vector<RVec>& basis, const CVec& z,
                                 const QContext& ctx);
Complex lattice_theta_value(const std::vector<RVec>& basis, const CVec& z,
                            const QContext& ctx);

/// {r+1}phi{r} basic hypergeometric series; requires |z|<1 or a terminating
/// upper parameter q^{-m}.
Complex phi_series(const CVec& uppers, const CVec& lowers, Complex z,
                   const QContext& ctx);

/// Very-well-poised 8W7(a0; a1..a5; q, z) by direct summation, |z|<1 or
/// terminating.
Complex w8_7(Complex a0, const CVec& a, Complex z, const QContext& ctx);

}  // namespace hcs

#pragma once

#include <functional>

#include "hcs/rootdata.hpp"
#include "hcs/series.hpp"

namespace hcs {

using ScalarFn = std::function<Complex(const CVec&)>;

/// Finite sum of (coefficient evaluator, extended affine Weyl element) pairs
/// acting on meromorphic functions by (Op f)(z) = sum_j c_j(z) f(w_j^{-1} z).
class DiffReflOp {
 public:
  struct Term {
    ScalarFn c;
    ExtAffine w;
  };

  explicit DiffReflOp(const InitialDatum& D) : D_(&D) {}

  const std::vector<Term>& terms() const { return terms_; }
  const InitialDatum& datum() const { return *D_; }

  void add_term(ScalarFn c, const ExtAffine& w);
  /// merge terms with equal group element; preserves the action pointwise
  void normalize();

  Complex apply(const ScalarFn& f, const CVec& z) const;
  DiffReflOp composed(const DiffReflOp& rhs) const;
  DiffReflOp plus(const DiffReflOp& rhs) const;
  DiffReflOp scaled_op(Complex s) const;

  /// number of distinct group elements (after normalize)
  int term_count() const { return int(terms_.size()); }
  bool pure_difference() const;

  /// Drops terms whose coefficient vanishes identically (up to float
  /// cancellation noise).  Coefficients are compared at a fixed set of
  /// pseudo-random points against the largest coefficient magnitude there;
  /// operators produced by Hecke-word expansion carry exact zeros at far
  /// translations that would otherwise poison evaluations of truncated
  /// series outside their convergence region.
  DiffReflOp pruned(double rel_threshold = 1e-9) const;

 private:
  const InitialDatum* D_;
  std::vector<Term> terms_;
};

/// Demazure-Lusztig operator T^_i = q^{kappa_i} + q^{-kappa_i} c_i(.;kappa,q)(s^_i - id),
/// i in {0,...,n}.
DiffReflOp demazure_lusztig(const InitialDatum& D, int i);
DiffReflOp demazure_lusztig_inverse(const InitialDatum& D, int i);

/// Bernstein-Zelevinsky operator Y^nu for nu in Lambda~ (dominant case via the
/// reduced word of tau(nu), general case via Y^{nu1} (Y^{nu2})^{-1}).
DiffReflOp y_operator(const InitialDatum& D, const RVec& nu);

/// Higher-order RMKC operator L_nu for dominant nu: extract the pure
/// difference part of sum_{nu' in W0 nu} Y^{nu'} by trivializing linear parts.
DiffReflOp rmkc_extract(const InitialDatum& D, const RVec& nu);

/// The explicit second-order operator L (quasi-minuscule weight psi~).
DiffReflOp l_explicit(const InitialDatum& D);

/// Eigenvalue of L_nu on Phi(., xi): sum over the orbit of nu of q^{(w nu, xi)}.
Complex eigenvalue_L_nu(const InitialDatum& D, const RVec& nu, const CVec& xi);

}  // namespace hcs

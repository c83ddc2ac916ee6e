#pragma once

#include "hcs/connection.hpp"

namespace hcs {

/// delta_s^vee = half sum of positive short coroots (all coroots when the
/// system is simply laced).
RVec delta_s_vee(const InitialDatum& D);

/// Lattice theta of Lambda at z (convergence handled adaptively).
Complex vartheta_Lambda(const InitialDatum& D, const CVec& z);

/// A candidate Xi function together with its evaluator; quasi-invariance is a
/// property to be tested, not assumed.
using XiFn = std::function<Complex(const CVec&, const CVec&)>;

/// Xi_sph of the twisted equal-lattice case.
XiFn xi_sph(const InitialDatum& D);

/// c_Xi(z,xi) = Xi(z,xi)/W(z,xi) * prod_alpha theta(~AW q^{alpha~(xi)})/theta(q^{2 alpha~(xi)}).
Complex c_from_xi(const InitialDatum& D, const XiFn& Xi, const CVec& z, const CVec& xi);

/// The quantum c-function (twisted equal-lattice data); `simplified` selects
/// the all-Z-pairing branch when admissible.
Complex c_sph(const InitialDatum& D, const CVec& z, const CVec& xi,
              bool simplified = false);
bool c_sph_supported(const InitialDatum& D);
bool c_sph_all_z_branch(const InitialDatum& D);

/// Quasi-invariance residuals of a Xi candidate at one (z,xi,mu,lambda).
double xi_quasi_invariance_residual(const InitialDatum& D, const XiFn& Xi,
                                    const CVec& z, const CVec& xi, const RVec& mu,
                                    const RVec& lambda);

/// Residual of the c-function consistency relation at index i for a candidate
/// c-evaluator.
using CFn = std::function<Complex(const CVec&, const CVec&)>;
double relationsc_residual(const InitialDatum& D, const CFn& c, int i, const CVec& z,
                           const CVec& xi);

/// Residual of the root-system addition formula (three-term theta identity
/// with lattice theta factors) at index i with (Lambda, alpha_i^vee) = Z.
double addition_root_residual(const InitialDatum& D, int i, const CVec& z,
                              const CVec& xi);

/// Residual of the three-term reformulation for a quasi-invariant Xi at a
/// q-ultraspherical index.
double towards_riemann_residual(const InitialDatum& D, const XiFn& Xi, int i,
                                const CVec& z, const CVec& xi);

/// Residual of the pair of single-variable transformation laws whose validity
/// implies the consistency relation; checked for Xi_sph at the short simple
/// root of Koornwinder data.
double alternative_residual(const InitialDatum& D, const XiFn& Xi, int i,
                            const CVec& z, const CVec& xi);

}  // namespace hcs

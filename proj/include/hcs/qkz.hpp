#pragma once

#include <functional>

#include "hcs/rootdata.hpp"

namespace hcs {

/// Generators of the bispectral quantum KZ cocycle C_{(w,w~)} on the
/// |W0|-dimensional space with basis {v_sigma} in Weyl-table order.
/// Left generators act through (s_0,...,s_n, length-zero elements) of
/// W = W0 x| Lambda~; right (dual) generators through W~ = W0 x| Lambda,
/// realized as the extended affine Weyl group of the dual datum.
CMat c_left_simple(const InitialDatum& D, int i, const CVec& z, const CVec& xi);
CMat c_left_omega(const InitialDatum& D, const ExtAffine& u, const CVec& z,
                  const CVec& xi);
CMat c_right_simple(const InitialDatum& D, int i, const CVec& z, const CVec& xi);
CMat c_right_omega(const InitialDatum& D, const ExtAffine& u_dual, const CVec& z,
                   const CVec& xi);

/// C_{(w,e)}(z,xi) as the ordered product over a reduced word of w in W.
CMat c_left(const InitialDatum& D, const ExtAffine& w, const CVec& z, const CVec& xi);
/// C_{(e,w~)}(z,xi); w_dual is an element of the dual datum's extended group.
CMat c_right(const InitialDatum& D, const ExtAffine& w_dual, const CVec& z,
             const CVec& xi);
/// Full cocycle value C_{(w,w~)}(z,xi) = C_{(w,e)}(z,xi) C_{(e,w~)}(w^{-1}z,xi).
CMat c_cocycle(const InitialDatum& D, const ExtAffine& w, const ExtAffine& w_dual,
               const CVec& z, const CVec& xi);

/// nabla(w,w~) f at (z,xi) for a componentwise-given vector function f.
using VectorFn = std::function<CVec(const CVec&, const CVec&)>;
CVec nabla_apply(const InitialDatum& D, const ExtAffine& w, const ExtAffine& w_dual,
                 const VectorFn& f, const CVec& z, const CVec& xi);

/// Cherednik-Matsuo map chi(sum f_sigma v_sigma) = q^{kappa_{w0}} sum_w q^{-kappa_w} f_w.
Complex chi_map(const InitialDatum& D, const CVec& components);

/// Relative residual of R_lambda(z,xi) against the product
/// prod c_a(xi;-kappa~,q)^{-1} over R~+ cap tau(lambda) R~-, with z placed at
/// asymptotic depth (q^{-alpha_i(z)} of size q^{depth}).
double r0_residual(const InitialDatum& D, const RVec& lambda, const CVec& xi,
                   double depth);

/// The product side of the r_lambda^{(0)} identity.
Complex r0_product(const InitialDatum& D, const RVec& lambda, const CVec& xi);

}  // namespace hcs

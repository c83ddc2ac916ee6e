#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hcs/numeric.hpp"
#include "hcs/qseries.hpp"

namespace hcs {

enum class Family { GL, ASemisimple, BKoornwinder };
enum class Bullet { U, T };

std::string family_name(Family f);
std::string bullet_name(Bullet b);

/// The four multiplicity labels attached to a root orbit:
/// kappa_alpha, kappa_{2alpha}, kappa_{alpha^(1)}, kappa_{2alpha^(1)}.
struct Kappa4 {
  double a = 0.0;
  double a2 = 0.0;
  double a1 = 0.0;
  double a21 = 0.0;
};

/// Partially specified orbit values as they come from configuration; the
/// identification rules fill in tied labels and reject conflicts.
struct KappaInput {
  std::optional<double> a, a2, a1, a21;
};

struct AwQuadruple {
  Complex a, b, c, d;
  double q_alpha;
};

/// Full lattice given by a generator basis in ambient coordinates.
struct Lattice {
  std::vector<RVec> basis;

  int dim_ambient() const { return basis.empty() ? 0 : int(basis[0].size()); }
  int rank() const { return int(basis.size()); }
  /// least-squares coordinates of v in the basis (exact when v in span)
  RVec coords(const RVec& v) const;
  RVec vec(const RVec& coeffs) const;
  bool contains(const RVec& v, double tol = 1e-7) const;
  bool same_as(const Lattice& other) const;
};

/// Element of an extended affine Weyl group W0 x| lattice acting by
/// z |-> w z + t.  The linear part is an index into the Weyl table.
struct ExtAffine {
  RVec t;
  int w = 0;
};

/// Affine root mu_alpha r c + alpha, stored as (root index, integer r).
struct AffRoot {
  int root = 0;
  int r = 0;
};

struct WeylTable {
  int dim = 0;
  std::vector<IVec> mats;               // row-major dim x dim integer matrices
  std::vector<int> length;
  std::vector<std::vector<int>> words;  // reduced word in simple indices 1..n
  std::vector<std::vector<int>> mult;   // mult[a][b] = index of product
  std::vector<int> inv;
  int longest = 0;

  int size() const { return int(mats.size()); }
  RVec apply(int e, const RVec& v) const;
  CVec apply(int e, const CVec& v) const;
};

struct ReducedAffineWord {
  std::vector<int> letters;  // indices in {0,...,n}
  ExtAffine omega;           // length-zero residual
};

/// The initial datum (D, kappa, q): root system realization, twist, lattices,
/// multiplicity function, and every derived constant the rest of the engine
/// needs (rho, psi, theta, AW parameter tables, Weyl table, i -> i*).
class InitialDatum {
 public:
  Family family;
  Bullet bullet;
  int rank = 0;
  int dim = 0;  // ambient dimension
  double q = 0.5;
  QContext ctx;

  std::vector<IVec> roots;          // ambient integer coordinates
  std::vector<IVec> simple_coords;  // per root: coordinates in the simple basis
  std::vector<int> simple;          // root indices of alpha_1..alpha_n
  std::vector<int> positive;        // indices of positive roots
  int psi = 0;    // highest root (bullet=u) / highest short root (bullet=t)
  int theta = 0;  // highest short root

  std::vector<int> orbit_id;             // per root
  std::vector<std::string> orbit_names;  // per orbit id
  std::vector<Kappa4> kappas;            // per orbit id
  std::vector<int> lat_index;            // per orbit: (Lambda, alpha^vee) = g Z
  std::vector<int> lat_index_dual;       // per orbit: (Lambda~, alpha~^vee) = g Z

  Lattice L;   // Lambda
  Lattice Lt;  // Lambda-tilde

  WeylTable W0;
  std::vector<std::vector<int>> root_action;  // [element][root] -> root
  std::vector<int> reflections;               // per root: index of s_alpha in W0
  std::vector<int> istar;                     // 1-based map i -> i*
  std::vector<double> kappa_w;                // per W0 element: sum over inversions

  RVec rho, rhotil;

  double pole_guard = 1e-8;

  // --- root geometry ---
  double len2(int root) const;
  double mu(int root) const;
  double q_alpha(int root) const { return qpow(q, mu(root)); }
  RVec covee(int root) const;        // alpha^vee
  RVec tilde(int root) const;        // alpha~ = mu_alpha alpha^vee
  RVec tilde_covee(int root) const;  // alpha~^vee = alpha / mu_alpha
  int root_index(const IVec& v) const;
  int root_index(const RVec& v, double tol = 1e-7) const;
  bool is_positive_root(int root) const;
  int neg_root(int root) const;
  int height(int root) const;

  // --- kappa / AW parameters ---
  const Kappa4& kappa(int root) const { return kappas[orbit_id[root]]; }
  double kappa_label(int root, int r_parity, bool doubled) const;
  AwQuadruple aw(int root) const;
  AwQuadruple aw_dual(int root) const;

  // --- Weyl group ---
  int w_longest() const { return W0.longest; }
  int act_on_root(int e, int root) const { return root_action[e][root]; }
  int reflection_of(int root) const;
  std::vector<RVec> orbit(const RVec& v) const;
  std::vector<CVec> orbit(const CVec& v) const;

  // --- extended affine Weyl group (W = W0 x| Lambda~) ---
  ExtAffine ea_identity() const { return {RVec(dim, 0.0), 0}; }
  ExtAffine ea_translation(const RVec& t) const { return {t, 0}; }
  ExtAffine ea_linear(int w) const { return {RVec(dim, 0.0), w}; }
  ExtAffine ea_mul(const ExtAffine& a, const ExtAffine& b) const;
  ExtAffine ea_inv(const ExtAffine& a) const;
  bool ea_eq(const ExtAffine& a, const ExtAffine& b) const;
  CVec ea_apply(const ExtAffine& a, const CVec& z) const;
  RVec ea_apply(const ExtAffine& a, const RVec& z) const;
  CVec ea_apply_inv(const ExtAffine& a, const CVec& z) const;

  AffRoot simple_affine(int i) const;  // i in {0,...,n}
  ExtAffine s_affine(int i) const;     // reflection in simple_affine(i)
  Complex aff_value(const AffRoot& a, const CVec& z) const;
  bool aff_positive(const AffRoot& a) const;
  AffRoot aff_act(const ExtAffine& w, const AffRoot& a) const;
  int ea_length(const ExtAffine& w) const;
  std::vector<AffRoot> inversion_set(const ExtAffine& w) const;
  ReducedAffineWord ea_reduced_word(const ExtAffine& w) const;
  bool in_lattice_tilde(const RVec& t) const { return Lt.contains(t); }

  /// u(nu): the minimal-length element of tau(nu) W0 (nu in Lambda~).
  ExtAffine u_of(const RVec& nu) const;
  bool is_minuscule_tilde(const RVec& nu) const;
  bool is_dominant_tilde(const RVec& nu) const;

  /// small lattice helpers (searched deterministically over a coefficient box)
  RVec strictly_dominant_tilde() const;
  RVec fund_weight_tilde(int i) const;   // pairing delta_{ij} pattern
  RVec perp_weight_tilde(int i) const;   // (., a~_i^vee) = 0, > 0 for j != i

  // --- c-functions on affine roots (sign = +1/-1 selects kappa or -kappa) ---
  Complex c_aff(const AffRoot& a, const CVec& z, int sign = +1) const;
  Complex c_w_product(const ExtAffine& w, const CVec& z, int sign = +1) const;

  // --- duality ---
  const InitialDatum& dual() const;

 private:
  mutable std::shared_ptr<InitialDatum> dual_cache;
};

/// Builds a datum for one of the supported families.  `kappa_in` maps orbit
/// names ("all" / "short" / "long") to partially specified labels; ties
/// implied by the lattice pairings are applied and conflicts rejected.
InitialDatum build_datum(Family family, int rank, Bullet bullet,
                         const std::map<std::string, KappaInput>& kappa_in,
                         double q, double factor_cutoff = 1e-15,
                         double pole_guard = 1e-8);

/// Convenience: all four labels tied to one value on every orbit.
InitialDatum build_datum_simple(Family family, int rank, Bullet bullet,
                                double kappa_value, double q);

}  // namespace hcs

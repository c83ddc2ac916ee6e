#include "hcs/rootdata.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace hcs {

std::string family_name(Family f) {
  switch (f) {
    case Family::GL: return "gl";
    case Family::ASemisimple: return "a-semisimple";
    case Family::BKoornwinder: return "b-koornwinder";
  }
  return "?";
}

std::string bullet_name(Bullet b) { return b == Bullet::U ? "u" : "t"; }

namespace {

long long quant(double x) { return llround(x * 2520.0); }

std::vector<long long> quant_vec(const RVec& v) {
  std::vector<long long> r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = quant(v[i]);
  return r;
}

// Solve M x = b by Gaussian elimination (small dense systems).
RVec solve_ls(const std::vector<RVec>& cols, const RVec& b) {
  const int k = int(cols.size());
  // normal equations G x = c with G = A^T A
  std::vector<RVec> G(k, RVec(k, 0.0));
  RVec c(k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) G[i][j] = dot(cols[i], cols[j]);
    c[i] = dot(cols[i], b);
  }
  for (int p = 0; p < k; ++p) {
    int piv = p;
    for (int r = p + 1; r < k; ++r)
      if (std::abs(G[r][p]) > std::abs(G[piv][p])) piv = r;
    std::swap(G[p], G[piv]);
    std::swap(c[p], c[piv]);
    for (int r = 0; r < k; ++r) {
      if (r == p || G[r][p] == 0.0) continue;
      double f = G[r][p] / G[p][p];
      for (int cc = p; cc < k; ++cc) G[r][cc] -= f * G[p][cc];
      c[r] -= f * c[p];
    }
  }
  RVec x(k, 0.0);
  for (int p = 0; p < k; ++p) x[p] = c[p] / G[p][p];
  return x;
}

int round_int(double x, const char* what) {
  double r = std::round(x);
  if (std::abs(x - r) > 1e-6) {
    std::ostringstream os;
    os << what << ": value " << x << " is not an integer";
    throw std::logic_error(os.str());
  }
  return int(r);
}

}  // namespace

RVec Lattice::coords(const RVec& v) const { return solve_ls(basis, v); }

RVec Lattice::vec(const RVec& coeffs) const {
  RVec r(basis[0].size(), 0.0);
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t d = 0; d < r.size(); ++d) r[d] += coeffs[i] * basis[i][d];
  return r;
}

bool Lattice::contains(const RVec& v, double tol) const {
  RVec c = coords(v);
  RVec back = vec(c);
  for (size_t d = 0; d < v.size(); ++d)
    if (std::abs(back[d] - v[d]) > tol) return false;  // off the span
  for (double x : c)
    if (std::abs(x - std::round(x)) > tol) return false;
  return true;
}

bool Lattice::same_as(const Lattice& other) const {
  if (rank() != other.rank()) return false;
  for (const auto& b : basis)
    if (!other.contains(b)) return false;
  for (const auto& b : other.basis)
    if (!contains(b)) return false;
  return true;
}

RVec WeylTable::apply(int e, const RVec& v) const {
  RVec r(dim, 0.0);
  const IVec& m = mats[e];
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r[i] += m[i * dim + j] * v[j];
  return r;
}

CVec WeylTable::apply(int e, const CVec& v) const {
  CVec r(dim, Complex{0.0, 0.0});
  const IVec& m = mats[e];
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r[i] += double(m[i * dim + j]) * v[j];
  return r;
}

double InitialDatum::len2(int root) const {
  double s = 0.0;
  for (int x : roots[root]) s += double(x) * x;
  return s;
}

double InitialDatum::mu(int root) const {
  return bullet == Bullet::U ? 1.0 : 0.5 * len2(root);
}

RVec InitialDatum::covee(int root) const {
  return scaled(to_rvec(roots[root]), 2.0 / len2(root));
}

RVec InitialDatum::tilde(int root) const { return scaled(covee(root), mu(root)); }

RVec InitialDatum::tilde_covee(int root) const {
  return scaled(to_rvec(roots[root]), 1.0 / mu(root));
}

int InitialDatum::root_index(const IVec& v) const {
  for (size_t i = 0; i < roots.size(); ++i)
    if (roots[i] == v) return int(i);
  throw std::invalid_argument("root_index: not a root of the datum");
}

int InitialDatum::root_index(const RVec& v, double tol) const {
  for (size_t i = 0; i < roots.size(); ++i) {
    bool ok = true;
    for (int d = 0; d < dim; ++d)
      if (std::abs(v[d] - roots[i][d]) > tol) ok = false;
    if (ok) return int(i);
  }
  throw std::invalid_argument("root_index: not a root of the datum");
}

bool InitialDatum::is_positive_root(int root) const {
  for (int c : simple_coords[root])
    if (c < 0) return false;
  return true;
}

int InitialDatum::neg_root(int root) const {
  IVec v = roots[root];
  for (auto& x : v) x = -x;
  return root_index(v);
}

int InitialDatum::height(int root) const {
  int h = 0;
  for (int c : simple_coords[root]) h += c;
  return h;
}

double InitialDatum::kappa_label(int root, int r_parity, bool doubled) const {
  const Kappa4& k = kappa(root);
  int p = ((r_parity % 2) + 2) % 2;
  if (!doubled) return p == 0 ? k.a : k.a1;
  return p == 0 ? k.a2 : k.a21;
}

AwQuadruple InitialDatum::aw(int root) const {
  const Kappa4& k = kappa(root);
  double qa = q_alpha(root);
  return {qpow(q, k.a + k.a2), -qpow(q, k.a - k.a2), qa * qpow(q, k.a1 + k.a21),
          -qa * qpow(q, k.a1 - k.a21), qa};
}

AwQuadruple InitialDatum::aw_dual(int root) const {
  const Kappa4& k = kappa(root);
  double qa = q_alpha(root);
  return {qpow(q, k.a + k.a1), -qpow(q, k.a - k.a1), qa * qpow(q, k.a2 + k.a21),
          -qa * qpow(q, k.a2 - k.a21), qa};
}

std::vector<RVec> InitialDatum::orbit(const RVec& v) const {
  std::vector<RVec> out;
  std::set<std::vector<long long>> seen;
  for (int e = 0; e < W0.size(); ++e) {
    RVec im = W0.apply(e, v);
    if (seen.insert(quant_vec(im)).second) out.push_back(im);
  }
  return out;
}

std::vector<CVec> InitialDatum::orbit(const CVec& v) const {
  std::vector<CVec> out;
  std::set<std::pair<std::vector<long long>, std::vector<long long>>> seen;
  for (int e = 0; e < W0.size(); ++e) {
    CVec im = W0.apply(e, v);
    RVec re(dim), imag(dim);
    for (int d = 0; d < dim; ++d) re[d] = im[d].real(), imag[d] = im[d].imag();
    if (seen.insert({quant_vec(re), quant_vec(imag)}).second) out.push_back(im);
  }
  return out;
}

ExtAffine InitialDatum::ea_mul(const ExtAffine& a, const ExtAffine& b) const {
  return {add(a.t, W0.apply(a.w, b.t)), W0.mult[a.w][b.w]};
}

ExtAffine InitialDatum::ea_inv(const ExtAffine& a) const {
  int wi = W0.inv[a.w];
  return {scaled(W0.apply(wi, a.t), -1.0), wi};
}

bool InitialDatum::ea_eq(const ExtAffine& a, const ExtAffine& b) const {
  return a.w == b.w && quant_vec(a.t) == quant_vec(b.t);
}

CVec InitialDatum::ea_apply(const ExtAffine& a, const CVec& z) const {
  CVec r = W0.apply(a.w, z);
  for (int d = 0; d < dim; ++d) r[d] += a.t[d];
  return r;
}

RVec InitialDatum::ea_apply(const ExtAffine& a, const RVec& z) const {
  RVec r = W0.apply(a.w, z);
  for (int d = 0; d < dim; ++d) r[d] += a.t[d];
  return r;
}

CVec InitialDatum::ea_apply_inv(const ExtAffine& a, const CVec& z) const {
  CVec r(dim);
  for (int d = 0; d < dim; ++d) r[d] = z[d] - a.t[d];
  return W0.apply(W0.inv[a.w], r);
}

AffRoot InitialDatum::simple_affine(int i) const {
  if (i == 0) return {neg_root(psi), 1};
  return {simple[i - 1], 0};
}

int InitialDatum::reflection_of(int root) const {
  if (root < int(reflections.size())) return reflections[root];
  for (int e = 0; e < W0.size(); ++e) {
    bool is_refl = true;
    for (size_t rr = 0; rr < roots.size() && is_refl; ++rr) {
      RVec im = W0.apply(e, to_rvec(roots[rr]));
      RVec expect =
          sub(to_rvec(roots[rr]),
              scaled(to_rvec(roots[root]), dot(to_rvec(roots[rr]), covee(root))));
      for (int d = 0; d < dim; ++d)
        if (std::abs(im[d] - expect[d]) > 1e-9) is_refl = false;
    }
    if (is_refl) return e;
  }
  throw std::logic_error("reflection_of: not found");
}

ExtAffine InitialDatum::s_affine(int i) const {
  // s_{alpha^{(r)}} = tau(-r alpha~) s_alpha
  AffRoot a = simple_affine(i);
  return {scaled(tilde(a.root), -double(a.r)), reflection_of(a.root)};
}

Complex InitialDatum::aff_value(const AffRoot& a, const CVec& z) const {
  return mu(a.root) * double(a.r) + dot(roots[a.root], z);
}

bool InitialDatum::aff_positive(const AffRoot& a) const {
  if (a.r != 0) return a.r > 0;
  return is_positive_root(a.root);
}

AffRoot InitialDatum::aff_act(const ExtAffine& w, const AffRoot& a) const {
  int beta = root_action[w.w][a.root];
  double shift = dot(w.t, tilde_covee(beta));
  return {beta, a.r - round_int(shift, "aff_act pairing")};
}

int InitialDatum::ea_length(const ExtAffine& w) const {
  return int(inversion_set(w).size());
}

std::vector<AffRoot> InitialDatum::inversion_set(const ExtAffine& w) const {
  int R = 1;
  for (size_t rr = 0; rr < roots.size(); ++rr)
    R = std::max(R, 1 + int(std::ceil(std::abs(dot(w.t, tilde_covee(int(rr)))))));
  std::vector<AffRoot> out;
  for (size_t rr = 0; rr < roots.size(); ++rr)
    for (int r = -R; r <= R; ++r) {
      AffRoot a{int(rr), r};
      if (aff_positive(a) && !aff_positive(aff_act(w, a))) out.push_back(a);
    }
  return out;
}

ReducedAffineWord InitialDatum::ea_reduced_word(const ExtAffine& w) const {
  ReducedAffineWord out;
  ExtAffine cur = w;
  int len = ea_length(cur);
  while (len > 0) {
    bool found = false;
    for (int i = 0; i <= rank; ++i) {
      // left descent: l(s_i w) < l(w) iff w^{-1} a_i < 0
      AffRoot b = aff_act(ea_inv(cur), simple_affine(i));
      if (!aff_positive(b)) {
        out.letters.push_back(i);
        cur = ea_mul(s_affine(i), cur);
        --len;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("ea_reduced_word: no descent found");
  }
  out.omega = cur;
  return out;
}

ExtAffine InitialDatum::u_of(const RVec& nu) const {
  ExtAffine tau = ea_translation(nu);
  ExtAffine best = tau;
  int best_len = ea_length(tau);
  for (int e = 1; e < W0.size(); ++e) {
    ExtAffine cand = ea_mul(tau, ea_linear(e));
    int l = ea_length(cand);
    if (l < best_len) {
      best_len = l;
      best = cand;
    }
  }
  return best;
}

bool InitialDatum::is_minuscule_tilde(const RVec& nu) const {
  for (int p : positive) {
    double v = dot(nu, tilde_covee(p));
    int iv = round_int(v, "minuscule pairing");
    if (iv != 0 && iv != 1) return false;
  }
  return true;
}

bool InitialDatum::is_dominant_tilde(const RVec& nu) const {
  for (int i = 1; i <= rank; ++i)
    if (dot(nu, tilde_covee(simple[i - 1])) < -1e-9) return false;
  return true;
}

namespace {
// deterministic scan over small coefficient boxes of a lattice basis
template <typename Pred>
RVec scan_lattice(const Lattice& L, int box, Pred&& good) {
  int k = L.rank();
  IVec m(k, -box);
  RVec best;
  double best_norm = 1e300;
  while (true) {
    RVec cand(L.dim_ambient(), 0.0);
    for (int i = 0; i < k; ++i)
      for (int d = 0; d < L.dim_ambient(); ++d) cand[d] += m[i] * L.basis[i][d];
    if (good(cand)) {
      double n = norm2(cand);
      if (n < best_norm - 1e-12) {
        best_norm = n;
        best = cand;
      }
    }
    int i = 0;
    while (i < k && m[i] == box) m[i++] = -box;
    if (i == k) break;
    ++m[i];
  }
  if (best.empty()) throw std::logic_error("lattice scan: no vector found");
  return best;
}
}  // namespace

RVec InitialDatum::strictly_dominant_tilde() const {
  return scan_lattice(Lt, 4, [&](const RVec& v) {
    for (int i = 1; i <= rank; ++i)
      if (dot(v, tilde_covee(simple[i - 1])) < 1.0 - 1e-9) return false;
    return true;
  });
}

RVec InitialDatum::fund_weight_tilde(int i) const {
  return scan_lattice(Lt, 4, [&](const RVec& v) {
    for (int j = 1; j <= rank; ++j) {
      double p = dot(v, tilde_covee(simple[j - 1]));
      if (j == i && p < 1.0 - 1e-9) return false;
      if (j != i && std::abs(p) > 1e-9) return false;
    }
    return true;
  });
}

RVec InitialDatum::perp_weight_tilde(int i) const {
  return scan_lattice(Lt, 4, [&](const RVec& v) {
    for (int j = 1; j <= rank; ++j) {
      double p = dot(v, tilde_covee(simple[j - 1]));
      if (j == i && std::abs(p) > 1e-9) return false;
      if (j != i && p < 1.0 - 1e-9) return false;
    }
    return true;
  });
}

Complex InitialDatum::c_aff(const AffRoot& a, const CVec& z, int sign) const {
  double ka = kappa_label(a.root, a.r, false);
  double k2a = kappa_label(a.root, a.r, true);
  if (sign < 0) {
    ka = -ka;
    k2a = -k2a;
  }
  Complex az = aff_value(a, z);
  Complex den = 1.0 - qpow(q, 2.0 * az);
  if (std::abs(den) < pole_guard)
    throw SingularPoint("c_aff: 1 - q^{2a(z)} within pole guard");
  return (1.0 - qpow(q, ka + k2a + az)) * (1.0 + qpow(q, ka - k2a + az)) / den;
}

Complex InitialDatum::c_w_product(const ExtAffine& w, const CVec& z, int sign) const {
  // product over R^{bullet,+} cap w^{-1} R^{bullet,-} = {a > 0 : w a < 0}
  Complex prod{1.0, 0.0};
  for (const AffRoot& a : inversion_set(w)) prod *= c_aff(a, z, sign);
  return prod;
}

namespace {

struct FamilyData {
  std::vector<IVec> roots;
  std::vector<IVec> simple_vecs;
  std::vector<RVec> lat, lat_tilde;
  int dim;
};

FamilyData make_family(Family family, int rank) {
  FamilyData F;
  if (family == Family::GL || family == Family::ASemisimple) {
    int n1 = rank + 1;
    F.dim = n1;
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n1; ++j) {
        if (i == j) continue;
        IVec v(n1, 0);
        v[i] = 1;
        v[j] = -1;
        F.roots.push_back(v);
      }
    for (int i = 0; i < rank; ++i) {
      IVec v(n1, 0);
      v[i] = 1;
      v[i + 1] = -1;
      F.simple_vecs.push_back(v);
    }
    if (family == Family::GL) {
      for (int i = 0; i < n1; ++i) {
        RVec e(n1, 0.0);
        e[i] = 1.0;
        F.lat.push_back(e);
      }
      F.lat_tilde = F.lat;
    } else {
      // weight lattice P of A_n inside the sum-zero hyperplane
      for (int i = 1; i <= rank; ++i) {
        RVec w(n1, 0.0);
        for (int j = 0; j < i; ++j) w[j] = 1.0;
        double avg = double(i) / n1;
        for (int j = 0; j < n1; ++j) w[j] -= avg;
        F.lat.push_back(w);
      }
      F.lat_tilde = F.lat;  // alpha~ = alpha in this realization
    }
  } else {
    F.dim = rank;
    for (int i = 0; i < rank; ++i)
      for (int j = i + 1; j < rank; ++j)
        for (int si = -1; si <= 1; si += 2)
          for (int sj = -1; sj <= 1; sj += 2) {
            IVec v(rank, 0);
            v[i] = si;
            v[j] = sj;
            F.roots.push_back(v);
          }
    for (int i = 0; i < rank; ++i)
      for (int s = -1; s <= 1; s += 2) {
        IVec v(rank, 0);
        v[i] = s;
        F.roots.push_back(v);
      }
    for (int i = 0; i + 1 < rank; ++i) {
      IVec v(rank, 0);
      v[i] = 1;
      v[i + 1] = -1;
      F.simple_vecs.push_back(v);
    }
    IVec last(rank, 0);
    last[rank - 1] = 1;
    F.simple_vecs.push_back(last);
    for (int i = 0; i < rank; ++i) {
      RVec e(rank, 0.0);
      e[i] = 1.0;
      F.lat.push_back(e);
    }
    F.lat_tilde = F.lat;  // Koornwinder: Lambda = Lambda~ = Q = Z^n
  }
  return F;
}

}  // namespace

InitialDatum build_datum(Family family, int rank, Bullet bullet,
                         const std::map<std::string, KappaInput>& kappa_in,
                         double q, double factor_cutoff, double pole_guard) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("build_datum: q must be in (0,1)");
  int max_rank = family == Family::BKoornwinder ? 3 : 2;
  if (rank < 1 || rank > max_rank)
    throw std::domain_error("build_datum: unsupported rank for this family");
  if (family == Family::BKoornwinder && bullet != Bullet::T)
    throw std::domain_error("build_datum: Koornwinder data are twisted");

  InitialDatum D;
  D.family = family;
  D.bullet = bullet;
  D.rank = rank;
  D.q = q;
  D.ctx = QContext(q, factor_cutoff);
  D.pole_guard = pole_guard;

  FamilyData F = make_family(family, rank);
  D.dim = F.dim;
  D.roots = F.roots;
  D.L.basis = F.lat;
  D.Lt.basis = F.lat_tilde;

  // simple-root coordinates of every root
  std::vector<RVec> simple_cols;
  for (const auto& s : F.simple_vecs) simple_cols.push_back(to_rvec(s));
  for (const auto& rt : D.roots) {
    RVec c = solve_ls(simple_cols, to_rvec(rt));
    IVec ic(rank);
    for (int i = 0; i < rank; ++i) ic[i] = round_int(c[i], "simple coordinates");
    D.simple_coords.push_back(ic);
  }
  for (const auto& s : F.simple_vecs) D.simple.push_back(D.root_index(s));
  for (size_t i = 0; i < D.roots.size(); ++i)
    if (D.is_positive_root(int(i))) D.positive.push_back(int(i));

  // orbits by length (at most two lengths in the supported families)
  std::set<long long> lens;
  for (size_t i = 0; i < D.roots.size(); ++i) lens.insert(llround(D.len2(int(i)) * 4));
  bool two_lengths = lens.size() > 1;
  double min_len = double(*lens.begin()) / 4.0;
  D.orbit_names.clear();
  if (!two_lengths) {
    D.orbit_names.push_back(family == Family::BKoornwinder ? "short" : "all");
  } else {
    D.orbit_names.push_back("short");
    D.orbit_names.push_back("long");
  }
  for (size_t i = 0; i < D.roots.size(); ++i) {
    int oid = (!two_lengths || std::abs(D.len2(int(i)) - min_len) < 1e-9) ? 0 : 1;
    D.orbit_id.push_back(oid);
  }

  // psi / theta
  auto highest = [&](bool short_only) {
    int best = -1, best_h = -1;
    for (int p : D.positive) {
      if (short_only && std::abs(D.len2(p) - min_len) > 1e-9) continue;
      if (D.height(p) > best_h) {
        best_h = D.height(p);
        best = p;
      }
    }
    return best;
  };
  D.theta = highest(true);
  D.psi = bullet == Bullet::U ? highest(false) : highest(true);

  // lattice pairing indices per orbit
  int n_orb = int(D.orbit_names.size());
  D.lat_index.assign(n_orb, 0);
  D.lat_index_dual.assign(n_orb, 0);
  for (int o = 0; o < n_orb; ++o) {
    int rep = -1;
    for (size_t i = 0; i < D.roots.size(); ++i)
      if (D.orbit_id[i] == o) {
        rep = int(i);
        break;
      }
    auto gcd_pairings = [&](const Lattice& L, const RVec& cv) {
      int g = 0;
      for (const auto& b : L.basis) {
        int p = std::abs(round_int(dot(cv, b), "lattice pairing"));
        g = std::gcd(g, p);
      }
      if (g == 0) throw std::logic_error("degenerate lattice pairing");
      return g;
    };
    D.lat_index[o] = gcd_pairings(D.L, D.covee(rep));
    D.lat_index_dual[o] = gcd_pairings(D.Lt, D.tilde_covee(rep));
  }

  // kappa with identification rules
  D.kappas.assign(n_orb, Kappa4{});
  for (int o = 0; o < n_orb; ++o) {
    auto it = kappa_in.find(D.orbit_names[o]);
    if (it == kappa_in.end())
      throw std::invalid_argument("build_datum: missing kappa values for orbit '" +
                                  D.orbit_names[o] + "'");
    KappaInput in = it->second;
    bool tie_doubles = D.lat_index[o] == 1;       // 2alpha^{(r)} not in R(D)
    bool tie_parity = D.lat_index_dual[o] == 1;   // kappa_{alpha^{(1)}} = kappa_alpha
    // propagate ties until stable, rejecting conflicts
    for (int pass = 0; pass < 4; ++pass) {
      auto tie = [&](std::optional<double>& x, std::optional<double>& y) {
        if (x && y && std::abs(*x - *y) > 1e-12)
          throw std::invalid_argument(
              "build_datum: kappa values conflict with the identification "
              "convention on orbit '" + D.orbit_names[o] + "'");
        if (x && !y) y = x;
        if (y && !x) x = y;
      };
      if (tie_doubles) {
        tie(in.a, in.a2);
        tie(in.a1, in.a21);
      }
      if (tie_parity) {
        tie(in.a, in.a1);
        tie(in.a2, in.a21);
      }
    }
    if (!in.a || !in.a2 || !in.a1 || !in.a21)
      throw std::invalid_argument(
          "build_datum: underdetermined kappa values on orbit '" +
          D.orbit_names[o] + "'");
    D.kappas[o] = {*in.a, *in.a2, *in.a1, *in.a21};
  }

  // Weyl group closure over simple reflections
  D.W0.dim = D.dim;
  auto refl_mat = [&](int si) {
    // s(v) = v - (v, alpha^vee) alpha: entries delta_ij - alpha_i alpha^vee_j
    const IVec& av = F.simple_vecs[si];
    RVec cv = scaled(to_rvec(av), 2.0 / dot(to_rvec(av), to_rvec(av)));
    IVec m(D.dim * D.dim, 0);
    for (int i = 0; i < D.dim; ++i)
      for (int j = 0; j < D.dim; ++j) {
        double e = (i == j ? 1.0 : 0.0) - av[i] * cv[j];
        m[i * D.dim + j] = round_int(e, "reflection matrix entry");
      }
    return m;
  };
  std::vector<IVec> gens;
  for (int i = 0; i < rank; ++i) gens.push_back(refl_mat(i));
  auto matmul = [&](const IVec& A, const IVec& B) {
    IVec C(D.dim * D.dim, 0);
    for (int i = 0; i < D.dim; ++i)
      for (int k = 0; k < D.dim; ++k)
        for (int j = 0; j < D.dim; ++j)
          C[i * D.dim + j] += A[i * D.dim + k] * B[k * D.dim + j];
    return C;
  };
  IVec id(D.dim * D.dim, 0);
  for (int i = 0; i < D.dim; ++i) id[i * D.dim + i] = 1;
  std::map<IVec, int> index_of;
  D.W0.mats.push_back(id);
  D.W0.length.push_back(0);
  D.W0.words.push_back({});
  index_of[id] = 0;
  for (size_t head = 0; head < D.W0.mats.size(); ++head) {
    if (int(D.W0.mats.size()) > 1000)
      throw std::runtime_error("build_datum: Weyl group cap exceeded");
    for (int i = 0; i < rank; ++i) {
      IVec m = matmul(D.W0.mats[head], gens[i]);
      if (index_of.count(m)) continue;
      index_of[m] = int(D.W0.mats.size());
      D.W0.mats.push_back(m);
      D.W0.length.push_back(D.W0.length[head] + 1);
      auto w = D.W0.words[head];
      w.push_back(i + 1);
      D.W0.words.push_back(w);
    }
  }
  int NW = D.W0.size();
  D.W0.mult.assign(NW, std::vector<int>(NW, 0));
  for (int a = 0; a < NW; ++a)
    for (int b = 0; b < NW; ++b)
      D.W0.mult[a][b] = index_of.at(matmul(D.W0.mats[a], D.W0.mats[b]));
  D.W0.inv.assign(NW, 0);
  for (int a = 0; a < NW; ++a)
    for (int b = 0; b < NW; ++b)
      if (D.W0.mult[a][b] == 0) D.W0.inv[a] = b;
  D.W0.longest = int(std::max_element(D.W0.length.begin(), D.W0.length.end()) -
                     D.W0.length.begin());

  // action of W0 on roots
  D.root_action.assign(NW, std::vector<int>(D.roots.size(), 0));
  for (int e = 0; e < NW; ++e)
    for (size_t rr = 0; rr < D.roots.size(); ++rr)
      D.root_action[e][rr] = D.root_index(D.W0.apply(e, to_rvec(D.roots[rr])));

  // reflection lookup per root
  for (size_t rr = 0; rr < D.roots.size(); ++rr)
    D.reflections.push_back(D.reflection_of(int(rr)));

  // istar (1-based)
  D.istar.assign(rank + 1, 0);
  for (int i = 1; i <= rank; ++i) {
    int img = D.root_action[D.W0.longest][D.simple[i - 1]];
    int neg = D.neg_root(img);
    for (int j = 1; j <= rank; ++j)
      if (D.simple[j - 1] == neg) D.istar[i] = j;
    if (D.istar[i] == 0) throw std::logic_error("istar not found");
  }

  // kappa_w per element
  D.kappa_w.assign(NW, 0.0);
  for (int e = 0; e < NW; ++e) {
    double s = 0.0;
    for (int p : D.positive)
      if (!D.is_positive_root(D.root_action[e][p])) s += D.kappa(p).a;
    D.kappa_w[e] = s;
  }

  // rho and rho~
  D.rho.assign(D.dim, 0.0);
  D.rhotil.assign(D.dim, 0.0);
  for (int p : D.positive) {
    const Kappa4& k = D.kappa(p);
    D.rho = add(D.rho, scaled(D.tilde_covee(p), 0.5 * (k.a + k.a1)));
    D.rhotil = add(D.rhotil, scaled(D.covee(p), 0.5 * (k.a + k.a2)));
  }

  return D;
}

InitialDatum build_datum_simple(Family family, int rank, Bullet bullet,
                                double kappa_value, double q) {
  std::map<std::string, KappaInput> kin;
  KappaInput one;
  one.a = kappa_value;
  one.a2 = kappa_value;
  one.a1 = kappa_value;
  one.a21 = kappa_value;
  kin["all"] = one;
  kin["short"] = one;
  kin["long"] = one;
  return build_datum(family, rank, bullet, kin, q);
}

const InitialDatum& InitialDatum::dual() const {
  if (!dual_cache) {
    std::map<std::string, KappaInput> kin;
    for (size_t o = 0; o < orbit_names.size(); ++o) {
      KappaInput in;
      in.a = kappas[o].a;
      in.a2 = kappas[o].a1;   // dual swaps kappa_{2alpha} <-> kappa_{alpha^(1)}
      in.a1 = kappas[o].a2;
      in.a21 = kappas[o].a21;
      kin[orbit_names[o]] = in;
    }
    auto d = std::make_shared<InitialDatum>(
        build_datum(family, rank, bullet, kin, q, ctx.factor_cutoff, pole_guard));
    // lattices swap; in the supported families both coincide, but keep it exact
    std::swap(d->L, d->Lt);
    std::swap(d->lat_index, d->lat_index_dual);
    dual_cache = d;
  }
  return *dual_cache;
}

}  // namespace hcs

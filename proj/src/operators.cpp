#include "hcs/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <unordered_map>

namespace hcs {

namespace {
std::vector<long long> term_key(const ExtAffine& w) {
  std::vector<long long> k;
  k.push_back(w.w);
  for (double x : w.t) k.push_back(llround(x * 2520.0));
  return k;
}

// Composed coefficient evaluators form a DAG shared across terms; memoizing
// per evaluation point keeps the cost linear in the DAG size instead of
// exponential in the word length.
struct PointKeyHash {
  size_t operator()(const std::vector<uint64_t>& k) const {
    size_t h = 1469598103934665603ull;
    for (uint64_t x : k) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

std::vector<uint64_t> point_key(const CVec& z) {
  std::vector<uint64_t> k;
  k.reserve(2 * z.size());
  for (const Complex& c : z) {
    uint64_t re, im;
    double dr = c.real(), di = c.imag();
    std::memcpy(&re, &dr, 8);
    std::memcpy(&im, &di, 8);
    k.push_back(re);
    k.push_back(im);
  }
  return k;
}

ScalarFn memoized(ScalarFn f) {
  using Memo = std::unordered_map<std::vector<uint64_t>, Complex, PointKeyHash>;
  struct State {
    ScalarFn fn;
    Memo memo;
    std::mutex mu;  // keeps concurrent application safe
  };
  auto st = std::make_shared<State>();
  st->fn = std::move(f);
  return [st](const CVec& z) {
    auto key = point_key(z);
    {
      std::lock_guard<std::mutex> lock(st->mu);
      auto it = st->memo.find(key);
      if (it != st->memo.end()) return it->second;
    }
    Complex v = st->fn(z);
    std::lock_guard<std::mutex> lock(st->mu);
    if (st->memo.size() > 300000) st->memo.clear();
    st->memo[key] = v;
    return v;
  };
}
}  // namespace

void DiffReflOp::add_term(ScalarFn c, const ExtAffine& w) {
  terms_.push_back({std::move(c), w});
}

void DiffReflOp::normalize() {
  std::map<std::vector<long long>, std::vector<ScalarFn>> groups;
  std::map<std::vector<long long>, ExtAffine> reps;
  for (auto& t : terms_) {
    auto k = term_key(t.w);
    groups[k].push_back(std::move(t.c));
    reps.emplace(k, t.w);
  }
  terms_.clear();
  for (auto& kv : groups) {
    if (kv.second.size() == 1) {
      terms_.push_back({std::move(kv.second[0]), reps.at(kv.first)});
    } else {
      auto fns = std::make_shared<std::vector<ScalarFn>>(std::move(kv.second));
      terms_.push_back({memoized([fns](const CVec& z) {
                          Complex s{0.0, 0.0};
                          for (const auto& f : *fns) s += f(z);
                          return s;
                        }),
                        reps.at(kv.first)});
    }
  }
}

Complex DiffReflOp::apply(const ScalarFn& f, const CVec& z) const {
  Complex s{0.0, 0.0};
  for (const auto& t : terms_) s += t.c(z) * f(D_->ea_apply_inv(t.w, z));
  return s;
}

DiffReflOp DiffReflOp::composed(const DiffReflOp& rhs) const {
  // share memoized copies of the operand coefficients across all pairs
  std::vector<Term> a(terms_), b(rhs.terms_);
  for (auto& t : a) t.c = memoized(t.c);
  for (auto& t : b) t.c = memoized(t.c);
  DiffReflOp out(*D_);
  for (const auto& ta : a)
    for (const auto& tb : b) {
      const InitialDatum* D = D_;
      ExtAffine wa = ta.w;
      ScalarFn ca = ta.c, cb = tb.c;
      out.add_term(
          [D, wa, ca, cb](const CVec& z) { return ca(z) * cb(D->ea_apply_inv(wa, z)); },
          D_->ea_mul(ta.w, tb.w));
    }
  out.normalize();
  return out;
}

DiffReflOp DiffReflOp::plus(const DiffReflOp& rhs) const {
  DiffReflOp out(*D_);
  for (const auto& t : terms_) out.add_term(t.c, t.w);
  for (const auto& t : rhs.terms_) out.add_term(t.c, t.w);
  out.normalize();
  return out;
}

DiffReflOp DiffReflOp::scaled_op(Complex s) const {
  DiffReflOp out(*D_);
  for (const auto& t : terms_) {
    ScalarFn c = t.c;
    out.add_term([c, s](const CVec& z) { return s * c(z); }, t.w);
  }
  return out;
}

bool DiffReflOp::pure_difference() const {
  for (const auto& t : terms_)
    if (t.w.w != 0) return false;
  return true;
}

DiffReflOp DiffReflOp::pruned(double rel_threshold) const {
  std::mt19937_64 eng(0x5eedbeefULL);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int npts = 6;
  std::vector<double> scale(npts, 0.0);
  std::vector<CVec> pts;
  for (int p = 0; p < npts; ++p) {
    CVec z(D_->dim);
    for (int d = 0; d < D_->dim; ++d) z[d] = Complex{1.3 * u(eng), 0.8 * u(eng)};
    pts.push_back(z);
  }
  std::vector<std::vector<double>> mags(terms_.size(), std::vector<double>(npts, 0.0));
  for (int p = 0; p < npts; ++p) {
    for (size_t j = 0; j < terms_.size(); ++j) {
      double m;
      try {
        m = std::abs(terms_[j].c(pts[p]));
      } catch (const SingularPoint&) {
        m = -1.0;  // skip this point for this term
      }
      mags[j][p] = m;
      scale[p] = std::max(scale[p], m);
    }
  }
  DiffReflOp out(*D_);
  for (size_t j = 0; j < terms_.size(); ++j) {
    bool keep = false;
    for (int p = 0; p < npts; ++p) {
      if (mags[j][p] < 0.0) keep = true;  // singular sample: keep conservatively
      else if (mags[j][p] > rel_threshold * std::max(scale[p], 1e-300)) keep = true;
    }
    if (keep) out.add_term(terms_[j].c, terms_[j].w);
  }
  return out;
}

DiffReflOp demazure_lusztig(const InitialDatum& D, int i) {
  if (i < 0 || i > D.rank) throw std::invalid_argument("demazure_lusztig: index");
  AffRoot ai = D.simple_affine(i);
  double ki = D.kappa_label(ai.root, ai.r, false);
  double qki = qpow(D.q, ki), qmki = qpow(D.q, -ki);
  const InitialDatum* Dp = &D;
  DiffReflOp op(D);
  // identity part q^{kappa_i} - q^{-kappa_i} c_i(z)
  op.add_term(
      [Dp, ai, qki, qmki](const CVec& z) { return qki - qmki * Dp->c_aff(ai, z); },
      D.ea_identity());
  op.add_term([Dp, ai, qmki](const CVec& z) { return qmki * Dp->c_aff(ai, z); },
              D.s_affine(i));
  return op;
}

DiffReflOp demazure_lusztig_inverse(const InitialDatum& D, int i) {
  // T_i^{-1} = T_i - q^{kappa_i} + q^{-kappa_i}
  AffRoot ai = D.simple_affine(i);
  double ki = D.kappa_label(ai.root, ai.r, false);
  double shift = qpow(D.q, -ki) - qpow(D.q, ki);
  DiffReflOp op = demazure_lusztig(D, i);
  DiffReflOp id(D);
  id.add_term([shift](const CVec&) { return Complex{shift, 0.0}; }, D.ea_identity());
  return op.plus(id);
}

namespace {
DiffReflOp omega_op(const InitialDatum& D, const ExtAffine& u) {
  DiffReflOp op(D);
  op.add_term([](const CVec&) { return Complex{1.0, 0.0}; }, u);
  return op;
}

DiffReflOp y_dominant(const InitialDatum& D, const RVec& nu, bool inverse) {
  ExtAffine tau = D.ea_translation(nu);
  ReducedAffineWord w = D.ea_reduced_word(tau);
  if (!inverse) {
    DiffReflOp op = omega_op(D, w.omega);
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
      op = demazure_lusztig(D, *it).composed(op);
    return op;
  }
  // (T_{i1} ... T_{ir} u)^{-1} = u^{-1} T_{ir}^{-1} ... T_{i1}^{-1}
  DiffReflOp op = omega_op(D, D.ea_inv(w.omega));
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    op = op.composed(demazure_lusztig_inverse(D, *it));
  return op;
}
}  // namespace

DiffReflOp y_operator(const InitialDatum& D, const RVec& nu) {
  if (!D.in_lattice_tilde(nu))
    throw std::invalid_argument("y_operator: nu not in Lambda~");
  if (D.is_dominant_tilde(nu)) return y_dominant(D, nu, false);
  // nu = nu1 - nu2 with both dominant; scan small lattice nu2 minimizing the
  // combined word length (shorter words mean fewer composition terms)
  RVec best1, best2;
  long best_len = -1;
  const int box = 3;
  int k = D.Lt.rank();
  IVec m(k, 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == k) {
      RVec nu2 = D.Lt.vec(RVec(m.begin(), m.end()));
      if (!D.is_dominant_tilde(nu2)) return;
      RVec nu1 = add(nu, nu2);
      if (!D.is_dominant_tilde(nu1)) return;
      long len = D.ea_length(D.ea_translation(nu1)) + D.ea_length(D.ea_translation(nu2));
      if (best_len < 0 || len < best_len) {
        best_len = len;
        best1 = nu1;
        best2 = nu2;
      }
      return;
    }
    for (m[pos] = -box; m[pos] <= box; ++m[pos]) rec(pos + 1);
    m[pos] = 0;
  };
  rec(0);
  if (best_len < 0) {
    // fall back to shifting by a strictly dominant vector
    RVec delta = D.strictly_dominant_tilde();
    RVec nu1 = nu, nu2(nu.size(), 0.0);
    while (!D.is_dominant_tilde(nu1)) {
      nu1 = add(nu1, delta);
      nu2 = add(nu2, delta);
    }
    best1 = nu1;
    best2 = nu2;
  }
  return y_dominant(D, best1, false).composed(y_dominant(D, best2, true));
}

DiffReflOp rmkc_extract(const InitialDatum& D, const RVec& nu) {
  if (!D.is_dominant_tilde(nu))
    throw std::invalid_argument("rmkc_extract: nu must be dominant");
  DiffReflOp sum(D);
  bool first = true;
  for (const RVec& nu_p : D.orbit(nu)) {
    DiffReflOp y = y_operator(D, nu_p);
    sum = first ? y : sum.plus(y);
    first = false;
  }
  // keep translation parts only: sum_{sigma} L_{nu,sigma} sigma^ -> sum_sigma L_{nu,sigma}
  DiffReflOp out(D);
  for (const auto& t : sum.terms()) out.add_term(t.c, D.ea_translation(t.w.t));
  out.normalize();
  return out.pruned();
}

DiffReflOp l_explicit(const InitialDatum& D) {
  RVec psit = D.tilde(D.psi);
  const InitialDatum* Dp = &D;
  double pref = qpow(D.q, -dot(D.rho, psit));

  // coset representatives via the orbit of psi~
  struct Piece {
    int w;
    RVec eta;
  };
  auto pieces = std::make_shared<std::vector<Piece>>();
  {
    std::vector<RVec> seen;
    for (int e = 0; e < D.W0.size(); ++e) {
      RVec eta = D.W0.apply(e, psit);
      bool dup = false;
      for (const auto& s : seen) {
        double d2 = 0;
        for (size_t k = 0; k < s.size(); ++k) d2 += (s[k] - eta[k]) * (s[k] - eta[k]);
        if (d2 < 1e-12) dup = true;
      }
      if (!dup) {
        seen.push_back(eta);
        pieces->push_back({e, eta});
      }
    }
  }

  DiffReflOp op(D);
  double const_sum = 0.0;
  for (const auto& p : *pieces) {
    int w = p.w;
    // the term acting by f(z + w psi~) carries the group element tau(-w psi~)
    op.add_term([Dp, w, pref](const CVec& z) { return pref * eval_A_shifted(*Dp, w, z); },
                D.ea_translation(scaled(p.eta, -1.0)));
    const_sum += qpow(D.q, -dot(D.rho, p.eta));
  }
  op.add_term(
      [Dp, pieces, pref, const_sum](const CVec& z) {
        Complex s{const_sum, 0.0};
        for (const auto& p : *pieces) s -= pref * eval_A_shifted(*Dp, p.w, z);
        return s;
      },
      D.ea_identity());
  op.normalize();
  return op;
}

Complex eigenvalue_L_nu(const InitialDatum& D, const RVec& nu, const CVec& xi) {
  Complex s{0.0, 0.0};
  for (const RVec& eta : D.orbit(nu)) s += qpow(D.q, dot(to_cvec(eta), xi));
  return s;
}

}  // namespace hcs

#include "hcs/sampling.hpp"

#include <cmath>

namespace hcs {

double Sampler::unif(double a, double b) {
  std::uniform_real_distribution<double> d(a, b);
  return d(eng_);
}

Complex Sampler::cunif(double re_lo, double re_hi, double im_half_width) {
  double re = unif(re_lo, re_hi);
  double im = unif(-im_half_width, im_half_width);
  return {re, im};
}

namespace {
CVec solve_targets(const InitialDatum& D, const std::vector<RVec>& rows,
                   const CVec& targets, Complex center) {
  // z = sum_k t_k b_k over the Lambda~ basis; least squares via normal equations
  const auto& B = D.Lt.basis;
  const int K = int(B.size());
  const int n = int(rows.size());
  std::vector<CVec> G(K, CVec(K, Complex{0.0, 0.0}));
  CVec rhs(K, Complex{0.0, 0.0});
  std::vector<RVec> cols(K, RVec(n, 0.0));
  for (int k = 0; k < K; ++k)
    for (int i = 0; i < n; ++i) cols[k][i] = dot(rows[i], B[k]);
  for (int a = 0; a < K; ++a) {
    for (int b = 0; b < K; ++b) {
      Complex s{0.0, 0.0};
      for (int i = 0; i < n; ++i) s += cols[a][i] * cols[b][i];
      G[a][b] = s;
    }
    Complex s{0.0, 0.0};
    for (int i = 0; i < n; ++i) s += cols[a][i] * targets[i];
    rhs[a] = s;
  }
  // Gaussian elimination with partial pivoting; singular directions -> 0
  std::vector<int> used;
  for (int p = 0; p < K; ++p) {
    int piv = p;
    for (int r = p + 1; r < K; ++r)
      if (std::abs(G[r][p]) > std::abs(G[piv][p])) piv = r;
    std::swap(G[p], G[piv]);
    std::swap(rhs[p], rhs[piv]);
    if (std::abs(G[p][p]) < 1e-12) continue;
    for (int r = 0; r < K; ++r) {
      if (r == p) continue;
      Complex f = G[r][p] / G[p][p];
      for (int c = p; c < K; ++c) G[r][c] -= f * G[p][c];
      rhs[r] -= f * rhs[p];
    }
  }
  CVec t(K, Complex{0.0, 0.0});
  for (int p = 0; p < K; ++p)
    t[p] = std::abs(G[p][p]) > 1e-12 ? rhs[p] / G[p][p] : Complex{0.0, 0.0};
  CVec z(D.dim, Complex{0.0, 0.0});
  for (int k = 0; k < K; ++k)
    for (int d = 0; d < D.dim; ++d) z[d] += t[k] * B[k][d];
  // central component (orthogonal to all roots), relevant for GL data
  if (D.family == Family::GL) {
    for (int d = 0; d < D.dim; ++d) z[d] += center / double(D.dim);
  }
  return z;
}
}  // namespace

CVec point_from_alpha_targets(const InitialDatum& D, const CVec& targets,
                              Complex center) {
  std::vector<RVec> rows;
  for (int i = 1; i <= D.rank; ++i) rows.push_back(to_rvec(D.roots[D.simple[i - 1]]));
  return solve_targets(D, rows, targets, center);
}

CVec point_from_alpha_tilde_targets(const InitialDatum& D, const CVec& targets,
                                    Complex center) {
  std::vector<RVec> rows;
  for (int i = 1; i <= D.rank; ++i) rows.push_back(D.tilde(D.simple[i - 1]));
  return solve_targets(D, rows, targets, center);
}

CVec Sampler::point_with_alpha_values(const InitialDatum& D, double re_lo,
                                      double re_hi, double im) {
  CVec targets(D.rank);
  for (int i = 0; i < D.rank; ++i) targets[i] = cunif(re_lo, re_hi, im);
  return point_from_alpha_targets(D, targets, cunif(-0.5, 0.5, im));
}

CVec Sampler::point_with_alpha_tilde_values(const InitialDatum& D, double re_lo,
                                            double re_hi, double im) {
  CVec targets(D.rank);
  for (int i = 0; i < D.rank; ++i) targets[i] = cunif(re_lo, re_hi, im);
  return point_from_alpha_tilde_targets(D, targets, cunif(-0.5, 0.5, im));
}

}  // namespace hcs

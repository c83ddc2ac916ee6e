#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hcs {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;
using RVec = std::vector<double>;
using IVec = std::vector<int>;

inline constexpr Complex I{0.0, 1.0};

/// q^e for real base 0<q<1 and complex exponent (principal branch; log q real).
inline Complex qpow(double q, const Complex& e) { return std::exp(e * std::log(q)); }
inline double qpow(double q, double e) { return std::exp(e * std::log(q)); }

/// Integer power by repeated multiplication (unambiguous for complex base).
inline Complex ipow(Complex b, long n) {
  if (n < 0) return 1.0 / ipow(b, -n);
  Complex r{1.0, 0.0};
  while (n > 0) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

inline Complex dot(const RVec& a, const CVec& b) {
  Complex s{0.0, 0.0};
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Complex dot(const CVec& a, const CVec& b) {
  Complex s{0.0, 0.0};
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double dot(const RVec& a, const RVec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double dot(const IVec& a, const RVec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Complex dot(const IVec& a, const CVec& b) {
  Complex s{0.0, 0.0};
  for (size_t i = 0; i < a.size(); ++i) s += double(a[i]) * b[i];
  return s;
}

inline RVec to_rvec(const IVec& v) { return RVec(v.begin(), v.end()); }

inline CVec to_cvec(const RVec& v) { return CVec(v.begin(), v.end()); }

inline RVec add(const RVec& a, const RVec& b) {
  RVec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline RVec sub(const RVec& a, const RVec& b) {
  RVec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

inline RVec scaled(const RVec& a, double s) {
  RVec r(a);
  for (auto& x : r) x *= s;
  return r;
}

inline CVec add(const CVec& a, const CVec& b) {
  CVec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline CVec add(const CVec& a, const RVec& b) {
  CVec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline CVec sub(const CVec& a, const RVec& b) {
  CVec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

inline CVec neg(const CVec& a) {
  CVec r(a);
  for (auto& x : r) x = -x;
  return r;
}

inline double norm2(const RVec& a) { return dot(a, a); }

/// Thrown when an evaluation lands within the pole-proximity guard of a
/// denominator; identity suites catch it and resample.
struct SingularPoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Small dense complex matrix (row-major), sized |W0| in practice.
struct CMat {
  int n = 0;
  std::vector<Complex> a;

  CMat() = default;
  explicit CMat(int n_) : n(n_), a(size_t(n_) * n_, Complex{0.0, 0.0}) {}
  static CMat identity(int n) {
    CMat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  Complex& operator()(int r, int c) { return a[size_t(r) * n + c]; }
  const Complex& operator()(int r, int c) const { return a[size_t(r) * n + c]; }

  CMat times(const CMat& o) const {
    CMat r(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        Complex v = (*this)(i, k);
        if (v == Complex{0.0, 0.0}) continue;
        for (int j = 0; j < n; ++j) r(i, j) += v * o(k, j);
      }
    return r;
  }
  CVec times(const CVec& v) const {
    CVec r(n, Complex{0.0, 0.0});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }
  double frobenius() const {
    double s = 0.0;
    for (const auto& x : a) s += std::norm(x);
    return std::sqrt(s);
  }
  CMat minus(const CMat& o) const {
    CMat r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
    return r;
  }
};

}  // namespace hcs

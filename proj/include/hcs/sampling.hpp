#pragma once

#include <random>

#include "hcs/rootdata.hpp"

namespace hcs {

/// Deterministic point sampler: a fixed seed reproduces every sample stream.
class Sampler {
 public:
  explicit Sampler(uint64_t seed) : eng_(seed) {}

  double unif(double a, double b);
  Complex cunif(double re_lo, double re_hi, double im_half_width);

  /// z in E_C with alpha_i(z) prescribed inside a real box (plus imaginary
  /// jitter); the remaining directions (GL center) get generic values.
  CVec point_with_alpha_values(const InitialDatum& D, double re_lo, double re_hi,
                               double im = 0.45);
  /// xi with alpha~_i(xi) in the box.
  CVec point_with_alpha_tilde_values(const InitialDatum& D, double re_lo, double re_hi,
                                     double im = 0.45);

  /// retries fn up to `tries` times on SingularPoint; rethrows when exhausted
  template <typename Fn>
  auto with_retries(int tries, Fn&& fn) {
    for (int t = 0;; ++t) {
      try {
        return fn();
      } catch (const SingularPoint&) {
        if (t + 1 >= tries) throw;
      }
    }
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

/// Solves for z in the span of the lattice basis with alpha_i(z) = targets
/// (targets padded/ignored beyond the rank); central directions fixed by `center`.
CVec point_from_alpha_targets(const InitialDatum& D, const CVec& targets,
                              Complex center = Complex{0.0, 0.0});
CVec point_from_alpha_tilde_targets(const InitialDatum& D, const CVec& targets,
                                    Complex center = Complex{0.0, 0.0});

}  // namespace hcs

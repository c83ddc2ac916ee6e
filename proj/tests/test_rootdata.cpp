#include <doctest.h>

#include "hcs/sampling.hpp"
#include "hcs/series.hpp"

using namespace hcs;

namespace {
InitialDatum b2_generic(double q = 0.5) {
  std::map<std::string, KappaInput> kin;
  KappaInput ks, kl;
  ks.a = 0.31;
  ks.a2 = 0.17;
  ks.a1 = 0.23;
  ks.a21 = 0.11;
  kl.a = 0.27;
  kin["short"] = ks;
  kin["long"] = kl;
  return build_datum(Family::BKoornwinder, 2, Bullet::T, kin, q);
}
}  // namespace

TEST_CASE("Weyl tables for the supported families") {
  InitialDatum A2 = build_datum_simple(Family::GL, 2, Bullet::U, 0.3, 0.5);
  CHECK(A2.W0.size() == 6);
  CHECK(A2.W0.length[A2.w_longest()] == 3);
  CHECK(A2.istar[1] == 2);
  CHECK(A2.istar[2] == 1);

  InitialDatum B2 = b2_generic();
  CHECK(B2.W0.size() == 8);
  CHECK(B2.W0.length[B2.w_longest()] == 4);
  CHECK(int(B2.positive.size()) == 4);
  CHECK(B2.istar[1] == 1);
  CHECK(B2.istar[2] == 2);

  std::map<std::string, KappaInput> kin;
  KappaInput ks, kl;
  ks.a = 0.31;
  ks.a2 = 0.17;
  ks.a1 = 0.23;
  ks.a21 = 0.11;
  kl.a = 0.27;
  kin["short"] = ks;
  kin["long"] = kl;
  InitialDatum B3 = build_datum(Family::BKoornwinder, 3, Bullet::T, kin, 0.5);
  CHECK(B3.W0.size() == 48);
  CHECK(B3.W0.length[B3.w_longest()] == 9);

  // reduced words multiply back to the element they label
  for (int e = 0; e < B2.W0.size(); ++e) {
    int acc = 0;
    for (int letter : B2.W0.words[e])
      acc = B2.W0.mult[acc][B2.reflection_of(B2.simple[letter - 1])];
    CHECK(acc == e);
  }
}

TEST_CASE("rank-one datum and derived constants") {
  InitialDatum A1 = build_datum_simple(Family::ASemisimple, 1, Bullet::T, 0.3, 0.5);
  CHECK(A1.roots.size() == 2);
  CHECK(A1.psi == A1.theta);
  // rho = (kappa_a + kappa_a1) alpha~^vee / 2
  RVec expect = scaled(A1.tilde_covee(A1.psi), 0.5 * (0.3 + 0.3));
  for (int d = 0; d < A1.dim; ++d) CHECK(A1.rho[d] == doctest::Approx(expect[d]));
}

TEST_CASE("GL datum structure") {
  InitialDatum G = build_datum_simple(Family::GL, 1, Bullet::U, 0.3, 0.5);
  CHECK(G.dim == 2);
  CHECK(G.mu(G.psi) == 1.0);
  CHECK(G.L.same_as(G.Lt));
  // mu = 1 for every root of the GL datum
  for (size_t r = 0; r < G.roots.size(); ++r) CHECK(G.mu(int(r)) == 1.0);
}

TEST_CASE("AW parameters") {
  InitialDatum B2 = b2_generic();
  // product of the four defining exponentials on the short orbit:
  // abcd = q_alpha^2 q^{2(k_a + k_a1)}, dual product swaps k_a1 <-> k_2a
  AwQuadruple a = B2.aw(B2.psi);
  Complex prod = a.a * a.b * a.c * a.d;
  CHECK(std::abs(prod - a.q_alpha * a.q_alpha * qpow(0.5, 2.0 * (0.31 + 0.23))) <
        1e-15);
  AwQuadruple at = B2.aw_dual(B2.psi);
  CHECK(std::abs(at.a * at.b * at.c * at.d -
                 at.q_alpha * at.q_alpha * qpow(0.5, 2.0 * (0.31 + 0.17))) < 1e-15);
  // orbit constancy
  for (size_t r = 0; r < B2.roots.size(); ++r) {
    if (B2.orbit_id[r] != B2.orbit_id[B2.psi]) continue;
    AwQuadruple b = B2.aw(int(r));
    CHECK(std::abs(a.a - b.a) == 0.0);
    CHECK(std::abs(a.d - b.d) == 0.0);
  }
  // q-ultraspherical orbit: (a~,b~,c~,d~) = (q^{2k}, -1, q_a q^{2k}, -q_a)
  int lroot = -1;
  for (int p : B2.positive)
    if (B2.orbit_id[p] != B2.orbit_id[B2.psi]) lroot = p;
  AwQuadruple lt = B2.aw_dual(lroot);
  CHECK(std::abs(lt.a - qpow(0.5, 2.0 * 0.27)) < 1e-15);
  CHECK(std::abs(lt.b + 1.0) < 1e-15);
  CHECK(std::abs(lt.c - lt.q_alpha * qpow(0.5, 2.0 * 0.27)) < 1e-15);
  CHECK(std::abs(lt.d + lt.q_alpha) < 1e-15);
  // kappa = 0 gives (1, -1, q_alpha, -q_alpha)
  InitialDatum Z = build_datum_simple(Family::GL, 2, Bullet::U, 0.0, 0.5);
  AwQuadruple z = Z.aw(Z.psi);
  CHECK(std::abs(z.a - 1.0) < 1e-15);
  CHECK(std::abs(z.b + 1.0) < 1e-15);
  CHECK(std::abs(z.c - z.q_alpha) < 1e-15);
  CHECK(std::abs(z.d + z.q_alpha) < 1e-15);
}

TEST_CASE("kappa identification rules") {
  // underdetermined AW orbit is rejected
  std::map<std::string, KappaInput> kin;
  KappaInput ks;
  ks.a = 0.3;
  kin["short"] = ks;
  CHECK_THROWS_AS(build_datum(Family::BKoornwinder, 1, Bullet::T, kin, 0.5),
                  std::invalid_argument);
  // conflicting tied labels on a q-ultraspherical orbit are rejected
  std::map<std::string, KappaInput> kin2;
  KappaInput kl;
  kl.a = 0.3;
  kl.a2 = 0.4;  // forced equal by (Lambda, alpha^vee) = Z
  kin2["all"] = kl;
  CHECK_THROWS_AS(build_datum(Family::GL, 2, Bullet::U, kin2, 0.5),
                  std::invalid_argument);
  // q outside (0,1)
  CHECK_THROWS_AS(build_datum_simple(Family::GL, 2, Bullet::U, 0.3, 1.5),
                  std::domain_error);
}

TEST_CASE("rho properties and duality involution") {
  InitialDatum B2 = b2_generic();
  RVec w0rho = B2.W0.apply(B2.w_longest(), B2.rho);
  for (int d = 0; d < B2.dim; ++d) CHECK(w0rho[d] == doctest::Approx(-B2.rho[d]));
  RVec w0rt = B2.W0.apply(B2.w_longest(), B2.rhotil);
  for (int d = 0; d < B2.dim; ++d) CHECK(w0rt[d] == doctest::Approx(-B2.rhotil[d]));

  const InitialDatum& Dt = B2.dual();
  const InitialDatum& Ddd = Dt.dual();
  for (size_t o = 0; o < B2.kappas.size(); ++o) {
    CHECK(B2.kappas[o].a == doctest::Approx(Ddd.kappas[o].a));
    CHECK(B2.kappas[o].a2 == doctest::Approx(Ddd.kappas[o].a2));
    CHECK(B2.kappas[o].a1 == doctest::Approx(Ddd.kappas[o].a1));
    CHECK(B2.kappas[o].a21 == doctest::Approx(Ddd.kappas[o].a21));
  }
  // dual AW parameters coincide with AW parameters of the dual datum
  for (int p : B2.positive) {
    AwQuadruple a = B2.aw_dual(p), b = Dt.aw(p);
    CHECK(std::abs(a.a - b.a) < 1e-15);
    CHECK(std::abs(a.b - b.b) < 1e-15);
    CHECK(std::abs(a.c - b.c) < 1e-15);
    CHECK(std::abs(a.d - b.d) < 1e-15);
  }
  // all-equal kappa is self-dual
  InitialDatum U = build_datum_simple(Family::GL, 2, Bullet::U, 0.3, 0.5);
  CHECK(U.dual().kappas[0].a2 == doctest::Approx(U.kappas[0].a2));
}

TEST_CASE("affine lengths by two algorithms and reduced words") {
  InitialDatum B2 = b2_generic();
  Sampler smp(991);
  for (int t = 0; t < 100; ++t) {
    RVec coeff(2);
    coeff[0] = std::round(smp.unif(-2.2, 2.2));
    coeff[1] = std::round(smp.unif(-2.2, 2.2));
    ExtAffine w{B2.Lt.vec(coeff), int(smp.engine()() % B2.W0.size())};
    int by_window = B2.ea_length(w);
    ReducedAffineWord word = B2.ea_reduced_word(w);
    CHECK(by_window == int(word.letters.size()));
    CHECK(B2.ea_length(word.omega) == 0);
    // the word multiplies back to w
    ExtAffine acc = word.omega;
    for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it)
      acc = B2.ea_mul(B2.s_affine(*it), acc);
    CHECK(B2.ea_eq(acc, w));
  }
}

TEST_CASE("tau(psi~) in rank one and minuscule residues") {
  // A1-type: tau(alpha~) = s_0 s_1, no omega part
  InitialDatum A1 = build_datum_simple(Family::ASemisimple, 1, Bullet::T, 0.3, 0.5);
  ExtAffine tau = A1.ea_translation(A1.tilde(A1.psi));
  ReducedAffineWord w = A1.ea_reduced_word(tau);
  REQUIRE(w.letters.size() == 2);
  CHECK(w.letters[0] == 0);
  CHECK(w.letters[1] == 1);
  CHECK(A1.ea_length(w.omega) == 0);
  CHECK(w.omega.w == 0);
  for (double t : w.omega.t) CHECK(std::abs(t) < 1e-12);

  // GL2: tau(e1) has a length-zero residue with minuscule translation part
  InitialDatum G2 = build_datum_simple(Family::GL, 1, Bullet::U, 0.3, 0.5);
  ExtAffine t1 = G2.ea_translation(RVec{1.0, 0.0});
  ReducedAffineWord w2 = G2.ea_reduced_word(t1);
  CHECK(G2.ea_length(w2.omega) == 0);
  CHECK(G2.is_minuscule_tilde(w2.omega.t));
  // u(nu) v(nu) = tau(nu) for the minuscule nu
  ExtAffine u = G2.u_of(RVec{1.0, 0.0});
  CHECK(G2.ea_length(u) == 0);
  ExtAffine v = G2.ea_mul(G2.ea_inv(u), t1);
  CHECK(std::abs(v.t[0]) + std::abs(v.t[1]) < 1e-12);  // v(nu) is linear
  CHECK(G2.ea_eq(G2.ea_mul(u, v), t1));
}

TEST_CASE("affine c-function") {
  InitialDatum B2 = b2_generic();
  // kappa = 0 everywhere makes c_a constant one
  InitialDatum Z = build_datum_simple(Family::GL, 2, Bullet::U, 0.0, 0.5);
  CVec z{Complex{0.3, 0.2}, Complex{-0.1, 0.4}, Complex{0.7, -0.3}};
  Complex c = Z.c_aff(Z.simple_affine(1), z);
  CHECK(std::abs(c - 1.0) < 1e-14);
  // deep asymptotics Re a(z) -> +infinity: all q-powers vanish, c -> 1
  CVec deep = point_from_alpha_targets(B2, CVec{Complex{40.0, 0.0}, Complex{40.0, 0.0}});
  Complex cd = B2.c_aff(AffRoot{B2.simple[0], 0}, deep);
  CHECK(std::abs(cd - 1.0) < 1e-10);
  // pole guard triggers on q^{2a(z)} = 1
  CVec sing = point_from_alpha_targets(B2, CVec{Complex{0.0, 0.0}, Complex{0.5, 0.0}});
  CHECK_THROWS_AS(B2.c_aff(AffRoot{B2.simple[0], 0}, sing), SingularPoint);

  // c_{tau(psi~)} equals the operator coefficient at 50 points
  Sampler smp(777);
  ExtAffine tau = B2.ea_translation(B2.tilde(B2.psi));
  for (int t = 0; t < 50; ++t) {
    CVec p = smp.point_with_alpha_values(B2, -1.2, 1.2);
    try {
      Complex cw = B2.c_w_product(tau, p, +1);
      Complex A = eval_A_shifted(B2, 0, p);
      CHECK(std::abs(cw - A) / std::abs(A) < 1e-12);
    } catch (const SingularPoint&) {
      continue;
    }
  }
}

TEST_CASE("dual datum of Koornwinder data permutes the multiplicity labels") {
  std::map<std::string, KappaInput> kin;
  KappaInput ks, kl;
  ks.a = 0.31;
  ks.a2 = 0.17;
  ks.a1 = 0.23;
  ks.a21 = 0.11;
  kl.a = 0.27;
  kin["short"] = ks;
  kin["long"] = kl;
  InitialDatum D = build_datum(Family::BKoornwinder, 2, Bullet::T, kin, 0.5);
  const InitialDatum& Dt = D.dual();
  CHECK(Dt.family == Family::BKoornwinder);
  CHECK(Dt.W0.size() == 8);
  int so = D.orbit_id[D.psi];
  CHECK(Dt.kappas[so].a == doctest::Approx(0.31));
  CHECK(Dt.kappas[so].a2 == doctest::Approx(0.23));   // swapped with alpha1
  CHECK(Dt.kappas[so].a1 == doctest::Approx(0.17));
  CHECK(Dt.kappas[so].a21 == doctest::Approx(0.11));
  CHECK(Dt.L.same_as(D.Lt));
}

TEST_CASE("GL(3) lattices and normalization") {
  InitialDatum G = build_datum_simple(Family::GL, 2, Bullet::U, 0.3, 0.5);
  CHECK(G.dim == 3);
  CHECK(G.L.rank() == 3);
  CHECK(G.L.same_as(G.Lt));
  CHECK(G.L.contains(RVec{1.0, 0.0, 0.0}));
  CHECK(G.L.contains(RVec{2.0, -1.0, 3.0}));
  CHECK_FALSE(G.L.contains(RVec{0.5, 0.0, 0.0}));
  for (size_t r = 0; r < G.roots.size(); ++r) CHECK(G.mu(int(r)) == 1.0);
}

TEST_CASE("alternative reduced words multiply to the same matrices") {
  InitialDatum B2 = b2_generic();
  // peel right descents to build a second reduced word per element
  for (int e = 0; e < B2.W0.size(); ++e) {
    int cur = e;
    std::vector<int> word;
    while (B2.W0.length[cur] > 0) {
      for (int i = 1; i <= B2.rank; ++i) {
        int si = B2.reflection_of(B2.simple[i - 1]);
        if (B2.W0.length[B2.W0.mult[cur][si]] < B2.W0.length[cur]) {
          word.push_back(i);
          cur = B2.W0.mult[cur][si];
          break;
        }
      }
    }
    CHECK(int(word.size()) == B2.W0.length[e]);
    int acc = 0;  // w = (... s_{i2} s_{i1}) read back right-to-left
    for (auto it = word.rbegin(); it != word.rend(); ++it)
      acc = B2.W0.mult[B2.reflection_of(B2.simple[*it - 1])][acc];
    CHECK(acc == e);
  }
  // length changes by exactly one under any simple reflection
  for (int e = 0; e < B2.W0.size(); ++e)
    for (int i = 1; i <= B2.rank; ++i) {
      int si = B2.reflection_of(B2.simple[i - 1]);
      int d = B2.W0.length[B2.W0.mult[si][e]] - B2.W0.length[e];
      CHECK((d == 1 || d == -1));
    }
}

#include <doctest.h>

#include <random>

#include "borel/pseries.hpp"

using namespace borel;

namespace {

std::vector<TorusCharacter> tame_characters(int p) {
  auto f = Field::prime(p);
  std::vector<TorusCharacter> out;
  for (int i1 = 0; i1 < std::max(1, p - 1); ++i1)
    for (int i2 = 0; i2 < std::max(1, p - 1); ++i2)
      for (Elem s1 = 1; s1 < static_cast<Elem>(p); ++s1)
        for (Elem s2 = 1; s2 < static_cast<Elem>(p); ++s2) out.push_back(TorusCharacter::make(f, i1, i2, s1, s2));
  return out;
}

std::vector<Mat2> pro_p_iwahori_gens(int p) {
  return {upper_unipotent(1), lower_unipotent(p), diagonal(1 + p, 1), diagonal(1, 1 + p)};
}

Mat2 random_k_word(std::mt19937_64& rng, int p) {
  const std::vector<Mat2> gens = {upper_unipotent(1), lower_unipotent(1), weyl_s(), diagonal(primitive_root(p), 1),
                                  lower_unipotent(p)};
  Mat2 m = Mat2::identity();
  for (int i = 0; i < 4; ++i) m = m * gens[rng() % gens.size()];
  return m;
}

PSFunction random_function(std::mt19937_64& rng, const PrincipalSeries& ps, int level) {
  Vec v(ps.point_count(level));
  for (auto& x : v) x = static_cast<Elem>(rng() % ps.field()->size());
  return ps.from_values(level, v);
}

}  // namespace

TEST_SUITE("pseries") {
  TEST_CASE("point counts") {
    for (int p : {2, 3, 5}) {
      const PrincipalSeries ps(TorusCharacter::trivial(Field::prime(p)));
      std::size_t pn = p;
      for (int N = 1; N <= 3; ++N, pn *= p) CHECK(ps.point_count(N) == pn + pn / p);
    }
  }

  TEST_CASE("I1-invariants have dimension two") {
    for (int p : {2, 3})
      for (const auto& chi : tame_characters(p)) {
        const PrincipalSeries ps(chi);
        for (int N = 1; N <= 2; ++N) {
          const auto inv = ps.i1_invariants(N);
          CHECK(inv.size() == 2);
          // Oracle: common kernel of g - 1 over the generators.
          const auto& f = *ps.field();
          const std::size_t n = ps.point_count(N);
          const auto gens = pro_p_iwahori_gens(p);
          Matrix stacked(n * gens.size(), n);
          for (std::size_t b = 0; b < gens.size(); ++b) {
            const Matrix a = ps_action_matrix(ps, gens[b], N, N);
            for (std::size_t i = 0; i < n; ++i)
              for (std::size_t j = 0; j < n; ++j) stacked(b * n + i, j) = i == j ? f.sub(a(i, j), 1) : a(i, j);
          }
          CHECK(n - rank(f, stacked) == 2);
          for (const auto& x : inv)
            for (const Mat2& g : pro_p_iwahori_gens(p)) CHECK(ps.equal(ps.act(g, x), x));
        }
      }
  }

  TEST_CASE("phi1 and phi2") {
    for (int p : {2, 3})
      for (const auto& chi : tame_characters(p)) {
        const PrincipalSeries ps(chi);
        CHECK(ps.eval_at_identity(ps.phi1()) == 1);
        CHECK(ps.eval_at_identity(ps.phi2()) == 0);
        CHECK(ps.phi1().level == 1);
        CHECK(ps.eval(ps.phi2(), weyl_s()) == 1);
        for (const Mat2& g : pro_p_iwahori_gens(p)) {
          CHECK(ps.equal(ps.act(g, ps.phi1()), ps.phi1()));
          CHECK(ps.equal(ps.act(g, ps.phi2()), ps.phi2()));
        }
      }
  }

  TEST_CASE("eigenvalue of the neighbour sum on phi2") {
    for (int p : {2, 3, 5})
      for (const auto& chi : tame_characters(p)) {
        const PrincipalSeries ps(chi);
        const EigenRelation e = eigen_relation(ps);
        CHECK(e.residual_zero);
        CHECK(e.lambda == chi.s2);
        CHECK(ps.equal(e.hecke_sum, ps.scale(e.lambda, ps.phi2())));
      }
  }

  TEST_CASE("levels are coherent") {
    std::mt19937_64 rng(5);
    for (int p : {2, 3}) {
      const PrincipalSeries ps(tame_characters(p).back());
      for (int i = 0; i < 30; ++i) {
        const PSFunction f = random_function(rng, ps, 1);
        const PSFunction up = ps.refine(f, 3);
        CHECK(up.level == 3);
        CHECK(ps.equal(f, up));
        CHECK(ps.minimize(up) == f);
        const Mat2 k = random_k_word(rng, p);
        CHECK(ps.eval(f, k) == ps.eval(up, k));
      }
    }
  }

  TEST_CASE("evaluation is equivariant") {
    std::mt19937_64 rng(9);
    for (int p : {2, 3})
      for (const auto& chi : tame_characters(p)) {
        const PrincipalSeries ps(chi);
        for (int i = 0; i < 5; ++i) {
          const PSFunction f = random_function(rng, ps, 1);
          const Mat2 g = random_k_word(rng, p), h = random_k_word(rng, p);
          CHECK(ps.eval(ps.act(g, f), h) == ps.eval(f, h * g));
          const Mat2 b = upper_unipotent(1) * diagonal(primitive_root(p), 1);
          CHECK(ps.eval(f, b * h) == ps.field()->mul(chi.value(b), ps.eval(f, h)));
          CHECK(ps.equal(ps.act(g, ps.act(h, f)), ps.act(g * h, f)));
        }
      }
  }

  TEST_CASE("centre acts through the character") {
    std::mt19937_64 rng(11);
    for (int p : {2, 3})
      for (const auto& chi : tame_characters(p)) {
        const PrincipalSeries ps(chi);
        const auto& f = *ps.field();
        const PSFunction x = random_function(rng, ps, 2);
        CHECK(ps.equal(ps.act(diagonal(p, p), x), ps.scale(f.mul(chi.s1, chi.s2), x)));
        const int g = primitive_root(p);
        CHECK(ps.equal(ps.act(diagonal(g, g), x), ps.scale(f.pow(f.from_int(g), chi.i1 + chi.i2), x)));
      }
  }

  TEST_CASE("determinant characters split over the Borel") {
    std::mt19937_64 rng(13);
    for (int p : {2, 3, 5}) {
      auto f = Field::prime(p);
      for (int j = 0; j < std::max(1, p - 1); ++j)
        for (Elem psi_p = 1; psi_p < static_cast<Elem>(p); ++psi_p) {
          const PrincipalSeries ps(TorusCharacter::from_det(f, j, psi_p));
          const DetSplitting split(ps);
          CHECK(split.project(split.constant()) == 1);
          const auto gens = borel_generators(p);
          for (int i = 0; i < 50; ++i) {
            Mat2 b = Mat2::identity();
            for (int n = 0; n < 3; ++n) b = b * gens[rng() % gens.size()];
            const PSFunction x = random_function(rng, ps, 1);
            const PSFunction bx = ps.act(b, x);
            CHECK(split.project(bx) == f->mul(split.psi_det(b), split.project(x)));
            CHECK(ps.eval_at_identity(split.kappa_part(x)) == 0);
            CHECK(ps.equal(ps.add(split.kappa_part(x), split.include(split.project(x))), x));
            CHECK(ps.equal(ps.act(b, split.include(1)), split.include(split.psi_det(b))));
            const PSFunction k = split.kappa_part(x);
            CHECK(ps.equal(split.twist(split.untwist(k)), k));
          }
        }
    }
    CHECK_THROWS_AS(DetSplitting(PrincipalSeries(TorusCharacter::make(Field::prime(3), 0, 1, 1, 1))),
                    std::invalid_argument);
    CHECK_THROWS_AS(DetSplitting(PrincipalSeries(TorusCharacter::make(Field::prime(3), 0, 0, 1, 2))),
                    std::invalid_argument);
  }

  TEST_CASE("Borel eigenvectors of the trivial character are constants") {
    for (int p : {2, 3}) {
      const PrincipalSeries ps(TorusCharacter::trivial(Field::prime(p)));
      for (int N = 1; N <= 2; ++N) {
        const auto eig = ps.p_eigenvectors(TorusCharacter::trivial(ps.field()), N, false);
        REQUIRE(eig.size() == 1);
        for (Elem v : eig.front().values) CHECK(v == eig.front().values.front());
        CHECK(ps.p_eigenvectors(TorusCharacter::trivial(ps.field()), N, true).empty());
      }
    }
  }

  TEST_CASE("level overflow") {
    const PrincipalSeries ps(TorusCharacter::trivial(Field::prime(3)), 2);
    CHECK_NOTHROW(ps.act(weyl_t(3), ps.phi1()));
    CHECK_THROWS_WITH_AS(ps.act(weyl_t(3) * weyl_t(3), ps.phi1()), "level overflow", LevelOverflow);
    CHECK_THROWS_AS(ps.refine(ps.phi1(), 3), LevelOverflow);
  }
}

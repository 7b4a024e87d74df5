#include <doctest.h>

#include <random>

#include "borel/lab.hpp"

using namespace borel;

TEST_SUITE("lab") {
  TEST_CASE("recursion length equals the power of T") {
    for (int p : {2, 3}) {
      auto f = Field::prime(p);
      for (int r = 1; r < p; ++r)
        for (int m = 0; m < std::max(1, p - 1); ++m)
          for (int n = 1; n <= 2; ++n) {
            const CindModel model(Weight(f, r, m), HeckeIdeal::parse(f, n == 1 ? "T" : "T^2"), 3);
            const RecursionResult rec = recursion(model, model.phi(), 10);
            REQUIRE(rec.n.has_value());
            CHECK(*rec.n == n);
            CHECK(rec.all_i1_fixed);
            CHECK(rec.sequence.size() == static_cast<std::size_t>(n + 1));
            for (int i = 0; i < n; ++i) CHECK_FALSE(model.is_zero(rec.sequence[i]));
          }
    }
  }

  TEST_CASE("recursion respects the bound") {
    auto f = Field::prime(3);
    const CindModel model(Weight(f, 1, 0), HeckeIdeal::parse(f, "T^2"), 3);
    const RecursionResult rec = recursion(model, model.phi(), 1);
    CHECK_FALSE(rec.n.has_value());
    CHECK(rec.sequence.size() == 2);
  }

  TEST_CASE("s-translate reconstruction, compact induction") {
    for (int p : {2, 3}) {
      auto f = Field::prime(p);
      for (int r = 1; r < p; ++r) {
        const CindModel model(Weight(f, r, 0), HeckeIdeal::parse(f, "T^2"), 3);
        const RecursionResult rec = recursion(model, model.phi(), 10);
        REQUIRE(rec.n == 2);
        const LemmaSResult ls = lemma_s_check(model, rec.sequence[1]);
        CHECK(ls.pass);
        CHECK(ls.direct == ls.reconstruction);
      }
    }
    CHECK(lemma_s_elements(5).size() == 4);
  }

  TEST_CASE("s-translate reconstruction, principal series") {
    auto f = Field::prime(3);
    const PSModel model(TorusCharacter::trivial(f), 2, 4);
    const auto fixed = model.i1_fixed();
    Matrix sums(model.dim(), fixed.size());
    for (std::size_t j = 0; j < fixed.size(); ++j) {
      const Vec s = model.hecke_sum(fixed[j]);
      for (std::size_t i = 0; i < s.size(); ++i) sums(i, j) = s[i];
    }
    const auto ker = kernel(*f, sums);
    REQUIRE_FALSE(ker.empty());
    for (const auto& c : ker) {
      Vec v(model.dim(), 0);
      for (std::size_t j = 0; j < fixed.size(); ++j) v = model.add(v, model.scale(c[j], fixed[j]));
      CHECK(lemma_s_check(model, v).pass);
    }
    const Vec phi2 = model.coords(model.series().phi2());
    CHECK_THROWS_AS(lemma_s_check(model, phi2), HypothesisViolated);
  }

  TEST_CASE("P-span yields an I1-fixed vector with irreducible K-span") {
    std::mt19937_64 rng(29);
    for (int p : {2, 3}) {
      auto f = Field::prime(p);
      const CindModel cind(Weight(f, 1, 0), HeckeIdeal::parse(f, "T"), 2, 3);
      const PSModel ps(TorusCharacter::make(f, 0, p == 2 ? 0 : 1, 1, 1), 2, 3);
      for (const RepHandle* model : {static_cast<const RepHandle*>(&cind), static_cast<const RepHandle*>(&ps)})
        for (int i = 0; i < 5; ++i) {
          const Vec w = random_frame_vector(*model, rng, 1);
          const GiveResult g = prop_give(*model, w, i);
          CHECK(g.certificate_valid);
          CHECK(g.i1_fixed);
          CHECK(g.irreducible);
          CHECK_FALSE(model->is_zero(g.v));
          CHECK(g.certificate.evaluate(*model, w) == g.v);
          CHECK(model->is_i1_fixed(g.v));
          for (const auto& [h, coeff] : g.certificate.terms) CHECK(is_member(h, SubgroupTag::P, p));
        }
    }
  }

  TEST_CASE("first nonvanishing step ignores scaling") {
    std::mt19937_64 rng(31);
    auto f = Field::prime(3);
    const CindModel model(Weight(f, 2, 1), HeckeIdeal::parse(f, "T"), 2, 3);
    const auto fixed = model.i1_fixed();
    REQUIRE_FALSE(fixed.empty());
    for (int i = 0; i < 5; ++i) {
      Vec v(model.dim(), 0);
      for (const auto& x : fixed) v = model.add(v, model.scale(static_cast<Elem>(rng() % 3), x));
      if (model.is_zero(v)) v = fixed.front();
      const NextResult a = lemma_next(model, v), b = lemma_next(model, model.scale(2, v));
      CHECK(a.j == b.j);
      CHECK(b.w == model.scale(2, a.w));
    }
  }

  TEST_CASE("P-generation of small quotients") {
    auto f = Field::prime(2);
    const CindModel model(Weight(f, 1, 0), HeckeIdeal::parse(f, "T"), 4, 5);
    const std::vector<Vec> starts = {model.phi()};
    const GenerationReport g = p_generation_evidence(model, starts, 1, 4);
    CHECK(g.pass);
    CHECK(g.target_dim == 6);
    REQUIRE(g.trials.size() == 1);
    CHECK(g.trials[0].contains_target);
    const GenerationReport none = p_generation_evidence(model, starts, 1, 0);
    CHECK_FALSE(none.pass);
    CHECK(none.note == "insufficient depth");
    CHECK(p_generation_set(3).size() == 6);
  }

  TEST_CASE("homomorphism transfer cases") {
    for (int p : {2, 3})
      for (HomCase c : {HomCase::supersingular, HomCase::sp_to_ind, HomCase::char_rigidity, HomCase::princ_endo}) {
        HomCaseParams prm;
        prm.p = p;
        prm.r = 1;
        prm.radius = 2;
        const HomCaseReport rep = hom_transfer_case(c, prm);
        INFO(hom_case_name(c), " p=", p);
        CHECK(rep.pass);
        CHECK(hom_case_from_name(hom_case_name(c)) == c);
      }
    CHECK_FALSE(hom_case_from_name("nope").has_value());
  }
}

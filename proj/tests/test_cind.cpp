#include <doctest.h>

#include <random>

#include "borel/cind.hpp"
#include "borel/lab.hpp"

using namespace borel;

namespace {

Mat2 random_word(std::mt19937_64& rng, int p, int max_len) {
  const std::vector<Mat2> gens = {upper_unipotent(1), upper_unipotent(PadicRational(1, p)), lower_unipotent(p),
                                  lower_unipotent(1), diagonal(primitive_root(p), 1), weyl_s(),
                                  weyl_t(p),          weyl_pi(p),                         weyl_t(p).inverse()};
  Mat2 m = Mat2::identity();
  const int len = 1 + static_cast<int>(rng() % max_len);
  for (int i = 0; i < len; ++i) m = m * gens[rng() % gens.size()];
  return m;
}

CindElement random_element(std::mt19937_64& rng, const CindSpace& s, int radius) {
  const auto ball = s.ball(radius);
  CindElement f;
  for (int i = 0; i < 3; ++i) {
    Vec v(s.fiber());
    for (auto& x : v) x = static_cast<Elem>(rng() % s.field()->size());
    f = s.add(f, s.term(ball[rng() % ball.size()], v));
  }
  return f.is_zero() ? s.phi() : f;
}

CindElement neighbour_sum(const CindSpace& s, const CindElement& f) {
  CindElement out;
  for (int lam = 0; lam < s.p(); ++lam) out = s.add(out, s.act(upper_unipotent(lam) * weyl_t(s.p()), f));
  return out;
}

std::size_t ball_size(int p, int R) {
  std::size_t n = 1, sphere = p + 1;
  for (int i = 1; i <= R; ++i, sphere *= p) n += sphere;
  return n;
}

}  // namespace

TEST_SUITE("cind") {
  TEST_CASE("group action basics") {
    auto f = Field::prime(3);
    const CindSpace s(Weight(f, 1, 0));
    const CindElement phi = s.phi();
    CHECK(s.act(Mat2::identity(), phi) == phi);
    CHECK(s.act(diagonal(3, 3), phi) == phi);
    const Mat2 k = Mat2::of(2, 1, 3, 2);
    const CindElement kphi = s.act(k, phi);
    REQUIRE(kphi.terms.size() == 1);
    CHECK(kphi.terms.begin()->first == TreeVertex{0, PadicRational(0)});
    CHECK(kphi.terms.begin()->second == s.weight().act(k, s.fixed_vector()));
    CHECK(s.radius(CindElement{}) == -1);
    CHECK(s.radius(phi) == 0);
  }

  TEST_CASE("action composes") {
    std::mt19937_64 rng(3);
    for (int p : {2, 3}) {
      const CindSpace s(Weight(Field::prime(p), 1, 0));
      for (int i = 0; i < 100; ++i) {
        const Mat2 g = random_word(rng, p, 3), h = random_word(rng, p, 3);
        const CindElement x = random_element(rng, s, 2);
        CHECK(s.act(g, s.act(h, x)) == s.act(g * h, x));
      }
    }
  }

  TEST_CASE("hecke operator on phi, character weights") {
    for (int p : {2, 3, 5}) {
      auto f = Field::prime(p);
      for (int m = 0; m < std::max(1, p - 1); ++m) {
        const CindSpace s(Weight(f, 0, m));
        CindElement pi = s.act(weyl_pi(p), s.phi());
        if (m % 2 == 1) pi = s.scale(f->neg(1), pi);
        CHECK(s.hecke(s.phi()) == s.add(pi, neighbour_sum(s, s.phi())));
      }
    }
    // Trivial weight: the plain formula.
    const CindSpace triv(Weight(Field::prime(3), 0, 0));
    CHECK(triv.hecke(triv.phi()) == triv.add(triv.act(weyl_pi(3), triv.phi()), neighbour_sum(triv, triv.phi())));
  }

  TEST_CASE("hecke operator on phi, other weights") {
    for (int p : {2, 3, 5}) {
      auto f = Field::prime(p);
      for (int r = 1; r < p; ++r)
        for (int m = 0; m < std::max(1, p - 1); ++m) {
          const CindSpace s(Weight(f, r, m));
          const CindElement t = s.hecke(s.phi());
          CHECK(t == neighbour_sum(s, s.phi()));
          CHECK(s.radius(t) == 1);
          CHECK(t.terms.count(TreeVertex{0, PadicRational(0)}) == 0);
        }
    }
  }

  TEST_CASE("hecke operator is independent of the spanning set") {
    for (int p : {2, 3, 5})
      for (int r = 0; r < p; ++r) {
        const CindSpace s(Weight(Field::prime(p), r, 0));
        CHECK(s.hecke_on_basis_via(s.spanning_set()) == s.hecke_on_basis_via(s.alternate_spanning_set()));
        // Expanding s phi directly.
        const CindElement sphi = s.act(weyl_s(), s.phi());
        CHECK(s.hecke(sphi) == s.act(weyl_s(), s.hecke(s.phi())));
      }
  }

  TEST_CASE("hecke operator commutes with the group") {
    std::mt19937_64 rng(17);
    for (int p : {2, 3})
      for (int r = 0; r < p; ++r) {
        const CindSpace s(Weight(Field::prime(p), r, 0));
        for (int i = 0; i < 100; ++i) {
          const Mat2 g = random_word(rng, p, 3);
          const CindElement x = random_element(rng, s, 2);
          CHECK(s.hecke(s.act(g, x)) == s.act(g, s.hecke(x)));
          CHECK(s.radius(s.hecke(x)) == s.radius(x) + 1);
        }
      }
  }

  TEST_CASE("hecke operator is injective on small balls") {
    for (int p : {2, 3})
      for (int r = 0; r < p; ++r) {
        const CindSpace s(Weight(Field::prime(p), r, 0));
        for (int R = 0; R <= 3; ++R) {
          const BallIndex src = s.ball_index(R), dst = s.ball_index(R + 1);
          Matrix m(dst.dim(), src.dim());
          for (std::size_t j = 0; j < src.dim(); ++j) {
            const Vec col = dst.coords(s.hecke(src.basis_element(j)));
            for (std::size_t i = 0; i < col.size(); ++i) m(i, j) = col[i];
          }
          CHECK(rank(*s.field(), m) == src.dim());
        }
      }
  }

  TEST_CASE("neighbour sums do not depend on the residue lifts") {
    std::mt19937_64 rng(23);
    for (int p : {2, 3, 5}) {
      const CindSpace s(Weight(Field::prime(p), 1, 0));
      const CindElement base = neighbour_sum(s, s.phi());
      for (int i = 0; i < 20; ++i) {
        CindElement other;
        for (int lam = 0; lam < p; ++lam) {
          const PadicRational lift = PadicRational(lam) + PadicRational(p) * PadicRational(rng() % 100, 1 + p * (rng() % 5));
          other = s.add(other, s.act(upper_unipotent(lift) * weyl_t(p), s.phi()));
        }
        CHECK(other == base);
      }
    }
  }

  TEST_CASE("ideals") {
    auto f = Field::prime(3);
    CHECK(HeckeIdeal::parse(f, "T").degree() == 1);
    CHECK(HeckeIdeal::parse(f, "T^2").to_string() == "T^2");
    CHECK(HeckeIdeal::parse(f, "T-1").to_string() == "T+2");
    CHECK(HeckeIdeal::parse(f, " T + 1 ").coeffs == std::vector<Elem>{1, 1});
    CHECK_THROWS_AS(HeckeIdeal::parse(f, "X"), std::invalid_argument);
    CHECK_THROWS_AS(HeckeIdeal::parse(f, "T^"), std::invalid_argument);
    const CindSpace s(Weight(f, 1, 0));
    CHECK(s.apply(HeckeIdeal::parse(f, "T^2"), s.phi()) == s.hecke(s.hecke(s.phi())));
    CHECK(s.apply(HeckeIdeal::parse(f, "T+1"), s.phi()) == s.add(s.hecke(s.phi()), s.phi()));
  }

  TEST_CASE("quotient membership") {
    auto f = Field::prime(3);
    const CindSpace s(Weight(f, 1, 0));
    const HeckeIdeal t = HeckeIdeal::parse(f, "T"), t2 = HeckeIdeal::parse(f, "T^2");
    const MembershipResult a = quotient_membership(s, s.hecke(s.phi()), t, 1);
    CHECK(a.zero);
    CHECK(a.preimage == s.phi());
    for (int R = 0; R <= 2; ++R) {
      const MembershipResult b = quotient_membership(s, s.phi(), t, R);
      CHECK_FALSE(b.zero);
      CHECK(b.certified_radius == R + 1);
      CHECK_FALSE(b.certificate.empty());
    }
    CHECK(quotient_membership(s, s.hecke(s.hecke(s.phi())), t2, 2).zero);
    CHECK_FALSE(quotient_membership(s, s.hecke(s.phi()), t2, 1).zero);
    CHECK_THROWS_WITH_AS(quotient_membership(s, s.phi(), t, 5, 4), doctest::Contains("truncation too small"),
                         TruncationError);
  }

  TEST_CASE("ball images in the quotient by T") {
    for (int p : {2, 3})
      for (int r = 0; r < p; ++r) {
        auto f = Field::prime(p);
        const auto space = std::make_shared<const CindSpace>(Weight(f, r, 0));
        const CindQuotient q(space, HeckeIdeal::parse(f, "T"));
        for (int R = 0; R <= 3; ++R) {
          // T is injective and raises the radius by exactly one.
          const std::size_t expected = (r + 1) * (ball_size(p, R) - (R ? ball_size(p, R - 1) : 0));
          CHECK(q.ball_image_dim(R) == expected);
          CHECK(ball_image_dimension_oracle(*space, HeckeIdeal::parse(f, "T"), R) == expected);
        }
      }
  }

  TEST_CASE("I1-fixed vectors in balls") {
    auto f = Field::prime(3);
    const CindSpace s(Weight(f, 1, 0));
    const auto b0 = i1_fixed_ball(s, 0, std::nullopt);
    REQUIRE(b0.size() == 1);
    CHECK(b0.front() == s.phi());
    const std::vector<std::size_t> dims = {1, 3, 5};
    for (int R = 0; R <= 2; ++R) {
      const auto fixed = i1_fixed_ball(s, R, std::nullopt);
      CHECK(fixed.size() == dims[R]);
      // Oracle: the generic fixed-vector solve of the truncated model.
      CHECK(CindModel(Weight(f, 1, 0), std::nullopt, R).i1_fixed().size() == dims[R]);
    }
    // phi and the neighbour sum are both fixed at radius 1.
    const BallIndex ball = s.ball_index(1);
    SpanBuilder span(f, ball.dim());
    for (const auto& x : i1_fixed_ball(s, 1, std::nullopt)) span.insert(ball.coords(x));
    CHECK(span.contains(ball.coords(s.phi())));
    CHECK(span.contains(ball.coords(neighbour_sum(s, s.phi()))));

    const auto space = std::make_shared<const CindSpace>(Weight(f, 1, 0));
    const CindQuotient q(space, HeckeIdeal::parse(f, "T"));
    CHECK(q.is_zero(neighbour_sum(s, s.phi())));
    CHECK_FALSE(q.is_zero(s.phi()));
    CHECK(i1_fixed_ball(s, 1, HeckeIdeal::parse(f, "T")).size() == 2);
  }
}

#include <doctest.h>

#include <random>

#include "borel/padic.hpp"
#include "borel/weights.hpp"

using namespace borel;

namespace {

Mat2 random_word(std::mt19937_64& rng, int p, int max_len) {
  const int g = primitive_root(p);
  const std::vector<Mat2> gens = {upper_unipotent(1), upper_unipotent(PadicRational(1, p)), lower_unipotent(p),
                                  lower_unipotent(1), diagonal(g, 1),  diagonal(1, g),
                                  weyl_s(),           weyl_t(p),       weyl_pi(p),
                                  weyl_t(p).inverse()};
  Mat2 m = Mat2::identity();
  const int len = 1 + static_cast<int>(rng() % max_len);
  for (int i = 0; i < len; ++i) m = m * gens[rng() % gens.size()];
  return m;
}

// Elementary divisor gap after scaling to integral entries with a unit entry.
int distance_oracle(const Mat2& g, int p) {
  const Mat2 h = g.scaled(PadicRational::power(p, -g.min_valuation(p)));
  return h.det().valuation(p);
}

}  // namespace

TEST_SUITE("padic") {
  TEST_CASE("rationals normalize and carry valuations") {
    CHECK(PadicRational(6, 4) == PadicRational(3, 2));
    CHECK(PadicRational(-3, -6) == PadicRational(1, 2));
    CHECK(PadicRational(18, 1).valuation(3) == 2);
    CHECK(PadicRational(1, 9).valuation(3) == -2);
    CHECK(PadicRational(0).valuation(3) == kInfiniteValuation);
    CHECK(PadicRational(5, 7).residue(3) == 2);  // 5 / 7 = 2 / 1 mod 3
    CHECK(PadicRational::power(2, -3) == PadicRational(1, 8));
    CHECK((PadicRational(1, 3) + PadicRational(2, 3)) == PadicRational(1));
    CHECK_THROWS(PadicRational(0).inverse());
  }

  TEST_CASE("integer lifts of residues") {
    CHECK(unit_lift(0, 5) == PadicRational(0));
    CHECK(unit_lift(3, 5) == PadicRational(3));
    const PadicRational inv = unit_lift(3, 5).inverse();
    CHECK(inv.valuation(5) == 0);
    CHECK(inv.residue(5) == 2);
  }

  TEST_CASE("iwasawa on the named elements") {
    const int p = 3;
    auto t = iwasawa(weyl_t(p), p);
    CHECK(t.borel == weyl_t(p));
    CHECK(t.k == Mat2::identity());
    auto pi = iwasawa(weyl_pi(p), p);
    CHECK(pi.borel == diagonal(1, p));
    CHECK(pi.k == weyl_s());
    auto s = iwasawa(weyl_s(), p);
    CHECK(s.borel == Mat2::identity());
    CHECK(s.k == weyl_s());
    CHECK_THROWS_AS(iwasawa(Mat2::of(1, 1, 1, 1), p), SingularMatrix);
  }

  TEST_CASE("bruhat cells of the named elements") {
    const int p = 3;
    auto id = bruhat_side(Mat2::identity(), p);
    CHECK(id.side == BruhatSide::PI1);
    CHECK(id.borel == Mat2::identity());
    CHECK(id.unip == Mat2::identity());
    auto s = bruhat_side(weyl_s(), p);
    CHECK(s.side == BruhatSide::PsI1);
    CHECK(s.borel == Mat2::identity());
    CHECK(s.unip == Mat2::identity());
    auto low = bruhat_side(lower_unipotent(p), p);
    CHECK(low.side == BruhatSide::PI1);
    CHECK(low.borel == Mat2::identity());
    auto pi = bruhat_side(weyl_pi(p), p);
    CHECK(pi.side == BruhatSide::PsI1);
    CHECK(pi.borel == diagonal(1, p));
    CHECK(pi.unip == Mat2::identity());
  }

  TEST_CASE("vertex normal forms of the named elements") {
    const int p = 3;
    auto id = vertex_normalize(Mat2::identity(), p);
    CHECK(id.vertex == TreeVertex{0, PadicRational(0)});
    CHECK(id.kz == Mat2::identity());
    auto t = vertex_normalize(weyl_t(p), p);
    CHECK(t.vertex == TreeVertex{1, PadicRational(0)});
    CHECK(t.kz == Mat2::identity());
    auto u = vertex_normalize(upper_unipotent(PadicRational(1, p)), p);
    CHECK(u.vertex == TreeVertex{0, PadicRational(1, p)});
    CHECK(u.kz == Mat2::identity());
  }

  TEST_CASE("tree distances") {
    const int p = 3;
    CHECK(tree_distance(Mat2::identity(), p) == 0);
    CHECK(tree_distance(diagonal(9, 3), p) == 1);
    CHECK(tree_distance(upper_unipotent(PadicRational(1, 3)), p) == 2);
    CHECK(tree_distance(weyl_pi(p), p) == 1);
  }

  TEST_CASE("decompositions recombine on random words") {
    std::mt19937_64 rng(2024);
    for (int p : {2, 3, 5}) {
      for (int i = 0; i < 1000; ++i) {
        const Mat2 g = random_word(rng, p, 8);
        const Iwasawa iw = iwasawa(g, p);
        CHECK(iw.borel * iw.k == g);
        CHECK(is_member(iw.borel, SubgroupTag::P, p));
        CHECK(is_member(iw.k, SubgroupTag::K, p));

        const BruhatFactor bf = bruhat_side(g, p);
        const bool plain = g.c.valuation(p) > g.d.valuation(p);
        CHECK((bf.side == BruhatSide::PI1) == plain);
        CHECK((plain ? bf.borel * bf.unip : bf.borel * weyl_s() * bf.unip) == g);
        CHECK(is_member(bf.unip, SubgroupTag::I1, p));
        CHECK(is_member(bf.borel, SubgroupTag::P, p));

        const VertexForm vf = vertex_normalize(g, p);
        CHECK(vf.vertex.representative(p) * vf.kz == g);
        CHECK(in_kz(vf.kz, p));
        const VertexForm again = vertex_normalize(vf.vertex.representative(p), p);
        CHECK(again.vertex == vf.vertex);
        CHECK(again.kz == Mat2::identity());
        CHECK(tree_distance(g, p) == distance_oracle(g, p));
        CHECK(vertex_distance(vf.vertex, p) == tree_distance(g, p));
        // Central scaling does not move the vertex.
        CHECK(vertex_normalize(g.scaled(PadicRational(p)), p).vertex == vf.vertex);
      }
    }
  }

  TEST_CASE("conjugating lower unipotents by t") {
    std::mt19937_64 rng(5);
    for (int p : {2, 3, 5}) {
      for (int i = 0; i < 100; ++i) {
        const PadicRational beta(static_cast<long long>(rng() % 200) - 100, 1 + static_cast<long long>(rng() % 7));
        CHECK(weyl_t(p).inverse() * lower_unipotent(beta) * weyl_t(p) == lower_unipotent(PadicRational(p) * beta));
      }
    }
  }

  TEST_CASE("subgroup chain on samples") {
    std::mt19937_64 rng(9);
    for (int p : {2, 3, 5}) {
      int in_k1 = 0;
      for (int i = 0; i < 1000; ++i) {
        auto small = [&](int v) {
          return PadicRational(static_cast<long long>(rng() % 50), 1) * PadicRational::power(p, v);
        };
        const Mat2 g = Mat2::of(PadicRational(1) + small(static_cast<int>(rng() % 2)), small(static_cast<int>(rng() % 2)),
                                small(static_cast<int>(rng() % 2)), PadicRational(1) + small(static_cast<int>(rng() % 2)));
        const bool k1 = is_member(g, SubgroupTag::K1, p);
        const bool i1 = is_member(g, SubgroupTag::I1, p);
        const bool iw = is_member(g, SubgroupTag::I, p);
        const bool k = is_member(g, SubgroupTag::K, p);
        if (k1) ++in_k1;
        CHECK((!k1 || i1));
        CHECK((!i1 || iw));
        CHECK((!iw || k));
      }
      CHECK(in_k1 > 0);
    }
  }

  TEST_CASE("singular input") {
    CHECK_THROWS_AS(bruhat_side(Mat2::of(0, 0, 0, 0), 3), SingularMatrix);
  }
}

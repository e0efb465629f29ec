#include <doctest.h>

#include <cmath>

#include "bcbounds/auxdist.hpp"
#include "bcbounds/reference.hpp"
#include "bcbounds/regions.hpp"
#include "support.hpp"

using namespace bcbounds;

namespace {

constexpr double kStatedIUY = 0.22795037198129264;
constexpr double kStatedSum = 0.3711246704001127;
constexpr double kCvdmR1 = 0.24115240231759597;
constexpr double kCvdmSum = 0.3616428844219545;
constexpr double kSeparatingIUY = 0.18616739;
constexpr double kSeparatingIXZ = 0.18614606;

double ixy(const Dist& px, const BroadcastChannel& c, bool y) {
  const auto j = push_forward(px, c);
  return mutual_information(j.marginal({0, y ? std::size_t{1} : std::size_t{2}}));
}

AuxTriple copies(std::size_t n, const Dist& px) {
  std::vector<double> cells(n * n, 0.0);
  std::vector<Dist> rows;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) cells[u * n + v] = px[u];
      rows.push_back(Dist::point_mass(n, u));
    }
  return AuxTriple(JointDist({n, n}, cells), rows);
}

}  // namespace

TEST_SUITE("regions") {
  TEST_CASE("NE constraints at the stated triple") {
    const auto s = ne_outer_constraints(reference::stated_triple(), bssc(0.5));
    CHECK(s.r1_max == doctest::Approx(kStatedIUY).epsilon(1e-12));
    CHECK(s.r2_max == doctest::Approx(kStatedIUY).epsilon(1e-12));
    CHECK(s.sum_max_a == doctest::Approx(kStatedSum).epsilon(1e-12));
    CHECK(s.sum_max_b == doctest::Approx(kStatedSum).epsilon(1e-12));
    CHECK(std::abs(s.r1_max - reference::kStatedPrivate) <= 5e-4);
    CHECK(std::abs(s.sum_max() - reference::kStatedSumRate) <= 5e-4);
    CHECK(s.provenance.bound == BoundKind::kNe);
  }

  TEST_CASE("NE constraints with constant auxiliaries") {
    const Dist px({0.4, 0.6});
    const auto c = random_channel(2, 3, 2, 1);
    const auto s = ne_outer_constraints(AuxTriple(JointDist({1, 1}, {1.0}), {px}), c);
    CHECK(s.r1_max == doctest::Approx(0.0));
    CHECK(s.r2_max == doctest::Approx(0.0));
    CHECK(s.sum_max_a == doctest::Approx(ixy(px, c, false)).epsilon(1e-12));
    CHECK(s.sum_max_b == doctest::Approx(ixy(px, c, true)).epsilon(1e-12));
    const auto t = ne_outer_constraints_theorem31_form(AuxTriple(JointDist({1, 1}, {1.0}), {px}), c);
    CHECK(t.sum_max_a == doctest::Approx(0.0));
    CHECK(t.sum_max_b == doctest::Approx(0.0));
  }

  TEST_CASE("NE constraints with U = V = X on the noiseless channel") {
    const auto s = ne_outer_constraints(copies(2, Dist::uniform(2)), noiseless_channel(2));
    CHECK(s.r1_max == doctest::Approx(1.0));
    CHECK(s.r2_max == doctest::Approx(1.0));
    CHECK(s.sum_max_a == doctest::Approx(1.0));
    CHECK(s.sum_max_b == doctest::Approx(1.0));
  }

  TEST_CASE("theorem form versus lemma form") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 200; ++t) {
      const auto c = random_channel(2, 2, 3, 40 + t);
      const auto a = testing::random_triple(testing::draw_size(rng, 1, 4), testing::draw_size(rng, 1, 4), 2, rng,
                                            t % 2 == 0);
      const auto lemma = ne_outer_constraints(a, c), thm = ne_outer_constraints_theorem31_form(a, c);
      CHECK(thm.r1_max == lemma.r1_max);
      CHECK(thm.r2_max == lemma.r2_max);
      CHECK(thm.sum_max_a <= lemma.sum_max_a + 1e-10);
      CHECK(thm.sum_max_b <= lemma.sum_max_b + 1e-10);
      if (a.deterministic()) {
        CHECK(thm.sum_max_a == doctest::Approx(lemma.sum_max_a).epsilon(1e-10));
        CHECK(thm.sum_max_b == doctest::Approx(lemma.sum_max_b).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("theorem form at the stated triple") {
    // The stated triple puts X uniform in cell (0,0), so X is not a function
    // of (U,V) and the two forms differ; after the split they agree.
    const auto c = bssc(0.5);
    const auto a = reference::stated_triple();
    const auto split = split_construction(a);
    const auto lemma = ne_outer_constraints(split, c), thm = ne_outer_constraints_theorem31_form(split, c);
    CHECK(thm.sum_max_a == doctest::Approx(lemma.sum_max_a).epsilon(1e-10));
    CHECK(lemma.sum_max_a == doctest::Approx(kStatedSum).epsilon(1e-10));
    CHECK(ne_outer_constraints_theorem31_form(a, c).sum_max_a < kStatedSum - 1e-3);
  }

  TEST_CASE("constraint values are non-negative") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
      const auto c = random_channel(3, 2, 2, 300 + t);
      const auto a = testing::random_triple(testing::draw_size(rng, 1, 3), testing::draw_size(rng, 1, 3), 3, rng);
      for (const auto& s : {ne_outer_constraints(a, c), ne_outer_constraints_theorem31_form(a, c),
                            km_oy_constraints(a.v_pair(), c), km_oz_constraints(a.u_pair(), c)}) {
        CHECK(s.r1_max >= -1e-12);
        CHECK(s.r2_max >= -1e-12);
        CHECK(s.sum_max_a >= -1e-12);
        CHECK(s.sum_max_b >= -1e-12);
      }
    }
  }

  TEST_CASE("NE sets sit inside the matched Korner-Marton halves") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 300; ++t) {
      const std::size_t nx = testing::draw_size(rng, 2, 3);
      const auto c = random_channel(nx, testing::draw_size(rng, 2, 3), testing::draw_size(rng, 2, 3), 900 + t);
      const auto a = testing::random_triple(testing::draw_size(rng, 1, 4), testing::draw_size(rng, 1, 4), nx, rng);
      const auto ne = ne_outer_constraints(a, c);
      const auto oy = km_oy_constraints(a.v_pair(), c), oz = km_oz_constraints(a.u_pair(), c);
      // Every vertex of the NE pentagon is feasible for both halves.
      for (double l : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto p = support_point(ne, l);
        CHECK(point_in_constraints(p, oy, 1e-10));
        CHECK(point_in_constraints(p, oz, 1e-10));
      }
      CHECK(ne.r1_max <= oy.r1_max + 1e-10);
      CHECK(ne.r2_max <= oz.r2_max + 1e-10);
    }
  }

  TEST_CASE("single-receiver collapse at the constraint level") {
    std::mt19937_64 rng(5);
    const auto c = noiseless_channel(3);
    const double cap = std::log2(3.0);
    for (int t = 0; t < 100; ++t) {
      const auto a = testing::random_triple(testing::draw_size(rng, 1, 4), testing::draw_size(rng, 1, 4), 3, rng);
      CHECK(ne_outer_constraints(a, c).sum_max() <= cap + 1e-9);
    }
  }

  TEST_CASE("three-message form") {
    std::mt19937_64 rng(6);
    const auto c = random_channel(2, 2, 3, 7);
    // Everything constant.
    const CommonInfoAux flat{Dist({1.0}), Dist({1.0}), {Dist({1.0})}, {Dist({0.3, 0.7})}};
    const auto f = ne_outer_constraints_3d(flat, c);
    CHECK(f.r0_max == doctest::Approx(0.0));
    CHECK(f.r01_max == doctest::Approx(0.0));
    CHECK(std::abs(f.sum_max_a) <= 1e-12);
    CHECK(std::abs(f.sum_max_b) <= 1e-12);

    // W = U, V constant: I(U,W;Y) = I(U;Y).
    const Dist pu({0.35, 0.65});
    const std::vector<Dist> xrows{Dist({0.9, 0.1}), Dist({0.2, 0.8})};
    const CommonInfoAux wu{pu, Dist({1.0}), {Dist({1.0, 0.0}), Dist({0.0, 1.0})},
                           {xrows[0], xrows[0], xrows[1], xrows[1]}};
    const AuxTriple flat_v(JointDist({2, 1}, {0.35, 0.65}), xrows);
    CHECK(ne_outer_constraints_3d(wu, c).r01_max ==
          doctest::Approx(ne_outer_constraints(flat_v, c).r1_max).epsilon(1e-12));

    for (int t = 0; t < 100; ++t) {
      CommonInfoAux g{testing::random_dist(2, rng), testing::random_dist(2, rng), {}, {}};
      for (int k = 0; k < 4; ++k) g.pw_given_uv.push_back(testing::random_dist(3, rng, true));
      for (int k = 0; k < 12; ++k) g.px_given_uvw.push_back(testing::random_dist(2, rng, true));
      const auto s = ne_outer_constraints_3d(g, c);
      CHECK(s.r0_max >= 0.0);
      CHECK(s.r01_max >= 0.0);
      CHECK(s.r02_max >= 0.0);
      CHECK(s.sum_max_a >= 0.0);
      CHECK(s.sum_max_b >= 0.0);
      CHECK(s.r0_max <= std::min(s.r01_max, s.r02_max) + 1e-10);
    }
  }

  TEST_CASE("Korner-Marton halves") {
    const auto c = bssc(0.5);
    const auto oz = km_oz_constraints(reference::separating_u_pair(), c);
    CHECK(oz.r1_max == doctest::Approx(kSeparatingIUY).epsilon(1e-7));
    CHECK(oz.sum_max_a - oz.r1_max == doctest::Approx(kSeparatingIXZ).epsilon(1e-7));
    CHECK(std::abs(oz.r1_max - reference::kSeparatingIUY) <= 5e-5);
    CHECK(std::abs(oz.sum_max_a - oz.r1_max - reference::kSeparatingIXZ) <= 5e-5);
    CHECK_FALSE(oz.provenance.sum_b_structural);
    CHECK(oz.sum_max_b == doctest::Approx(oz.r1_max + oz.r2_max));

    const Dist px({0.4, 0.6});
    const auto constant = km_oy_constraints(AuxPair{Dist({1.0}), {px}}, c);
    CHECK(constant.r2_max == doctest::Approx(0.0));
    CHECK(support_value(constant, 0.0) == doctest::Approx(0.0));

    // V = X.
    const auto vx = km_oy_constraints(AuxPair{px, {Dist({1.0, 0.0}), Dist({0.0, 1.0})}}, c);
    CHECK(vx.r1_max == doctest::Approx(ixy(px, c, true)));
    CHECK(vx.r2_max == doctest::Approx(ixy(px, c, false)));
    CHECK(vx.sum_max_b == doctest::Approx(vx.r2_max));
  }

  TEST_CASE("randomized time-sharing region") {
    const auto c = bssc(0.5);
    const auto ts = reference::time_share_law();
    const auto s = cvdm_rts_constraints(ts.pw, ts.px_given_w, c);
    CHECK(s.r1_max == doctest::Approx(kCvdmR1).epsilon(1e-12));
    CHECK(s.sum_max() == doctest::Approx(kCvdmSum).epsilon(1e-12));
    CHECK(std::abs(s.r1_max - reference::kCvdmCornerR1) <= 5e-4);
    CHECK(std::abs(s.sum_max() - s.r1_max - reference::kCvdmCornerR2) <= 5e-4);
    CHECK(std::abs(s.sum_max() - reference::kCvdmSumRate) <= 5e-4);

    const Dist px({0.4, 0.6});
    const auto w0 = cvdm_rts_constraints(Dist({1.0, 0.0}), {px, px}, c);
    CHECK(w0.r1_max == doctest::Approx(ixy(px, c, true)));
    CHECK(w0.r2_max == doctest::Approx(0.0));
    CHECK(w0.sum_max_a == doctest::Approx(ixy(px, c, true)));

    const auto pure = Dist::point_mass(2, 1);
    const auto zero = cvdm_rts_constraints(Dist({0.5, 0.5}), {pure, pure}, c);
    CHECK(zero.r1_max == doctest::Approx(0.0));
    CHECK(zero.sum_max() == doctest::Approx(0.0));
    CHECK_THROWS(cvdm_rts_constraints(Dist::uniform(3), {px, px, px}, c));
  }

  TEST_CASE("point membership") {
    const auto c = bssc(0.5);
    const auto ne = ne_outer_constraints(reference::stated_triple(), c);
    CHECK(point_in_constraints({0.0, 0.0, std::nullopt}, ne));
    CHECK_FALSE(point_in_constraints({0.1861, 0.1861, std::nullopt}, ne));
    CHECK(point_in_constraints(support_point(ne, 0.8), ne));
    CHECK(point_in_constraints(support_point(ne, 0.2), ne));
    CHECK_FALSE(point_in_constraints({-0.01, 0.0, std::nullopt}, ne));
  }

  TEST_CASE("closed-form support value") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 200; ++t) {
      RateConstraintSet2 s;
      s.r1_max = testing::simplex_point(2, rng)[0];
      s.r2_max = testing::simplex_point(2, rng)[0];
      s.sum_max_a = testing::simplex_point(2, rng)[0] * 1.5;
      s.sum_max_b = testing::simplex_point(2, rng)[0] * 1.5;
      CHECK(support_value(s, 1.0) == doctest::Approx(std::min(s.r1_max, s.sum_max())));
      CHECK(support_value(s, 0.0) == doctest::Approx(std::min(s.r2_max, s.sum_max())));
      // Brute-force LP over a fine grid of feasible points.
      const double l = testing::simplex_point(2, rng)[0];
      double best = 0.0;
      for (int i = 0; i <= 400; ++i)
        for (int j = 0; j <= 400; ++j) {
          const RatePoint p{s.r1_max * i / 400.0, s.r2_max * j / 400.0, std::nullopt};
          if (point_in_constraints(p, s)) best = std::max(best, l * p.r1 + (1 - l) * p.r2);
        }
      CHECK(support_value(s, l) >= best - 1e-12);
      CHECK(support_value(s, l) <= best + 4e-3);
      CHECK(point_in_constraints(support_point(s, l), s));
    }
    CHECK_THROWS(support_value(RateConstraintSet2{}, 1.5));
  }

  TEST_CASE("bound identifiers") {
    for (auto k : {BoundKind::kNe, BoundKind::kNeTheorem, BoundKind::kKornerMartonY,
                   BoundKind::kKornerMartonZ, BoundKind::kKornerMarton, BoundKind::kCoverVanDerMeulen})
      CHECK(parse_bound_kind(to_string(k)) == k);
    CHECK_THROWS(parse_bound_kind("sato"));
  }
}

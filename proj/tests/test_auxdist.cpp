#include <doctest.h>

#include <cmath>

#include "bcbounds/auxdist.hpp"
#include "bcbounds/io.hpp"
#include "bcbounds/optimize.hpp"
#include "bcbounds/reference.hpp"
#include "bcbounds/regions.hpp"
#include "support.hpp"

using namespace bcbounds;

namespace {

double info(const JointDist& j, std::initializer_list<std::size_t> a, std::initializer_list<std::size_t> b,
            std::initializer_list<std::size_t> c = {}) {
  return information(j, std::span<const std::size_t>(a.begin(), a.size()),
                     std::span<const std::size_t>(b.begin(), b.size()),
                     std::span<const std::size_t>(c.begin(), c.size()));
}

// Axes of induced_joint(triple).
constexpr std::size_t U = 0, V = 1, X = 2, Y = 3, Z = 4;

}  // namespace

TEST_SUITE("auxdist") {
  TEST_CASE("constant auxiliaries reduce to push_forward") {
    const Dist px({0.3, 0.7});
    const AuxTriple a(JointDist({1, 1}, {1.0}), {px});
    const auto j = induced_joint(a, bssc(0.5));
    const auto direct = push_forward(px, bssc(0.5));
    const auto xyz = j.marginal({X, Y, Z});
    for (std::size_t k = 0; k < direct.size(); ++k) CHECK(xyz.probs()[k] == doctest::Approx(direct.probs()[k]));
  }

  TEST_CASE("stated triple induces a uniform input") {
    const auto a = reference::stated_triple();
    CHECK_FALSE(a.deterministic());
    const auto j = induced_joint(a, bssc(0.5));
    CHECK(j.marginal({X}).at({1}) == doctest::Approx(0.5).epsilon(1e-14));
    double total = 0.0;
    const auto yz = j.marginal({Y, Z});
    for (double v : yz.probs()) total += v;
    CHECK(total == doctest::Approx(1.0));
  }

  TEST_CASE("size mismatch and invalid rows are rejected") {
    std::mt19937_64 rng(1);
    CHECK_THROWS(induced_joint(testing::random_triple(2, 2, 3, rng), bssc(0.5)));
    CHECK_THROWS_AS(AuxTriple(JointDist({2, 1}, {0.5, 0.5}), {Dist({1.0, 0.0})}), AuxError);
    CHECK_THROWS_AS(AuxTriple(JointDist({1, 2}, {0.5, 0.5}), {Dist({1.0, 0.0}), Dist({1.0})}), AuxError);
  }

  TEST_CASE("deterministic flag") {
    std::mt19937_64 rng(2);
    CHECK(testing::random_triple(3, 2, 2, rng, true).deterministic());
    const AuxTriple a(JointDist({1, 2}, {0.5, 0.5}), {Dist({1.0, 0.0}), Dist({0.4, 0.6})});
    CHECK_FALSE(a.deterministic());
  }

  TEST_CASE("split construction produces a deterministic triple with the stated indexing") {
    std::mt19937_64 rng(3);
    const auto a = testing::random_triple(2, 3, 3, rng);
    const auto s = split_construction(a);
    CHECK(s.deterministic());
    CHECK(s.nu() == 6);
    CHECK(s.nv() == 9);
    const std::size_t m = 3;
    for (std::size_t u = 0; u < 2; ++u)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t v = 0; v < 3; ++v)
          for (std::size_t j = 0; j < m; ++j) {
            const std::size_t k = (i + m - j) % m;
            CHECK(s.p_uv(u * m + i, v * m + j) == doctest::Approx(a.p_uv(u, v) * a.px_given(u, v)[k] / m));
            CHECK(s.px_given(u * m + i, v * m + j)[k] == 1.0);
          }
  }

  TEST_CASE("split of a deterministic triple keeps every bound value") {
    std::mt19937_64 rng(4);
    const auto c = bssc(0.5);
    for (int t = 0; t < 20; ++t) {
      const auto a = testing::random_triple(2, 2, 2, rng, true);
      const auto s = split_construction(a);
      const auto before = ne_outer_constraints(a, c), after = ne_outer_constraints(s, c);
      CHECK(after.r1_max == doctest::Approx(before.r1_max).epsilon(1e-12));
      CHECK(after.r2_max == doctest::Approx(before.r2_max).epsilon(1e-12));
      CHECK(after.sum_max_a == doctest::Approx(before.sum_max_a).epsilon(1e-12));
      CHECK(after.sum_max_b == doctest::Approx(before.sum_max_b).epsilon(1e-12));
      for (const auto& r : split_entropy_relations(a, s, c)) CHECK(r.holds(1e-10));
    }
  }

  TEST_CASE("split marginal identities") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
      const std::size_t nu = testing::draw_size(rng, 1, 4), nv = testing::draw_size(rng, 1, 4),
                        m = testing::draw_size(rng, 2, 4);
      const auto a = testing::random_triple(nu, nv, m, rng);
      const auto s = split_construction(a);
      const auto ux = a.joint().marginal({0, 2}), vx = a.joint().marginal({1, 2});
      const auto usx = s.joint().marginal({0, 2}), vsx = s.joint().marginal({1, 2});
      for (std::size_t u = 0; u < nu; ++u)
        for (std::size_t i = 0; i < m; ++i) {
          double pu = 0.0, pus = 0.0;
          for (std::size_t x = 0; x < m; ++x) {
            pu += ux.at({u, x});
            pus += usx.at({u * m + i, x});
          }
          CHECK(std::abs(pus - pu / m) <= 1e-12);
          if (pu > 1e-9)
            for (std::size_t x = 0; x < m; ++x)
              CHECK(std::abs(usx.at({u * m + i, x}) / pus - ux.at({u, x}) / pu) <= 1e-12);
        }
      for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t j = 0; j < m; ++j) {
          double pv = 0.0, pvs = 0.0;
          for (std::size_t x = 0; x < m; ++x) {
            pv += vx.at({v, x});
            pvs += vsx.at({v * m + j, x});
          }
          CHECK(std::abs(pvs - pv / m) <= 1e-12);
          if (pv > 1e-9)
            for (std::size_t x = 0; x < m; ++x)
              CHECK(std::abs(vsx.at({v * m + j, x}) / pvs - vx.at({v, x}) / pv) <= 1e-12);
        }
    }
  }

  TEST_CASE("split entropy and information relations over random channels") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 150; ++t) {
      const std::size_t m = testing::draw_size(rng, 2, 3);
      const auto c = random_channel(m, testing::draw_size(rng, 2, 3), testing::draw_size(rng, 2, 3), 1000 + t);
      const auto a = testing::random_triple(testing::draw_size(rng, 1, 3), testing::draw_size(rng, 1, 3), m, rng);
      const auto s = split_construction(a);
      const auto ent = split_entropy_relations(a, s, c);
      CHECK(ent.size() == m + 8);
      for (const auto& r : ent) {
        INFO(r.label);
        CHECK(r.holds(1e-10));
      }
      const auto inf = split_information_relations(a, s, c);
      CHECK(inf.size() == 6);
      for (const auto& r : inf) {
        INFO(r.label);
        CHECK(r.holds(1e-10));
      }
    }
  }

  TEST_CASE("deterministic triples have zero slack in the conditional output entropies") {
    std::mt19937_64 rng(7);
    const auto c = random_channel(2, 2, 3, 8);
    const auto a = testing::random_triple(2, 3, 2, rng, true);
    for (const auto& r : split_entropy_relations(a, split_construction(a), c)) CHECK(std::abs(r.slack()) <= 1e-12);
  }

  TEST_CASE("canonical coupling") {
    const auto c = bssc(0.5);
    const AuxPair copy{Dist({0.3, 0.7}), {Dist({1.0, 0.0}), Dist({0.0, 1.0})}};
    const auto a = canonical_coupling(copy, copy, c);
    for (std::size_t u = 0; u < 2; ++u)
      for (std::size_t v = 0; v < 2; ++v)
        for (std::size_t x = 0; x < 2; ++x)
          if (!(u == v && v == x)) CHECK(a.joint().at({u, v, x}) == 0.0);

    const auto stated = canonical_coupling(reference::stated_u_pair(), reference::stated_v_pair(), c);
    CHECK(stated.px()[1] == doctest::Approx(0.5).epsilon(1e-12));

    const AuxPair half{Dist({1.0}), {Dist({0.5, 0.5})}};
    const AuxPair other{Dist({1.0}), {Dist({0.6, 0.4})}};
    try {
      canonical_coupling(half, other, c);
      FAIL("expected AuxError");
    } catch (const AuxError& e) {
      CHECK(std::string(e.what()).find("P(X=0)") != std::string::npos);
      CHECK(std::string(e.what()).find("0.1") != std::string::npos);
    }
  }

  TEST_CASE("canonical coupling reproduces both pair marginals and U - X - V") {
    std::mt19937_64 rng(8);
    const auto c = random_channel(3, 2, 2, 4);
    for (int t = 0; t < 100; ++t) {
      // Two pairs sharing an input law: split one joint p(x) p(u|x) and p(x) p(v|x).
      const auto px = testing::random_dist(3, rng, true);
      const std::size_t nu = testing::draw_size(rng, 1, 4), nv = testing::draw_size(rng, 1, 4);
      std::vector<double> ux(nu * 3), vx(nv * 3);
      for (std::size_t x = 0; x < 3; ++x) {
        const auto pu = testing::simplex_point(nu, rng), pv = testing::simplex_point(nv, rng);
        for (std::size_t u = 0; u < nu; ++u) ux[u * 3 + x] = px[x] * pu[u];
        for (std::size_t v = 0; v < nv; ++v) vx[v * 3 + x] = px[x] * pv[v];
      }
      const auto as_pair = [](const std::vector<double>& q, std::size_t n) {
        const auto t = AuxTriple::from_joint(JointDist({n, 1, 3}, q));
        return t.u_pair();
      };
      const auto pu_pair = as_pair(ux, nu), pv_pair = as_pair(vx, nv);
      const auto a = canonical_coupling(pu_pair, pv_pair, c);
      const auto j = a.joint();
      const auto jux = j.marginal({0, 2}), jvx = j.marginal({1, 2});
      for (std::size_t k = 0; k < ux.size(); ++k) CHECK(std::abs(jux.probs()[k] - ux[k]) <= 1e-9);
      for (std::size_t k = 0; k < vx.size(); ++k) CHECK(std::abs(jvx.probs()[k] - vx[k]) <= 1e-9);
      CHECK(std::abs(info(j, {0}, {1}, {2})) <= 1e-12);
    }
  }

  TEST_CASE("skew-symmetry swap exchanges the receivers on bssc(0.5)") {
    std::mt19937_64 rng(9);
    const auto c = bssc(0.5);
    for (int t = 0; t < 50; ++t) {
      const auto a = testing::random_triple(testing::draw_size(rng, 1, 4), testing::draw_size(rng, 1, 4), 2, rng);
      const auto b = skew_symmetry_swap(a);
      CHECK(b.nu() == a.nv());
      CHECK(b.nv() == a.nu());
      const auto ja = induced_joint(a, c), jb = induced_joint(b, c);
      CHECK(info(jb, {U}, {Y}) == doctest::Approx(info(ja, {V}, {Z})).epsilon(1e-12));
      CHECK(info(jb, {V}, {Z}) == doctest::Approx(info(ja, {U}, {Y})).epsilon(1e-12));
      CHECK(info(jb, {X}, {Z}, {U}) == doctest::Approx(info(ja, {X}, {Y}, {V})).epsilon(1e-12));
      CHECK(info(jb, {X}, {Y}, {V}) == doctest::Approx(info(ja, {X}, {Z}, {U})).epsilon(1e-12));

      const auto twice = ne_outer_constraints(skew_symmetry_swap(b), c), orig = ne_outer_constraints(a, c);
      CHECK(twice.r1_max == doctest::Approx(orig.r1_max).epsilon(1e-12));
      CHECK(twice.sum_max_b == doctest::Approx(orig.sum_max_b).epsilon(1e-12));
    }
    const auto s = ne_outer_constraints(skew_symmetry_swap(reference::stated_triple()), c);
    CHECK(std::abs(s.sum_max() - reference::kStatedSumRate) <= 5e-4);
    CHECK_THROWS(skew_symmetry_swap(testing::random_triple(2, 2, 3, rng)));
  }

  TEST_CASE("symmetrized time-sharing") {
    std::mt19937_64 rng(10);
    const auto c = bssc(0.5);
    for (int t = 0; t < 50; ++t) {
      const auto a = testing::random_triple(testing::draw_size(rng, 1, 3), testing::draw_size(rng, 1, 4), 2, rng);
      const auto s = symmetrize_timeshare(a);
      const std::size_t n = std::max(a.nu(), a.nv());
      CHECK(s.nu() == 2 * n);
      CHECK(s.nv() == 2 * n);
      CHECK(s.px()[1] == doctest::Approx(0.5).epsilon(1e-12));
      const double mixed = weighted_objective(s, c, 0.5, BoundKind::kNe);
      const double avg = 0.5 * (weighted_objective(a, c, 0.5, BoundKind::kNe) +
                                weighted_objective(skew_symmetry_swap(a), c, 0.5, BoundKind::kNe));
      CHECK(mixed >= avg - 1e-12);
    }
    // A triple equal to its own swap.
    const AuxTriple sym(JointDist({2, 2}, {0.0, 0.5, 0.5, 0.0}),
                        {Dist({0.5, 0.5}), Dist({1.0, 0.0}), Dist({0.0, 1.0}), Dist({0.5, 0.5})});
    CHECK(weighted_objective(symmetrize_timeshare(sym), c, 0.5, BoundKind::kNe) ==
          doctest::Approx(weighted_objective(sym, c, 0.5, BoundKind::kNe)).epsilon(1e-10));
    CHECK_THROWS(symmetrize_timeshare(testing::random_triple(2, 2, 3, rng)));
  }

  TEST_CASE("common-information auxiliaries") {
    std::mt19937_64 rng(11);
    const auto joint = testing::random_joint({2, 2, 2, 2}, rng);
    CHECK_THROWS_AS(CommonInfoAux::from_joint(joint), AuxError);

    CommonInfoAux g{testing::random_dist(2, rng), testing::random_dist(3, rng), {}, {}};
    for (int k = 0; k < 6; ++k) g.pw_given_uv.push_back(testing::random_dist(2, rng));
    for (int k = 0; k < 12; ++k) g.px_given_uvw.push_back(testing::random_dist(2, rng));
    const auto j = g.joint();
    CHECK(std::abs(info(j, {0}, {1})) <= 1e-12);
    const auto back = CommonInfoAux::from_joint(j);
    const auto j2 = back.joint();
    for (std::size_t k = 0; k < j.size(); ++k) CHECK(j2.probs()[k] == doctest::Approx(j.probs()[k]));
    CHECK(common_aux_from_json(common_aux_to_json(g)).joint().probs()[5] == doctest::Approx(j.probs()[5]));
  }

  TEST_CASE("triple JSON round trip and error reporting") {
    std::mt19937_64 rng(12);
    const auto a = testing::random_triple(3, 2, 2, rng);
    const auto b = aux_from_json(aux_to_json(a));
    for (std::size_t k = 0; k < a.joint().size(); ++k) CHECK(b.joint().probs()[k] == a.joint().probs()[k]);
    CHECK_THROWS_AS(aux_from_json(R"({"nu": 1, "nv": 1, "nx": 2, "puv": [[1.0]], "px_given_uv": [[[0.3, 0.3]]]})"),
                    ProbabilityError);
    CHECK_THROWS_AS(aux_from_json(R"({"nu": 1, "nv": 1, "nx": 2, "puv": [[1.0]]})"), ParseError);
  }
}

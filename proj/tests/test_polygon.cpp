#include <doctest.h>

#include "bcbounds/io.hpp"
#include "bcbounds/polygon.hpp"

using namespace bcbounds;

namespace {

PolygonRegion square_with_cut() {
  // Down-closure of max(r1, r2) <= 1 and r1 + r2 <= 1.5.
  std::vector<SupportSample> s{{0.0, 1.0}, {0.5, 0.75}, {1.0, 1.0}};
  return polygon_from_support(s);
}

}  // namespace

TEST_SUITE("polygon") {
  TEST_CASE("polygon from support samples") {
    const auto p = square_with_cut();
    REQUIRE(p.vertices.size() == 4);
    CHECK(p.vertices.front().r1 == doctest::Approx(1.0));
    CHECK(p.vertices.front().r2 == doctest::Approx(0.0));
    CHECK(p.vertices[1].r1 == doctest::Approx(1.0));
    CHECK(p.vertices[1].r2 == doctest::Approx(0.5));
    CHECK(p.vertices[2].r1 == doctest::Approx(0.5));
    CHECK(p.vertices[2].r2 == doctest::Approx(1.0));
    CHECK(p.vertices.back().r1 == doctest::Approx(0.0));
    CHECK(p.support(0.5) == doctest::Approx(0.75));
    CHECK(p.lambdas.size() == 3);
    CHECK_THROWS(polygon_from_support(std::vector<SupportSample>{{0.5, 1.0}}));
  }

  TEST_CASE("vertices decrease in r1 and the boundary is non-increasing") {
    std::vector<SupportSample> s;
    for (double l : angle_grid(33)) s.push_back({l, 1.0 / (0.5 + std::abs(l - 0.5))});
    const auto p = polygon_from_support(s);
    for (std::size_t k = 1; k < p.vertices.size(); ++k) {
      CHECK(p.vertices[k].r1 <= p.vertices[k - 1].r1);
      CHECK(p.vertices[k].r2 >= p.vertices[k - 1].r2);
    }
  }

  TEST_CASE("containment") {
    const auto p = square_with_cut();
    CHECK(polygon_contains(p, {0.0, 0.0, std::nullopt}));
    CHECK(polygon_contains(p, {0.75, 0.75, std::nullopt}));
    CHECK_FALSE(polygon_contains(p, {0.76, 0.76, std::nullopt}));
    CHECK(polygon_contains(p, {0.76, 0.76, std::nullopt}, 0.02));
    CHECK_FALSE(polygon_contains(p, {1.01, 0.0, std::nullopt}));
    CHECK_FALSE(polygon_contains(p, {-0.1, 0.0, std::nullopt}));
    CHECK_THROWS(polygon_contains(PolygonRegion{}, {0.0, 0.0, std::nullopt}));
  }

  TEST_CASE("containment ignores clipping slivers") {
    // A reversed edge of length 1e-14 on the R1 axis, as left by clipping.
    PolygonRegion p;
    p.vertices = {{0.12206138005622337, 0.0, std::nullopt},
                  {0.12206138005621256, 0.0, std::nullopt},
                  {0.043835072042832615, 0.011175186859059801, std::nullopt},
                  {0.0, 0.015709849484180416, std::nullopt}};
    CHECK(polygon_contains(p, {0.043835, 0.011175, std::nullopt}, 1e-3));
    CHECK(polygon_contains(p, {0.02, 0.012, std::nullopt}, 0.0));
    CHECK_FALSE(polygon_contains(p, {0.1, 0.01, std::nullopt}, 1e-3));

    // Support samples that disagree in the last digits at the R1 corner.
    const std::vector<SupportSample> s{{0.0, 0.015709849484180416},
                                       {0.125, 0.015258},
                                       {0.9999999, 0.12206138005622337 * 0.9999999 + 1e-14},
                                       {1.0, 0.12206138005622337}};
    const auto q = polygon_from_support(s);
    for (std::size_t k = 1; k < q.vertices.size(); ++k) CHECK(q.vertices[k].r2 > q.vertices[k - 1].r2 - 1e-15);
    CHECK(polygon_contains(q, {0.043835, 0.011175, std::nullopt}, 1e-3));
  }

  TEST_CASE("intersection") {
    const auto a = square_with_cut();
    const auto b = polygon_from_support(std::vector<SupportSample>{{0.0, 2.0}, {1.0, 0.5}});
    const auto both = intersect(a, b);
    CHECK(both.support(1.0) == doctest::Approx(0.5));
    CHECK(both.support(0.0) == doctest::Approx(1.0));
    CHECK(both.support(0.5) == doctest::Approx(0.75));
    CHECK(polygon_contains(both, {0.5, 1.0, std::nullopt}));
    CHECK_FALSE(polygon_contains(both, {0.6, 0.2, std::nullopt}));
  }

  TEST_CASE("angle grid") {
    const auto g = angle_grid(65);
    CHECK(g.size() == 65);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 1.0);
    CHECK(g[32] == 0.5);
    CHECK_THROWS(angle_grid(1));
  }

  TEST_CASE("CSV round trip") {
    const auto p = square_with_cut();
    const std::string text = polygon_to_csv(p);
    CHECK(text.rfind("r1,r2\n", 0) == 0);
    const auto q = polygon_from_csv(text);
    REQUIRE(q.vertices.size() == p.vertices.size());
    for (std::size_t k = 0; k < p.vertices.size(); ++k) CHECK(q.vertices[k].r1 == doctest::Approx(p.vertices[k].r1));
    CHECK_THROWS_AS(polygon_from_csv("a,b\n1,2\n"), ParseError);
    CHECK_THROWS_AS(polygon_from_csv("r1,r2\n1;2\n"), ParseError);
  }
}

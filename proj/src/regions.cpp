#include "bcbounds/regions.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bcbounds {

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kNe: return "ne";
    case BoundKind::kNeTheorem: return "ne31";
    case BoundKind::kKornerMartonY: return "kmy";
    case BoundKind::kKornerMartonZ: return "kmz";
    case BoundKind::kKornerMarton: return "km";
    case BoundKind::kCoverVanDerMeulen: return "cvdm";
  }
  return "?";
}

BoundKind parse_bound_kind(const std::string& id) {
  for (auto k : {BoundKind::kNe, BoundKind::kNeTheorem, BoundKind::kKornerMartonY,
                 BoundKind::kKornerMartonZ, BoundKind::kKornerMarton, BoundKind::kCoverVanDerMeulen}) {
    if (to_string(k) == id) return k;
  }
  throw std::invalid_argument("unknown bound id '" + id + "' (expected ne, ne31, kmy, kmz, km or cvdm)");
}

namespace {

using Axes = std::initializer_list<std::size_t>;

double info(const JointDist& j, Axes a, Axes b, Axes c = {}) {
  const double v = information(j, std::span<const std::size_t>(a.begin(), a.size()),
                               std::span<const std::size_t>(b.begin(), b.size()),
                               std::span<const std::size_t>(c.begin(), c.size()));
  // Rounding can leave values a few ulps below zero.
  return std::max(0.0, v);
}

// I(X;out | W=w) for one conditional input row.
double row_information(const Dist& px, const MarginalChannel& ch) {
  std::vector<double> out(ch.nout, 0.0);
  double noise = 0.0;
  for (std::size_t x = 0; x < ch.nin; ++x) {
    if (px[x] <= 0.0) continue;
    for (std::size_t o = 0; o < ch.nout; ++o) out[o] += px[x] * ch(x, o);
    noise += px[x] * entropy(ch.rows[x]);
  }
  return std::max(0.0, entropy_unchecked(out) - noise);
}

}  // namespace

RateConstraintSet2 ne_outer_constraints(const AuxTriple& a, const BroadcastChannel& c) {
  const auto j = induced_joint(a, c);  // U V X Y Z
  RateConstraintSet2 s;
  s.r1_max = info(j, {0}, {3});
  s.r2_max = info(j, {1}, {4});
  s.sum_max_a = s.r1_max + info(j, {2}, {4}, {0});
  s.sum_max_b = s.r2_max + info(j, {2}, {3}, {1});
  s.provenance = {BoundKind::kNe, "I(U;Y), I(V;Z), I(U;Y)+I(X;Z|U), I(V;Z)+I(X;Y|V)"};
  return s;
}

RateConstraintSet2 ne_outer_constraints_theorem31_form(const AuxTriple& a, const BroadcastChannel& c) {
  const auto j = induced_joint(a, c);
  RateConstraintSet2 s;
  s.r1_max = info(j, {0}, {3});
  s.r2_max = info(j, {1}, {4});
  s.sum_max_a = s.r1_max + info(j, {1}, {4}, {0});
  s.sum_max_b = s.r2_max + info(j, {0}, {3}, {1});
  s.provenance = {BoundKind::kNeTheorem, "I(U;Y), I(V;Z), I(U;Y)+I(V;Z|U), I(V;Z)+I(U;Y|V)"};
  return s;
}

RateConstraintSet3 ne_outer_constraints_3d(const CommonInfoAux& g, const BroadcastChannel& c) {
  const auto j = induced_joint(g, c);  // U V W X Y Z
  RateConstraintSet3 s;
  s.r0_max = std::min(info(j, {2}, {4}), info(j, {2}, {5}));
  s.r01_max = info(j, {0, 2}, {4});
  s.r02_max = info(j, {1, 2}, {5});
  s.sum_max_a = s.r01_max + info(j, {1}, {5}, {0, 2});
  s.sum_max_b = s.r02_max + info(j, {0}, {4}, {1, 2});
  return s;
}

RateConstraintSet2 km_oy_constraints(const AuxPair& v_side, const BroadcastChannel& c) {
  const auto j = induced_joint(v_side, c);  // V X Y Z
  RateConstraintSet2 s;
  s.r1_max = info(j, {1}, {2});
  s.r2_max = info(j, {0}, {3});
  s.sum_max_b = s.r2_max + info(j, {1}, {2}, {0});
  s.sum_max_a = s.r1_max + s.r2_max;
  s.provenance = {BoundKind::kKornerMartonY, "I(X;Y), I(V;Z), (inactive), I(V;Z)+I(X;Y|V)", false, true};
  return s;
}

RateConstraintSet2 km_oz_constraints(const AuxPair& u_side, const BroadcastChannel& c) {
  const auto j = induced_joint(u_side, c);  // U X Y Z
  RateConstraintSet2 s;
  s.r1_max = info(j, {0}, {2});
  s.r2_max = info(j, {1}, {3});
  s.sum_max_a = s.r1_max + info(j, {1}, {3}, {0});
  s.sum_max_b = s.r1_max + s.r2_max;
  s.provenance = {BoundKind::kKornerMartonZ, "I(U;Y), I(X;Z), I(U;Y)+I(X;Z|U), (inactive)", true, false};
  return s;
}

RateConstraintSet2 cvdm_rts_constraints(const Dist& pw, const std::vector<Dist>& px_given_w,
                                        const BroadcastChannel& c) {
  if (pw.size() != 2) throw std::invalid_argument("randomized time-sharing needs a binary W");
  const AuxPair wx{pw, px_given_w};
  const auto j = induced_joint(wx, c);  // W X Y Z
  const double common = std::min(info(j, {0}, {2}), info(j, {0}, {3}));
  const double own1 = pw[0] * row_information(px_given_w[0], marginal_y(c));
  const double own2 = pw[1] * row_information(px_given_w[1], marginal_z(c));
  RateConstraintSet2 s;
  s.r1_max = common + own1;
  s.r2_max = common + own2;
  s.sum_max_a = s.sum_max_b = common + own1 + own2;
  s.provenance = {BoundKind::kCoverVanDerMeulen,
                  "min{I(W;Y),I(W;Z)} + P(W=0)I(X;Y|W=0), ... + P(W=1)I(X;Z|W=1), sum"};
  return s;
}

bool point_in_constraints(const RatePoint& p, const RateConstraintSet2& s, double tol) {
  return p.r1 >= -tol && p.r2 >= -tol && p.r1 <= s.r1_max + tol && p.r2 <= s.r2_max + tol &&
         p.r1 + p.r2 <= s.sum_max() + tol;
}

RatePoint support_point(const RateConstraintSet2& s, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0,1]");
  const double sum = std::max(0.0, s.sum_max());
  RatePoint p;
  if (lambda >= 0.5) {
    p.r1 = std::clamp(s.r1_max, 0.0, sum);
    p.r2 = std::clamp(s.r2_max, 0.0, sum - p.r1);
  } else {
    p.r2 = std::clamp(s.r2_max, 0.0, sum);
    p.r1 = std::clamp(s.r1_max, 0.0, sum - p.r2);
  }
  return p;
}

double support_value(const RateConstraintSet2& s, double lambda) {
  const RatePoint p = support_point(s, lambda);
  return lambda * p.r1 + (1.0 - lambda) * p.r2;
}

}  // namespace bcbounds

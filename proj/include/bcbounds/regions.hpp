#pragma once

// Rate constraint sets produced by a single auxiliary distribution. A bound
// region is the union of these sets over all admissible auxiliaries.

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bcbounds/auxdist.hpp"
#include "bcbounds/channel.hpp"

namespace bcbounds {

enum class BoundKind {
  kNe,          // sums use I(X;Z|U) and I(X;Y|V)
  kNeTheorem,   // sums use I(V;Z|U) and I(U;Y|V)
  kKornerMartonY,        // O_y half: auxiliary V
  kKornerMartonZ,        // O_z half: auxiliary U
  kKornerMarton,         // O_y intersected with O_z
  kCoverVanDerMeulen,    // randomized time-sharing inner region, binary W
};

std::string to_string(BoundKind kind);
// Accepts "ne", "ne31", "kmy", "kmz", "km", "cvdm". Throws std::invalid_argument.
BoundKind parse_bound_kind(const std::string& id);

struct Provenance {
  BoundKind bound = BoundKind::kNe;
  std::string detail;
  // False for slots that carry no constraint of their own (filled with the
  // sum of the two single-rate limits).
  bool sum_a_structural = true;
  bool sum_b_structural = true;
};

// R1 <= r1_max, R2 <= r2_max, R1 + R2 <= min(sum_max_a, sum_max_b).
struct RateConstraintSet2 {
  double r1_max = 0.0;
  double r2_max = 0.0;
  double sum_max_a = 0.0;
  double sum_max_b = 0.0;
  Provenance provenance;

  double sum_max() const { return std::min(sum_max_a, sum_max_b); }
};

// Right-hand sides of the three-message (common + two private) outer bound.
struct RateConstraintSet3 {
  double r0_max = 0.0;   // min{I(W;Y), I(W;Z)}
  double r01_max = 0.0;  // I(U,W;Y)
  double r02_max = 0.0;  // I(V,W;Z)
  double sum_max_a = 0.0;  // I(U,W;Y) + I(V;Z|U,W)
  double sum_max_b = 0.0;  // I(V,W;Z) + I(U;Y|V,W)
};

struct RatePoint {
  double r1 = 0.0;
  double r2 = 0.0;
  std::optional<double> r0;
};

inline constexpr double kMembershipTolerance = 1e-9;

RateConstraintSet2 ne_outer_constraints(const AuxTriple& a, const BroadcastChannel& c);
RateConstraintSet2 ne_outer_constraints_theorem31_form(const AuxTriple& a, const BroadcastChannel& c);
RateConstraintSet3 ne_outer_constraints_3d(const CommonInfoAux& g, const BroadcastChannel& c);

// O_y: R1 <= I(X;Y), R2 <= I(V;Z), R1 + R2 <= I(V;Z) + I(X;Y|V).
RateConstraintSet2 km_oy_constraints(const AuxPair& v_side, const BroadcastChannel& c);
// O_z: R1 <= I(U;Y), R2 <= I(X;Z), R1 + R2 <= I(U;Y) + I(X;Z|U).
RateConstraintSet2 km_oz_constraints(const AuxPair& u_side, const BroadcastChannel& c);

// Randomized time-sharing region for binary W: both receivers first decode W,
// then W=0 carries user 1's payload and W=1 user 2's.
RateConstraintSet2 cvdm_rts_constraints(const Dist& pw, const std::vector<Dist>& px_given_w,
                                        const BroadcastChannel& c);

bool point_in_constraints(const RatePoint& p, const RateConstraintSet2& s,
                          double tol = kMembershipTolerance);

// max of lambda*R1 + (1-lambda)*R2 over the down-closed set (R1, R2 >= 0).
double support_value(const RateConstraintSet2& s, double lambda);
// The corner of the set attaining support_value.
RatePoint support_point(const RateConstraintSet2& s, double lambda);

}  // namespace bcbounds

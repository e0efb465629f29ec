#pragma once

// Closed-form auxiliary laws for the binary skew-symmetric channel at p = 1/2
// and the values they are published with.

#include <string>
#include <vector>

#include "bcbounds/auxdist.hpp"
#include "bcbounds/optimize.hpp"

namespace bcbounds::reference {

// 0.5 - sqrt(105)/30.
double bssc_alpha();

// Randomized time-sharing law: P(W=0) = 1/2, P(X=0|W=0) = P(X=1|W=1) = alpha.
TimeShareLaw time_share_law();

// Maximizers stated for I(U;Y) + I(X;Z|U) and I(V;Z) + I(X;Y|V) under
// P(X=1) = 1/2. P(U=0) = 0.5/(1-alpha), P(X=1|U=0) = alpha, P(X=1|U=1) = 1;
// the V pair is its mirror image.
AuxPair stated_u_pair();
AuxPair stated_v_pair();

// Three-cell triple whose constraint set meets the sum-rate boundary:
// (0,0) mass alpha/(1-alpha) with X uniform, (0,1) with X = 0, (1,0) with X = 1.
AuxTriple stated_triple();

// Single-auxiliary point used to separate the two outer bounds:
// P(U=0) = 0.6372, P(X=1|U=0) = 0.2465, P(X=1|U=1) = 1, and its mirror for V.
AuxPair separating_u_pair();
AuxPair separating_v_pair();

// Mirror image of a pair under X -> 1 - X (binary X only).
AuxPair complement_input(const AuxPair& a);

// Published values, with the digits as printed.
struct PublishedValue {
  std::string name;
  double value;
  double tolerance;
};

inline constexpr double kCvdmCornerR1 = 0.2411;    // "0.2411.."
inline constexpr double kCvdmCornerR2 = 0.1204;    // "0.1204.."
inline constexpr double kCvdmSumRate = 0.3616;     // "0.3616..."
inline constexpr double kStatedPrivate = 0.2280;   // I(U;Y) = I(V;Z), "0.2280.."
inline constexpr double kStatedCorner = 0.1431;    // "0.1431.."
inline constexpr double kStatedSumRate = 0.3711;   // "0.3711..."
inline constexpr double kSeparatingIUY = 0.18616;  // five printed digits
inline constexpr double kSeparatingIXZ = 0.18614;
inline constexpr double kSeparatingSum = 0.3722;
inline constexpr double kSeparatingPoint = 0.1861;  // the rate pair (0.1861, 0.1861)
inline constexpr double kAlphaApprox = 0.1584;

inline constexpr double kFourDigitTolerance = 5e-4;
inline constexpr double kFiveDigitTolerance = 5e-5;

}  // namespace bcbounds::reference

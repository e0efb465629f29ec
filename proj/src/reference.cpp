#include "bcbounds/reference.hpp"

#include <cmath>

namespace bcbounds::reference {

double bssc_alpha() { return 0.5 - std::sqrt(105.0) / 30.0; }

TimeShareLaw time_share_law() {
  const double a = bssc_alpha();
  return {Dist({0.5, 0.5}), {Dist({a, 1.0 - a}), Dist({1.0 - a, a})}};
}

AuxPair stated_u_pair() {
  const double a = bssc_alpha();
  return {Dist({0.5 / (1.0 - a), (0.5 - a) / (1.0 - a)}), {Dist({1.0 - a, a}), Dist({0.0, 1.0})}};
}

AuxPair stated_v_pair() { return complement_input(stated_u_pair()); }

AuxTriple stated_triple() {
  const double a = bssc_alpha();
  const double side = (0.5 - a) / (1.0 - a);
  JointDist puv({2, 2}, {a / (1.0 - a), side, side, 0.0}, {"U", "V"});
  return AuxTriple(std::move(puv), {Dist({0.5, 0.5}), Dist({1.0, 0.0}), Dist({0.0, 1.0}), Dist({1.0, 0.0})});
}

AuxPair separating_u_pair() {
  return {Dist({0.6372, 0.3628}), {Dist({1.0 - 0.2465, 0.2465}), Dist({0.0, 1.0})}};
}

AuxPair separating_v_pair() { return complement_input(separating_u_pair()); }

AuxPair complement_input(const AuxPair& a) {
  if (a.nx() != 2) throw AuxError("input complement needs a binary input alphabet");
  AuxPair out{a.pu, {}};
  for (const auto& r : a.px_given_u) out.px_given_u.push_back(Dist({r[1], r[0]}));
  return out;
}

}  // namespace bcbounds::reference

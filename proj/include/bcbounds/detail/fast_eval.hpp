#pragma once

// Allocation-free evaluation of constraint sets straight from a flat joint
// p(aux..., x), used inside the ascent loops. regions.hpp computes the same
// quantities through generic tensor marginals; the two routes are checked
// against each other in tests.

#include <cstddef>
#include <span>
#include <vector>

#include "bcbounds/channel.hpp"
#include "bcbounds/regions.hpp"

namespace bcbounds::detail {

class FastEvaluator {
 public:
  explicit FastEvaluator(const BroadcastChannel& c);

  std::size_t nx() const { return nx_; }

  // q is laid out [u][v][x].
  RateConstraintSet2 ne(std::span<const double> q, std::size_t nu, std::size_t nv,
                        bool theorem_form = false);
  // q is laid out [v][x] (O_y half) or [u][x] (O_z half).
  RateConstraintSet2 km_y(std::span<const double> q, std::size_t nv);
  RateConstraintSet2 km_z(std::span<const double> q, std::size_t nu);
  // q is laid out [w][x] with binary W.
  RateConstraintSet2 cvdm(std::span<const double> q);

  // H(Out | A) for a joint p(a, x) laid out [a][x]; `to_y` selects the receiver.
  double conditional_output_entropy(const double* pax, std::size_t na, bool to_y) const;
  // H(Out) for an input law px.
  double output_entropy(const double* px, bool to_y) const;
  // H(Out | X) for an input law px.
  double noise_entropy(const double* px, bool to_y) const;

 private:
  std::size_t nx_, ny_, nz_;
  std::vector<double> py_, pz_;  // [x][out]
  std::vector<double> hy_, hz_;  // row entropies
  std::vector<double> pux_, pvx_, px_;
};

}  // namespace bcbounds::detail

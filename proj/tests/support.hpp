#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bcbounds/auxdist.hpp"
#include "bcbounds/prob.hpp"

namespace testing {

// Flat-simplex sample; with `sparse`, each entry is zeroed with probability
// 1/4 (at least one entry survives).
inline std::vector<double> simplex_point(std::size_t n, std::mt19937_64& rng, bool sparse = false) {
  std::exponential_distribution<double> e(1.0);
  std::bernoulli_distribution drop(0.25);
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& v : p) {
    v = (sparse && drop(rng)) ? 0.0 : e(rng);
    total += v;
  }
  if (total == 0.0) {
    p[0] = 1.0;
    return p;
  }
  for (auto& v : p) v /= total;
  return p;
}

inline bcbounds::JointDist random_joint(std::vector<std::size_t> dims, std::mt19937_64& rng,
                                        bool sparse = false) {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  return bcbounds::JointDist(std::move(dims), simplex_point(n, rng, sparse));
}

inline bcbounds::Dist random_dist(std::size_t n, std::mt19937_64& rng, bool sparse = false) {
  return bcbounds::Dist(simplex_point(n, rng, sparse));
}

inline bcbounds::AuxTriple random_triple(std::size_t nu, std::size_t nv, std::size_t nx, std::mt19937_64& rng,
                                         bool deterministic = false) {
  std::vector<bcbounds::Dist> rows;
  std::uniform_int_distribution<std::size_t> pick(0, nx - 1);
  for (std::size_t k = 0; k < nu * nv; ++k) {
    rows.push_back(deterministic ? bcbounds::Dist::point_mass(nx, pick(rng)) : random_dist(nx, rng, true));
  }
  return bcbounds::AuxTriple(bcbounds::JointDist({nu, nv}, simplex_point(nu * nv, rng, true), {"U", "V"}),
                             std::move(rows));
}

inline bcbounds::AuxPair random_pair(std::size_t na, std::size_t nx, std::mt19937_64& rng) {
  bcbounds::AuxPair p{random_dist(na, rng), {}};
  for (std::size_t k = 0; k < na; ++k) p.px_given_u.push_back(random_dist(nx, rng, true));
  return p;
}

inline std::size_t draw_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace testing

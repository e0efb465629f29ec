#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bcbounds/prob.hpp"

namespace bcbounds {

// Single-receiver channel p(out|in), one row per input symbol.
struct MarginalChannel {
  std::size_t nin = 0;
  std::size_t nout = 0;
  std::vector<Dist> rows;

  double operator()(std::size_t in, std::size_t out) const { return rows[in][out]; }
};

struct ChannelViolation {
  std::size_t x = 0;
  std::string message;
};

// Two-receiver discrete memoryless broadcast channel p(y,z|x).
class BroadcastChannel {
 public:
  BroadcastChannel() = default;
  // w is indexed [x][y][z]. Throws ChannelError listing every violation.
  BroadcastChannel(std::size_t nx, std::size_t ny, std::size_t nz, std::vector<double> w);

  // Builds p(y,z|x) = p(y|x) p(z|x).
  static BroadcastChannel from_marginals(const MarginalChannel& y, const MarginalChannel& z);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t nz() const { return nz_; }
  double operator()(std::size_t x, std::size_t y, std::size_t z) const {
    return w_[(x * ny_ + y) * nz_ + z];
  }
  const std::vector<double>& tensor() const { return w_; }

  bool operator==(const BroadcastChannel&) const = default;

 private:
  std::size_t nx_ = 0, ny_ = 0, nz_ = 0;
  std::vector<double> w_;
};

class ChannelError : public std::runtime_error {
 public:
  ChannelError(const std::string& what, std::vector<ChannelViolation> violations = {})
      : std::runtime_error(what), violations_(std::move(violations)) {}
  const std::vector<ChannelViolation>& violations() const { return violations_; }

 private:
  std::vector<ChannelViolation> violations_;
};

// Lists every invariant violation of a raw transition tensor; empty iff valid.
std::vector<ChannelViolation> validate(std::size_t nx, std::size_t ny, std::size_t nz,
                                       const std::vector<double>& w);
std::vector<ChannelViolation> validate(const BroadcastChannel& c);

MarginalChannel marginal_y(const BroadcastChannel& c);
MarginalChannel marginal_z(const BroadcastChannel& c);

// Joint over (X, Y, Z) for input law px.
JointDist push_forward(const Dist& px, const BroadcastChannel& c);

// Binary skew-symmetric channel. X=1 reaches Y noiselessly and X=0 reaches Z
// noiselessly; the other input reaches each receiver through a branch that
// keeps the "native" symbol (y=0 for Y, z=1 for Z) with probability p.
// Y and Z are conditionally independent given X.
BroadcastChannel bssc(double p);

// Y = X and Z = X over an alphabet of size n.
BroadcastChannel noiseless_channel(std::size_t n = 2);

// Every row p(y,z|x) drawn from the flat Dirichlet law, seeded.
BroadcastChannel random_channel(std::size_t nx, std::size_t ny, std::size_t nz, std::uint64_t seed);

}  // namespace bcbounds

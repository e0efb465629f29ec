#include "bcbounds/channel.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace bcbounds {

std::vector<ChannelViolation> validate(std::size_t nx, std::size_t ny, std::size_t nz,
                                       const std::vector<double>& w) {
  std::vector<ChannelViolation> out;
  if (nx == 0 || ny == 0 || nz == 0) {
    out.push_back({0, "alphabet sizes must be positive"});
    return out;
  }
  if (w.size() != nx * ny * nz) {
    std::ostringstream os;
    os << "tensor has " << w.size() << " entries, expected " << nx * ny * nz;
    out.push_back({0, os.str()});
    return out;
  }
  const std::size_t slice = ny * nz;
  for (std::size_t x = 0; x < nx; ++x) {
    double mass = 0.0;
    for (std::size_t k = 0; k < slice; ++k) {
      const double v = w[x * slice + k];
      if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream os;
        os << "entry (y=" << k / nz << ", z=" << k % nz << ") = " << v << " is negative or not finite";
        out.push_back({x, os.str()});
      }
      mass += v;
    }
    if (!(std::abs(mass - 1.0) <= kMassTolerance)) {
      std::ostringstream os;
      os.precision(17);
      os << "row mass " << mass << " differs from 1";
      out.push_back({x, os.str()});
    }
  }
  return out;
}

std::vector<ChannelViolation> validate(const BroadcastChannel& c) {
  return validate(c.nx(), c.ny(), c.nz(), c.tensor());
}

BroadcastChannel::BroadcastChannel(std::size_t nx, std::size_t ny, std::size_t nz,
                                   std::vector<double> w)
    : nx_(nx), ny_(ny), nz_(nz), w_(std::move(w)) {
  auto violations = validate(nx_, ny_, nz_, w_);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "invalid channel:";
    for (const auto& v : violations) os << " [x=" << v.x << "] " << v.message << ";";
    throw ChannelError(os.str(), std::move(violations));
  }
}

BroadcastChannel BroadcastChannel::from_marginals(const MarginalChannel& y, const MarginalChannel& z) {
  if (y.nin != z.nin) throw ChannelError("marginal channels disagree on the input alphabet");
  std::vector<double> w(y.nin * y.nout * z.nout);
  for (std::size_t x = 0; x < y.nin; ++x)
    for (std::size_t b = 0; b < y.nout; ++b)
      for (std::size_t c = 0; c < z.nout; ++c) w[(x * y.nout + b) * z.nout + c] = y(x, b) * z(x, c);
  return BroadcastChannel(y.nin, y.nout, z.nout, std::move(w));
}

namespace {

MarginalChannel collapse(const BroadcastChannel& c, bool keep_y) {
  MarginalChannel m;
  m.nin = c.nx();
  m.nout = keep_y ? c.ny() : c.nz();
  for (std::size_t x = 0; x < c.nx(); ++x) {
    std::vector<double> row(m.nout, 0.0);
    for (std::size_t y = 0; y < c.ny(); ++y)
      for (std::size_t z = 0; z < c.nz(); ++z) row[keep_y ? y : z] += c(x, y, z);
    m.rows.emplace_back(std::move(row));
  }
  return m;
}

}  // namespace

MarginalChannel marginal_y(const BroadcastChannel& c) { return collapse(c, true); }
MarginalChannel marginal_z(const BroadcastChannel& c) { return collapse(c, false); }

JointDist push_forward(const Dist& px, const BroadcastChannel& c) {
  if (px.size() != c.nx()) {
    std::ostringstream os;
    os << "input law has " << px.size() << " symbols, channel expects " << c.nx();
    throw ChannelError(os.str());
  }
  std::vector<double> joint(c.tensor().size());
  const std::size_t slice = c.ny() * c.nz();
  for (std::size_t x = 0; x < c.nx(); ++x)
    for (std::size_t k = 0; k < slice; ++k) joint[x * slice + k] = px[x] * c.tensor()[x * slice + k];
  return JointDist({c.nx(), c.ny(), c.nz()}, std::move(joint), {"X", "Y", "Z"});
}

BroadcastChannel bssc(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ChannelError("bssc parameter must lie in [0,1]");
  MarginalChannel y{2, 2, {Dist({p, 1.0 - p}), Dist({0.0, 1.0})}};
  MarginalChannel z{2, 2, {Dist({1.0, 0.0}), Dist({1.0 - p, p})}};
  return BroadcastChannel::from_marginals(y, z);
}

BroadcastChannel noiseless_channel(std::size_t n) {
  std::vector<double> w(n * n * n, 0.0);
  for (std::size_t x = 0; x < n; ++x) w[(x * n + x) * n + x] = 1.0;
  return BroadcastChannel(n, n, n, std::move(w));
}

BroadcastChannel random_channel(std::size_t nx, std::size_t ny, std::size_t nz, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> draw(1.0);
  std::vector<double> w(nx * ny * nz);
  for (std::size_t x = 0; x < nx; ++x) {
    double total = 0.0;
    for (std::size_t k = 0; k < ny * nz; ++k) total += w[x * ny * nz + k] = draw(rng);
    for (std::size_t k = 0; k < ny * nz; ++k) w[x * ny * nz + k] /= total;
  }
  return BroadcastChannel(nx, ny, nz, std::move(w));
}

}  // namespace bcbounds

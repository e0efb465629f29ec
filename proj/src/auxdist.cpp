#include "bcbounds/auxdist.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bcbounds {

namespace {

std::vector<double> column_mix(const std::vector<Dist>& rows, std::span<const double> weights,
                               std::size_t n) {
  std::vector<double> out(n, 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t x = 0; x < n; ++x) out[x] += weights[r] * rows[r][x];
  return out;
}

void check_rows(const std::vector<Dist>& rows, std::size_t count, std::size_t width,
                const char* what) {
  if (rows.size() != count) {
    std::ostringstream os;
    os << what << ": expected " << count << " conditional rows, got " << rows.size();
    throw AuxError(os.str());
  }
  for (const auto& r : rows) {
    if (r.size() != width) {
      std::ostringstream os;
      os << what << ": conditional rows must all have " << width << " entries";
      throw AuxError(os.str());
    }
  }
}

// Rows of cells with zero mass are arbitrary; use a point mass so that
// determinism is preserved.
Dist row_or_default(std::vector<double> weights, std::size_t n) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (total <= 0.0) return Dist::point_mass(n, 0);
  return Dist::normalized(std::move(weights));
}

void check_channel_width(std::size_t nx, const BroadcastChannel& c) {
  if (nx != c.nx()) {
    std::ostringstream os;
    os << "auxiliary law has |X| = " << nx << " but the channel has |X| = " << c.nx();
    throw AuxError(os.str());
  }
}

std::vector<double> attach_channel(std::span<const double> prefix_x, std::size_t nx,
                                   const BroadcastChannel& c) {
  const std::size_t slice = c.ny() * c.nz();
  std::vector<double> out(prefix_x.size() * slice);
  for (std::size_t i = 0; i < prefix_x.size(); ++i) {
    const std::size_t x = i % nx;
    for (std::size_t k = 0; k < slice; ++k) out[i * slice + k] = prefix_x[i] * c.tensor()[x * slice + k];
  }
  return out;
}

}  // namespace

void AuxPair::check() const { check_rows(px_given_u, pu.size(), nx(), "aux pair"); }

JointDist AuxPair::joint(const std::string& aux_label) const {
  check();
  const std::size_t n = nx();
  std::vector<double> p(nu() * n);
  for (std::size_t u = 0; u < nu(); ++u)
    for (std::size_t x = 0; x < n; ++x) p[u * n + x] = pu[u] * px_given_u[u][x];
  return JointDist({nu(), n}, std::move(p), {aux_label, "X"});
}

Dist AuxPair::px() const {
  check();
  return Dist::normalized(column_mix(px_given_u, pu.probs(), nx()));
}

AuxTriple::AuxTriple(JointDist puv, std::vector<Dist> px_given_uv)
    : puv_(std::move(puv)), rows_(std::move(px_given_uv)) {
  if (puv_.rank() != 2) throw AuxError("p(u,v) must have two axes");
  nu_ = puv_.dims()[0];
  nv_ = puv_.dims()[1];
  nx_ = rows_.empty() ? 0 : rows_.front().size();
  check_rows(rows_, nu_ * nv_, nx_, "aux triple");
  deterministic_ = std::all_of(rows_.begin(), rows_.end(), [](const Dist& r) {
    return std::all_of(r.probs().begin(), r.probs().end(), [](double p) { return p == 0.0 || p == 1.0; });
  });
}

AuxTriple AuxTriple::from_joint(const JointDist& puvx) {
  if (puvx.rank() != 3) throw AuxError("expected a joint over (U, V, X)");
  const std::size_t nu = puvx.dims()[0], nv = puvx.dims()[1], nx = puvx.dims()[2];
  const auto p = puvx.probs();
  std::vector<double> cell(nu * nv, 0.0);
  std::vector<Dist> rows;
  for (std::size_t c = 0; c < nu * nv; ++c) {
    std::vector<double> w(p.begin() + c * nx, p.begin() + (c + 1) * nx);
    for (double v : w) cell[c] += v;
    rows.push_back(row_or_default(std::move(w), nx));
  }
  return AuxTriple(JointDist({nu, nv}, std::move(cell), {"U", "V"}), std::move(rows));
}

JointDist AuxTriple::joint() const {
  std::vector<double> p(nu_ * nv_ * nx_);
  const auto cells = puv_.probs();
  for (std::size_t c = 0; c < nu_ * nv_; ++c)
    for (std::size_t x = 0; x < nx_; ++x) p[c * nx_ + x] = cells[c] * rows_[c][x];
  return JointDist({nu_, nv_, nx_}, std::move(p), {"U", "V", "X"});
}

Dist AuxTriple::px() const { return Dist::normalized(column_mix(rows_, puv_.probs(), nx_)); }

AuxPair AuxTriple::u_pair() const {
  const auto ux = joint().marginal({0, 2});
  AuxPair out{ux.marginal({0}).as_dist(), {}};
  for (std::size_t u = 0; u < nu_; ++u) {
    std::vector<double> w(ux.probs().begin() + u * nx_, ux.probs().begin() + (u + 1) * nx_);
    out.px_given_u.push_back(row_or_default(std::move(w), nx_));
  }
  return out;
}

AuxPair AuxTriple::v_pair() const {
  const auto vx = joint().marginal({1, 2});
  AuxPair out{vx.marginal({0}).as_dist(), {}};
  for (std::size_t v = 0; v < nv_; ++v) {
    std::vector<double> w(vx.probs().begin() + v * nx_, vx.probs().begin() + (v + 1) * nx_);
    out.px_given_u.push_back(row_or_default(std::move(w), nx_));
  }
  return out;
}

void CommonInfoAux::check() const {
  check_rows(pw_given_uv, nu() * nv(), nw(), "common-information aux p(w|u,v)");
  check_rows(px_given_uvw, nu() * nv() * nw(), nx(), "common-information aux p(x|u,v,w)");
}

JointDist CommonInfoAux::joint() const {
  check();
  const std::size_t nu_ = nu(), nv_ = nv(), nw_ = nw(), nx_ = nx();
  std::vector<double> p(nu_ * nv_ * nw_ * nx_);
  for (std::size_t u = 0; u < nu_; ++u)
    for (std::size_t v = 0; v < nv_; ++v)
      for (std::size_t w = 0; w < nw_; ++w) {
        const std::size_t cell = (u * nv_ + v) * nw_ + w;
        const double base = pu[u] * pv[v] * pw_given_uv[u * nv_ + v][w];
        for (std::size_t x = 0; x < nx_; ++x) p[cell * nx_ + x] = base * px_given_uvw[cell][x];
      }
  return JointDist({nu_, nv_, nw_, nx_}, std::move(p), {"U", "V", "W", "X"});
}

CommonInfoAux CommonInfoAux::from_joint(const JointDist& puvwx) {
  if (puvwx.rank() != 4) throw AuxError("expected a joint over (U, V, W, X)");
  const std::size_t nu = puvwx.dims()[0], nv = puvwx.dims()[1], nw = puvwx.dims()[2],
                    nx = puvwx.dims()[3];
  const auto uv = puvwx.marginal({0, 1});
  CommonInfoAux g{uv.marginal({0}).as_dist(), uv.marginal({1}).as_dist(), {}, {}};
  double worst = 0.0;
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t v = 0; v < nv; ++v) worst = std::max(worst, std::abs(uv.at({u, v}) - g.pu[u] * g.pv[v]));
  if (worst > kMassTolerance) {
    std::ostringstream os;
    os << "U and V must be independent; max |p(u,v) - p(u)p(v)| = " << worst;
    throw AuxError(os.str());
  }
  const auto p = puvwx.probs();
  for (std::size_t uvc = 0; uvc < nu * nv; ++uvc) {
    std::vector<double> w(nw, 0.0);
    for (std::size_t k = 0; k < nw; ++k) {
      const std::size_t cell = uvc * nw + k;
      std::vector<double> xs(p.begin() + cell * nx, p.begin() + (cell + 1) * nx);
      for (double v : xs) w[k] += v;
      g.px_given_uvw.push_back(row_or_default(std::move(xs), nx));
    }
    g.pw_given_uv.push_back(row_or_default(std::move(w), nw));
  }
  return g;
}

JointDist induced_joint(const AuxTriple& a, const BroadcastChannel& c) {
  check_channel_width(a.nx(), c);
  const auto uvx = a.joint();
  return JointDist({a.nu(), a.nv(), a.nx(), c.ny(), c.nz()}, attach_channel(uvx.probs(), a.nx(), c),
                   {"U", "V", "X", "Y", "Z"});
}

JointDist induced_joint(const AuxPair& a, const BroadcastChannel& c) {
  check_channel_width(a.nx(), c);
  const auto ux = a.joint();
  return JointDist({a.nu(), a.nx(), c.ny(), c.nz()}, attach_channel(ux.probs(), a.nx(), c),
                   {"U", "X", "Y", "Z"});
}

JointDist induced_joint(const CommonInfoAux& g, const BroadcastChannel& c) {
  check_channel_width(g.nx(), c);
  const auto uvwx = g.joint();
  return JointDist({g.nu(), g.nv(), g.nw(), g.nx(), c.ny(), c.nz()},
                   attach_channel(uvwx.probs(), g.nx(), c), {"U", "V", "W", "X", "Y", "Z"});
}

AuxTriple split_construction(const AuxTriple& a) {
  const std::size_t m = a.nx();
  const std::size_t nu = a.nu() * m, nv = a.nv() * m;
  std::vector<double> cells(nu * nv, 0.0);
  std::vector<Dist> rows;
  rows.reserve(nu * nv);
  for (std::size_t u = 0; u < a.nu(); ++u)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t v = 0; v < a.nv(); ++v)
        for (std::size_t j = 0; j < m; ++j) {
          // (i - j) mod m, normalized into [0, m).
          const std::size_t k = (i + m - j) % m;
          const std::size_t us = u * m + i, vs = v * m + j;
          cells[us * nv + vs] = a.p_uv(u, v) * a.px_given(u, v)[k] / static_cast<double>(m);
        }
  for (std::size_t us = 0; us < nu; ++us)
    for (std::size_t vs = 0; vs < nv; ++vs) rows.push_back(Dist::point_mass(m, (us % m + m - vs % m) % m));
  return AuxTriple(JointDist({nu, nv}, std::move(cells), {"U", "V"}), std::move(rows));
}

AuxTriple canonical_coupling(const AuxPair& u_side, const AuxPair& v_side, const BroadcastChannel& c) {
  u_side.check();
  v_side.check();
  check_channel_width(u_side.nx(), c);
  check_channel_width(v_side.nx(), c);
  const std::size_t nx = c.nx();
  const auto px_u = column_mix(u_side.px_given_u, u_side.pu.probs(), nx);
  const auto px_v = column_mix(v_side.px_given_u, v_side.pu.probs(), nx);
  double worst = 0.0;
  std::size_t worst_x = 0;
  for (std::size_t x = 0; x < nx; ++x) {
    if (std::abs(px_u[x] - px_v[x]) > worst) {
      worst = std::abs(px_u[x] - px_v[x]);
      worst_x = x;
    }
  }
  if (worst > kMassTolerance) {
    std::ostringstream os;
    os << "inconsistent input laws: P(X=" << worst_x << ") is " << px_u[worst_x] << " from U and "
       << px_v[worst_x] << " from V (discrepancy " << worst << ")";
    throw AuxError(os.str());
  }
  const std::size_t nu = u_side.nu(), nv = v_side.nu();
  // p(u,v,x) = p(u,x) p(v,x) / p(x)
  std::vector<double> p(nu * nv * nx, 0.0);
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t v = 0; v < nv; ++v)
      for (std::size_t x = 0; x < nx; ++x) {
        const double px = px_u[x];
        if (px <= 0.0) continue;
        p[(u * nv + v) * nx + x] =
            u_side.pu[u] * u_side.px_given_u[u][x] * v_side.pu[v] * v_side.px_given_u[v][x] / px;
      }
  double total = 0.0;
  for (double q : p) total += q;
  for (double& q : p) q /= total;
  return AuxTriple::from_joint(JointDist({nu, nv, nx}, std::move(p), {"U", "V", "X"}));
}

namespace {

void require_binary(const AuxTriple& a, const char* op) {
  if (a.nx() != 2) throw AuxError(std::string(op) + " requires a binary input alphabet");
}

// Zero-mass padding of the auxiliary alphabets up to n x n.
std::vector<double> padded_cells(const AuxTriple& a, std::size_t n) {
  std::vector<double> out(n * n, 0.0);
  for (std::size_t u = 0; u < a.nu(); ++u)
    for (std::size_t v = 0; v < a.nv(); ++v) out[u * n + v] = a.p_uv(u, v);
  return out;
}

}  // namespace

AuxTriple skew_symmetry_swap(const AuxTriple& a) {
  require_binary(a, "skew_symmetry_swap");
  const std::size_t nu = a.nv(), nv = a.nu();
  std::vector<double> cells(nu * nv);
  std::vector<Dist> rows;
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t v = 0; v < nv; ++v) {
      cells[u * nv + v] = a.p_uv(v, u);
      const Dist& src = a.px_given(v, u);
      rows.push_back(Dist({src[1], src[0]}));
    }
  return AuxTriple(JointDist({nu, nv}, std::move(cells), {"U", "V"}), std::move(rows));
}

AuxTriple symmetrize_timeshare(const AuxTriple& a) {
  require_binary(a, "symmetrize_timeshare");
  const AuxTriple swapped = skew_symmetry_swap(a);
  const std::size_t n = std::max(a.nu(), a.nv());
  const std::size_t size = 2 * n;
  std::vector<double> cells(size * size, 0.0);
  std::vector<Dist> rows(size * size, Dist::point_mass(2, 0));
  const AuxTriple* parts[2] = {&a, &swapped};
  for (std::size_t q = 0; q < 2; ++q) {
    const AuxTriple& part = *parts[q];
    const auto padded = padded_cells(part, n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        const std::size_t cell = (q * n + u) * size + (q * n + v);
        cells[cell] = 0.5 * padded[u * n + v];
        if (u < part.nu() && v < part.nv()) rows[cell] = part.px_given(u, v);
      }
  }
  return AuxTriple(JointDist({size, size}, std::move(cells), {"U", "V"}), std::move(rows));
}

double SplitRelation::slack() const {
  switch (kind) {
    case Kind::kEqual: return -std::abs(after - before);
    case Kind::kAfterAtMost: return before - after;
    case Kind::kAfterAtLeast: return after - before;
  }
  return 0.0;
}

namespace {

// Axes of induced_joint(triple): U V X Y Z.
constexpr std::size_t kU = 0, kV = 1, kX = 2, kY = 3, kZ = 4;

double cond_h(const JointDist& j, std::initializer_list<std::size_t> a, std::initializer_list<std::size_t> c) {
  return conditional_entropy(j, std::span<const std::size_t>(a.begin(), a.size()),
                             std::span<const std::size_t>(c.begin(), c.size()));
}

double cond_i(const JointDist& j, std::size_t a, std::size_t b, std::initializer_list<std::size_t> c) {
  const std::size_t aa[] = {a}, bb[] = {b};
  return information(j, aa, bb, std::span<const std::size_t>(c.begin(), c.size()));
}

void check_same_channel(const AuxTriple& original, const AuxTriple& split, const BroadcastChannel& c) {
  if (original.nx() != c.nx() || split.nx() != c.nx())
    throw AuxError("triples and channel disagree on the input alphabet size");
}

}  // namespace

std::vector<SplitRelation> split_entropy_relations(const AuxTriple& original, const AuxTriple& split,
                                                   const BroadcastChannel& c) {
  check_same_channel(original, split, c);
  using K = SplitRelation::Kind;
  const auto j = induced_joint(original, c);
  const auto js = induced_joint(split, c);
  std::vector<SplitRelation> out;
  const Dist px = original.px(), pxs = split.px();
  for (std::size_t x = 0; x < px.size(); ++x) {
    out.push_back({"P(X*=" + std::to_string(x) + ") = P(X=" + std::to_string(x) + ")", px[x], pxs[x], K::kEqual});
  }
  out.push_back({"H(Y*|U*) = H(Y|U)", cond_h(j, {kY}, {kU}), cond_h(js, {kY}, {kU}), K::kEqual});
  out.push_back({"H(Z*|U*) = H(Z|U)", cond_h(j, {kZ}, {kU}), cond_h(js, {kZ}, {kU}), K::kEqual});
  out.push_back({"H(Y*|V*) = H(Y|V)", cond_h(j, {kY}, {kV}), cond_h(js, {kY}, {kV}), K::kEqual});
  out.push_back({"H(Z*|V*) = H(Z|V)", cond_h(j, {kZ}, {kV}), cond_h(js, {kZ}, {kV}), K::kEqual});
  const double hy_uv = cond_h(js, {kY}, {kU, kV}), hz_uv = cond_h(js, {kZ}, {kU, kV});
  out.push_back({"H(Y*|U*,V*) = H(Y|X)", cond_h(j, {kY}, {kX}), hy_uv, K::kEqual});
  out.push_back({"H(Y*|U*,V*) <= H(Y|U,V)", cond_h(j, {kY}, {kU, kV}), hy_uv, K::kAfterAtMost});
  out.push_back({"H(Z*|U*,V*) = H(Z|X)", cond_h(j, {kZ}, {kX}), hz_uv, K::kEqual});
  out.push_back({"H(Z*|U*,V*) <= H(Z|U,V)", cond_h(j, {kZ}, {kU, kV}), hz_uv, K::kAfterAtMost});
  return out;
}

std::vector<SplitRelation> split_information_relations(const AuxTriple& original, const AuxTriple& split,
                                                       const BroadcastChannel& c) {
  check_same_channel(original, split, c);
  using K = SplitRelation::Kind;
  const auto j = induced_joint(original, c);
  const auto js = induced_joint(split, c);
  auto rel = [&](const char* label, std::size_t a, std::size_t b, std::initializer_list<std::size_t> cond, K kind) {
    return SplitRelation{label, cond_i(j, a, b, cond), cond_i(js, a, b, cond), kind};
  };
  return {
      rel("I(U*;Y*) = I(U;Y)", kU, kY, {}, K::kEqual),
      rel("I(V*;Z*) = I(V;Z)", kV, kZ, {}, K::kEqual),
      rel("I(U*;Y*|V*) >= I(U;Y|V)", kU, kY, {kV}, K::kAfterAtLeast),
      rel("I(V*;Z*|U*) >= I(V;Z|U)", kV, kZ, {kU}, K::kAfterAtLeast),
      rel("I(X*;Y*|V*) = I(X;Y|V)", kX, kY, {kV}, K::kEqual),
      rel("I(X*;Z*|U*) = I(X;Z|U)", kX, kZ, {kU}, K::kEqual),
  };
}

}  // namespace bcbounds

#include "bcbounds/detail/fast_eval.hpp"

#include <algorithm>
#include <cmath>

namespace bcbounds::detail {

namespace {

inline double plogp(double p) { return p > kZeroProbability ? p * std::log2(p) : 0.0; }

}  // namespace

FastEvaluator::FastEvaluator(const BroadcastChannel& c) : nx_(c.nx()), ny_(c.ny()), nz_(c.nz()) {
  const auto my = marginal_y(c);
  const auto mz = marginal_z(c);
  for (std::size_t x = 0; x < nx_; ++x) {
    for (std::size_t y = 0; y < ny_; ++y) py_.push_back(my(x, y));
    for (std::size_t z = 0; z < nz_; ++z) pz_.push_back(mz(x, z));
    hy_.push_back(entropy(my.rows[x]));
    hz_.push_back(entropy(mz.rows[x]));
  }
  px_.resize(nx_);
}

double FastEvaluator::conditional_output_entropy(const double* pax, std::size_t na, bool to_y) const {
  const std::size_t nout = to_y ? ny_ : nz_;
  const double* ch = to_y ? py_.data() : pz_.data();
  double h = 0.0;
  for (std::size_t a = 0; a < na; ++a) {
    const double* row = pax + a * nx_;
    double mass = 0.0;
    for (std::size_t x = 0; x < nx_; ++x) mass += row[x];
    if (mass <= kZeroProbability) continue;
    for (std::size_t o = 0; o < nout; ++o) {
      double s = 0.0;
      for (std::size_t x = 0; x < nx_; ++x) s += row[x] * ch[x * nout + o];
      h -= plogp(s);
    }
    h += plogp(mass);
  }
  return h;
}

double FastEvaluator::output_entropy(const double* px, bool to_y) const {
  return conditional_output_entropy(px, 1, to_y);
}

double FastEvaluator::noise_entropy(const double* px, bool to_y) const {
  const auto& h = to_y ? hy_ : hz_;
  double out = 0.0;
  for (std::size_t x = 0; x < nx_; ++x) out += px[x] * h[x];
  return out;
}

RateConstraintSet2 FastEvaluator::ne(std::span<const double> q, std::size_t nu, std::size_t nv,
                                     bool theorem_form) {
  pux_.assign(nu * nx_, 0.0);
  pvx_.assign(nv * nx_, 0.0);
  std::fill(px_.begin(), px_.end(), 0.0);
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t v = 0; v < nv; ++v)
      for (std::size_t x = 0; x < nx_; ++x) {
        const double p = q[(u * nv + v) * nx_ + x];
        pux_[u * nx_ + x] += p;
        pvx_[v * nx_ + x] += p;
        px_[x] += p;
      }
  const double hy = output_entropy(px_.data(), true);
  const double hz = output_entropy(px_.data(), false);
  const double hy_u = conditional_output_entropy(pux_.data(), nu, true);
  const double hz_u = conditional_output_entropy(pux_.data(), nu, false);
  const double hy_v = conditional_output_entropy(pvx_.data(), nv, true);
  const double hz_v = conditional_output_entropy(pvx_.data(), nv, false);

  RateConstraintSet2 s;
  s.r1_max = std::max(0.0, hy - hy_u);
  s.r2_max = std::max(0.0, hz - hz_v);
  double tail_a, tail_b;
  if (theorem_form) {
    tail_a = hz_u - conditional_output_entropy(q.data(), nu * nv, false);
    tail_b = hy_v - conditional_output_entropy(q.data(), nu * nv, true);
    s.provenance.bound = BoundKind::kNeTheorem;
  } else {
    tail_a = hz_u - noise_entropy(px_.data(), false);
    tail_b = hy_v - noise_entropy(px_.data(), true);
  }
  s.sum_max_a = s.r1_max + std::max(0.0, tail_a);
  s.sum_max_b = s.r2_max + std::max(0.0, tail_b);
  return s;
}

RateConstraintSet2 FastEvaluator::km_y(std::span<const double> q, std::size_t nv) {
  std::fill(px_.begin(), px_.end(), 0.0);
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t x = 0; x < nx_; ++x) px_[x] += q[v * nx_ + x];
  const double hy = output_entropy(px_.data(), true);
  const double hy_x = noise_entropy(px_.data(), true);
  const double hz = output_entropy(px_.data(), false);
  RateConstraintSet2 s;
  s.r1_max = std::max(0.0, hy - hy_x);
  s.r2_max = std::max(0.0, hz - conditional_output_entropy(q.data(), nv, false));
  s.sum_max_b = s.r2_max + std::max(0.0, conditional_output_entropy(q.data(), nv, true) - hy_x);
  s.sum_max_a = s.r1_max + s.r2_max;
  s.provenance = {BoundKind::kKornerMartonY, {}, false, true};
  return s;
}

RateConstraintSet2 FastEvaluator::km_z(std::span<const double> q, std::size_t nu) {
  std::fill(px_.begin(), px_.end(), 0.0);
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t x = 0; x < nx_; ++x) px_[x] += q[u * nx_ + x];
  const double hz = output_entropy(px_.data(), false);
  const double hz_x = noise_entropy(px_.data(), false);
  const double hy = output_entropy(px_.data(), true);
  RateConstraintSet2 s;
  s.r2_max = std::max(0.0, hz - hz_x);
  s.r1_max = std::max(0.0, hy - conditional_output_entropy(q.data(), nu, true));
  s.sum_max_a = s.r1_max + std::max(0.0, conditional_output_entropy(q.data(), nu, false) - hz_x);
  s.sum_max_b = s.r1_max + s.r2_max;
  s.provenance = {BoundKind::kKornerMartonZ, {}, true, false};
  return s;
}

RateConstraintSet2 FastEvaluator::cvdm(std::span<const double> q) {
  std::fill(px_.begin(), px_.end(), 0.0);
  for (std::size_t w = 0; w < 2; ++w)
    for (std::size_t x = 0; x < nx_; ++x) px_[x] += q[w * nx_ + x];
  const double hy0 = conditional_output_entropy(q.data(), 1, true);
  const double hy1 = conditional_output_entropy(q.data() + nx_, 1, true);
  const double hz0 = conditional_output_entropy(q.data(), 1, false);
  const double hz1 = conditional_output_entropy(q.data() + nx_, 1, false);
  const double iwy = output_entropy(px_.data(), true) - hy0 - hy1;
  const double iwz = output_entropy(px_.data(), false) - hz0 - hz1;
  const double common = std::max(0.0, std::min(iwy, iwz));
  const double own1 = std::max(0.0, hy0 - noise_entropy(q.data(), true));
  const double own2 = std::max(0.0, hz1 - noise_entropy(q.data() + nx_, false));
  RateConstraintSet2 s;
  s.r1_max = common + own1;
  s.r2_max = common + own2;
  s.sum_max_a = s.sum_max_b = common + own1 + own2;
  s.provenance.bound = BoundKind::kCoverVanDerMeulen;
  return s;
}

}  // namespace bcbounds::detail

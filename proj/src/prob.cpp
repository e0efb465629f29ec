#include "bcbounds/prob.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bcbounds {

std::string check_probabilities(std::span<const double> probs) {
  if (probs.empty()) return "empty distribution";
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!std::isfinite(probs[i])) {
      std::ostringstream os;
      os << "non-finite probability at index " << i;
      return os.str();
    }
    if (probs[i] < 0.0) {
      std::ostringstream os;
      os << "negative probability " << probs[i] << " at index " << i;
      return os.str();
    }
    total += probs[i];
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "total mass " << total << " differs from 1";
    return os.str();
  }
  return {};
}

Dist::Dist(std::vector<double> probs) : probs_(std::move(probs)) {
  if (auto msg = check_probabilities(probs_); !msg.empty()) throw ProbabilityError(msg);
}

Dist Dist::uniform(std::size_t n) {
  if (n == 0) throw ProbabilityError("empty distribution");
  return Dist(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Dist Dist::point_mass(std::size_t n, std::size_t at) {
  if (at >= n) throw ProbabilityError("point mass index out of range");
  std::vector<double> p(n, 0.0);
  p[at] = 1.0;
  return Dist(std::move(p));
}

Dist Dist::normalized(std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ProbabilityError("negative or NaN weight");
    total += w;
  }
  if (!(total > 0.0)) throw ProbabilityError("weights have no mass");
  for (double& w : weights) w /= total;
  return Dist(std::move(weights));
}

JointDist::JointDist(std::vector<std::size_t> dims, std::vector<double> probs,
                     std::vector<std::string> labels)
    : dims_(std::move(dims)), probs_(std::move(probs)), labels_(std::move(labels)) {
  std::size_t expected = 1;
  for (std::size_t d : dims_) {
    if (d == 0) throw ProbabilityError("zero-size axis");
    expected *= d;
  }
  if (expected != probs_.size()) {
    std::ostringstream os;
    os << "tensor has " << probs_.size() << " entries, dims imply " << expected;
    throw ProbabilityError(os.str());
  }
  if (labels_.empty()) {
    for (std::size_t k = 0; k < dims_.size(); ++k) labels_.push_back("A" + std::to_string(k));
  }
  if (labels_.size() != dims_.size()) throw ProbabilityError("label count differs from rank");
  if (auto msg = check_probabilities(probs_); !msg.empty()) throw ProbabilityError(msg);
}

std::size_t JointDist::flat_index(std::span<const std::size_t> index) const {
  if (index.size() != dims_.size()) throw ProbabilityError("index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (index[k] >= dims_[k]) throw ProbabilityError("index out of range");
    flat = flat * dims_[k] + index[k];
  }
  return flat;
}

double JointDist::at(std::span<const std::size_t> index) const { return probs_[flat_index(index)]; }

double JointDist::at(std::initializer_list<std::size_t> index) const {
  return at(std::span<const std::size_t>(index.begin(), index.size()));
}

std::size_t JointDist::axis(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw ProbabilityError("no axis labelled " + label);
  return static_cast<std::size_t>(it - labels_.begin());
}

JointDist JointDist::marginal(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> out_dims;
  std::vector<std::string> out_labels;
  std::vector<bool> seen(dims_.size(), false);
  for (std::size_t a : keep) {
    if (a >= dims_.size() || seen[a]) throw ProbabilityError("bad or repeated axis in marginal");
    seen[a] = true;
    out_dims.push_back(dims_[a]);
    out_labels.push_back(labels_[a]);
  }
  if (out_dims.empty()) return JointDist({1}, {1.0}, {"const"});

  // Stride of every kept axis inside the output tensor.
  std::vector<std::size_t> out_stride(dims_.size(), 0);
  std::size_t stride = 1;
  for (std::size_t k = keep.size(); k-- > 0;) {
    out_stride[keep[k]] = stride;
    stride *= out_dims[k];
  }
  std::vector<double> out(stride, 0.0);
  std::vector<std::size_t> idx(dims_.size(), 0);
  std::size_t target = 0;
  for (double p : probs_) {
    out[target] += p;
    // Odometer increment, keeping `target` in sync.
    for (std::size_t k = dims_.size(); k-- > 0;) {
      target += out_stride[k];
      if (++idx[k] < dims_[k]) break;
      target -= out_stride[k] * dims_[k];
      idx[k] = 0;
    }
  }
  JointDist result;
  result.dims_ = std::move(out_dims);
  result.probs_ = std::move(out);
  result.labels_ = std::move(out_labels);
  return result;
}

JointDist JointDist::marginal(std::initializer_list<std::size_t> keep) const {
  return marginal(std::span<const std::size_t>(keep.begin(), keep.size()));
}

JointDist JointDist::permuted(std::span<const std::size_t> order) const {
  if (order.size() != dims_.size()) throw ProbabilityError("permutation rank mismatch");
  return marginal(order);
}

Dist JointDist::as_dist() const { return Dist(probs_); }

double entropy_unchecked(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > kZeroProbability) h -= p * std::log2(p);
  }
  return h;
}

double entropy(const Dist& d) { return entropy_unchecked(d.probs()); }

double entropy(const JointDist& j) { return entropy_unchecked(j.probs()); }

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw ProbabilityError("binary entropy argument outside [0,1]");
  const double pair[2] = {x, 1.0 - x};
  return entropy_unchecked(pair);
}

namespace {

std::vector<std::size_t> joined(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  std::vector<std::size_t> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

double marginal_entropy(const JointDist& j, std::span<const std::size_t> axes) {
  if (axes.empty()) return 0.0;
  return entropy(j.marginal(axes));
}

}  // namespace

double conditional_entropy(const JointDist& j, std::span<const std::size_t> a,
                           std::span<const std::size_t> c) {
  return marginal_entropy(j, joined(a, c)) - marginal_entropy(j, c);
}

double information(const JointDist& j, std::span<const std::size_t> a,
                   std::span<const std::size_t> b, std::span<const std::size_t> c) {
  if (a.empty() || b.empty()) return 0.0;
  const auto ac = joined(a, c);
  const auto bc = joined(b, c);
  const auto abc = joined(ac, b);
  // marginal() rejects overlapping axis sets through `abc`.
  return marginal_entropy(j, ac) + marginal_entropy(j, bc) - marginal_entropy(j, abc) -
         marginal_entropy(j, c);
}

double mutual_information(const JointDist& j) {
  if (j.rank() != 2) throw ProbabilityError("mutual_information needs a two-axis joint");
  const std::size_t a[] = {0}, b[] = {1};
  return information(j, a, b);
}

double conditional_mutual_information(const JointDist& j) {
  if (j.rank() != 3) throw ProbabilityError("conditional_mutual_information needs a three-axis joint");
  const std::size_t a[] = {0}, b[] = {1}, c[] = {2};
  return information(j, a, b, c);
}

double csiszar_identity_residual(const JointDist& j) {
  if (j.rank() == 0 || j.rank() % 2 != 0) {
    throw ProbabilityError("csiszar identity needs an even number of axes (Y_1..Y_n, Z_1..Z_n)");
  }
  const std::size_t n = j.rank() / 2;
  auto y = [](std::size_t i) { return i; };           // Y_{i+1}, zero-based
  auto z = [n](std::size_t i) { return n + i; };      // Z_{i+1}, zero-based
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> y_past, z_future;
    for (std::size_t k = 0; k < i; ++k) y_past.push_back(y(k));
    for (std::size_t k = i + 1; k < n; ++k) z_future.push_back(z(k));
    const std::size_t zi[] = {z(i)};
    const std::size_t yi[] = {y(i)};
    lhs += information(j, y_past, zi, z_future);
    rhs += information(j, z_future, yi, y_past);
  }
  return std::abs(lhs - rhs);
}

}  // namespace bcbounds

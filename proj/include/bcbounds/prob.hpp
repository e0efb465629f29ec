#pragma once

// Finite-alphabet distributions and the information measures built on them.
// All quantities are in bits.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcbounds {

inline constexpr double kMassTolerance = 1e-9;
// Probabilities below this are treated as exactly zero inside entropy sums.
inline constexpr double kZeroProbability = 1e-12;

class ProbabilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Dist {
 public:
  Dist() = default;
  // Throws ProbabilityError unless the vector is a valid distribution.
  explicit Dist(std::vector<double> probs);

  static Dist uniform(std::size_t n);
  static Dist point_mass(std::size_t n, std::size_t at);
  // Divides by the total mass; throws if the mass is not positive.
  static Dist normalized(std::vector<double> weights);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

// Dense probability tensor, row-major with the last axis fastest.
class JointDist {
 public:
  JointDist() = default;
  JointDist(std::vector<std::size_t> dims, std::vector<double> probs,
            std::vector<std::string> labels = {});

  std::size_t rank() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::span<const double> probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }

  double at(std::span<const std::size_t> index) const;
  double at(std::initializer_list<std::size_t> index) const;
  std::size_t flat_index(std::span<const std::size_t> index) const;

  // Index of the axis carrying `label`; throws if absent.
  std::size_t axis(const std::string& label) const;

  // Marginal over the kept axes, in the order given.
  JointDist marginal(std::span<const std::size_t> keep) const;
  JointDist marginal(std::initializer_list<std::size_t> keep) const;
  // Reorders axes: result axis k is input axis order[k].
  JointDist permuted(std::span<const std::size_t> order) const;

  Dist as_dist() const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<double> probs_;
  std::vector<std::string> labels_;
};

// Validation that returns a message instead of throwing; empty when valid.
std::string check_probabilities(std::span<const double> probs);

double entropy(const Dist& d);
double entropy(const JointDist& j);
// Entropy of a non-negative vector assumed to sum to 1; no validation.
double entropy_unchecked(std::span<const double> probs);
double binary_entropy(double x);

// H(A | C) for disjoint axis sets of `j`.
double conditional_entropy(const JointDist& j, std::span<const std::size_t> a,
                           std::span<const std::size_t> c);

// I(A; B | C) for pairwise disjoint axis sets of `j`. C may be empty.
double information(const JointDist& j, std::span<const std::size_t> a,
                   std::span<const std::size_t> b,
                   std::span<const std::size_t> c = {});

// I(A;B) of a two-axis joint.
double mutual_information(const JointDist& j);
// I(A;B|C) of a three-axis joint laid out as (A, B, C).
double conditional_mutual_information(const JointDist& j);

// |sum_i I(Y^{i-1}; Z_i | Z_{i+1}^n) - sum_i I(Z_{i+1}^n; Y_i | Y^{i-1})| for
// a joint over (Y_1..Y_n, Z_1..Z_n).
double csiszar_identity_residual(const JointDist& j);

}  // namespace bcbounds

#pragma once

// Weighted sum-rate maximization over auxiliary distributions, region tracing
// by support-function sampling, and a brute-force grid oracle.
//
// The problems are nonconvex. Every value returned by the ascent routines is a
// lower estimate of the true support value.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bcbounds/auxdist.hpp"
#include "bcbounds/channel.hpp"
#include "bcbounds/polygon.hpp"
#include "bcbounds/regions.hpp"

namespace bcbounds {

enum class SearchMode {
  kAuto,                     // enumeration when |X|^(|U||V|) <= kMaxEnumeratedMaps
  kContinuousAscent,         // p(u,v) and every p(x|u,v) row are free
  kDeterministicEnumeration  // every map x(u,v), continuous p(u,v)
};

inline constexpr std::size_t kMaxEnumeratedMaps = 4096;

struct OptimizerConfig {
  std::size_t restarts = 16;
  // Random restarts per angle after the first when tracing a region.
  std::size_t trace_restarts = 4;
  std::size_t max_iters = 10000;  // sweeps per restart
  double conv_tol = 1e-9;         // bits
  std::uint64_t seed = 0;
  std::size_t u_card = 0;         // 0 means |X| + 2
  std::size_t v_card = 0;
  SearchMode mode = SearchMode::kAuto;
  // Restricts the search to auxiliaries inducing this input law.
  std::optional<Dist> fixed_px;
  // Worker threads for independent restarts; results do not depend on it.
  std::size_t threads = 1;
  bool record_history = false;
  // Lattice step for the randomized time-sharing scan (binary W).
  double cvdm_grid_step = 1.0 / 256.0;
};

// Binary-W law for the randomized time-sharing region.
struct TimeShareLaw {
  Dist pw;
  std::vector<Dist> px_given_w;
};

using BestAux = std::variant<std::monostate, AuxTriple, AuxPair, TimeShareLaw>;

// max over the constraint set of lambda*R1 + (1-lambda)*R2. Defined for the
// bounds whose region is indexed by a (U, V, X) triple; the Korner-Marton
// halves use the triple's (V, X) and (U, X) marginals.
double weighted_objective(const AuxTriple& a, const BroadcastChannel& c, double lambda, BoundKind kind);

struct WeightedSumResult {
  double value = 0.0;
  BestAux best;
  std::size_t iterations = 0;           // sweeps of the winning restart
  std::vector<double> restart_values;   // best value of every restart, in order
  std::vector<double> history;          // per-sweep objective of the winner
};

// Best weighted sum found across restarts. `warm_starts` are extra starting
// points tried before the random restarts (used when tracing).
WeightedSumResult max_weighted_sum(const BroadcastChannel& c, double lambda, BoundKind kind,
                                   const OptimizerConfig& cfg,
                                   const std::vector<BestAux>& warm_starts = {});

struct AngleResult {
  double lambda = 0.0;
  double value = 0.0;
  std::size_t iterations = 0;
  BestAux best;
};

struct TraceResult {
  BoundKind kind = BoundKind::kNe;
  PolygonRegion polygon;
  std::vector<AngleResult> angles;
  // The two halves for the Korner-Marton bound.
  std::vector<TraceResult> parts;

  double sum_rate() const { return 2.0 * polygon.support(0.5); }
};

TraceResult trace_region(const BroadcastChannel& c, BoundKind kind, std::size_t num_angles,
                         const OptimizerConfig& cfg);

struct OracleOptions {
  double grid_step = 1.0 / 64.0;
  std::size_t u_card = 2;
  std::size_t v_card = 2;
  bool deterministic_maps = true;  // otherwise p(x|u,v) rows are gridded too
  std::uint64_t max_points = 100'000'000;
};

class GridTooLargeError : public std::invalid_argument {
 public:
  GridTooLargeError(const std::string& what, std::uint64_t points, std::uint64_t limit)
      : std::invalid_argument(what), points_(points), limit_(limit) {}
  std::uint64_t points() const { return points_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t points_, limit_;
};

struct OracleResult {
  double value = 0.0;
  BestAux best;
  std::uint64_t points = 0;
};

// Exhaustive scan of a lattice of auxiliary distributions, evaluated through
// the general tensor path in regions.hpp. A certified lower bound on the
// support value with a resolution-limited gap.
OracleResult brute_force_oracle(const BroadcastChannel& c, double lambda, BoundKind kind,
                                const OracleOptions& opts = {});

// Number of lattice points in the k-simplex with denominator n.
std::uint64_t simplex_lattice_size(std::size_t dims, std::size_t n);

struct ComparisonReport {
  TraceResult inner;  // randomized time-sharing
  TraceResult ne;
  TraceResult km;
  double tolerance = 1e-3;
  std::vector<std::string> violations;
  double max_gap_ne_inner = 0.0;
  double max_gap_km_ne = 0.0;

  bool ok() const { return violations.empty(); }
};

ComparisonReport compare_bounds(const BroadcastChannel& c, const OptimizerConfig& cfg,
                                std::size_t num_angles = 65, double tolerance = 1e-3);

// Canonical text form of an auxiliary law, used for deterministic tie-breaks.
std::string serialize_key(const BestAux& a);

}  // namespace bcbounds

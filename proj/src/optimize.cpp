#include "bcbounds/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include "bcbounds/detail/fast_eval.hpp"

namespace bcbounds {

namespace {

using detail::FastEvaluator;

// ---------------------------------------------------------------------------
// Search state: masses m[c] of the auxiliary cells and one conditional row
// r[c][x] per cell. The joint is q[c][x] = m[c] r[c][x].
// ---------------------------------------------------------------------------

struct SearchState {
  std::size_t cells = 0;
  std::size_t nx = 0;
  std::vector<double> mass;
  std::vector<double> rows;

  std::vector<double> joint() const {
    std::vector<double> q(cells * nx);
    for (std::size_t c = 0; c < cells; ++c)
      for (std::size_t x = 0; x < nx; ++x) q[c * nx + x] = mass[c] * rows[c * nx + x];
    return q;
  }

  // Rows of zero-mass cells keep their previous value.
  void assign_joint(const std::vector<double>& q) {
    for (std::size_t c = 0; c < cells; ++c) {
      double m = 0.0;
      for (std::size_t x = 0; x < nx; ++x) m += q[c * nx + x];
      mass[c] = m;
      if (m > 0.0)
        for (std::size_t x = 0; x < nx; ++x) rows[c * nx + x] = q[c * nx + x] / m;
    }
  }
};

SearchState state_from_joint(const std::vector<double>& q, std::size_t cells, std::size_t nx) {
  SearchState s{cells, nx, std::vector<double>(cells, 0.0), std::vector<double>(cells * nx, 1.0 / nx)};
  s.assign_joint(q);
  return s;
}

// Gamma-based Dirichlet sample.
std::vector<double> dirichlet(std::size_t n, double alpha, std::mt19937_64& rng) {
  std::gamma_distribution<double> g(alpha, 1.0);
  std::vector<double> out(n);
  double total = 0.0;
  for (auto& v : out) {
    v = g(rng);
    total += v;
  }
  if (!(total > 0.0)) {
    std::fill(out.begin(), out.end(), 1.0 / n);
    return out;
  }
  for (auto& v : out) v /= total;
  return out;
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

// Best point of f on [lo, hi], starting from f(0) = f0. A coarse scan followed
// by golden-section refinement around the best scan point.
std::pair<double, double> line_search(const std::function<double(double)>& f, double lo, double hi,
                                      double f0) {
  constexpr int kScan = 6;
  constexpr int kGolden = 10;
  double best_t = 0.0, best_f = f0;
  const double step = (hi - lo) / kScan;
  for (int k = 0; k <= kScan; ++k) {
    const double t = (k == kScan) ? hi : lo + k * step;
    const double v = f(t);
    if (v > best_f) {
      best_f = v;
      best_t = t;
    }
  }
  double a = std::max(lo, best_t - step), b = std::min(hi, best_t + step);
  constexpr double kInv = 0.6180339887498949;
  double c = b - kInv * (b - a), d = a + kInv * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < kGolden; ++it) {
    if (fc > best_f) { best_f = fc; best_t = c; }
    if (fd > best_f) { best_f = fd; best_t = d; }
    if (fc >= fd) {
      b = d; d = c; fd = fc;
      c = b - kInv * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + kInv * (b - a);
      fd = f(d);
    }
  }
  if (fc > best_f) { best_f = fc; best_t = c; }
  if (fd > best_f) { best_f = fd; best_t = d; }
  return {best_t, best_f};
}

struct AscentOptions {
  bool cell_moves = true;   // transfer mass between cells, rows fixed
  bool row_moves = true;    // move probability within one row
  bool column_moves = true; // transfer q[c1][x] -> q[c2][x]; preserves p(x)
};

struct AscentOutcome {
  double value = 0.0;
  SearchState state;
  std::size_t sweeps = 0;
  std::vector<double> history;
};

// Block coordinate ascent along simplex edges. The objective never decreases:
// a move is applied only when it strictly improves the current value.
AscentOutcome coordinate_ascent(SearchState s, const std::function<double(const std::vector<double>&)>& objective,
                                const AscentOptions& opts, const OptimizerConfig& cfg) {
  const std::size_t nx = s.nx, cells = s.cells;
  std::vector<double> q = s.joint();
  double current = objective(q);
  AscentOutcome out;
  if (cfg.record_history) out.history.push_back(current);
  std::vector<double> trial = q;

  auto accept = [&](double value) {
    current = value;
    for (double& v : trial) v = std::max(0.0, v);
    q = trial;
    s.assign_joint(q);
  };

  for (std::size_t sweep = 0; sweep < cfg.max_iters; ++sweep) {
    const double start = current;
    if (opts.cell_moves) {
      for (std::size_t c1 = 0; c1 < cells; ++c1)
        for (std::size_t c2 = c1 + 1; c2 < cells; ++c2) {
          const double m1 = s.mass[c1], m2 = s.mass[c2];
          if (m1 + m2 <= 0.0) continue;
          trial = q;
          auto f = [&](double t) {
            for (std::size_t x = 0; x < nx; ++x) {
              trial[c1 * nx + x] = (m1 - t) * s.rows[c1 * nx + x];
              trial[c2 * nx + x] = (m2 + t) * s.rows[c2 * nx + x];
            }
            return objective(trial);
          };
          auto [t, v] = line_search(f, -m2, m1, current);
          if (v > current) {
            f(t);
            accept(v);
          }
        }
    }
    if (opts.row_moves) {
      for (std::size_t c = 0; c < cells; ++c) {
        const double m = s.mass[c];
        if (m <= 0.0) continue;
        for (std::size_t x1 = 0; x1 < nx; ++x1)
          for (std::size_t x2 = x1 + 1; x2 < nx; ++x2) {
            const double r1 = s.rows[c * nx + x1], r2 = s.rows[c * nx + x2];
            trial = q;
            auto f = [&](double t) {
              trial[c * nx + x1] = m * (r1 + t);
              trial[c * nx + x2] = m * (r2 - t);
              return objective(trial);
            };
            auto [t, v] = line_search(f, -r1, r2, current);
            if (v > current) {
              f(t);
              accept(v);
            }
          }
      }
    }
    if (opts.column_moves) {
      for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t c1 = 0; c1 < cells; ++c1)
          for (std::size_t c2 = c1 + 1; c2 < cells; ++c2) {
            const double a = q[c1 * nx + x], b = q[c2 * nx + x];
            if (a + b <= 0.0) continue;
            trial = q;
            auto f = [&](double t) {
              trial[c1 * nx + x] = a - t;
              trial[c2 * nx + x] = b + t;
              return objective(trial);
            };
            auto [t, v] = line_search(f, -b, a, current);
            if (v > current) {
              f(t);
              accept(v);
            }
          }
    }
    out.sweeps = sweep + 1;
    if (cfg.record_history) out.history.push_back(current);
    if (current - start < cfg.conv_tol) break;
  }
  out.value = current;
  out.state = std::move(s);
  return out;
}

// ---------------------------------------------------------------------------
// Problem descriptions
// ---------------------------------------------------------------------------

enum class AuxShape { kTriple, kPairV, kPairU };

struct Problem {
  AuxShape shape = AuxShape::kTriple;
  BoundKind kind = BoundKind::kNe;
  std::size_t nu = 1, nv = 1, nx = 1;

  std::size_t cells() const {
    switch (shape) {
      case AuxShape::kTriple: return nu * nv;
      case AuxShape::kPairV: return nv;
      case AuxShape::kPairU: return nu;
    }
    return 0;
  }

  RateConstraintSet2 evaluate(FastEvaluator& ev, const std::vector<double>& q) const {
    switch (shape) {
      case AuxShape::kTriple: return ev.ne(q, nu, nv, kind == BoundKind::kNeTheorem);
      case AuxShape::kPairV: return ev.km_y(q, nv);
      case AuxShape::kPairU: return ev.km_z(q, nu);
    }
    return {};
  }

  BestAux to_aux(std::vector<double> q) const {
    double total = 0.0;
    for (double v : q) total += v;
    for (double& v : q) v /= total;
    if (shape == AuxShape::kTriple) {
      return AuxTriple::from_joint(JointDist({nu, nv, nx}, std::move(q), {"U", "V", "X"}));
    }
    const std::size_t n = cells();
    const auto joint = JointDist({n, nx}, std::move(q), {shape == AuxShape::kPairV ? "V" : "U", "X"});
    AuxPair pair{joint.marginal({0}).as_dist(), {}};
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<double> row(joint.probs().begin() + a * nx, joint.probs().begin() + (a + 1) * nx);
      double m = 0.0;
      for (double v : row) m += v;
      pair.px_given_u.push_back(m > 0.0 ? Dist::normalized(std::move(row)) : Dist::point_mass(nx, 0));
    }
    return pair;
  }

  // Embeds a warm start into this problem's alphabets, padding with zero-mass
  // symbols. Returns nothing when the shapes are incompatible.
  std::optional<std::vector<double>> embed(const BestAux& aux) const {
    std::vector<double> q(cells() * nx, 0.0);
    if (shape == AuxShape::kTriple) {
      const auto* t = std::get_if<AuxTriple>(&aux);
      if (!t || t->nx() != nx || t->nu() > nu || t->nv() > nv) return std::nullopt;
      const auto j = t->joint();
      for (std::size_t u = 0; u < t->nu(); ++u)
        for (std::size_t v = 0; v < t->nv(); ++v)
          for (std::size_t x = 0; x < nx; ++x) q[(u * nv + v) * nx + x] = j.at({u, v, x});
      return q;
    }
    const auto* p = std::get_if<AuxPair>(&aux);
    if (!p || p->nx() != nx || p->nu() > cells()) return std::nullopt;
    for (std::size_t a = 0; a < p->nu(); ++a)
      for (std::size_t x = 0; x < nx; ++x) q[a * nx + x] = p->pu[a] * p->px_given_u[a][x];
    return q;
  }
};

Problem make_problem(const BroadcastChannel& c, BoundKind kind, const OptimizerConfig& cfg) {
  Problem p;
  p.kind = kind;
  p.nx = c.nx();
  p.nu = cfg.u_card ? cfg.u_card : c.nx() + 2;
  p.nv = cfg.v_card ? cfg.v_card : c.nx() + 2;
  switch (kind) {
    case BoundKind::kNe:
    case BoundKind::kNeTheorem: p.shape = AuxShape::kTriple; break;
    case BoundKind::kKornerMartonY: p.shape = AuxShape::kPairV; break;
    case BoundKind::kKornerMartonZ: p.shape = AuxShape::kPairU; break;
    default: throw std::invalid_argument("no single-auxiliary search for bound " + to_string(kind));
  }
  return p;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (out > cap / std::max<std::uint64_t>(base, 1)) return cap + 1;
    out *= base;
  }
  return out;
}

struct Candidate {
  double value = -1.0;
  std::vector<double> joint;
  std::size_t sweeps = 0;
  std::vector<double> history;
  std::string key;
};

// Strictly better value, or equal value with the smaller serialized auxiliary.
bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.key < b.key;
}

std::string joint_key(const std::vector<double>& q) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (double v : q) os << v << ',';
  return os.str();
}

// Runs `jobs` independent tasks, each writing only its own slot.
template <class Fn>
void run_parallel(std::size_t jobs, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, jobs));
  if (threads == 1) {
    for (std::size_t i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < jobs; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

WeightedSumResult finish(const Problem& prob, std::vector<Candidate>& cands) {
  WeightedSumResult out;
  const Candidate* best = nullptr;
  for (auto& cand : cands) {
    out.restart_values.push_back(cand.value);
    if (cand.joint.empty()) continue;
    cand.key = joint_key(cand.joint);
  }
  for (const auto& cand : cands) {
    if (cand.joint.empty()) continue;
    if (!best || better(cand, *best)) best = &cand;
  }
  if (best) {
    out.value = best->value;
    out.best = prob.to_aux(best->joint);
    out.iterations = best->sweeps;
    out.history = best->history;
  }
  return out;
}

WeightedSumResult ascend(const BroadcastChannel& c, double lambda, const Problem& prob,
                         const OptimizerConfig& cfg, const std::vector<BestAux>& warm_starts) {
  const std::size_t cells = prob.cells(), nx = prob.nx;
  if (cfg.fixed_px && cfg.fixed_px->size() != nx) throw std::invalid_argument("fixed input law has wrong size");

  const std::uint64_t maps = checked_pow(nx, cells, kMaxEnumeratedMaps);
  bool enumerate = false;
  if (prob.shape == AuxShape::kTriple) {
    if (cfg.mode == SearchMode::kDeterministicEnumeration) {
      if (maps > kMaxEnumeratedMaps) {
        throw std::invalid_argument("deterministic enumeration needs |X|^(|U||V|) <= 4096");
      }
      enumerate = true;
    } else if (cfg.mode == SearchMode::kAuto) {
      enumerate = maps <= kMaxEnumeratedMaps && !cfg.fixed_px;
    }
  }
  if (enumerate && cfg.fixed_px) throw std::invalid_argument("a fixed input law needs continuous ascent");

  // Job list: warm starts first, then seeded random restarts (per map when
  // enumerating).
  struct Job {
    std::optional<std::vector<double>> start;
    std::uint64_t map = 0;
    std::size_t index = 0;
  };
  std::vector<Job> jobs;
  if (!enumerate) {
    for (const auto& w : warm_starts) {
      if (auto q = prob.embed(w)) jobs.push_back({std::move(q), 0, jobs.size()});
    }
    for (std::size_t r = 0; r < cfg.restarts; ++r) jobs.push_back({std::nullopt, 0, r});
  } else {
    const std::size_t per_map = std::max<std::size_t>(1, cfg.restarts / 8);
    for (std::uint64_t m = 0; m < maps; ++m)
      for (std::size_t r = 0; r < per_map; ++r) jobs.push_back({std::nullopt, m, m * per_map + r});
  }

  std::vector<Candidate> cands(jobs.size());
  run_parallel(jobs.size(), cfg.threads, [&](std::size_t i) {
    const Job& job = jobs[i];
    FastEvaluator ev(c);
    auto objective = [&](const std::vector<double>& q) {
      return support_value(prob.evaluate(ev, q), lambda);
    };
    std::mt19937_64 rng = substream(cfg.seed, job.start ? 1 : 0, job.index);
    SearchState state;
    AscentOptions opts;
    if (job.start) {
      state = state_from_joint(*job.start, cells, nx);
    } else if (enumerate) {
      state.cells = cells;
      state.nx = nx;
      state.mass = dirichlet(cells, 1.0, rng);
      state.rows.assign(cells * nx, 0.0);
      std::uint64_t code = job.map;
      for (std::size_t cell = 0; cell < cells; ++cell) {
        state.rows[cell * nx + code % nx] = 1.0;
        code /= nx;
      }
      opts = {true, false, false};
    } else {
      const double alpha = (job.index % 2 == 0) ? 1.0 : 0.3;
      std::vector<double> q(cells * nx);
      if (cfg.fixed_px) {
        for (std::size_t x = 0; x < nx; ++x) {
          const auto col = dirichlet(cells, alpha, rng);
          for (std::size_t cell = 0; cell < cells; ++cell) q[cell * nx + x] = (*cfg.fixed_px)[x] * col[cell];
        }
      } else {
        q = dirichlet(cells * nx, alpha, rng);
      }
      state = state_from_joint(q, cells, nx);
    }
    if (cfg.fixed_px) opts = {false, false, true};
    auto res = coordinate_ascent(std::move(state), objective, opts, cfg);
    cands[i] = {res.value, res.state.joint(), res.sweeps, std::move(res.history), {}};
  });
  return finish(prob, cands);
}

void for_each_composition(std::size_t parts, std::size_t total,
                          const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> cur(parts, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t left) {
    if (k + 1 == parts) {
      cur[k] = left;
      fn(cur);
      return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
      cur[k] = v;
      rec(k + 1, left - v);
    }
  };
  if (parts == 0) return;
  rec(0, total);
}

std::size_t grid_denominator(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("grid step must lie in (0, 1]");
  const double n = std::round(1.0 / step);
  if (std::abs(n * step - 1.0) > 1e-9) throw std::invalid_argument("grid step must be 1/N for an integer N");
  return static_cast<std::size_t>(n);
}

std::vector<std::vector<double>> simplex_lattice(std::size_t dims, std::size_t n) {
  std::vector<std::vector<double>> out;
  for_each_composition(dims, n, [&](const std::vector<std::size_t>& comp) {
    std::vector<double> p(dims);
    for (std::size_t k = 0; k < dims; ++k) p[k] = static_cast<double>(comp[k]) / static_cast<double>(n);
    out.push_back(std::move(p));
  });
  return out;
}

// Exhaustive lattice scan over binary-W time-sharing laws through the fast
// evaluator, all angles at once.
WeightedSumResult scan_time_sharing(const BroadcastChannel& c, std::span<const double> lambdas,
                                    double step, std::vector<double>& values, std::vector<BestAux>& best) {
  const std::size_t nx = c.nx();
  std::size_t n = grid_denominator(step);
  // Keep the row lattice manageable for larger input alphabets.
  while (n > 1 && simplex_lattice_size(nx, n) * simplex_lattice_size(nx, n) * (n + 1) > 50'000'000) n /= 2;
  const auto rows = simplex_lattice(nx, n);
  const std::size_t nw = std::max<std::size_t>(grid_denominator(step), 1);

  FastEvaluator ev(c);
  values.assign(lambdas.size(), -1.0);
  std::vector<std::array<std::size_t, 3>> where(lambdas.size());
  std::vector<double> q(2 * nx);
  std::uint64_t points = 0;
  for (std::size_t k = 0; k <= nw; ++k) {
    const double p0 = static_cast<double>(k) / static_cast<double>(nw);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows.size(); ++j) {
        for (std::size_t x = 0; x < nx; ++x) {
          q[x] = p0 * rows[i][x];
          q[nx + x] = (1.0 - p0) * rows[j][x];
        }
        const auto s = ev.cvdm(q);
        ++points;
        for (std::size_t a = 0; a < lambdas.size(); ++a) {
          const double v = support_value(s, lambdas[a]);
          if (v > values[a]) {
            values[a] = v;
            where[a] = {k, i, j};
          }
        }
      }
  }
  best.clear();
  for (std::size_t a = 0; a < lambdas.size(); ++a) {
    const auto [k, i, j] = where[a];
    const double p0 = static_cast<double>(k) / static_cast<double>(nw);
    best.push_back(TimeShareLaw{Dist({p0, 1.0 - p0}), {Dist(rows[i]), Dist(rows[j])}});
  }
  WeightedSumResult out;
  out.iterations = points;
  return out;
}

double evaluate_general(const BroadcastChannel& c, double lambda, BoundKind kind, const BestAux& aux) {
  switch (kind) {
    case BoundKind::kNe: return support_value(ne_outer_constraints(std::get<AuxTriple>(aux), c), lambda);
    case BoundKind::kNeTheorem:
      return support_value(ne_outer_constraints_theorem31_form(std::get<AuxTriple>(aux), c), lambda);
    case BoundKind::kKornerMartonY: return support_value(km_oy_constraints(std::get<AuxPair>(aux), c), lambda);
    case BoundKind::kKornerMartonZ: return support_value(km_oz_constraints(std::get<AuxPair>(aux), c), lambda);
    case BoundKind::kCoverVanDerMeulen: {
      const auto& w = std::get<TimeShareLaw>(aux);
      return support_value(cvdm_rts_constraints(w.pw, w.px_given_w, c), lambda);
    }
    default: break;
  }
  throw std::invalid_argument("bound " + to_string(kind) + " has no single-auxiliary evaluation");
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0,1]");
}

}  // namespace

std::uint64_t simplex_lattice_size(std::size_t dims, std::size_t n) {
  // C(n + dims - 1, dims - 1), saturating.
  if (dims == 0) return 0;
  long double r = 1.0L;
  for (std::size_t k = 1; k < dims; ++k) r = r * static_cast<long double>(n + k) / static_cast<long double>(k);
  if (r > 1e18L) return static_cast<std::uint64_t>(1e18);
  return static_cast<std::uint64_t>(std::llround(r));
}

double weighted_objective(const AuxTriple& a, const BroadcastChannel& c, double lambda, BoundKind kind) {
  check_lambda(lambda);
  switch (kind) {
    case BoundKind::kNe: return support_value(ne_outer_constraints(a, c), lambda);
    case BoundKind::kNeTheorem: return support_value(ne_outer_constraints_theorem31_form(a, c), lambda);
    case BoundKind::kKornerMartonY: return support_value(km_oy_constraints(a.v_pair(), c), lambda);
    case BoundKind::kKornerMartonZ: return support_value(km_oz_constraints(a.u_pair(), c), lambda);
    default: break;
  }
  throw std::invalid_argument("weighted_objective: bound " + to_string(kind) +
                              " is not indexed by a (U, V, X) triple");
}

WeightedSumResult max_weighted_sum(const BroadcastChannel& c, double lambda, BoundKind kind,
                                   const OptimizerConfig& cfg, const std::vector<BestAux>& warm_starts) {
  check_lambda(lambda);
  if (cfg.conv_tol <= 0.0) throw std::invalid_argument("conv_tol must be positive");
  if (kind == BoundKind::kKornerMarton) {
    throw std::invalid_argument(
        "the Korner-Marton bound is an intersection of two unions; trace it, or maximize kmy / kmz");
  }
  if (kind == BoundKind::kCoverVanDerMeulen) {
    const double lambdas[] = {lambda};
    std::vector<double> values;
    std::vector<BestAux> best;
    auto out = scan_time_sharing(c, lambdas, cfg.cvdm_grid_step, values, best);
    out.value = values[0];
    out.best = best[0];
    out.restart_values = values;
    return out;
  }
  return ascend(c, lambda, make_problem(c, kind, cfg), cfg, warm_starts);
}

TraceResult trace_region(const BroadcastChannel& c, BoundKind kind, std::size_t num_angles,
                         const OptimizerConfig& cfg) {
  const auto lambdas = angle_grid(num_angles);
  TraceResult out;
  out.kind = kind;
  if (kind == BoundKind::kKornerMarton) {
    out.parts.push_back(trace_region(c, BoundKind::kKornerMartonY, num_angles, cfg));
    out.parts.push_back(trace_region(c, BoundKind::kKornerMartonZ, num_angles, cfg));
    out.polygon = intersect(out.parts[0].polygon, out.parts[1].polygon);
    for (double l : lambdas) out.angles.push_back({l, out.polygon.support(l), 0, {}});
    return out;
  }
  std::vector<SupportSample> samples;
  if (kind == BoundKind::kCoverVanDerMeulen) {
    std::vector<double> values;
    std::vector<BestAux> best;
    const auto scan = scan_time_sharing(c, lambdas, cfg.cvdm_grid_step, values, best);
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      out.angles.push_back({lambdas[k], values[k], scan.iterations, best[k]});
      samples.push_back({lambdas[k], values[k]});
    }
  } else {
    // Neighbouring angles share optimizers: later angles start from the two
    // previous winners plus a reduced number of random restarts.
    std::vector<BestAux> warm;
    OptimizerConfig later = cfg;
    later.restarts = std::min(cfg.restarts, cfg.trace_restarts);
    for (double l : lambdas) {
      auto res = max_weighted_sum(c, l, kind, warm.empty() ? cfg : later, warm);
      out.angles.push_back({l, res.value, res.iterations, res.best});
      samples.push_back({l, res.value});
      warm.insert(warm.begin(), res.best);
      if (warm.size() > 2) warm.pop_back();
    }
  }
  out.polygon = polygon_from_support(samples);
  return out;
}

OracleResult brute_force_oracle(const BroadcastChannel& c, double lambda, BoundKind kind,
                                const OracleOptions& opts) {
  check_lambda(lambda);
  const std::size_t n = grid_denominator(opts.grid_step);
  const std::size_t nx = c.nx();
  const std::uint64_t limit = opts.max_points;
  const std::uint64_t row_lattice = simplex_lattice_size(nx, n);

  auto too_large = [&](std::uint64_t points, std::size_t params) {
    std::ostringstream os;
    os << "grid has " << points << " points (" << params << " free parameters), limit is " << limit;
    throw GridTooLargeError(os.str(), points, limit);
  };
  auto times = [&](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
    if (a != 0 && b > (limit + 1) / a + 1) return limit + 1;
    return a * b;
  };

  OracleResult out;
  out.value = -1.0;
  auto consider = [&](const BestAux& aux) {
    const double v = evaluate_general(c, lambda, kind, aux);
    ++out.points;
    if (v > out.value) {
      out.value = v;
      out.best = aux;
    }
  };

  switch (kind) {
    case BoundKind::kNe:
    case BoundKind::kNeTheorem: {
      const std::size_t cells = opts.u_card * opts.v_card;
      const std::uint64_t outer = simplex_lattice_size(cells, n);
      const std::uint64_t inner = opts.deterministic_maps ? checked_pow(nx, cells, limit) : checked_pow(row_lattice, cells, limit);
      const std::uint64_t total = times(outer, inner);
      const std::size_t params = (cells - 1) + (opts.deterministic_maps ? 0 : cells * (nx - 1));
      if (total > limit) too_large(total, params);
      const auto cell_grid = simplex_lattice(cells, n);
      const auto rows = opts.deterministic_maps ? std::vector<std::vector<double>>{} : simplex_lattice(nx, n);
      const std::uint64_t choices = opts.deterministic_maps ? nx : rows.size();
      std::vector<std::size_t> pick(cells, 0);
      for (std::uint64_t code = 0; code < inner; ++code) {
        std::uint64_t rest = code;
        std::vector<Dist> cond;
        for (std::size_t k = 0; k < cells; ++k) {
          pick[k] = rest % choices;
          rest /= choices;
          cond.push_back(opts.deterministic_maps ? Dist::point_mass(nx, pick[k]) : Dist(rows[pick[k]]));
        }
        for (const auto& puv : cell_grid) {
          consider(AuxTriple(JointDist({opts.u_card, opts.v_card}, puv, {"U", "V"}), cond));
        }
      }
      break;
    }
    case BoundKind::kKornerMartonY:
    case BoundKind::kKornerMartonZ: {
      const std::size_t na = kind == BoundKind::kKornerMartonY ? opts.v_card : opts.u_card;
      const std::uint64_t total = times(simplex_lattice_size(na, n), checked_pow(row_lattice, na, limit));
      if (total > limit) too_large(total, (na - 1) + na * (nx - 1));
      const auto pa_grid = simplex_lattice(na, n);
      const auto rows = simplex_lattice(nx, n);
      const std::uint64_t inner = checked_pow(rows.size(), na, limit);
      for (std::uint64_t code = 0; code < inner; ++code) {
        std::uint64_t rest = code;
        std::vector<Dist> cond;
        for (std::size_t k = 0; k < na; ++k) {
          cond.push_back(Dist(rows[rest % rows.size()]));
          rest /= rows.size();
        }
        for (const auto& pa : pa_grid) consider(AuxPair{Dist(pa), cond});
      }
      break;
    }
    case BoundKind::kCoverVanDerMeulen: {
      const std::uint64_t total = times(n + 1, times(row_lattice, row_lattice));
      if (total > limit) too_large(total, 1 + 2 * (nx - 1));
      const auto rows = simplex_lattice(nx, n);
      for (std::size_t k = 0; k <= n; ++k) {
        const double p0 = static_cast<double>(k) / static_cast<double>(n);
        for (const auto& r0 : rows)
          for (const auto& r1 : rows) consider(TimeShareLaw{Dist({p0, 1.0 - p0}), {Dist(r0), Dist(r1)}});
      }
      break;
    }
    default:
      throw std::invalid_argument("brute_force_oracle: bound " + to_string(kind) +
                                  " is not a union over one auxiliary law");
  }
  out.value = std::max(0.0, out.value);
  return out;
}

ComparisonReport compare_bounds(const BroadcastChannel& c, const OptimizerConfig& cfg, std::size_t num_angles,
                                double tolerance) {
  ComparisonReport rep;
  rep.tolerance = tolerance;
  rep.inner = trace_region(c, BoundKind::kCoverVanDerMeulen, num_angles, cfg);
  rep.ne = trace_region(c, BoundKind::kNe, num_angles, cfg);
  rep.km = trace_region(c, BoundKind::kKornerMarton, num_angles, cfg);

  auto check_inside = [&](const TraceResult& inner, const TraceResult& outer, const char* what) {
    for (const auto& v : inner.polygon.vertices) {
      if (!polygon_contains(outer.polygon, v, tolerance)) {
        std::ostringstream os;
        os << std::setprecision(6) << std::fixed << what << ": vertex (" << v.r1 << ", " << v.r2
           << ") lies outside";
        rep.violations.push_back(os.str());
      }
    }
  };
  check_inside(rep.inner, rep.ne, "inner region vs NE");
  check_inside(rep.ne, rep.km, "NE vs KM");

  for (std::size_t k = 0; k < rep.ne.angles.size(); ++k) {
    const double l = rep.ne.angles[k].lambda;
    const double h_in = rep.inner.polygon.support(l);
    const double h_ne = rep.ne.polygon.support(l);
    const double h_km = rep.km.polygon.support(l);
    rep.max_gap_ne_inner = std::max(rep.max_gap_ne_inner, h_ne - h_in);
    rep.max_gap_km_ne = std::max(rep.max_gap_km_ne, h_km - h_ne);
    if (h_in > h_ne + tolerance || h_ne > h_km + tolerance) {
      std::ostringstream os;
      os << std::setprecision(6) << std::fixed << "support ordering broken at lambda " << l << ": inner "
         << h_in << ", NE " << h_ne << ", KM " << h_km;
      rep.violations.push_back(os.str());
    }
  }
  return rep;
}

std::string serialize_key(const BestAux& a) {
  std::ostringstream os;
  os << std::setprecision(17);
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AuxTriple> || std::is_same_v<T, AuxPair>) {
          const JointDist j = v.joint();
          for (double p : j.probs()) os << p << ',';
        } else if constexpr (std::is_same_v<T, TimeShareLaw>) {
          for (double p : v.pw.probs()) os << p << ',';
          for (const auto& r : v.px_given_w)
            for (double p : r.probs()) os << p << ',';
        }
      },
      a);
  return os.str();
}

}  // namespace bcbounds

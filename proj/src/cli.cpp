#include "bcbounds/cli.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "bcbounds/io.hpp"
#include "bcbounds/optimize.hpp"
#include "bcbounds/reference.hpp"
#include "bcbounds/regions.hpp"

namespace bcbounds::cli {

namespace {

namespace fs = std::filesystem;

// Failures that map straight onto an exit code.
struct CommandError : std::runtime_error {
  int code;
  CommandError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

std::string f6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fg(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

BroadcastChannel read_channel(const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::runtime_error& e) {
    throw CommandError(kUsageError, e.what());
  }
  return channel_from_json(text);
}

std::string read_input(const std::string& path) {
  try {
    return read_text_file(path);
  } catch (const std::runtime_error& e) {
    throw CommandError(kUsageError, e.what());
  }
}

// Input-side options shared by the commands that run the optimizer.
struct OptimizerFlags {
  OptimizerConfig cfg;
  std::string mode = "auto";

  void attach(CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "seed for every restart stream")->capture_default_str();
    sub->add_option("--restarts", cfg.restarts, "random restarts per weight")->capture_default_str();
    sub->add_option("--trace-restarts", cfg.trace_restarts,
                    "random restarts for each angle after the first when tracing")
        ->capture_default_str();
    sub->add_option("--max-iters", cfg.max_iters, "coordinate sweeps per restart")->capture_default_str();
    sub->add_option("--conv-tol", cfg.conv_tol, "convergence tolerance in bits")->capture_default_str();
    sub->add_option("--u-card", cfg.u_card, "|U| (0 means |X|+2)")->capture_default_str();
    sub->add_option("--v-card", cfg.v_card, "|V| (0 means |X|+2)")->capture_default_str();
    sub->add_option("--mode", mode, "search mode")
        ->check(CLI::IsMember({"auto", "ascent", "enumerate"}))
        ->capture_default_str();
    sub->add_option("--threads", cfg.threads, "worker threads")->capture_default_str();
    sub->add_option("--cvdm-grid", cfg.cvdm_grid_step, "lattice step of the time-sharing scan")
        ->capture_default_str();
  }

  OptimizerConfig resolve() const {
    OptimizerConfig c = cfg;
    c.mode = mode == "ascent"      ? SearchMode::kContinuousAscent
             : mode == "enumerate" ? SearchMode::kDeterministicEnumeration
                                   : SearchMode::kAuto;
    return c;
  }
};

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& path, std::ostream& out) {
  std::optional<BroadcastChannel> c;
  try {
    c = read_channel(path);
  } catch (const ChannelError& e) {
    out << "channel " << path << ": INVALID\n";
    for (const auto& v : e.violations()) out << "  x=" << v.x << ": " << v.message << "\n";
    return kValidationFailure;
  }
  out << "channel " << path << ": valid\n";
  out << "alphabets: |X|=" << c->nx() << " |Y|=" << c->ny() << " |Z|=" << c->nz() << "\n";
  auto print_marginal = [&](const char* name, const MarginalChannel& m) {
    out << name << ":\n";
    for (std::size_t x = 0; x < m.nin; ++x) {
      out << "  x=" << x << ":";
      for (std::size_t o = 0; o < m.nout; ++o) out << ' ' << f6(m(x, o));
      out << "\n";
    }
  };
  print_marginal("p(y|x)", marginal_y(*c));
  print_marginal("p(z|x)", marginal_z(*c));
  return kOk;
}

// ---------------------------------------------------------------- trace

int cmd_trace(const std::string& path, const std::string& bound, std::size_t angles, const std::string& csv,
              const std::string& sidecar, const OptimizerFlags& flags, std::ostream& out) {
  BoundKind kind;
  try {
    kind = parse_bound_kind(bound);
  } catch (const std::invalid_argument& e) {
    throw CommandError(kUsageError, e.what());
  }
  if (angles < 2) throw CommandError(kUsageError, "--angles must be at least 2");
  const auto c = read_channel(path);
  const auto t = trace_region(c, kind, angles, flags.resolve());

  out << "bound: " << to_string(kind) << "\n";
  out << "angles: " << angles << "\n";
  out << "vertices: " << t.polygon.vertices.size() << "\n";
  for (const auto& v : t.polygon.vertices) out << "  (" << f6(v.r1) << ", " << f6(v.r2) << ")\n";
  out << "sum-rate: " << f6(t.sum_rate()) << "\n";

  if (!csv.empty()) {
    fs::path side = sidecar.empty() ? fs::path(csv).replace_extension(".json") : fs::path(sidecar);
    const std::string csv_text = polygon_to_csv(t.polygon);
    const std::string side_text = trace_to_json(t).dump(2) + "\n";
    write_text_file(csv, csv_text);
    write_text_file(side, side_text);
    out << "wrote " << csv << " and " << side.string() << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- eval

void print_set(std::ostream& out, const RateConstraintSet2& s, const std::array<std::string, 4>& labels) {
  auto line = [&](const char* lhs, double v, const std::string& label, bool active) {
    out << "  " << lhs << (active ? f6(v) + "   " + label : std::string("(inactive)")) << "\n";
  };
  line("R1      <= ", s.r1_max, labels[0], true);
  line("R2      <= ", s.r2_max, labels[1], true);
  line("R1 + R2 <= ", s.sum_max_a, labels[2], s.provenance.sum_a_structural);
  line("R1 + R2 <= ", s.sum_max_b, labels[3], s.provenance.sum_b_structural);
  out << "  values: (" << f6(s.r1_max) << ", " << f6(s.r2_max) << ", " << f6(s.sum_max_a) << ", "
      << f6(s.sum_max_b) << ")\n";
  out << "  sum-rate: " << f6(2.0 * support_value(s, 0.5)) << "\n";
}

template <typename Load>
auto load_aux_checked(const std::string& path, Load load) {
  const std::string text = read_input(path);
  try {
    return load(text);
  } catch (const ProbabilityError& e) {
    throw CommandError(kValidationFailure, "invalid auxiliary law: " + std::string(e.what()));
  } catch (const AuxError& e) {
    throw CommandError(kValidationFailure, "invalid auxiliary law: " + std::string(e.what()));
  }
}

void require_same_input(std::size_t aux_nx, const BroadcastChannel& c) {
  if (aux_nx != c.nx()) {
    throw CommandError(kValidationFailure, "alphabet mismatch: auxiliary law has |X|=" + std::to_string(aux_nx) +
                                               ", channel has |X|=" + std::to_string(c.nx()));
  }
}

int cmd_eval(const std::string& channel_path, const std::string& aux_path, const std::string& bound,
             const std::string& form, std::ostream& out) {
  BoundKind kind;
  try {
    kind = parse_bound_kind(bound);
  } catch (const std::invalid_argument& e) {
    throw CommandError(kUsageError, e.what());
  }
  const auto c = read_channel(channel_path);

  if (form == "3d") {
    if (kind != BoundKind::kNe) throw CommandError(kUsageError, "--form 3d applies to --bound ne only");
    const auto g = load_aux_checked(aux_path, common_aux_from_json);
    require_same_input(g.nx(), c);
    const auto s = ne_outer_constraints_3d(g, c);
    out << "bound: ne (three-message form)\n";
    out << "  R0           <= " << f6(s.r0_max) << "   min{I(W;Y), I(W;Z)}\n";
    out << "  R0 + R1      <= " << f6(s.r01_max) << "   I(U,W;Y)\n";
    out << "  R0 + R2      <= " << f6(s.r02_max) << "   I(V,W;Z)\n";
    out << "  R0 + R1 + R2 <= " << f6(s.sum_max_a) << "   I(U,W;Y)+I(V;Z|U,W)\n";
    out << "  R0 + R1 + R2 <= " << f6(s.sum_max_b) << "   I(V,W;Z)+I(U;Y|V,W)\n";
    out << "  values: (" << f6(s.r0_max) << ", " << f6(s.r01_max) << ", " << f6(s.r02_max) << ", "
        << f6(s.sum_max_a) << ", " << f6(s.sum_max_b) << ")\n";
    return kOk;
  }

  if (kind == BoundKind::kCoverVanDerMeulen) {
    const auto t = load_aux_checked(aux_path, time_share_from_json);
    require_same_input(t.px_given_w.front().size(), c);
    if (t.pw.size() != 2) throw CommandError(kValidationFailure, "time-sharing law needs a binary W");
    out << "bound: cvdm\n";
    print_set(out, cvdm_rts_constraints(t.pw, t.px_given_w, c),
              {"min{I(W;Y),I(W;Z)} + P(W=0)I(X;Y|W=0)", "min{I(W;Y),I(W;Z)} + P(W=1)I(X;Z|W=1)",
               "min{I(W;Y),I(W;Z)} + both private terms", "min{I(W;Y),I(W;Z)} + both private terms"});
    return kOk;
  }

  const auto a = load_aux_checked(aux_path, aux_from_json);
  require_same_input(a.nx(), c);
  if (form == "theorem31" && kind == BoundKind::kNe) kind = BoundKind::kNeTheorem;

  switch (kind) {
    case BoundKind::kNe:
      out << "bound: ne (lemma form)\n";
      print_set(out, ne_outer_constraints(a, c), {"I(U;Y)", "I(V;Z)", "I(U;Y)+I(X;Z|U)", "I(V;Z)+I(X;Y|V)"});
      break;
    case BoundKind::kNeTheorem:
      out << "bound: ne (theorem form)\n";
      print_set(out, ne_outer_constraints_theorem31_form(a, c),
                {"I(U;Y)", "I(V;Z)", "I(U;Y)+I(V;Z|U)", "I(V;Z)+I(U;Y|V)"});
      break;
    case BoundKind::kKornerMartonY:
    case BoundKind::kKornerMartonZ:
    case BoundKind::kKornerMarton:
      if (kind != BoundKind::kKornerMartonZ) {
        out << "bound: kmy (auxiliary V)\n";
        print_set(out, km_oy_constraints(a.v_pair(), c), {"I(X;Y)", "I(V;Z)", "", "I(V;Z)+I(X;Y|V)"});
      }
      if (kind != BoundKind::kKornerMartonY) {
        out << "bound: kmz (auxiliary U)\n";
        print_set(out, km_oz_constraints(a.u_pair(), c), {"I(U;Y)", "I(X;Z)", "I(U;Y)+I(X;Z|U)", ""});
      }
      break;
    case BoundKind::kCoverVanDerMeulen:
      break;
  }
  return kOk;
}

// ---------------------------------------------------------------- compare

int cmd_compare(const std::string& path, std::size_t angles, double tolerance, const std::string& out_dir,
                const OptimizerFlags& flags, std::ostream& out) {
  if (angles < 2) throw CommandError(kUsageError, "--angles must be at least 2");
  const auto c = read_channel(path);
  const auto rep = compare_bounds(c, flags.resolve(), angles, tolerance);

  const double s_in = rep.inner.sum_rate(), s_ne = rep.ne.sum_rate(), s_km = rep.km.sum_rate();
  out << "angles: " << angles << ", tolerance: " << fg(tolerance, 6) << "\n";
  out << "cvdm sum-rate: " << f6(s_in) << "\n";
  out << "ne   sum-rate: " << f6(s_ne) << "\n";
  out << "km   sum-rate: " << f6(s_km) << "\n";
  out << "ordered sums: " << f6(s_in) << " <= " << f6(s_ne) << " <= " << f6(s_km) << "\n";
  out << "max support gap ne - cvdm: " << f6(rep.max_gap_ne_inner) << "\n";
  out << "max support gap km - ne:   " << f6(rep.max_gap_km_ne) << "\n";

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    const std::pair<const char*, const TraceResult*> parts[] = {
        {"cvdm", &rep.inner}, {"ne", &rep.ne}, {"km", &rep.km}};
    std::vector<std::pair<fs::path, std::string>> files;
    for (const auto& [name, t] : parts) {
      files.emplace_back(fs::path(out_dir) / (std::string(name) + ".csv"), polygon_to_csv(t->polygon));
      files.emplace_back(fs::path(out_dir) / (std::string(name) + ".json"), trace_to_json(*t).dump(2) + "\n");
    }
    for (const auto& [p, text] : files) write_text_file(p, text);
    out << "wrote polygons to " << out_dir << "\n";
  }

  if (rep.ok()) {
    out << "containment: ok\n";
    return kOk;
  }
  out << "containment: " << rep.violations.size() << " violation(s)\n";
  for (const auto& v : rep.violations) out << "  " << v << "\n";
  return kCheckFailure;
}

// ---------------------------------------------------------------- bssc-repro

struct ReproRow {
  std::string name;
  std::optional<double> published;  // empty for yes/no checks
  double computed = 0.0;
  double tolerance = 0.0;
  bool check_passed = true;  // yes/no rows
};

// Published numbers keep their printed digit count.
std::string published_text(const ReproRow& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", r.tolerance < 1e-4 ? 5 : 4, *r.published);
  return buf;
}

int cmd_bssc_repro(double p, const std::string& out_dir, std::ostream& out) {
  namespace ref = reference;
  const auto c = bssc(p);
  const bool comparable = p == 0.5;
  const double alpha = ref::bssc_alpha();

  std::vector<ReproRow> rows;
  auto value = [&](std::string name, double published, double computed, double tol) {
    rows.push_back({std::move(name), published, computed, tol, true});
  };
  auto check = [&](std::string name, bool passed) { rows.push_back({std::move(name), std::nullopt, 0.0, 0.0, passed}); };

  value("alpha = 0.5 - sqrt(105)/30", ref::kAlphaApprox, alpha, ref::kFourDigitTolerance);

  const auto ts = ref::time_share_law();
  const auto cv = cvdm_rts_constraints(ts.pw, ts.px_given_w, c);
  value("cvdm corner R1", ref::kCvdmCornerR1, cv.r1_max, ref::kFourDigitTolerance);
  value("cvdm corner R2", ref::kCvdmCornerR2, cv.sum_max() - cv.r1_max, ref::kFourDigitTolerance);
  value("cvdm sum-rate", ref::kCvdmSumRate, cv.sum_max(), ref::kFourDigitTolerance);

  const auto oz = km_oz_constraints(ref::stated_u_pair(), c);
  const auto oy = km_oy_constraints(ref::stated_v_pair(), c);
  value("(U,X) pair I(U;Y)", ref::kStatedPrivate, oz.r1_max, ref::kFourDigitTolerance);
  value("(U,X) pair I(X;Z|U)", ref::kStatedCorner, oz.sum_max_a - oz.r1_max, ref::kFourDigitTolerance);
  value("(U,X) pair I(U;Y)+I(X;Z|U)", ref::kStatedSumRate, oz.sum_max_a, ref::kFourDigitTolerance);
  value("(V,X) pair I(V;Z)", ref::kStatedPrivate, oy.r2_max, ref::kFourDigitTolerance);
  value("(V,X) pair I(X;Y|V)", ref::kStatedCorner, oy.sum_max_b - oy.r2_max, ref::kFourDigitTolerance);
  value("(V,X) pair I(V;Z)+I(X;Y|V)", ref::kStatedSumRate, oy.sum_max_b, ref::kFourDigitTolerance);

  const auto triple = ref::stated_triple();
  const auto ne = ne_outer_constraints(triple, c);
  value("triple P(X=1)", 0.5, triple.px()[1], ref::kFourDigitTolerance);
  value("triple I(U;Y)", ref::kStatedPrivate, ne.r1_max, ref::kFourDigitTolerance);
  value("triple I(V;Z)", ref::kStatedPrivate, ne.r2_max, ref::kFourDigitTolerance);
  value("triple I(U;Y)+I(X;Z|U)", ref::kStatedSumRate, ne.sum_max_a, ref::kFourDigitTolerance);
  value("triple I(V;Z)+I(X;Y|V)", ref::kStatedSumRate, ne.sum_max_b, ref::kFourDigitTolerance);

  const auto sz = km_oz_constraints(ref::separating_u_pair(), c);
  const auto sy = km_oy_constraints(ref::separating_v_pair(), c);
  value("separating pair I(U;Y)", ref::kSeparatingIUY, sz.r1_max, ref::kFiveDigitTolerance);
  value("separating pair I(X;Z|U)", ref::kSeparatingIXZ, sz.sum_max_a - sz.r1_max, ref::kFiveDigitTolerance);
  value("separating pair sum", ref::kSeparatingSum, sz.sum_max_a, ref::kFourDigitTolerance);
  const RatePoint pt{ref::kSeparatingPoint, ref::kSeparatingPoint, std::nullopt};
  check("(0.1861, 0.1861) inside O_z half", point_in_constraints(pt, sz));
  check("(0.1861, 0.1861) inside O_y half", point_in_constraints(pt, sy));
  check("(0.1861, 0.1861) outside triple sum constraint", !point_in_constraints(pt, ne));

  out << "bssc(p = " << fg(p, 6) << ")\n";
  char abuf[64];
  std::snprintf(abuf, sizeof abuf, "%.15f", alpha);
  out << "alpha = 0.5 - sqrt(105)/30 = " << abuf << "\n\n";

  std::ostringstream table, csv;
  csv << "quantity,published,computed,tolerance,status\n";
  bool failed = false;
  char line[256];
  std::snprintf(line, sizeof line, "%-48s %10s %10s %9s  %s\n", "quantity", "published", "computed", "tolerance",
                "status");
  table << line;
  for (const auto& r : rows) {
    std::string status;
    if (!comparable) {
      status = "N/A";
    } else if (r.published) {
      status = std::abs(r.computed - *r.published) <= r.tolerance ? "PASS" : "FAIL";
    } else {
      status = r.check_passed ? "PASS" : "FAIL";
    }
    failed = failed || status == "FAIL";
    if (r.published) {
      std::snprintf(line, sizeof line, "%-48s %10s %10s %9s  %s\n", r.name.c_str(), published_text(r).c_str(),
                    f6(r.computed).c_str(), fg(r.tolerance, 2).c_str(), status.c_str());
      csv << '"' << r.name << "\"," << published_text(r) << ',' << fg(r.computed, 12) << ','
          << fg(r.tolerance, 2) << ',' << status << "\n";
    } else {
      const char* got = r.check_passed ? "yes" : "no";
      std::snprintf(line, sizeof line, "%-48s %10s %10s %9s  %s\n", r.name.c_str(), "yes", got, "-",
                    status.c_str());
      csv << '"' << r.name << "\",yes," << got << ",," << status << "\n";
    }
    table << line;
  }
  out << table.str();
  if (!comparable) out << "\npublished values refer to p = 0.5; comparisons not applicable\n";

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_text_file(fs::path(out_dir) / "bssc_repro.csv", csv.str());
    write_text_file(fs::path(out_dir) / "bssc.json", channel_to_json(c));
    write_text_file(fs::path(out_dir) / "triple.json", aux_to_json(triple));
    write_text_file(fs::path(out_dir) / "time_share.json", time_share_to_json(ts));
    out << "wrote artifacts to " << out_dir << "\n";
  }
  out << "\nresult: " << (failed ? "FAIL" : "PASS") << "\n";
  return failed ? kCheckFailure : kOk;
}

// ---------------------------------------------------------------- split-demo

int cmd_split_demo(const std::string& aux_path, const std::string& channel_path, const std::string& out_path,
                   std::ostream& out) {
  constexpr double kTol = 1e-9;
  const auto a = load_aux_checked(aux_path, aux_from_json);
  const auto c = read_channel(channel_path);
  require_same_input(a.nx(), c);
  const auto s = split_construction(a);

  out << "original: |U|=" << a.nu() << " |V|=" << a.nv() << " deterministic=" << (a.deterministic() ? "yes" : "no")
      << "\n";
  out << "split:    |U*|=" << s.nu() << " |V*|=" << s.nv() << " deterministic=" << (s.deterministic() ? "yes" : "no")
      << "\n\n";

  bool failed = false;
  char line[256];
  auto print = [&](const std::vector<SplitRelation>& rels) {
    std::snprintf(line, sizeof line, "%-34s %12s %12s %12s  %s\n", "relation", "before", "after", "slack", "status");
    out << line;
    for (const auto& r : rels) {
      const bool ok = r.holds(kTol);
      failed = failed || !ok;
      std::snprintf(line, sizeof line, "%-34s %12.9f %12.9f %12.3e  %s\n", r.label.c_str(), r.before, r.after,
                    r.kind == SplitRelation::Kind::kEqual ? std::abs(r.after - r.before) : r.slack(),
                    ok ? "ok" : "VIOLATED");
      out << line;
    }
  };
  out << "entropy relations\n";
  print(split_entropy_relations(a, s, c));
  out << "\ninformation relations\n";
  print(split_information_relations(a, s, c));

  if (!out_path.empty() && !failed) {
    write_text_file(out_path, aux_to_json(s));
    out << "\nwrote " << out_path << "\n";
  }
  out << "\nresult: " << (failed ? "FAIL" : "PASS") << "\n";
  return failed ? kCheckFailure : kOk;
}

// ---------------------------------------------------------------- gen-channel

int cmd_gen_channel(const std::string& kind, double p, std::size_t n, std::uint64_t seed, const std::string& path,
                    std::ostream& out) {
  BroadcastChannel c;
  if (kind == "bssc") c = bssc(p);
  else if (kind == "noiseless") c = noiseless_channel(n);
  else c = random_channel(n, n, n, seed);
  const std::string text = channel_to_json(c);
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
    out << "wrote " << path << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical bounds for two-receiver discrete memoryless broadcast channels", "bcbounds"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string channel, aux, bound = "ne", csv, sidecar, form = "lemma", out_dir, out_path, kind = "bssc";
  std::size_t angles = 65, n = 2;
  double tolerance = 1e-3, p = 0.5;
  std::uint64_t seed = 0;
  OptimizerFlags flags;

  auto* validate = app.add_subcommand("validate", "check a channel file and print its marginals");
  validate->add_option("channel", channel, "channel JSON")->required();
  validate->callback([&] { action = [&] { return cmd_validate(channel, out); }; });

  auto* trace = app.add_subcommand("trace", "trace a rate region by support-function sampling");
  trace->add_option("channel", channel, "channel JSON")->required();
  trace->add_option("--bound", bound, "ne | ne31 | kmy | kmz | km | cvdm")->capture_default_str();
  trace->add_option("--angles", angles, "number of weights on [0,1]")->capture_default_str();
  trace->add_option("--out", csv, "polygon CSV path");
  trace->add_option("--sidecar", sidecar, "per-angle JSON path (default: CSV path with .json)");
  flags.attach(trace);
  trace->callback([&] { action = [&] { return cmd_trace(channel, bound, angles, csv, sidecar, flags, out); }; });

  auto* eval = app.add_subcommand("eval", "evaluate a bound at a fixed auxiliary law");
  eval->add_option("channel", channel, "channel JSON")->required();
  eval->add_option("aux", aux, "auxiliary law JSON")->required();
  eval->add_option("--bound", bound, "ne | ne31 | kmy | kmz | km | cvdm")->capture_default_str();
  eval->add_option("--form", form, "constraint form of the ne bound")
      ->check(CLI::IsMember({"lemma", "theorem31", "3d"}))
      ->capture_default_str();
  eval->callback([&] { action = [&] { return cmd_eval(channel, aux, bound, form, out); }; });

  auto* compare = app.add_subcommand("compare", "trace all bounds and check their ordering");
  compare->add_option("channel", channel, "channel JSON")->required();
  compare->add_option("--angles", angles, "number of weights on [0,1]")->capture_default_str();
  compare->add_option("--tolerance", tolerance, "containment tolerance")->capture_default_str();
  compare->add_option("--out-dir", out_dir, "directory for polygon CSV and JSON files");
  flags.attach(compare);
  compare->callback([&] { action = [&] { return cmd_compare(channel, angles, tolerance, out_dir, flags, out); }; });

  auto* repro = app.add_subcommand("bssc-repro", "evaluate the reference laws on the skew-symmetric channel");
  repro->add_option("--p", p, "crossover parameter")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  repro->add_option("--out-dir", out_dir, "directory for the table and the laws used");
  repro->callback([&] { action = [&] { return cmd_bssc_repro(p, out_dir, out); }; });

  auto* split = app.add_subcommand("split-demo", "apply the splitting construction and check its relations");
  split->add_option("aux", aux, "auxiliary triple JSON")->required();
  split->add_option("channel", channel, "channel JSON")->required();
  split->add_option("--out", out_path, "write the split triple here");
  split->callback([&] { action = [&] { return cmd_split_demo(aux, channel, out_path, out); }; });

  auto* gen = app.add_subcommand("gen-channel", "write a standard channel file");
  gen->add_option("kind", kind, "bssc | noiseless | random")
      ->check(CLI::IsMember({"bssc", "noiseless", "random"}))
      ->capture_default_str();
  gen->add_option("--p", p, "bssc parameter")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  gen->add_option("--n", n, "alphabet size for noiseless and random channels")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen->add_option("--seed", seed, "seed for random channels")->capture_default_str();
  gen->add_option("--out", out_path, "output path (default: stdout)");
  gen->callback([&] { action = [&] { return cmd_gen_channel(kind, p, n, seed, out_path, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    return action();
  } catch (const CommandError& e) {
    err << "error: " << e.what() << "\n";
    return e.code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ChannelError& e) {
    err << "invalid channel: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const ProbabilityError& e) {
    err << "invalid distribution: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const AuxError& e) {
    err << "invalid auxiliary law: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace bcbounds::cli

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kbp/closure.hpp"
#include "kbp/errors.hpp"
#include "kbp/experiment.hpp"
#include "kbp/graph.hpp"
#include "kbp/lemma_oracles.hpp"
#include "kbp/pattern.hpp"
#include "kbp/report_json.hpp"
#include "kbp/witness.hpp"

namespace kbp::cli {

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr const char* kProbeCsvHeader = "n,pattern_r,pattern_s,p,trials,percolated_fraction,ci_lo,ci_hi,seed";

using nlohmann::json;

// Shortest representation that round-trips, so output is byte-stable.
std::string num(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

enum class Format { text, csv, json };

struct Common {
  std::vector<int> pattern;
  std::string input = "-";
  bool json = false;
  bool csv = false;

  Format format() const { return json ? Format::json : csv ? Format::csv : Format::text; }
  Pattern make_pattern() const { return Pattern::make(pattern.at(0), pattern.at(1)); }
};

void add_pattern(CLI::App* cmd, Common& c) {
  cmd->add_option("--pattern", c.pattern, "Part sizes r s of K_{r,s}")->expected(2)->required();
}

void add_format(CLI::App* cmd, Common& c, bool with_csv) {
  auto* j = cmd->add_flag("--json", c.json, "Emit JSON");
  if (with_csv) cmd->add_flag("--csv", c.csv, "Emit CSV")->excludes(j);
}

json meta(const std::vector<std::string>& args) {
  return {{"version", kVersion}, {"command", args}};
}

Graph load_graph(const std::string& path, std::istream& in) {
  if (path == "-") return read_edge_list(in);
  std::ifstream file(path);
  if (!file) throw InputError("cannot open " + path);
  return read_edge_list(file);
}

json probe_json(std::size_t n, const Pattern& pattern, double p, const Estimate& e, std::uint64_t seed) {
  return {{"n", n},           {"pattern_r", pattern.r},   {"pattern_s", pattern.s}, {"p", p},
          {"trials", e.trials}, {"percolated_fraction", e.fraction}, {"ci_lo", e.ci_lo}, {"ci_hi", e.ci_hi},
          {"seed", seed}};
}

std::string probe_csv(std::size_t n, const Pattern& pattern, double p, const Estimate& e, std::uint64_t seed) {
  std::ostringstream row;
  row << n << ',' << pattern.r << ',' << pattern.s << ',' << num(p) << ',' << e.trials << ',' << num(e.fraction) << ','
      << num(e.ci_lo) << ',' << num(e.ci_hi) << ',' << seed;
  return row.str();
}

json edge_json(Edge e) { return json::array({e.u, e.v}); }

int run_closure(const Common& c, const std::string& output, bool percolation_only, const std::vector<std::string>& args,
                std::istream& in, std::ostream& out) {
  const Pattern pattern = c.make_pattern();
  const Graph g = load_graph(c.input, in);

  if (percolation_only) {
    const bool result = percolates(g, pattern);
    if (c.json)
      out << json{{"meta", meta(args)}, {"pattern", {{"r", pattern.r}, {"s", pattern.s}}}, {"n", g.order()}, {"percolated", result}}.dump(2)
          << '\n';
    else
      out << "percolated: " << (result ? "true" : "false") << '\n';
    return kExitOk;
  }

  const ClosureResult result = closure(g, pattern);
  validate_trace(g, result, pattern);
  if (result.verification_recoveries != 0)
    throw InvariantViolation("closure worklist missed " + std::to_string(result.verification_recoveries) + " infections");

  if (!output.empty()) {
    std::ofstream file(output);
    if (!file) throw InputError("cannot write " + output);
    write_edge_list(file, result.final);
  }

  if (c.json) {
    json trace = json::array();
    for (const InfectionStep& step : result.trace)
      trace.push_back({{"t", step.t}, {"edge", edge_json(step.edge)}, {"side_a", step.copy.side_a}, {"side_b", step.copy.side_b}});
    json doc = {{"meta", meta(args)},
                {"pattern", {{"r", pattern.r}, {"s", pattern.s}}},
                {"n", g.order()},
                {"input_edges", g.edge_count()},
                {"final_edges", result.final.edge_count()},
                {"percolated", result.percolated},
                {"infections", result.trace.size()},
                {"trace", trace}};
    if (output.empty()) {
      json edges = json::array();
      for (const Edge& e : result.final.edges()) edges.push_back(edge_json(e));
      doc["final_graph"] = edges;
    }
    out << doc.dump(2) << '\n';
    return kExitOk;
  }

  out << "pattern: " << pattern.name() << '\n'
      << "n: " << g.order() << '\n'
      << "input_edges: " << g.edge_count() << '\n'
      << "final_edges: " << result.final.edge_count() << '\n'
      << "percolated: " << (result.percolated ? "true" : "false") << '\n'
      << "infections: " << result.trace.size() << '\n';
  for (const InfectionStep& step : result.trace) {
    out << "step " << step.t << ": " << step.edge.u << ' ' << step.edge.v << " | A:";
    for (Vertex x : step.copy.side_a) out << ' ' << x;
    out << " | B:";
    for (Vertex x : step.copy.side_b) out << ' ' << x;
    out << '\n';
  }
  return kExitOk;
}

int run_estimate(const Common& c, std::size_t n, double p, std::size_t trials, std::uint64_t seed,
                 const std::vector<std::string>& args, std::ostream& out) {
  const Pattern pattern = c.make_pattern();
  const Estimate e = estimate_probability({n, pattern, p, trials, seed});
  switch (c.format()) {
    case Format::json:
      out << json{{"meta", meta(args)}, {"rows", json::array({probe_json(n, pattern, p, e, seed)})}}.dump(2) << '\n';
      break;
    case Format::csv:
      out << kProbeCsvHeader << '\n' << probe_csv(n, pattern, p, e, seed) << '\n';
      break;
    case Format::text:
      out << "pattern: " << pattern.name() << "\nn: " << n << "\np: " << num(p) << "\ntrials: " << e.trials
          << "\npercolated: " << e.successes << "\nfraction: " << num(e.fraction) << "\nci95: [" << num(e.ci_lo) << ", "
          << num(e.ci_hi) << "]\n";
      break;
  }
  return kExitOk;
}

int run_threshold(const Common& c, std::size_t n, std::size_t trials, double rel_tol, std::optional<double> lo,
                  std::optional<double> hi, std::uint64_t seed, const std::vector<std::string>& args, std::ostream& out) {
  const Pattern pattern = c.make_pattern();
  const auto bracket = default_bracket(pattern, n);
  const ThresholdResult r =
      find_threshold({n, pattern, trials, lo.value_or(bracket.first), hi.value_or(bracket.second), rel_tol, seed});
  switch (c.format()) {
    case Format::json: {
      json probes = json::array();
      for (const Probe& pr : r.probes) probes.push_back(probe_json(n, pattern, pr.p, pr.estimate, seed));
      out << json{{"meta", meta(args)},
                  {"p_hat", r.p_hat},
                  {"lo", r.lo},
                  {"hi", r.hi},
                  {"expansions", r.expansions},
                  {"bisection_probes", r.bisection_probes},
                  {"rows", probes}}
                 .dump(2)
          << '\n';
      break;
    }
    case Format::csv:
      out << kProbeCsvHeader << '\n';
      for (const Probe& pr : r.probes) out << probe_csv(n, pattern, pr.p, pr.estimate, seed) << '\n';
      break;
    case Format::text:
      out << "pattern: " << pattern.name() << "\nn: " << n << "\np_hat: " << num(r.p_hat) << "\nbracket: [" << num(r.lo)
          << ", " << num(r.hi) << "]\nprobes: " << r.probes.size() << "\n";
      break;
  }
  return kExitOk;
}

int run_sweep(const Common& c, const std::vector<std::size_t>& n_list, std::size_t trials, double rel_tol,
              std::uint64_t seed, const std::vector<std::string>& args, std::ostream& out) {
  const Pattern pattern = c.make_pattern();
  const ScalingResult result = sweep_scaling(pattern, n_list, trials, rel_tol, seed);
  auto opt = [](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
  switch (c.format()) {
    case Format::json: {
      json rows = json::array();
      for (const ScalingRow& row : result.rows) {
        json j = {{"n", row.n}, {"trials", row.trials}, {"ci_half_width", row.ci_half_width}};
        j["p_hat"] = row.p_hat ? json(*row.p_hat) : json(nullptr);
        j["lower_bound_p"] = row.lower_curve ? json(*row.lower_curve) : json(nullptr);
        j["upper_curve_c1"] = row.upper_curve ? json(*row.upper_curve) : json(nullptr);
        if (!row.failure.empty()) j["failure"] = row.failure;
        rows.push_back(j);
      }
      out << json{{"meta", meta(args)},
                  {"pattern", {{"r", pattern.r}, {"s", pattern.s}}},
                  {"seed", seed},
                  {"rows", rows},
                  {"fitted_exponent", result.fitted_exponent ? json(*result.fitted_exponent) : json(nullptr)},
                  {"theory_exponent", result.theory_exponent}}
                 .dump(2)
          << '\n';
      break;
    }
    case Format::csv:
      out << "n,pattern_r,pattern_s,p_hat,ci_half_width,trials,lower_bound_p,upper_curve_c1,seed\n";
      for (const ScalingRow& row : result.rows)
        out << row.n << ',' << pattern.r << ',' << pattern.s << ',' << opt(row.p_hat) << ',' << num(row.ci_half_width) << ','
            << row.trials << ',' << opt(row.lower_curve) << ',' << opt(row.upper_curve) << ',' << seed << '\n';
      break;
    case Format::text:
      out << "pattern: " << pattern.name() << '\n';
      for (const ScalingRow& row : result.rows)
        out << "n=" << row.n << " p_hat=" << (row.p_hat ? num(*row.p_hat) : "failed: " + row.failure)
            << " ci_half_width=" << num(row.ci_half_width) << '\n';
      out << "fitted_exponent: " << (result.fitted_exponent ? num(*result.fitted_exponent) : "n/a")
          << "\ntheory_exponent: " << num(result.theory_exponent) << '\n';
      break;
  }
  return kExitOk;
}

struct WitnessRunOptions {
  std::size_t runs = 0;
  std::size_t n = 12;
  double p = 0.5;
  std::size_t level = 2;
};

int run_verify(int r, int s, int m_max, const WitnessRunOptions& wr, std::uint64_t seed, bool as_json,
               const std::vector<std::string>& args, std::ostream& out) {
  const Pattern pattern = Pattern::make(r, s);
  const OverlapReport single = verify_single_overlap(pattern);
  const OverlapReport multi = verify_multi_overlap(pattern, m_max);
  const Case3Report case3 = verify_case3_boundary(pattern, m_max);

  std::vector<RunReport> runs;
  std::size_t violations = 0;
  for (std::size_t i = 0; i < wr.runs; ++i) {
    const std::uint64_t run_seed = trial_seed(seed, i);
    runs.push_back(check_run(sample_gnp({wr.n, wr.p, run_seed}), pattern, run_seed, wr.level));
    violations += runs.back().violation_count();
  }

  if (as_json) {
    json doc = {{"meta", meta(args)},
                {"hypothesis_holds", in_witness_lemma_range(pattern)},
                {"single_overlap", to_json(single)},
                {"multi_overlap", to_json(multi)},
                {"case3_boundary", to_json(case3)}};
    if (wr.runs > 0) {
      json reports = json::array();
      for (const RunReport& rep : runs) reports.push_back(to_json(rep));
      doc["witness_runs"] = reports;
    }
    out << doc.dump(2) << '\n';
  } else {
    auto instance = [](const OverlapInstance& inst) {
      std::ostringstream s;
      s << "P=(";
      for (std::size_t i = 0; i < inst.p.size(); ++i) s << (i ? "," : "") << inst.p[i];
      s << ") Q=(";
      for (std::size_t i = 0; i < inst.q.size(); ++i) s << (i ? "," : "") << inst.q[i];
      s << ")";
      return s.str();
    };
    out << "pattern: " << pattern.name() << "\nlambda: " << lambda(pattern).to_string()
        << "\nhypothesis r <= (s-2)^2+s: " << (in_witness_lemma_range(pattern) ? "holds" : "fails") << '\n';
    out << "single_overlap: " << (single.passed ? "pass" : "FAIL") << " over " << single.instances
        << " pairs; minimum at (P,Q)=(" << single.worst.p[0] << "," << single.worst.q[0]
        << ") value " << single.worst_slack.to_string() << '\n';
    out << "multi_overlap (m<=" << m_max << "): " << (multi.passed ? "pass" : "FAIL") << " over " << multi.instances
        << " instances";
    if (multi.instances > 0) out << "; tightest " << instance(multi.worst) << " slack " << multi.worst_slack.to_string();
    out << '\n';
    out << "case3_boundary: " << (case3.passed ? "pass" : "FAIL") << '\n';
    for (const Case3Row& row : case3.rows)
      out << "  m=" << row.m << " max_sum_PQ=" << row.max_product_sum << " rs-m=" << row.product_ceiling
          << " lambda(r+s-2m)+m=" << row.right_side.to_string() << '\n';
    if (wr.runs > 0)
      out << "witness_runs: " << wr.runs << " violations: " << violations << '\n';
  }
  return violations == 0 ? kExitOk : kExitInvariant;
}

int run_balanced(int r, int s, bool as_json, const std::vector<std::string>& args, std::ostream& out) {
  const Pattern pattern = Pattern::make(r, s);
  const BalancednessReport brute = is_balanced_brute_force(pattern);
  const bool applies = closed_form_applies(pattern);
  const bool closed = is_balanced_closed_form(pattern);
  if (as_json) {
    out << json{{"meta", meta(args)},
                {"pattern", {{"r", pattern.r}, {"s", pattern.s}}},
                {"lambda", lambda(pattern).to_string()},
                {"balanced", brute.balanced},
                {"closed_form", applies ? json(closed) : json(nullptr)},
                {"density_condition_holds", brute.density_condition_holds},
                {"worst_subgraph", {brute.worst_subgraph.first, brute.worst_subgraph.second}},
                {"worst_is_edge_deleted", brute.worst_is_edge_deleted},
                {"worst_ratio", brute.worst_ratio.to_string()}}
               .dump(2)
        << '\n';
    return kExitOk;
  }
  out << "pattern: " << pattern.name() << "\nlambda: " << lambda(pattern).to_string()
      << "\nbalanced: " << (brute.balanced ? "true" : "false")
      << "\nclosed_form: " << (applies ? (closed ? "true" : "false") : "outside lemma range")
      << "\ndensity_condition: " << (brute.density_condition_holds ? "true" : "false") << " (e(H)=" << pattern.edge_count()
      << ", 2v(H)-2=" << 2 * pattern.vertex_count() - 2 << ")"
      << "\nworst_subgraph: " << (brute.worst_is_edge_deleted ? "K_{r,s} minus an edge" : "K_{" + std::to_string(brute.worst_subgraph.first) + "," + std::to_string(brute.worst_subgraph.second) + "}")
      << " ratio " << brute.worst_ratio.to_string() << '\n';
  return kExitOk;
}

int run_bounds(const Common& c, std::vector<std::size_t> n_list, double c_lower, double c_upper,
               const std::vector<std::string>& args, std::ostream& out) {
  const Pattern pattern = c.make_pattern();
  if (pattern.s < 3) throw DomainError("bound curves are stated for r, s >= 3");
  std::sort(n_list.begin(), n_list.end());
  struct Row {
    std::size_t n;
    double theorem_lower, theorem_upper, general_lower, hypothesis_p;
  };
  std::vector<Row> rows;
  for (std::size_t n : n_list) {
    if (n < 16) throw InputError("bound curves need n >= 16");
    rows.push_back({n, theorem_lower_curve(pattern, n, c_lower), upper_bound_curve(pattern, n, c_upper),
                    general_lower_bound_p(pattern, n).value, lower_bound_p(pattern, n)});
  }
  const Pattern reduced = general_lower_bound_p(pattern, n_list.front()).reduced;
  switch (c.format()) {
    case Format::json: {
      json arr = json::array();
      for (const Row& row : rows)
        arr.push_back({{"n", row.n},
                       {"theorem_lower", row.theorem_lower},
                       {"theorem_upper", row.theorem_upper},
                       {"general_lower", row.general_lower},
                       {"hypothesis_p", row.hypothesis_p}});
      out << json{{"meta", meta(args)},
                  {"pattern", {{"r", pattern.r}, {"s", pattern.s}}},
                  {"lambda", lambda(pattern).to_string()},
                  {"balanced", is_balanced_closed_form(pattern)},
                  {"c_lower", c_lower},
                  {"c_upper", c_upper},
                  {"reduced_pattern", {{"r", reduced.r}, {"s", reduced.s}}},
                  {"rows", arr}}
                 .dump(2)
          << '\n';
      break;
    }
    case Format::csv:
    case Format::text:
      if (c.format() == Format::text)
        out << "# " << pattern.name() << " lambda=" << lambda(pattern).to_string()
            << " balanced=" << (is_balanced_closed_form(pattern) ? "true" : "false") << " reduced=" << reduced.name() << '\n';
      out << "n,theorem_lower,theorem_upper,general_lower,hypothesis_p\n";
      for (const Row& row : rows)
        out << row.n << ',' << num(row.theorem_lower) << ',' << num(row.theorem_upper) << ',' << num(row.general_lower) << ','
            << num(row.hypothesis_p) << '\n';
      break;
  }
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"K_{r,s} graph bootstrap percolation engine", "kbp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common c;
  std::string output;
  std::size_t n = 0;
  double p = 0.0;
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  double rel_tol = 0.05;
  std::optional<double> lo;
  std::optional<double> hi;
  std::vector<std::size_t> n_list;
  int r_arg = 0;
  int s_arg = 0;
  int m_max = 4;
  WitnessRunOptions wr;
  double c_lower = 1.0;
  double c_upper = 1.0;
  std::size_t n_min = 0;
  std::size_t n_max = 0;
  std::size_t n_step = 0;

  auto* closure_cmd = app.add_subcommand("closure", "Bootstrap closure of an edge-list graph, with infection trace");
  add_pattern(closure_cmd, c);
  closure_cmd->add_option("--input", c.input, "Edge-list file ('-' for stdin)");
  closure_cmd->add_option("--output", output, "Write the closed graph as an edge list");
  add_format(closure_cmd, c, false);

  auto* perc_cmd = app.add_subcommand("percolates", "Whether an edge-list graph percolates");
  add_pattern(perc_cmd, c);
  perc_cmd->add_option("--input", c.input, "Edge-list file ('-' for stdin)");
  add_format(perc_cmd, c, false);

  auto* est_cmd = app.add_subcommand("estimate-prob", "Monte Carlo percolation probability on G(n,p)");
  add_pattern(est_cmd, c);
  est_cmd->add_option("--n", n, "Vertex count")->required()->check(CLI::PositiveNumber);
  est_cmd->add_option("--p", p, "Edge probability")->required()->check(CLI::Range(0.0, 1.0));
  est_cmd->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  est_cmd->add_option("--seed", seed, "Base seed");
  add_format(est_cmd, c, true);

  auto* thr_cmd = app.add_subcommand("find-threshold", "Bisection estimate of the critical probability");
  add_pattern(thr_cmd, c);
  thr_cmd->add_option("--n", n, "Vertex count")->required()->check(CLI::PositiveNumber);
  thr_cmd->add_option("--trials", trials, "Trials per probe")->check(CLI::PositiveNumber);
  thr_cmd->add_option("--rel-tol", rel_tol, "Stop when (hi-lo)/hi <= rel-tol");
  thr_cmd->add_option("--lo", lo, "Initial lower bracket end");
  thr_cmd->add_option("--hi", hi, "Initial upper bracket end");
  thr_cmd->add_option("--seed", seed, "Base seed");
  add_format(thr_cmd, c, true);

  auto* sweep_cmd = app.add_subcommand("sweep", "Thresholds over several n and the fitted scaling exponent");
  add_pattern(sweep_cmd, c);
  sweep_cmd->add_option("--n", n_list, "Vertex counts")->required()->expected(1, -1);
  sweep_cmd->add_option("--trials", trials, "Trials per probe")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--rel-tol", rel_tol, "Relative bracket width target");
  sweep_cmd->add_option("--seed", seed, "Base seed");
  add_format(sweep_cmd, c, true);

  auto* verify_cmd = app.add_subcommand("verify-lemmas", "Exhaustive overlap inequalities and seeded witness-set checks");
  verify_cmd->add_option("--r", r_arg, "Larger part")->required();
  verify_cmd->add_option("--s", s_arg, "Smaller part")->required();
  verify_cmd->add_option("--m-max", m_max, "Largest part count for the multi-overlap sweeps");
  verify_cmd->add_option("--witness-runs", wr.runs, "Seeded G(n,p) runs to check with the witness tracker");
  verify_cmd->add_option("--n", wr.n, "Vertex count for witness runs");
  verify_cmd->add_option("--p", wr.p, "Edge probability for witness runs")->check(CLI::Range(0.0, 1.0));
  verify_cmd->add_option("--level", wr.level, "L for the witness size sandwich");
  verify_cmd->add_option("--seed", seed, "Base seed for witness runs");
  verify_cmd->add_flag("--json", c.json, "Emit JSON");

  auto* bal_cmd = app.add_subcommand("balanced", "Balancedness of K_{r,s}");
  bal_cmd->add_option("r", r_arg, "First part")->required();
  bal_cmd->add_option("s", s_arg, "Second part")->required();
  bal_cmd->add_flag("--json", c.json, "Emit JSON");

  auto* bounds_cmd = app.add_subcommand("bounds", "Threshold bound curves over a range of n");
  add_pattern(bounds_cmd, c);
  auto* list_opt = bounds_cmd->add_option("--n", n_list, "Explicit vertex counts")->expected(1, -1);
  auto* min_opt = bounds_cmd->add_option("--n-min", n_min, "Range start")->excludes(list_opt);
  bounds_cmd->add_option("--n-max", n_max, "Range end")->needs(min_opt);
  bounds_cmd->add_option("--n-step", n_step, "Range step (multiplicative factor 2 when omitted)");
  bounds_cmd->add_option("--c-lower", c_lower, "Constant c of the lower curve");
  bounds_cmd->add_option("--c-upper", c_upper, "Constant C of the upper curve");
  add_format(bounds_cmd, c, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  std::vector<std::string> full{"kbp"};
  full.insert(full.end(), args.begin(), args.end());

  try {
    if (*closure_cmd) return run_closure(c, output, false, full, in, out);
    if (*perc_cmd) return run_closure(c, output, true, full, in, out);
    if (*est_cmd) return run_estimate(c, n, p, trials, seed, full, out);
    if (*thr_cmd) return run_threshold(c, n, trials, rel_tol, lo, hi, seed, full, out);
    if (*sweep_cmd) return run_sweep(c, n_list, trials, rel_tol, seed, full, out);
    if (*verify_cmd) return run_verify(r_arg, s_arg, m_max, wr, seed, c.json, full, out);
    if (*bal_cmd) return run_balanced(r_arg, s_arg, c.json, full, out);
    if (*bounds_cmd) {
      if (n_list.empty()) {
        if (n_min == 0) throw InputError("bounds needs --n or --n-min");
        if (n_max < n_min) n_max = n_min;
        for (std::size_t x = n_min; x <= n_max; x = n_step > 0 ? x + n_step : 2 * x) n_list.push_back(x);
      }
      return run_bounds(c, n_list, c_lower, c_upper, full, out);
    }
  } catch (const InvariantViolation& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace kbp::cli

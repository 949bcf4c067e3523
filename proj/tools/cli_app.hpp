#pragma once

// The `ulc` command line, callable in-process for tests.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "generators.hpp"
#include "prob_file.hpp"
#include "ulc/analysis.hpp"
#include "ulc/coder.hpp"
#include "ulc/cost_dsl.hpp"
#include "ulc/costs.hpp"
#include "ulc/error.hpp"
#include "ulc/oracle.hpp"
#include "ulc/prob_input.hpp"
#include "ulc/serialize.hpp"

namespace ulc::cli {

enum ExitCode : int {
  kOk = 0,
  kParse = 2,
  kNumeric = 3,
  kOracleTooLarge = 4,
  kBoundViolation = 5,
};

inline int exit_code_for(Reason r) {
  switch (r) {
    case Reason::invalid_argument:
    case Reason::parse_error:
    case Reason::unknown_index:
      return kParse;
    case Reason::too_large:
    case Reason::cap_too_small:
      return kOracleTooLarge;
    default:
      return kNumeric;
  }
}

struct RunConfig {
  std::string costs;
  std::string probs_path;
  std::string values;
  std::string generator;
  std::uint64_t seed = 1;
  std::string format = "text";
  bool normalize = false;
  double epsilon = 0.5;
  bool trace = false;
  // bench only
  std::vector<std::size_t> sizes{1000, 10000, 100000, 1000000};
  int repeats = 3;
  bool strict_scaling = false;
};

/// Thrown for audit failures in compare/bench after output was written.
struct BoundViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline std::vector<double> load_probabilities(const RunConfig& cfg) {
  const int sources = int(!cfg.probs_path.empty()) + int(!cfg.values.empty()) +
                      int(!cfg.generator.empty());
  if (sources != 1)
    throw Error(Reason::parse_error, "give exactly one of --probs, --values, --generate");
  if (!cfg.probs_path.empty()) return io::read_probabilities(cfg.probs_path);
  if (!cfg.values.empty()) return ulc::detail::parse_list(cfg.values, "--values");
  return gen::generate(cfg.generator, cfg.seed);
}

struct Instance {
  CostSpec spec;
  CharRoot root;
  ProbInput input;
};

inline Instance load_instance(const RunConfig& cfg) {
  auto spec = parse_costs(cfg.costs);
  auto raw = load_probabilities(cfg);
  auto input = prepare(raw, cfg.normalize);
  auto root = char_root(spec);
  return {std::move(spec), root, std::move(input)};
}

inline void print_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

inline void print_report_text(std::ostream& out, const AnalysisReport& r) {
  out << "# c\t" << fmt(r.c) << '\n';
  out << "# cost\t" << fmt(r.cost) << '\n';
  out << "# entropy\t" << fmt(r.entropy) << '\n';
  out << "# lower_bound\t" << fmt(r.lower_bound) << '\n';
  out << "# redundancy\t" << fmt(r.redundancy) << '\n';
  out << "# nr\t" << fmt(r.normalized_redundancy) << '\n';
  for (const auto& b : r.bounds) {
    out << "# bound\t" << b.name << '\t';
    if (b.applicable)
      out << fmt(*b.value) << (b.guarantee ? "" : "\treference");
    else
      out << "n/a\t" << b.reason;
    out << '\n';
  }
}

inline int cmd_root(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto spec = parse_costs(cfg.costs);
  const auto root = char_root(spec);
  if (cfg.format == "json") {
    print_json(out, root_to_json(spec, root));
  } else {
    out << "family\t" << family_name(spec.family()) << '\n';
    out << "c\t" << fmt(root.c) << '\n';
    out << "beta\t" << (root.beta ? fmt(*root.beta) : std::string("inf")) << '\n';
    out << "tail_convergent\t" << (root.tail_convergent ? "true" : "false") << '\n';
  }
  if (!root.tail_convergent)
    err << "warning: DivergentTail: sum of c_m 2^(-c c_m) diverges at this root\n";
  return kOk;
}

inline int cmd_code(const RunConfig& cfg, std::ostream& out, bool bounds_only) {
  const auto inst = load_instance(cfg);
  const auto built = build_code(inst.input, inst.spec, inst.root, cfg.trace && !bounds_only);
  const auto rep = report(built.tree, inst.input, inst.spec, inst.root, cfg.epsilon);
  if (cfg.format == "json") {
    nlohmann::json j;
    if (bounds_only) {
      j = report_to_json(rep);
      if (rep.approx) j["approx"] = approx_to_json(*rep.approx);
    } else {
      j["codewords"] = codewords_to_json(built.tree);
      j["tree"] = tree_to_json(built.tree, inst.input);
      j["report"] = report_to_json(rep);
      if (built.trace) j["trace"] = trace_to_json(*built.trace, inst.input);
    }
    print_json(out, j);
    return kOk;
  }
  if (!bounds_only) out << codewords_text(built.tree);
  print_report_text(out, rep);
  if (bounds_only && rep.approx) {
    out << "# n_epsilon\t" << fmt(rep.approx->n_epsilon) << '\n';
    out << "# f_value\t" << fmt(rep.approx->f_value) << '\n';
  }
  if (built.trace) out << "# trace\t" << trace_to_json(*built.trace, inst.input).dump() << '\n';
  return kOk;
}

inline int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const auto spec = parse_costs(cfg.costs);
  const auto input = prepare(load_probabilities(cfg), cfg.normalize);
  const auto res = exact_opt(input, spec);
  if (cfg.format == "json") {
    print_json(out, oracle_to_json(res));
  } else {
    out << "opt_cost\t" << fmt(res.opt_cost) << '\n';
    out << "codeword_costs\t";
    for (std::size_t i = 0; i < res.codeword_costs.size(); ++i)
      out << (i ? " " : "") << fmt(res.codeword_costs[i]);
    out << "\nnodes_explored\t" << res.nodes_explored << '\n';
  }
  return kOk;
}

inline int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  const auto inst = load_instance(cfg);
  const auto built = build_code(inst.input, inst.spec, inst.root);
  const auto rep = report(built.tree, inst.input, inst.spec, inst.root, cfg.epsilon);
  const auto opt = exact_opt(inst.input, inst.spec, rep.cost);
  const double gap = rep.cost - opt.opt_cost;
  const auto guarantee = rep.tightest_guarantee();
  const std::optional<double> allowed =
      guarantee ? std::optional<double>(*guarantee / inst.root.c) : std::nullopt;
  const bool ok = opt.opt_cost >= rep.lower_bound - 1e-9 && gap >= -1e-9 &&
                  (!allowed || gap <= *allowed + 1e-7);
  if (cfg.format == "json") {
    nlohmann::json j{{"cost", rep.cost},
                     {"opt_cost", opt.opt_cost},
                     {"lower_bound", rep.lower_bound},
                     {"gap", gap},
                     {"within_bound", ok},
                     {"oracle", oracle_to_json(opt)},
                     {"report", report_to_json(rep)}};
    j["bound_over_c"] = allowed ? nlohmann::json(*allowed) : nlohmann::json(nullptr);
    print_json(out, j);
  } else {
    out << "cost\t" << fmt(rep.cost) << '\n';
    out << "opt_cost\t" << fmt(opt.opt_cost) << '\n';
    out << "lower_bound\t" << fmt(rep.lower_bound) << '\n';
    out << "gap\t" << fmt(gap) << '\n';
    out << "bound_over_c\t" << (allowed ? fmt(*allowed) : std::string("n/a")) << '\n';
    out << "within_bound\t" << (ok ? "true" : "false") << '\n';
  }
  if (!ok) throw BoundViolation("coder cost exceeds OPT by more than the guaranteed gap");
  return kOk;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

inline int cmd_bench(const RunConfig& cfg, std::ostream& out) {
  const auto spec = parse_costs(cfg.costs);
  const auto root = char_root(spec);
  const std::string gen_spec = cfg.generator.empty() ? "zipf:1.0" : cfg.generator;
  const auto colon = gen_spec.find(':');
  // the bench supplies n itself: keep only the shape parameter
  std::string shape = gen_spec.substr(0, colon);
  std::string shape_args;
  if (colon != std::string::npos) {
    shape_args = gen_spec.substr(colon + 1);
    if (const auto comma = shape_args.find(','); comma != std::string::npos)
      shape_args = shape_args.substr(0, comma);
    if (shape == "uniform" || shape == "flat" || shape == "dyadic") shape_args.clear();
  }
  auto draw = [&](std::size_t n) {
    const std::string s = shape + ":" + (shape_args.empty() ? "" : shape_args + ",") +
                          std::to_string(n);
    return prepare(gen::generate(s, cfg.seed), true);
  };
  auto time_build = [&](const ProbInput& in) {
    std::vector<double> secs;
    for (int i = 0; i < std::max(1, cfg.repeats); ++i) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto built = build_code(in, spec, root);
      const auto t1 = std::chrono::steady_clock::now();
      secs.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    return median(secs);
  };

  bool bounds_ok = true;
  bool scaling_ok = true;
  nlohmann::json rows = nlohmann::json::array();
  if (cfg.format != "json") out << "n,seconds,seconds_2n,ratio,cost,nr,bound\n";
  for (std::size_t n : cfg.sizes) {
    const auto in = draw(n);
    const auto in2 = draw(2 * n);
    const double t = time_build(in);
    const double t2 = time_build(in2);
    const auto built = build_code(in, spec, root);
    const auto rep = report(built.tree, in, spec, root, cfg.epsilon);
    const auto bound = rep.tightest_guarantee();
    const double ratio = t > 0.0 ? t2 / t : 0.0;
    if (bound && rep.normalized_redundancy > *bound + 1e-7) bounds_ok = false;
    if (ratio > 2.5) scaling_ok = false;
    if (cfg.format == "json") {
      nlohmann::json row{{"n", n},          {"seconds", t},
                         {"seconds_2n", t2}, {"ratio", ratio},
                         {"cost", rep.cost}, {"nr", rep.normalized_redundancy}};
      row["bound"] = bound ? nlohmann::json(*bound) : nlohmann::json(nullptr);
      rows.push_back(std::move(row));
    } else {
      out << n << ',' << fmt(t) << ',' << fmt(t2) << ',' << fmt(ratio) << ','
          << fmt(rep.cost) << ',' << fmt(rep.normalized_redundancy) << ','
          << (bound ? fmt(*bound) : std::string("")) << '\n';
    }
  }
  if (cfg.format == "json")
    print_json(out, {{"rows", rows}, {"bounds_ok", bounds_ok}, {"scaling_ok", scaling_ok}});
  if (!bounds_ok) throw BoundViolation("normalized redundancy exceeds an applicable bound");
  if (cfg.strict_scaling && !scaling_ok)
    throw BoundViolation("time(2n)/time(n) exceeded 2.5");
  return kOk;
}

}  // namespace detail

/// Runs the command line; never throws. Errors produce one line on `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prefix-free codes for letters of unequal cost", "ulc"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool needs_probs) {
    sub->add_option("-c,--costs", cfg.costs, "cost spec, e.g. finite:1,2 or linear")->required();
    sub->add_option("--format", cfg.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    if (!needs_probs) return;
    sub->add_option("-p,--probs", cfg.probs_path, "probability file (lines or JSON array)");
    sub->add_option("--values", cfg.values, "inline comma-separated probabilities");
    sub->add_option("-g,--generate", cfg.generator,
                    "uniform:N | flat:N | zipf:S,N | geometric:Q,N | dyadic:N");
    sub->add_option("--seed", cfg.seed, "generator seed");
    sub->add_flag("--normalize", cfg.normalize, "rescale probabilities to sum to 1");
    sub->add_option("--epsilon", cfg.epsilon, "epsilon of the (1+epsilon) guarantee");
  };

  auto* root = app.add_subcommand("root", "characteristic root of a cost spec");
  common(root, false);
  auto* code = app.add_subcommand("code", "build a code and report its redundancy");
  common(code, true);
  code->add_flag("--trace", cfg.trace, "include the split trace");
  auto* bounds = app.add_subcommand("bounds", "bound table for a built code");
  common(bounds, true);
  auto* oracle = app.add_subcommand("oracle", "exact optimum by exhaustive search");
  common(oracle, true);
  auto* compare = app.add_subcommand("compare", "coder against the exact optimum");
  common(compare, true);
  auto* bench = app.add_subcommand("bench", "time code construction across sizes");
  common(bench, true);
  bench->add_option("--sizes", cfg.sizes, "problem sizes")->delimiter(',');
  bench->add_option("--repeats", cfg.repeats, "timed runs per size (median reported)");
  bench->add_flag("--strict-scaling", cfg.strict_scaling, "fail when time(2n)/time(n) > 2.5");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: ParseError: " << e.what() << '\n';
    return kParse;
  }

  try {
    if (*root) return detail::cmd_root(cfg, out, err);
    if (*code) return detail::cmd_code(cfg, out, false);
    if (*bounds) return detail::cmd_code(cfg, out, true);
    if (*oracle) return detail::cmd_oracle(cfg, out);
    if (*compare) return detail::cmd_compare(cfg, out);
    if (*bench) return detail::cmd_bench(cfg, out);
  } catch (const Error& e) {
    err << "error: " << reason_name(e.reason()) << ": " << e.what() << '\n';
    return exit_code_for(e.reason());
  } catch (const BoundViolation& e) {
    err << "error: BoundViolation: " << e.what() << '\n';
    return kBoundViolation;
  } catch (const std::exception& e) {
    err << "error: NumericalFailure: " << e.what() << '\n';
    return kNumeric;
  }
  return kParse;
}

}  // namespace ulc::cli

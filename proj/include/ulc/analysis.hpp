#pragma once

// Entropy, cost and redundancy of a built code, and the closed-form
// redundancy guarantees that apply to a given alphabet.
//
// All guarantees bound the normalized redundancy NR = c C(T) - H. Each
// bound_* function throws when its hypothesis fails; report() collects them
// with a machine-readable reason instead.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ulc/coder.hpp"
#include "ulc/costs.hpp"
#include "ulc/error.hpp"
#include "ulc/numeric.hpp"
#include "ulc/prob_input.hpp"

namespace ulc {

/// Base-2 Shannon entropy with 0 log 0 = 0.
inline double entropy(std::span<const double> probs) {
  CompensatedSum s;
  for (double p : probs) s += -xlog2x(p);
  return s.value();
}

inline double entropy(const ProbInput& in) { return entropy(in.probs); }

/// C(T) = sum_k p_k cost(w_k).
inline double expected_cost(const CodeTree& tree, const ProbInput& in) {
  CompensatedSum s;
  for (std::size_t k = 0; k < in.size(); ++k)
    s += in.probs[k] * tree.node(tree.leaf_of_sorted(k)).path_cost;
  return s.value();
}

namespace detail {

inline double first_cost(const CostSpec& spec) { return nth_letter_cost(spec, 0); }
inline double second_cost(const CostSpec& spec) { return nth_letter_cost(spec, 1); }

inline double require_max_cost(const CostSpec& spec) {
  const auto ct = max_cost(spec);
  if (!ct) throw Error(Reason::infinite_alphabet, "bound needs a finite alphabet");
  return *ct;
}

inline void require_unit_floor(const CostSpec& spec) {
  if (first_cost(spec) < 1.0 - 1e-12)
    throw Error(Reason::invalid_argument, "bound assumes the cheapest letter costs at least 1");
}

}  // namespace detail

/// 2(1-p1) + c c_t.
inline double bound_max_cost(const CostSpec& spec, const CharRoot& root, double p1) {
  return 2.0 * (1.0 - p1) + root.c * detail::require_max_cost(spec);
}

/// 2(1-p1) + max(c (c_2 - c_1), 1 + log2 beta).
inline double bound_beta(const CostSpec& spec, const CharRoot& root, double p1) {
  const auto beta = root.beta ? root.beta : beta_of(spec, root.c);
  if (!beta) throw Error(Reason::beta_infinite, "no finite bound on beta is available");
  const double gap = root.c * (detail::second_cost(spec) - detail::first_cost(spec));
  return 2.0 * (1.0 - p1) + std::max(gap, 1.0 + std::log2(*beta));
}

/// 2(1-p1) + max(c (c_2 - c_1), 1 + log2 t).
inline double bound_alphabet_size(const CostSpec& spec, const CharRoot& root, double p1) {
  const auto t = letter_count(spec);
  if (!t) throw Error(Reason::infinite_alphabet, "bound needs a finite alphabet");
  const double gap = root.c * (detail::second_cost(spec) - detail::first_cost(spec));
  return 2.0 * (1.0 - p1) + std::max(gap, 1.0 + std::log2(*t));
}

/// Bounded multiplicity d_j <= K:
/// 2(1-p1) + max(c (c_2 - c_1), 1 + log2(K / (1 - 2^{-c}))) for integer costs,
/// with an extra + c inside the max otherwise. K defaults to sup_j d_j.
inline double bound_multiplicity(const CostSpec& spec, const CharRoot& root, double p1,
                               std::optional<double> k = std::nullopt) {
  detail::require_unit_floor(spec);
  const auto sup = multiplicity_bound(spec);
  if (!sup) throw Error(Reason::unbounded_profile, "letter multiplicities d_j are unbounded");
  const double kk = k.value_or(*sup);
  if (kk < *sup) throw Error(Reason::invalid_argument, "K is smaller than sup d_j");
  const double gap = root.c * (detail::second_cost(spec) - detail::first_cost(spec));
  double term = 1.0 + std::log2(kk / (1.0 - std::exp2(-root.c)));
  if (!has_integer_costs(spec)) term += root.c;
  return 2.0 * (1.0 - p1) + std::max(gap, term);
}

/// Prior-art reference (1 - p1 - pn) + c c_t, reported for comparison only.
inline double bound_mehlhorn_reference(const CostSpec& spec, const CharRoot& root, double p1,
                                       double pn) {
  return (1.0 - p1 - pn) + root.c * detail::require_max_cost(spec);
}

/// Constants of the guarantee C(T) <= (1 + eps) H / c + f for alphabets with
/// a convergent sum of c_m 2^{-c c_m}.
struct ApproxBound {
  double epsilon = 0.0;
  double n_epsilon = 0.0;        // cost threshold N_eps
  double m_epsilon = 0.0;        // number of letters with cost <= N_eps
  double tail = 0.0;             // sum over letters beyond m_epsilon
  std::optional<double> previous_tail;  // same sum at the previous cost level
  double f_value = 0.0;
};

/// Finds the smallest letter-cost level N with tail <= eps / 6, where the
/// tail sums c_m 2^{-c c_m} over the letters costing more than N, and
/// returns f = 4/3 (2/c + (c_2 - c_1) + N).
inline ApproxBound approx_bound(const CostSpec& spec, const CharRoot& root, double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 0.5)
    throw Error(Reason::invalid_argument, "epsilon must lie in (0, 1/2]");
  detail::require_unit_floor(spec);
  if (!tail_convergent(spec, root.c))
    throw Error(Reason::divergent_tail,
                "sum of c_m 2^{-c c_m} diverges; no (1+eps) guarantee is available");
  const double target = epsilon / 6.0;
  ApproxBound out;
  out.epsilon = epsilon;
  auto finish = [&](double level_cost, double letters, double tail) {
    out.n_epsilon = level_cost;
    out.m_epsilon = letters;
    out.tail = tail;
    const double gap = detail::second_cost(spec) - detail::first_cost(spec);
    out.f_value = 4.0 / 3.0 * (2.0 / root.c + gap + level_cost);
    return out;
  };
  double letters = 0.0;
  if (spec.finite_alphabet()) {
    for (const auto& lv : detail::finite_levels(spec)) {
      letters += lv.count;
      const double tail = tail_sum_g(spec, root.c, static_cast<std::uint64_t>(letters));
      if (tail <= target) return finish(lv.cost, letters, tail);
      out.previous_tail = tail;
    }
  } else {
    detail::LevelCursor levels(spec);
    for (std::int64_t j = 1; j < detail::kMaxLevels; ++j) {
      const double d = levels.at(j);
      if (d <= 0.0) continue;
      letters += d;
      const double tail = tail_sum_g(spec, root.c, static_cast<std::uint64_t>(letters));
      if (tail <= target) return finish(double(j) * spec.unit(), letters, tail);
      out.previous_tail = tail;
    }
  }
  throw Error(Reason::numerical_failure, "no cost level brings the tail below eps/6");
}

/// Value of the (1+eps) guarantee expressed on NR: eps H + c f.
inline double approx_nr_bound(const ApproxBound& ab, const CharRoot& root, double h) {
  return ab.epsilon * h + root.c * ab.f_value;
}

struct BoundValue {
  std::string name;
  std::optional<double> value;
  bool applicable = false;
  std::string reason;      // empty when applicable
  bool guarantee = true;   // false for reference-only values
};

struct AnalysisReport {
  double c = 0.0;
  double cost = 0.0;
  double entropy = 0.0;
  double lower_bound = 0.0;
  double redundancy = 0.0;
  double normalized_redundancy = 0.0;
  double p1 = 0.0;
  double pn = 0.0;
  std::vector<BoundValue> bounds;
  std::optional<ApproxBound> approx;

  /// Smallest applicable guarantee on NR.
  std::optional<double> tightest_guarantee() const {
    std::optional<double> best;
    for (const auto& b : bounds)
      if (b.applicable && b.guarantee && b.value && (!best || *b.value < *best)) best = b.value;
    return best;
  }
};

namespace detail {

template <typename F>
BoundValue evaluate_bound(std::string name, bool guarantee, F&& f) {
  BoundValue b;
  b.name = std::move(name);
  b.guarantee = guarantee;
  try {
    b.value = f();
    b.applicable = true;
  } catch (const Error& e) {
    b.reason = std::string(reason_name(e.reason()));
  }
  return b;
}

inline std::string epsilon_label(double eps) {
  std::ostringstream os;
  os << "epsilon_approx(" << eps << ")";
  return os.str();
}

}  // namespace detail

/// Bound table for a distribution summarized by p1, pn and its entropy.
inline std::vector<BoundValue> bound_table(const CostSpec& spec, const CharRoot& root, double p1,
                                           double pn, double h, double epsilon,
                                           std::optional<ApproxBound>* approx_out = nullptr) {
  std::vector<BoundValue> out;
  out.push_back(detail::evaluate_bound("mehlhorn", false, [&] {
    return bound_mehlhorn_reference(spec, root, p1, pn);
  }));
  out.push_back(detail::evaluate_bound("max_cost", true, [&] { return bound_max_cost(spec, root, p1); }));
  out.push_back(detail::evaluate_bound("beta", true, [&] { return bound_beta(spec, root, p1); }));
  out.push_back(detail::evaluate_bound("alphabet_size", true, [&] { return bound_alphabet_size(spec, root, p1); }));
  out.push_back(detail::evaluate_bound("bounded_multiplicity", true, [&] {
    return bound_multiplicity(spec, root, p1);
  }));
  out.push_back(detail::evaluate_bound(detail::epsilon_label(epsilon), true, [&] {
    const auto ab = approx_bound(spec, root, epsilon);
    if (approx_out) *approx_out = ab;
    return approx_nr_bound(ab, root, h);
  }));
  return out;
}

/// Cost, entropy, redundancies and every bound's value for a built code.
inline AnalysisReport report(const CodeTree& tree, const ProbInput& in, const CostSpec& spec,
                             const CharRoot& root, double epsilon = 0.5) {
  AnalysisReport r;
  r.c = root.c;
  r.cost = expected_cost(tree, in);
  r.entropy = entropy(in);
  r.lower_bound = r.entropy / root.c;
  r.redundancy = r.cost - r.lower_bound;
  r.normalized_redundancy = root.c * r.cost - r.entropy;
  r.p1 = in.probs.front();
  r.pn = in.probs.back();
  r.bounds = bound_table(spec, root, r.p1, r.pn, r.entropy, epsilon, &r.approx);
  return r;
}

/// Both sides of the node-wise decomposition of cost and entropy:
/// C(T) = sum_v sum_m c_m w_m(v) and H = sum_v w(v) H(w_1(v)/w(v), ...).
/// Weights are re-accumulated from the leaves, independent of prefix sums.
struct Decomposition {
  double cost_direct = 0.0;
  double cost_by_nodes = 0.0;
  double entropy_direct = 0.0;
  double entropy_by_nodes = 0.0;
  double bins_used = 0.0;  // sum_v M(v)
};

inline Decomposition decompose(const CodeTree& tree, const ProbInput& in) {
  const auto nodes = tree.nodes();
  std::vector<double> mass(nodes.size(), 0.0);
  for (std::size_t k = 0; k < in.size(); ++k) mass[tree.leaf_of_sorted(k)] += in.probs[k];
  // children always follow their parent in storage order
  for (std::size_t v = nodes.size(); v-- > 1;) mass[nodes[v].parent] += mass[v];

  Decomposition d;
  CompensatedSum cost, ent;
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    const auto& node = nodes[v];
    if (node.is_leaf()) continue;
    d.bins_used += double(node.child_count);
    const double w = mass[v];
    for (std::size_t m = 0; m < node.child_count; ++m) {
      const auto& child = nodes[node.first_child + m];
      const double wm = mass[node.first_child + m];
      cost += child.letter_cost * wm;
      if (w > 0.0 && wm > 0.0) ent += -wm * std::log2(wm / w);
    }
  }
  d.cost_by_nodes = cost.value();
  d.entropy_by_nodes = ent.value();
  d.cost_direct = expected_cost(tree, in);
  d.entropy_direct = entropy(in);
  return d;
}

/// Quantities read off a split trace: NR* built from the initial bins, the
/// total mass of right-shifted items, and whether every initial bin fell
/// inside the materialized alphabet.
struct TraceAccounting {
  double nr_star = 0.0;
  double nr_star_singletons = 0.0;  // part of NR* from bins with one item
  double right_shifted_mass = 0.0;
  bool resolved = true;
};

inline TraceAccounting trace_accounting(const SplitTrace& trace, const ProbInput& in, double c) {
  TraceAccounting a;
  CompensatedSum total, single, shifted;
  for (const auto& nt : trace.nodes) {
    if (nt.right_shifted) shifted += in.probs[*nt.right_shifted];
    for (const auto& b : nt.initial) {
      if (!b.letter) {
        a.resolved = false;
        continue;
      }
      if (!(b.weight > 0.0) || !(nt.weight > 0.0)) continue;
      const double e = b.weight * (c * b.cost + std::log2(b.weight / nt.weight));
      total += e;
      if (b.first == b.last) single += e;
    }
  }
  a.nr_star = total.value();
  a.nr_star_singletons = single.value();
  a.right_shifted_mass = shifted.value();
  return a;
}

}  // namespace ulc

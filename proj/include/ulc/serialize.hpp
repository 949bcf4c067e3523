#pragma once

// JSON and text renderings of trees, codewords, reports and traces.
// Requires nlohmann/json.

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ulc/analysis.hpp"
#include "ulc/coder.hpp"
#include "ulc/costs.hpp"
#include "ulc/oracle.hpp"
#include "ulc/prob_input.hpp"

namespace ulc {

namespace detail {

inline nlohmann::json number_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

inline std::string join_letters(const std::vector<Letter>& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(word[i]);
  }
  return out;
}

}  // namespace detail

/// Nested tree: {letter_index, children} for internal nodes and
/// {letter_index, leaf_index} for leaves. The root has letter_index null.
/// leaf_index is the caller's (unsorted) item index.
inline nlohmann::json tree_to_json(const CodeTree& tree, const ProbInput& in) {
  const auto nodes = tree.nodes();
  std::vector<nlohmann::json> built(nodes.size());
  for (std::size_t v = nodes.size(); v-- > 0;) {
    const auto& node = nodes[v];
    nlohmann::json j;
    j["letter_index"] = node.parent == kNoNode ? nlohmann::json(nullptr) : nlohmann::json(node.letter);
    if (node.is_leaf()) {
      j["leaf_index"] = in.permutation[node.first_item];
    } else {
      nlohmann::json kids = nlohmann::json::array();
      for (std::size_t m = 0; m < node.child_count; ++m)
        kids.push_back(std::move(built[node.first_child + m]));
      j["children"] = std::move(kids);
    }
    built[v] = std::move(j);
  }
  return std::move(built[tree.root()]);
}

/// One line per item in caller order: `index TAB letters TAB cost`, letters
/// separated by single spaces.
inline std::string codewords_text(const CodeTree& tree) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < tree.item_count(); ++i)
    os << i << '\t' << detail::join_letters(tree.codeword(i)) << '\t' << tree.codeword_cost(i)
       << '\n';
  return os.str();
}

inline nlohmann::json codewords_to_json(const CodeTree& tree) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < tree.item_count(); ++i)
    out.push_back({{"index", i}, {"letters", tree.codeword(i)}, {"cost", tree.codeword_cost(i)}});
  return out;
}

inline nlohmann::json bound_to_json(const BoundValue& b) {
  nlohmann::json j;
  j["name"] = b.name;
  j["value"] = b.value ? detail::number_or_null(*b.value) : nlohmann::json(nullptr);
  j["applicable"] = b.applicable;
  j["reason"] = b.applicable ? nlohmann::json(nullptr) : nlohmann::json(b.reason);
  return j;
}

inline nlohmann::json report_to_json(const AnalysisReport& r) {
  nlohmann::json j;
  j["cost"] = r.cost;
  j["entropy"] = r.entropy;
  j["lower_bound"] = r.lower_bound;
  j["redundancy"] = r.redundancy;
  j["nr"] = r.normalized_redundancy;
  nlohmann::json bounds = nlohmann::json::array();
  for (const auto& b : r.bounds) bounds.push_back(bound_to_json(b));
  j["bounds"] = std::move(bounds);
  return j;
}

inline nlohmann::json approx_to_json(const ApproxBound& a) {
  nlohmann::json j{{"epsilon", a.epsilon},
                   {"n_epsilon", a.n_epsilon},
                   {"m_epsilon", a.m_epsilon},
                   {"tail", a.tail},
                   {"f_value", a.f_value}};
  j["previous_tail"] = a.previous_tail ? nlohmann::json(*a.previous_tail) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json trace_to_json(const SplitTrace& trace, const ProbInput& in) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& nt : trace.nodes) {
    nlohmann::json initial = nlohmann::json::array();
    for (const auto& b : nt.initial)
      initial.push_back({{"letter", b.letter ? nlohmann::json(*b.letter) : nlohmann::json(nullptr)},
                         {"cost", detail::number_or_null(b.cost)},
                         {"first", b.first},
                         {"last", b.last},
                         {"weight", b.weight}});
    nlohmann::json bins = nlohmann::json::array();
    for (const auto& b : nt.bins)
      bins.push_back({{"letter", b.letter},
                      {"cost", b.cost},
                      {"first", b.first},
                      {"last", b.last},
                      {"lower", b.lower},
                      {"upper", b.upper},
                      {"weight", b.weight},
                      {"stolen", b.stolen}});
    nlohmann::json node{{"node", nt.node},
                        {"first", nt.first},
                        {"last", nt.last},
                        {"lower", nt.lower},
                        {"upper", nt.upper},
                        {"weight", nt.weight},
                        {"initial_bins", std::move(initial)},
                        {"bins", std::move(bins)},
                        {"left_shifted", nt.left_shifted}};
    node["right_shifted"] = nt.right_shifted
                                ? nlohmann::json(in.permutation[*nt.right_shifted])
                                : nlohmann::json(nullptr);
    out.push_back(std::move(node));
  }
  return out;
}

inline nlohmann::json oracle_to_json(const OracleResult& r) {
  return {{"opt_cost", r.opt_cost},
          {"codeword_costs", r.codeword_costs},
          {"nodes_explored", r.nodes_explored}};
}

inline nlohmann::json root_to_json(const CostSpec& spec, const CharRoot& root) {
  nlohmann::json j{{"family", family_name(spec.family())},
                   {"c", root.c},
                   {"tolerance", root.tolerance},
                   {"residual", root.residual},
                   {"tail_convergent", root.tail_convergent}};
  j["beta"] = root.beta ? detail::number_or_null(*root.beta) : nlohmann::json(nullptr);
  return j;
}

}  // namespace ulc

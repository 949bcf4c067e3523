#pragma once

// Prefix-free code construction by recursive midpoint binning.
//
// Every internal node v covering sorted items l..r lays the interval
// [P_{l-1}, P_r) out into bins of relative width 2^{-c c_m}; item k starts in
// the bin containing its midpoint s_k. Bins are then compacted left (an empty
// bin takes the next unassigned item) and, if everything stayed in bin 1, the
// last item is moved alone into bin 2. Each nonempty bin recurses with its
// letter appended. Bins are materialized lazily, so infinite alphabets work
// and the running time is O(n log n) independent of the alphabet size.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ulc/costs.hpp"
#include "ulc/error.hpp"
#include "ulc/letter_table.hpp"
#include "ulc/numeric.hpp"
#include "ulc/prob_input.hpp"

namespace ulc {

inline constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();

struct CodeNode {
  std::size_t parent = kNoNode;
  Letter letter = 0;          // label of the edge from the parent
  double letter_cost = 0.0;   // cost of that letter
  double path_cost = 0.0;     // cost of the word spelled root -> this node
  double weight = 0.0;        // w(v): mass of the items below
  std::size_t first_item = 0; // sorted item range [first_item, last_item]
  std::size_t last_item = 0;
  std::size_t first_child = kNoNode;
  std::size_t child_count = 0;  // M(v); 0 for leaves

  bool is_leaf() const noexcept { return child_count == 0; }
};

/// A prefix-free code as a tree. Children of a node are stored contiguously
/// in letter order; leaves carry exactly one sorted item.
class CodeTree {
 public:
  CodeTree() = default;

  std::span<const CodeNode> nodes() const noexcept { return nodes_; }
  const CodeNode& node(std::size_t i) const { return nodes_.at(i); }
  std::size_t root() const noexcept { return 0; }
  std::size_t item_count() const noexcept { return leaf_of_item_.size(); }

  /// Leaf node holding the caller's item `original`.
  std::size_t leaf_of(std::size_t original) const {
    if (original >= rank_of_original_.size())
      throw Error(Reason::unknown_index, "no symbol with index " + std::to_string(original));
    return leaf_of_item_[rank_of_original_[original]];
  }

  /// Leaf node holding sorted item `k`.
  std::size_t leaf_of_sorted(std::size_t k) const { return leaf_of_item_.at(k); }

  /// Sum of letter costs on the root-to-leaf path of the caller's item.
  double codeword_cost(std::size_t original) const { return nodes_[leaf_of(original)].path_cost; }

  /// Letter sequence of the caller's item.
  std::vector<Letter> codeword(std::size_t original) const {
    std::vector<Letter> word;
    for (std::size_t v = leaf_of(original); nodes_[v].parent != kNoNode; v = nodes_[v].parent)
      word.push_back(nodes_[v].letter);
    std::reverse(word.begin(), word.end());
    return word;
  }

  std::vector<std::vector<Letter>> codewords() const {
    std::vector<std::vector<Letter>> out;
    out.reserve(item_count());
    for (std::size_t i = 0; i < item_count(); ++i) out.push_back(codeword(i));
    return out;
  }

 private:
  friend struct CodeTreeAccess;

  std::vector<CodeNode> nodes_;
  std::vector<std::size_t> leaf_of_item_;
  std::vector<std::size_t> rank_of_original_;
};

/// Free function form: cost of the codeword assigned to the caller's item.
inline double codeword_cost(const CodeTree& tree, std::size_t original) {
  return tree.codeword_cost(original);
}

/// One nonempty initial bin I*_m. `letter` is empty when the midpoints lie
/// past the materialized part of an infinite alphabet.
struct InitialBin {
  std::optional<Letter> letter;
  double cost = std::numeric_limits<double>::quiet_NaN();
  std::size_t first = 0;
  std::size_t last = 0;
  double weight = 0.0;  // w*_m(v)
};

/// One final bin I_m with its materialized boundaries [lower, upper).
struct FinalBin {
  Letter letter = 0;
  double cost = 0.0;
  std::size_t first = 0;
  std::size_t last = 0;
  double lower = 0.0;
  double upper = 0.0;
  double weight = 0.0;  // w_m(v)
  bool stolen = false;  // filled by a left shift
};

struct NodeTrace {
  std::size_t node = 0;
  std::size_t first = 0;
  std::size_t last = 0;
  double lower = 0.0;
  double upper = 0.0;
  double weight = 0.0;
  std::vector<InitialBin> initial;
  std::vector<FinalBin> bins;
  bool left_shifted = false;
  std::optional<std::size_t> right_shifted;  // sorted item moved to bin 2
};

/// Per-internal-node record of the splitting decisions.
struct SplitTrace {
  std::vector<NodeTrace> nodes;
};

struct BuildResult {
  CodeTree tree;
  std::optional<SplitTrace> trace;
};

struct CodeTreeAccess {
  static std::vector<CodeNode>& nodes(CodeTree& t) { return t.nodes_; }
  static std::vector<std::size_t>& leaves(CodeTree& t) { return t.leaf_of_item_; }
  static std::vector<std::size_t>& ranks(CodeTree& t) { return t.rank_of_original_; }
};

namespace detail {

/// Nonempty initial bins of the node covering items [first, last].
inline std::vector<InitialBin> initial_bins(const ProbInput& in, const LetterTable& table,
                                            std::size_t first, std::size_t last,
                                            double lower, double width) {
  std::vector<InitialBin> out;
  const auto& s = in.midpoints;
  std::size_t k = first;
  while (k <= last) {
    InitialBin bin;
    bin.first = k;
    bin.letter = table.locate(lower, width, s[k]);
    if (!bin.letter) {
      bin.last = last;
    } else if (table.is_last(*bin.letter)) {
      bin.cost = table.cost(*bin.letter);
      bin.last = last;
    } else {
      bin.cost = table.cost(*bin.letter);
      const double upper = lower + width * table.prefix(*bin.letter + 1);
      auto it = std::partition_point(s.begin() + std::ptrdiff_t(k), s.begin() + std::ptrdiff_t(last) + 1,
                                     [&](double x) { return x < upper; });
      bin.last = it == s.begin() + std::ptrdiff_t(k) ? k : std::size_t(it - s.begin()) - 1;
    }
    CompensatedSum w;
    for (std::size_t i = bin.first; i <= bin.last; ++i) w += in.probs[i];
    bin.weight = w.value();
    out.push_back(bin);
    k = bin.last + 1;
  }
  return out;
}

}  // namespace detail

/// Builds the code for a prepared input. With `trace` set, also records the
/// initial bins, final bins and shift events of every internal node.
inline BuildResult build_code(const ProbInput& in, const CostSpec& spec, const CharRoot& root,
                              bool trace = false) {
  if (!(root.c > 0.0) || !std::isfinite(root.c))
    throw Error(Reason::invalid_argument, "a valid characteristic root is required");
  const std::size_t n = in.size();
  if (n == 0) throw Error(Reason::invalid_argument, "no probabilities given");

  const LetterTable table(spec, root.c, n + 1);
  BuildResult result;
  if (trace) result.trace.emplace();
  CodeTree& tree = result.tree;
  auto& nodes = CodeTreeAccess::nodes(tree);
  auto& leaves = CodeTreeAccess::leaves(tree);
  auto& ranks = CodeTreeAccess::ranks(tree);
  leaves.assign(n, kNoNode);
  ranks.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) ranks[in.permutation[k]] = k;
  nodes.reserve(2 * n + 1);

  CodeNode rootNode;
  rootNode.first_item = 0;
  rootNode.last_item = n - 1;
  rootNode.weight = in.prefix[n];
  nodes.push_back(rootNode);

  if (n == 1) {
    // A lone symbol still needs a nonempty codeword: use the cheapest letter.
    CodeNode leaf;
    leaf.parent = 0;
    leaf.letter = 0;
    leaf.letter_cost = table.cost(0);
    leaf.path_cost = leaf.letter_cost;
    leaf.weight = in.probs[0];
    nodes.push_back(leaf);
    nodes[0].first_child = 1;
    nodes[0].child_count = 1;
    leaves[0] = 1;
    return result;
  }

  const auto& s = in.midpoints;
  struct Range {
    std::size_t first, last;
    bool stolen;
  };
  std::vector<Range> bins;
  std::vector<std::size_t> stack{0};

  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    const std::size_t l = nodes[v].first_item;
    const std::size_t r = nodes[v].last_item;
    if (l == r) {
      leaves[l] = v;
      continue;
    }

    const double lower = in.prefix[l];
    const double width = in.prefix[r + 1] - lower;
    bins.clear();
    std::size_t k = l;
    for (Letter m = 0; k <= r; ++m) {
      if (m >= table.size())
        throw Error(Reason::numerical_failure,
                    "ran out of representable letters while items remain");
      std::size_t last = r;
      bool stolen = false;
      if (!table.is_last(m)) {
        if (width > 0.0 && width * table.weight(m) == 0.0)
          throw Error(Reason::numerical_failure,
                      "bin width underflowed to zero while items remain");
        const double upper = lower + width * table.prefix(m + 1);
        // rightmost item whose midpoint precedes the bin's right boundary
        auto it = std::partition_point(s.begin() + std::ptrdiff_t(k), s.begin() + std::ptrdiff_t(r) + 1,
                                       [&](double x) { return x < upper; });
        if (it == s.begin() + std::ptrdiff_t(k)) {
          last = k;
          stolen = true;
        } else {
          last = std::size_t(it - s.begin()) - 1;
        }
      }
      bins.push_back({k, last, stolen});
      k = last + 1;
    }

    std::optional<std::size_t> right_shift;
    if (bins.size() == 1) {
      bins[0].last = r - 1;
      bins.push_back({r, r, false});
      right_shift = r;
    }

    if (trace) {
      NodeTrace nt;
      nt.node = v;
      nt.first = l;
      nt.last = r;
      nt.lower = lower;
      nt.upper = in.prefix[r + 1];
      nt.weight = width;
      nt.initial = detail::initial_bins(in, table, l, r, lower, width);
      nt.right_shifted = right_shift;
      for (std::size_t m = 0; m < bins.size(); ++m) {
        FinalBin fb;
        fb.letter = m;
        fb.cost = table.cost(m);
        fb.first = bins[m].first;
        fb.last = bins[m].last;
        fb.lower = lower + width * table.prefix(m);
        fb.upper = table.is_last(m) ? nt.upper : lower + width * table.prefix(m + 1);
        fb.weight = in.prefix[fb.last + 1] - in.prefix[fb.first];
        fb.stolen = bins[m].stolen;
        nt.left_shifted = nt.left_shifted || fb.stolen;
        nt.bins.push_back(fb);
      }
      result.trace->nodes.push_back(std::move(nt));
    }

    const std::size_t first_child = nodes.size();
    nodes[v].first_child = first_child;
    nodes[v].child_count = bins.size();
    const double base_cost = nodes[v].path_cost;
    for (std::size_t m = 0; m < bins.size(); ++m) {
      CodeNode child;
      child.parent = v;
      child.letter = m;
      child.letter_cost = table.cost(m);
      child.path_cost = base_cost + child.letter_cost;
      child.first_item = bins[m].first;
      child.last_item = bins[m].last;
      child.weight = in.prefix[bins[m].last + 1] - in.prefix[bins[m].first];
      nodes.push_back(child);
    }
    for (std::size_t m = bins.size(); m-- > 0;) stack.push_back(first_child + m);
  }
  return result;
}

/// True iff no word is a prefix of another (equal words count as a
/// violation). Works on the words alone, independent of any tree.
inline bool verify_prefix_free(std::vector<std::vector<Letter>> words) {
  if (words.size() <= 1) return true;
  std::sort(words.begin(), words.end());
  for (std::size_t i = 0; i + 1 < words.size(); ++i) {
    const auto& a = words[i];
    const auto& b = words[i + 1];
    if (a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin())) return false;
  }
  return true;
}

/// Generalized Kraft sum sum_i 2^{-c cost(w_i)} over the codewords.
inline double kraft_sum(const CodeTree& tree, double c) {
  CompensatedSum s;
  for (std::size_t i = 0; i < tree.item_count(); ++i) s += std::exp2(-c * tree.codeword_cost(i));
  return s.value();
}

}  // namespace ulc

#pragma once

// Exact minimum-cost prefix-free codes for small instances.
//
// The search never looks at the coder: it enumerates tree shapes by
// repeatedly taking the cheapest open leaf and either closing it as a
// codeword or splitting it into the k cheapest letters. Leaves are closed in
// nondecreasing cost order, so closing the i-th leaf assigns it the i-th
// largest probability.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "ulc/costs.hpp"
#include "ulc/error.hpp"
#include "ulc/letter_table.hpp"
#include "ulc/numeric.hpp"
#include "ulc/prob_input.hpp"

namespace ulc {

inline constexpr std::size_t kOracleMaxItems = 10;
inline constexpr std::size_t kOracleMaxLetters = 4;

struct OracleResult {
  double opt_cost = 0.0;
  /// Codeword costs of an optimal code, nondecreasing.
  std::vector<double> codeword_costs;
  /// Witness code; codewords[i] is the word of the caller's item i.
  std::vector<std::vector<Letter>> codewords;
  std::uint64_t nodes_explored = 0;
  double cap_used = 0.0;
};

namespace detail {

class OracleSearch {
 public:
  OracleSearch(const ProbInput& in, std::vector<double> letters, double cap)
      : probs_(in.probs), letters_(std::move(letters)), best_(cap) {
    suffix_.assign(probs_.size() + 1, 0.0);
    for (std::size_t i = probs_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] + probs_[i];
  }

  void run() {
    Open root{0.0, {}};
    std::vector<Open> open{root};
    std::vector<Open> closed;
    search(open, closed, 0.0, -1.0, kNoDecision);
  }

  bool found() const { return !best_words_.empty(); }
  double best() const { return best_; }
  const std::vector<std::vector<Letter>>& best_words() const { return best_words_; }
  const std::vector<double>& best_costs() const { return best_costs_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  static constexpr int kNoDecision = std::numeric_limits<int>::max();

  struct Open {
    double cost;
    std::vector<Letter> word;
  };

  static bool later(const Open& a, const Open& b) { return a.cost > b.cost; }

  // `open` is a min-heap on cost. Leaves of equal cost are decided in
  // nonincreasing decision order (0 = close, k = split into k) so that each
  // multiset of decisions is visited once.
  void search(std::vector<Open>& open, std::vector<Open>& closed, double partial,
              double last_cost, int last_decision) {
    ++nodes_;
    const std::size_t done = closed.size();
    if (done == probs_.size()) {
      if (partial < best_ || (!found() && partial <= best_)) record(closed, partial);
      return;
    }
    if (open.empty()) return;
    std::pop_heap(open.begin(), open.end(), later);
    Open leaf = std::move(open.back());
    open.pop_back();

    const double lower = partial + leaf.cost * suffix_[done];
    const bool bounded = found() ? lower < best_ : lower <= best_;
    if (bounded) {
      const int ceiling = leaf.cost == last_cost ? last_decision : kNoDecision;
      // Some optimal tree has exactly n leaves, all of them codewords.
      const std::size_t room = probs_.size() - done - open.size();
      const int widest = static_cast<int>(std::min(letters_.size(), room));
      for (int k = std::min(widest, ceiling); k >= 2; --k) {
        for (int m = 0; m < k; ++m) {
          Open child{leaf.cost + letters_[std::size_t(m)], leaf.word};
          child.word.push_back(Letter(m));
          open.push_back(std::move(child));
          std::push_heap(open.begin(), open.end(), later);
        }
        search(open, closed, partial, leaf.cost, k);
        for (int m = 0; m < k; ++m) remove_child(open, leaf.word);
      }
      closed.push_back(leaf);
      search(open, closed, partial + probs_[done] * leaf.cost, leaf.cost, 0);
      closed.pop_back();
    }
    open.push_back(std::move(leaf));
    std::push_heap(open.begin(), open.end(), later);
  }

  static void remove_child(std::vector<Open>& open, const std::vector<Letter>& parent) {
    auto it = std::find_if(open.begin(), open.end(), [&](const Open& o) {
      return o.word.size() == parent.size() + 1 &&
             std::equal(parent.begin(), parent.end(), o.word.begin());
    });
    open.erase(it);
    std::make_heap(open.begin(), open.end(), later);
  }

  void record(const std::vector<Open>& closed, double cost) {
    best_ = cost;
    best_words_.clear();
    best_costs_.clear();
    for (const auto& o : closed) {
      best_words_.push_back(o.word);
      best_costs_.push_back(o.cost);
    }
  }

  const std::vector<double>& probs_;
  std::vector<double> letters_;
  std::vector<double> suffix_;
  double best_;
  std::vector<std::vector<Letter>> best_words_;
  std::vector<double> best_costs_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Minimum expected codeword cost over all prefix-free codes, by exhaustive
/// branch and bound. Limited to n <= 10 items and t <= 4 letters. `cap` must
/// be at least the optimum; the coder's C(T) is always a valid cap.
inline OracleResult exact_opt(const ProbInput& in, const CostSpec& spec,
                              double cap = std::numeric_limits<double>::infinity()) {
  if (!spec.finite_alphabet())
    throw Error(Reason::too_large, "oracle needs a finite alphabet");
  const auto t = letter_count(spec);
  if (!t || *t > double(kOracleMaxLetters))
    throw Error(Reason::too_large, "oracle supports at most 4 letters");
  if (in.size() > kOracleMaxItems)
    throw Error(Reason::too_large, "oracle supports at most 10 probabilities");

  std::vector<double> letters;
  for (const auto& lv : detail::finite_levels(spec))
    for (double i = 0; i < lv.count; i += 1.0) letters.push_back(lv.cost);

  if (!std::isfinite(cap)) {
    // Every item fits on a word of ceil(log2 n) letters drawn from the two
    // cheapest letters.
    const double depth = std::ceil(std::log2(double(in.size())));
    cap = std::max(1.0, depth) * letters[1];
  }
  OracleResult r;
  r.cap_used = cap;
  if (in.size() == 1) {
    r.opt_cost = letters.front();
    r.codeword_costs = {letters.front()};
    r.codewords = {{Letter{0}}};
    r.nodes_explored = 1;
    if (r.opt_cost > cap * (1.0 + 1e-12) + 1e-12)
      throw Error(Reason::cap_too_small, "no code costs at most the given cap");
    return r;
  }

  // A hair of slack so a cap equal to OPT is still reachable.
  const double slack_cap = cap * (1.0 + 1e-12) + 1e-12;
  detail::OracleSearch search(in, std::move(letters), slack_cap);
  search.run();
  if (!search.found()) throw Error(Reason::cap_too_small, "no code costs at most the given cap");

  // Recompute from the witness with a compensated sum.
  CompensatedSum total;
  for (std::size_t k = 0; k < in.size(); ++k) total += in.probs[k] * search.best_costs()[k];
  r.opt_cost = total.value();
  r.codeword_costs = search.best_costs();
  r.codewords.resize(in.size());
  for (std::size_t k = 0; k < in.size(); ++k)
    r.codewords[in.permutation[k]] = search.best_words()[k];
  r.nodes_explored = search.nodes();
  return r;
}

/// Optimal expected length for t equal-cost (unit) letters by t-ary Huffman
/// merging, padded with zero-probability items.
inline double huffman_equal_cost(const ProbInput& in, std::size_t t) {
  if (t < 2) throw Error(Reason::invalid_argument, "Huffman needs at least two letters");
  if (in.size() == 1) return 1.0;
  std::priority_queue<double, std::vector<double>, std::greater<>> heap(in.probs.begin(),
                                                                        in.probs.end());
  std::size_t count = in.size();
  while ((count - 1) % (t - 1) != 0) {
    heap.push(0.0);
    ++count;
  }
  CompensatedSum cost;
  while (heap.size() > 1) {
    double merged = 0.0;
    for (std::size_t i = 0; i < t && !heap.empty(); ++i) {
      merged += heap.top();
      heap.pop();
    }
    cost += merged;
    heap.push(merged);
  }
  return cost.value();
}

}  // namespace ulc

#pragma once

// Test helpers: a deliberately naive second implementation of the binning
// coder, used to cross-check the production builder word for word.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ulc/ulc.hpp"

namespace ulc::support {

/// Costs of the first `count` letters (or all, if the alphabet is smaller).
inline std::vector<double> first_letter_costs(const CostSpec& spec, std::size_t count) {
  if (spec.is_finite_list()) {
    const auto c = spec.costs();
    return {c.begin(), c.end()};
  }
  std::vector<double> out;
  std::int64_t levels = 8;
  while (true) {
    out.clear();
    const auto d = spec.multiplicities(levels);
    for (std::size_t j = 0; j < d.size() && out.size() < count; ++j)
      for (double i = 0; i < d[j] && out.size() < count; i += 1.0)
        out.push_back(double(j + 1) * spec.unit());
    const bool exhausted = spec.support_end() && levels >= *spec.support_end();
    if (out.size() >= count || exhausted) return out;
    levels *= 2;
  }
}

/// Literal transcription of the splitting procedure: materialize every
/// initial bin by scanning midpoints, then compact and force branching.
/// Returns codewords indexed by sorted item.
class ReferenceCoder {
 public:
  ReferenceCoder(const ProbInput& in, std::vector<double> letters, double c, bool finite)
      : in_(in), letters_(std::move(letters)), c_(c), finite_(finite) {}

  std::vector<std::vector<Letter>> run() {
    words_.assign(in_.size(), {});
    if (in_.size() == 1) {
      words_[0] = {0};
      return words_;
    }
    split(0, in_.size() - 1, {});
    return words_;
  }

 private:
  void split(std::size_t l, std::size_t r, const std::vector<Letter>& prefix) {
    if (l == r) {
      words_[l] = prefix;
      return;
    }
    const double L = in_.prefix[l];
    const double w = in_.prefix[r + 1] - L;
    const std::size_t t = letters_.size();

    // initial bins: bin_of[k] = m with L_m <= s_k < R_m
    std::vector<std::size_t> bin_of(r - l + 1, t);
    double acc = 0.0;
    for (std::size_t m = 0; m < t; ++m) {
      const double lo = L + w * acc;
      acc += std::exp2(-c_ * letters_[m]);
      const double hi = (finite_ && m + 1 == t) ? INFINITY : L + w * acc;
      for (std::size_t k = l; k <= r; ++k) {
        const double s = in_.midpoints[k];
        if (lo <= s && s < hi) bin_of[k - l] = m;
      }
    }

    std::vector<std::pair<std::size_t, std::size_t>> bins;
    std::size_t k = l;
    for (std::size_t M = 0; k <= r; ++M) {
      std::size_t rm = k;
      for (std::size_t i = k + 1; i <= r; ++i)
        if (bin_of[i - l] == M) rm = i;
      bins.emplace_back(k, rm);
      k = rm + 1;
    }
    if (bins.size() == 1) {
      bins[0].second = r - 1;
      bins.emplace_back(r, r);
    }
    for (std::size_t m = 0; m < bins.size(); ++m) {
      auto next = prefix;
      next.push_back(m);
      split(bins[m].first, bins[m].second, next);
    }
  }

  const ProbInput& in_;
  std::vector<double> letters_;
  double c_;
  bool finite_;
  std::vector<std::vector<Letter>> words_;
};

/// Reference codewords in the caller's item order.
inline std::vector<std::vector<Letter>> reference_codewords(const ProbInput& in,
                                                            const CostSpec& spec, double c) {
  auto letters = first_letter_costs(spec, in.size() + 2);
  ReferenceCoder coder(in, letters, c, spec.finite_alphabet());
  const auto sorted = coder.run();
  std::vector<std::vector<Letter>> out(in.size());
  for (std::size_t k = 0; k < in.size(); ++k) out[in.permutation[k]] = sorted[k];
  return out;
}

}  // namespace ulc::support

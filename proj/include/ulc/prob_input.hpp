#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "ulc/error.hpp"
#include "ulc/numeric.hpp"

namespace ulc {

/// Source probabilities sorted nonincreasing, with prefix sums P_k and
/// midpoints s_k = P_{k-1} + p_k / 2. Index k here is 0-based: prefix[k] is
/// the mass of the first k items, midpoint[k] the midpoint of item k.
struct ProbInput {
  std::vector<double> probs;
  std::vector<double> prefix;
  std::vector<double> midpoints;
  /// permutation[k] = caller's index of sorted item k.
  std::vector<std::size_t> permutation;

  std::size_t size() const noexcept { return probs.size(); }
};

/// Sorts (stably) and tabulates a probability vector. With `normalize` set
/// the input is rescaled to sum 1; otherwise it must already sum to 1 within
/// 1e-9.
inline ProbInput prepare(std::span<const double> raw, bool normalize = false) {
  if (raw.empty()) throw Error(Reason::invalid_argument, "no probabilities given");
  CompensatedSum total;
  for (double p : raw) {
    if (!(p >= 0.0) || !std::isfinite(p))
      throw Error(Reason::invalid_argument, "probabilities must be finite and nonnegative");
    total += p;
  }
  const double sum = total.value();
  if (!(sum > 0.0)) throw Error(Reason::invalid_argument, "all probabilities are zero");
  if (!normalize && std::abs(sum - 1.0) > 1e-9)
    throw Error(Reason::invalid_argument,
                "probabilities sum to " + std::to_string(sum) + ", not 1 (use normalize)");

  ProbInput in;
  in.permutation.resize(raw.size());
  std::iota(in.permutation.begin(), in.permutation.end(), std::size_t{0});
  std::stable_sort(in.permutation.begin(), in.permutation.end(),
                   [&](std::size_t a, std::size_t b) { return raw[a] > raw[b]; });
  in.probs.reserve(raw.size());
  for (std::size_t i : in.permutation)
    in.probs.push_back(normalize ? raw[i] / sum : raw[i]);

  in.prefix.resize(raw.size() + 1);
  in.midpoints.resize(raw.size());
  CompensatedSum run;
  in.prefix[0] = 0.0;
  for (std::size_t k = 0; k < in.probs.size(); ++k) {
    in.midpoints[k] = run.value() + in.probs[k] / 2.0;
    run += in.probs[k];
    in.prefix[k + 1] = run.value();
  }
  return in;
}

}  // namespace ulc

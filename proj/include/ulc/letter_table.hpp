#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "ulc/costs.hpp"
#include "ulc/error.hpp"
#include "ulc/numeric.hpp"

namespace ulc {

using Letter = std::uint64_t;

/// Materialized prefix of an alphabet laid out on the unit interval: letter m
/// occupies [prefix(m), prefix(m+1)) with width 2^{-c c_m}. Letters of equal
/// cost are grouped into levels so that huge profiles stay compact.
class LetterTable {
 public:
  /// Materializes letters until at least `min_letters` exist and the
  /// uncovered tail is negligible, or until widths underflow.
  LetterTable(const CostSpec& spec, double c, std::uint64_t min_letters = 0)
      : c_(c) {
    if (spec.finite_alphabet()) {
      finite_ = true;
      for (const auto& lv : detail::finite_levels(spec)) push(lv.cost, lv.count);
      return;
    }
    detail::LevelCursor levels(spec);
    for (std::int64_t j = 1; j < detail::kMaxLevels; ++j) {
      const double d = levels.at(j);
      if (d <= 0.0) continue;
      const double cost = double(j) * spec.unit();
      if (std::exp2(-c * cost) == 0.0) break;
      push(cost, d);
      const bool enough = double(letters_) >= double(min_letters);
      if (enough && 1.0 - total_.value() < 0x1p-60) break;
      if (double(letters_) >= kMaxLetters) break;
    }
  }

  bool finite() const noexcept { return finite_; }

  /// Letters covered by the table (all letters for finite alphabets).
  Letter size() const noexcept { return letters_; }

  bool is_last(Letter m) const noexcept { return finite_ && m + 1 == letters_; }

  double cost(Letter m) const { return level_of(m).cost; }
  double weight(Letter m) const { return level_of(m).weight; }

  /// sum_{i < m} 2^{-c c_i}; m may equal size().
  double prefix(Letter m) const {
    if (m >= letters_) return total_.value();
    const Level& lv = level_of(m);
    return lv.prefix_before + double(m - lv.first) * lv.weight;
  }

  /// Largest letter m with origin + width * prefix(m) <= x, or nullopt when x
  /// lies beyond the materialized letters of an infinite alphabet.
  std::optional<Letter> locate(double origin, double width, double x) const {
    auto start = [&](const Level& lv) { return origin + width * lv.prefix_before; };
    auto it = std::upper_bound(levels_.begin(), levels_.end(), x,
                               [&](double v, const Level& lv) { return v < start(lv); });
    if (it == levels_.begin()) return Letter{0};
    const Level& lv = *std::prev(it);
    if (!finite_ && it == levels_.end() && origin + width * total_.value() <= x)
      return std::nullopt;
    const double span = width * lv.weight;
    // largest offset whose rounded left edge is <= x
    Letter lo = 0;
    Letter hi = lv.count - 1;
    while (lo < hi) {
      const Letter mid = lo + (hi - lo + 1) / 2;
      if (start(lv) + span * double(mid) <= x)
        lo = mid;
      else
        hi = mid - 1;
    }
    return lv.first + lo;
  }

 private:
  static constexpr double kMaxLetters = 0x1p53;

  struct Level {
    double cost;
    double weight;
    Letter first;
    Letter count;
    double prefix_before;
  };

  void push(double cost, double count) {
    const double room = kMaxLetters - double(letters_);
    const Letter n = static_cast<Letter>(std::min(count, room));
    if (n == 0) return;
    const double w = std::exp2(-c_ * cost);
    levels_.push_back({cost, w, letters_, n, total_.value()});
    letters_ += n;
    total_ += double(n) * w;
  }

  const Level& level_of(Letter m) const {
    if (m >= letters_)
      throw Error(Reason::numerical_failure,
                  "letter " + std::to_string(m) + " lies beyond the representable alphabet");
    auto it = std::upper_bound(levels_.begin(), levels_.end(), m,
                               [](Letter v, const Level& lv) { return v < lv.first; });
    return *std::prev(it);
  }

  double c_;
  bool finite_ = false;
  std::vector<Level> levels_;
  Letter letters_ = 0;
  CompensatedSum total_;
};

}  // namespace ulc

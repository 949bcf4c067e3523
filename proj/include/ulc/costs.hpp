#pragma once

// Letter-cost alphabets: finite cost lists and infinite integer-cost
// profiles, plus the quantities derived from them (characteristic root,
// beta, tail sums of c_m 2^{-c c_m}, and per-unit-interval multiplicities).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ulc/error.hpp"
#include "ulc/numeric.hpp"

namespace ulc {

enum class CostKind { finite_list, integer_profile };

enum class Family {
  custom,
  linear,
  repeat,
  fibonacci,
  run_length_limited,
  telegraph,
  balanced_words,
  suffix_language,
};

inline std::string family_name(Family f) {
  switch (f) {
    case Family::custom: return "custom";
    case Family::linear: return "linear";
    case Family::repeat: return "repeat";
    case Family::fibonacci: return "fibonacci";
    case Family::run_length_limited: return "run_length_limited";
    case Family::telegraph: return "telegraph";
    case Family::balanced_words: return "balanced_words";
    case Family::suffix_language: return "suffix_language";
  }
  return "custom";
}

/// Geometric envelope d_j <= amplitude * rho^j over raw profile levels j >= 1.
struct Dominator {
  double rho = 1.0;
  double amplitude = 1.0;
};

/// A letter-cost alphabet. Finite lists hold explicit sorted costs; integer
/// profiles hold d_j letters of cost j * unit() for every raw level j >= 1.
/// Immutable once built; copies share the underlying profile rule.
class CostSpec {
 public:
  using Multiplicity = std::function<double(std::int64_t)>;

  static CostSpec finite(std::vector<double> costs,
                         Family family = Family::custom) {
    if (costs.empty())
      throw Error(Reason::invalid_argument, "cost list is empty");
    for (double c : costs)
      if (!(c > 0.0) || !std::isfinite(c))
        throw Error(Reason::invalid_argument,
                    "letter costs must be positive and finite");
    if (costs.size() < 2)
      throw Error(Reason::invalid_argument,
                  "an encoding alphabet needs at least two letters");
    std::sort(costs.begin(), costs.end());
    CostSpec s;
    s.kind_ = CostKind::finite_list;
    s.family_ = family;
    s.costs_ = std::make_shared<const std::vector<double>>(std::move(costs));
    return s;
  }

  static CostSpec telegraph() { return finite({1.0, 2.0}, Family::telegraph); }

  /// Letters 0^k 1 for k = a..b with costs a, a+1, ..., b.
  static CostSpec run_length_limited(int a, int b) {
    if (a < 1 || b <= a)
      throw Error(Reason::invalid_argument,
                  "run-length limits need 1 <= a < b");
    std::vector<double> costs;
    for (int i = 1; i <= b - a + 1; ++i) costs.push_back(a + i - 1);
    return finite(std::move(costs), Family::run_length_limited);
  }

  static CostSpec linear() {
    return make_profile(Rule{.family = Family::linear,
                             .dominator = Dominator{1.0, 1.0}});
  }

  static CostSpec repeat(int d) {
    if (d < 1) throw Error(Reason::invalid_argument, "repeat count must be >= 1");
    return make_profile(Rule{.family = Family::repeat,
                             .repeat = d,
                             .dominator = Dominator{1.0, double(d)}});
  }

  static CostSpec fibonacci() {
    // F_j <= phi^(j-1) <= phi^j
    return make_profile(Rule{.family = Family::fibonacci,
                             .dominator = Dominator{std::numbers::phi, 1.0}});
  }

  /// d_j = 0 for odd j, d_j = 2 * Catalan(j/2 - 1) for even j.
  static CostSpec balanced_words() {
    // 2 C_{k-1} <= 2 * 4^(k-1) = 2^(2k) / 2
    return make_profile(Rule{.family = Family::balanced_words,
                             .dominator = Dominator{2.0, 0.5}});
  }

  /// Explicit finite profile: counts[j-1] letters of cost j, none beyond.
  /// A declared dominator is checked against the counts and kept.
  static CostSpec profile(std::vector<double> counts,
                          std::optional<Dominator> dominator = {}) {
    while (!counts.empty() && counts.back() == 0.0) counts.pop_back();
    double total = 0.0;
    for (double d : counts) {
      if (d < 0.0 || !near_integer(d, 0.0))
        throw Error(Reason::invalid_argument,
                    "profile multiplicities must be nonnegative integers");
      total += d;
    }
    if (total < 2.0)
      throw Error(Reason::invalid_argument,
                  "profile must contain at least two letters");
    if (dominator) {
      check_dominator(*dominator);
      for (std::size_t j = 1; j <= counts.size(); ++j)
        if (counts[j - 1] >
            dominator->amplitude * std::pow(dominator->rho, double(j)) *
                (1.0 + 1e-12))
          throw Error(Reason::invalid_argument,
                      "declared dominator is violated at level " +
                          std::to_string(j));
    }
    Rule r{.family = Family::custom, .dominator = dominator};
    r.support_end = static_cast<std::int64_t>(counts.size());
    r.counts = std::move(counts);
    return make_profile(std::move(r));
  }

  /// Letters of the prefix-free language (N*)F where F = the listed final
  /// letters of an integer-cost alphabet and N = the remaining letters.
  /// Codes over this alphabet are exactly the codes whose words all end in F.
  static CostSpec suffix_language(std::vector<int> costs,
                                  std::vector<std::size_t> final_letters) {
    if (costs.empty() || final_letters.empty())
      throw Error(Reason::invalid_argument,
                  "suffix language needs letters and at least one final letter");
    for (int c : costs)
      if (c < 1)
        throw Error(Reason::invalid_argument,
                    "suffix language costs must be positive integers");
    std::vector<bool> is_final(costs.size(), false);
    for (std::size_t i : final_letters) {
      if (i >= costs.size())
        throw Error(Reason::invalid_argument, "final letter index out of range");
      is_final[i] = true;
    }
    Rule r{.family = Family::suffix_language};
    for (std::size_t i = 0; i < costs.size(); ++i)
      (is_final[i] ? r.final_costs : r.free_costs).push_back(costs[i]);
    if (r.free_costs.empty()) {
      r.support_end = *std::max_element(r.final_costs.begin(), r.final_costs.end());
      if (r.final_costs.size() < 2)
        throw Error(Reason::invalid_argument,
                    "suffix language must contain at least two letters");
    } else {
      // Growth rate rho solves sum_{free} rho^{-c} = 1; e_j <= rho^j by induction.
      auto g = [&](double rho) {
        double s = 0.0;
        for (int c : r.free_costs) s += std::pow(rho, -double(c));
        return s;
      };
      double lo = 1.0, hi = double(r.free_costs.size()) + 1.0;
      if (g(lo) <= 1.0) {
        hi = 1.0;
      } else {
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
          const double mid = 0.5 * (lo + hi);
          (g(mid) > 1.0 ? lo : hi) = mid;
        }
      }
      double amp = 0.0;
      for (int c : r.final_costs) amp += std::pow(hi, -double(c));
      r.dominator = Dominator{hi, amp * (1.0 + 1e-12)};
    }
    return make_profile(std::move(r));
  }

  /// User-supplied multiplicity rule. Without a dominator the tail of the
  /// profile cannot be certified and infinite sums report DivergentSpec.
  static CostSpec custom_profile(Multiplicity d,
                                 std::optional<Dominator> dominator = {}) {
    if (!d) throw Error(Reason::invalid_argument, "empty multiplicity rule");
    if (dominator) check_dominator(*dominator);
    return make_profile(Rule{.family = Family::custom,
                             .dominator = dominator,
                             .callable = std::move(d)});
  }

  CostKind kind() const noexcept { return kind_; }
  Family family() const noexcept { return family_; }
  bool is_finite_list() const noexcept { return kind_ == CostKind::finite_list; }

  /// Finite alphabets: finite lists and finite-support profiles.
  bool finite_alphabet() const noexcept {
    return is_finite_list() || rule_->support_end.has_value();
  }

  std::span<const double> costs() const {
    if (!is_finite_list())
      throw Error(Reason::invalid_argument, "not a finite cost list");
    return *costs_;
  }

  /// Scale such that raw profile level j has letter cost j * unit().
  double unit() const noexcept { return unit_; }
  int repeat_count() const noexcept { return rule_ ? rule_->repeat : 0; }
  std::optional<Dominator> dominator() const {
    return rule_ ? rule_->dominator : std::nullopt;
  }
  std::optional<std::int64_t> support_end() const {
    return rule_ ? rule_->support_end : std::nullopt;
  }
  bool has_callable() const noexcept { return rule_ && bool(rule_->callable); }

  /// Multiplicities of raw levels 1..up_to (profiles only).
  std::vector<double> multiplicities(std::int64_t up_to) const {
    if (is_finite_list())
      throw Error(Reason::invalid_argument, "not an integer profile");
    std::vector<double> d(static_cast<std::size_t>(std::max<std::int64_t>(up_to, 0)), 0.0);
    const Rule& r = *rule_;
    switch (r.family) {
      case Family::linear:
        std::fill(d.begin(), d.end(), 1.0);
        break;
      case Family::repeat:
        std::fill(d.begin(), d.end(), double(r.repeat));
        break;
      case Family::fibonacci: {
        double a = 1.0, b = 1.0;
        for (auto& x : d) {
          x = a;
          a = std::exchange(b, a + b);
        }
        break;
      }
      case Family::balanced_words: {
        double catalan = 1.0;  // C_{k-1}
        for (std::int64_t k = 1; 2 * k <= up_to; ++k) {
          d[static_cast<std::size_t>(2 * k - 1)] = 2.0 * catalan;
          catalan = catalan * 2.0 * double(2 * k - 1) / double(k + 1);
        }
        break;
      }
      case Family::suffix_language: {
        // e_j = number of words over the free letters with cost j.
        std::vector<double> e(d.size() + 1, 0.0);
        e[0] = 1.0;
        for (std::size_t j = 1; j < e.size(); ++j)
          for (int c : r.free_costs)
            if (std::size_t(c) <= j) e[j] += e[j - std::size_t(c)];
        for (std::size_t j = 1; j <= d.size(); ++j)
          for (int c : r.final_costs)
            if (std::size_t(c) <= j) d[j - 1] += e[j - std::size_t(c)];
        break;
      }
      default:
        if (r.callable) {
          for (std::size_t j = 0; j < d.size(); ++j) {
            const double v = r.callable(std::int64_t(j + 1));
            if (v < 0.0 || !std::isfinite(v))
              throw Error(Reason::invalid_argument,
                          "multiplicity rule returned a negative or non-finite value");
            d[j] = v;
          }
        } else {
          for (std::size_t j = 0; j < d.size() && j < r.counts.size(); ++j)
            d[j] = r.counts[j];
        }
        break;
    }
    return d;
  }

  /// Returns a copy with every letter cost multiplied by factor.
  CostSpec scaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor))
      throw Error(Reason::invalid_argument, "scale factor must be positive");
    CostSpec s = *this;
    if (is_finite_list()) {
      auto c = *costs_;
      for (auto& x : c) x *= factor;
      s.costs_ = std::make_shared<const std::vector<double>>(std::move(c));
    } else {
      s.unit_ *= factor;
    }
    return s;
  }

  /// First raw level with a nonzero multiplicity.
  std::int64_t first_level() const {
    constexpr std::int64_t kScan = 1 << 16;
    std::int64_t window = 64;
    while (window <= kScan) {
      const auto d = multiplicities(window);
      for (std::size_t j = 0; j < d.size(); ++j)
        if (d[j] > 0.0) return std::int64_t(j + 1);
      window *= 4;
    }
    throw Error(Reason::invalid_argument, "profile has no letters");
  }

 private:
  struct Rule {
    Family family = Family::custom;
    int repeat = 0;
    std::optional<Dominator> dominator;
    std::optional<std::int64_t> support_end;
    std::vector<double> counts;
    std::vector<int> free_costs;
    std::vector<int> final_costs;
    Multiplicity callable;
  };

  static void check_dominator(const Dominator& d) {
    if (!(d.rho > 0.0) || !(d.amplitude > 0.0) || !std::isfinite(d.rho) ||
        !std::isfinite(d.amplitude))
      throw Error(Reason::invalid_argument,
                  "dominator needs positive finite rho and amplitude");
  }

  static CostSpec make_profile(Rule r) {
    CostSpec s;
    s.kind_ = CostKind::integer_profile;
    s.family_ = r.family;
    s.rule_ = std::make_shared<const Rule>(std::move(r));
    return s;
  }

  CostKind kind_ = CostKind::finite_list;
  Family family_ = Family::custom;
  std::shared_ptr<const std::vector<double>> costs_;
  std::shared_ptr<const Rule> rule_;
  double unit_ = 1.0;
};

/// Rescales so the cheapest letter costs exactly 1.
inline CostSpec normalize(const CostSpec& spec) {
  if (spec.is_finite_list()) {
    const auto c = spec.costs();
    std::vector<double> out(c.begin(), c.end());
    const double c1 = out.front();
    for (auto& x : out) x /= c1;
    out.front() = 1.0;
    return CostSpec::finite(std::move(out), spec.family());
  }
  const double c1 = double(spec.first_level()) * spec.unit();
  if (c1 == 1.0) return spec;
  return spec.scaled(1.0 / c1);
}

/// Level j of a profile or a group of equal costs in a finite list.
struct CostLevel {
  double cost;
  double count;
};

namespace detail {

inline constexpr std::int64_t kMaxLevels = 1 << 20;

/// Finite lists grouped by equal cost.
inline std::vector<CostLevel> finite_levels(const CostSpec& spec) {
  std::vector<CostLevel> out;
  if (spec.is_finite_list()) {
    for (double c : spec.costs()) {
      if (!out.empty() && out.back().cost == c)
        out.back().count += 1.0;
      else
        out.push_back({c, 1.0});
    }
  } else {
    const auto d = spec.multiplicities(*spec.support_end());
    for (std::size_t j = 0; j < d.size(); ++j)
      if (d[j] > 0.0) out.push_back({double(j + 1) * spec.unit(), d[j]});
  }
  return out;
}

/// Incremental walker over raw profile levels; regenerates multiplicities in
/// growing windows so unbounded scans stay amortised O(levels).
class LevelCursor {
 public:
  explicit LevelCursor(const CostSpec& spec) : spec_(spec) {}

  /// Multiplicity of raw level j (1-based).
  double at(std::int64_t j) {
    if (j > std::int64_t(cache_.size())) {
      std::int64_t want = std::max<std::int64_t>(64, std::int64_t(cache_.size()));
      while (want < j) want *= 2;
      cache_ = spec_.multiplicities(want);
    }
    return cache_[std::size_t(j - 1)];
  }

 private:
  const CostSpec& spec_;
  std::vector<double> cache_;
};

inline bool closed_form_family(Family f) {
  return f == Family::linear || f == Family::repeat || f == Family::fibonacci ||
         f == Family::balanced_words;
}

}  // namespace detail

/// Value of a possibly infinite sum with an absolute error bound.
struct SumEstimate {
  double value = 0.0;
  double error = 0.0;
  bool convergent = true;
};

/// S(c) = sum_i 2^{-c c_i}. Non-convergent (or uncertifiable) sums report
/// convergent = false and value = +inf.
inline SumEstimate characteristic_sum(const CostSpec& spec, double c) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double eps = std::numeric_limits<double>::epsilon();
  if (spec.finite_alphabet()) {
    CompensatedSum s;
    std::size_t terms = 0;
    for (const auto& lv : detail::finite_levels(spec)) {
      s += lv.count * std::exp2(-c * lv.cost);
      ++terms;
    }
    return {s.value(), 4.0 * eps * double(terms + 1) * std::abs(s.value()), true};
  }
  const double y = std::exp2(-c * spec.unit());
  switch (spec.family()) {
    case Family::linear:
    case Family::repeat: {
      if (!(y < 1.0)) return {kInf, 0.0, false};
      const double d = spec.family() == Family::repeat ? spec.repeat_count() : 1.0;
      const double v = d * y / (1.0 - y);
      return {v, 8.0 * eps * v, true};
    }
    case Family::fibonacci: {
      const double den = 1.0 - y - y * y;
      if (!(den > 0.0)) return {kInf, 0.0, false};
      const double v = y / den;
      return {v, 16.0 * eps * v / den, true};
    }
    case Family::balanced_words: {
      const double rad = 1.0 - 4.0 * y * y;
      if (rad < 0.0) return {kInf, 0.0, false};
      const double v = 1.0 - std::sqrt(rad);
      return {v, 8.0 * eps, true};
    }
    default:
      break;
  }
  const auto dom = spec.dominator();
  if (!dom)
    throw Error(Reason::divergent_spec,
                "profile has no declared dominator; its tail cannot be certified");
  const double q = dom->rho * y;
  if (!(q < 1.0)) return {kInf, 0.0, false};
  constexpr double kTailTarget = 1e-17;
  detail::LevelCursor levels(spec);
  CompensatedSum s;
  std::int64_t j = 1;
  double yj = y;
  double qj = q;
  for (; j < detail::kMaxLevels; ++j, yj *= y, qj *= q) {
    s += levels.at(j) * yj;
    // remaining tail sum_{i>j} A q^i = A q^{j+1} / (1 - q)
    if (dom->amplitude * qj * q / (1.0 - q) <= kTailTarget) break;
  }
  const double tail = dom->amplitude * qj * q / (1.0 - q);
  return {s.value(), tail + 4.0 * eps * double(j) * std::abs(s.value()), true};
}

/// Whether sum_m c_m 2^{-c c_m} converges (with certification).
inline bool tail_convergent(const CostSpec& spec, double c) {
  if (spec.finite_alphabet()) return true;
  if (spec.family() == Family::balanced_words) return false;
  const auto dom = spec.dominator();
  if (!dom) return false;
  return dom->rho * std::exp2(-c * spec.unit()) < 1.0;
}

/// True when every letter cost is within 1e-9 of an integer.
inline bool has_integer_costs(const CostSpec& spec) {
  if (spec.is_finite_list()) {
    for (double c : spec.costs())
      if (!near_integer(c)) return false;
    return true;
  }
  if (near_integer(spec.unit()) && spec.unit() >= 1.0 - 1e-9) return true;
  const auto d = spec.multiplicities(spec.support_end().value_or(4096));
  for (std::size_t j = 0; j < d.size(); ++j)
    if (d[j] > 0.0 && !near_integer(double(j + 1) * spec.unit())) return false;
  return true;
}

/// Cost of the letter with 0-based index `index` in nondecreasing cost order.
inline double nth_letter_cost(const CostSpec& spec, std::uint64_t index) {
  if (spec.is_finite_list()) {
    const auto c = spec.costs();
    if (index >= c.size())
      throw Error(Reason::unknown_index, "letter index beyond the alphabet");
    return c[index];
  }
  detail::LevelCursor levels(spec);
  double seen = 0.0;
  const std::int64_t last = spec.support_end().value_or(detail::kMaxLevels);
  for (std::int64_t j = 1; j <= last; ++j) {
    seen += levels.at(j);
    if (double(index) < seen) return double(j) * spec.unit();
  }
  throw Error(Reason::unknown_index, "letter index beyond the alphabet");
}

/// Number of letters, or nullopt for infinite alphabets.
inline std::optional<double> letter_count(const CostSpec& spec) {
  if (spec.is_finite_list()) return double(spec.costs().size());
  if (!spec.support_end()) return std::nullopt;
  double total = 0.0;
  for (double d : spec.multiplicities(*spec.support_end())) total += d;
  return total;
}

/// Largest letter cost c_t, or nullopt for infinite alphabets.
inline std::optional<double> max_cost(const CostSpec& spec) {
  if (spec.is_finite_list()) return spec.costs().back();
  if (!spec.support_end()) return std::nullopt;
  return double(*spec.support_end()) * spec.unit();
}

/// d_j = number of letters with cost in [j, j+1), for j = 1..up_to.
inline std::vector<double> d_profile(const CostSpec& spec, std::int64_t up_to) {
  if (up_to < 1) throw Error(Reason::invalid_argument, "up_to must be >= 1");
  std::vector<double> out(std::size_t(up_to), 0.0);
  auto bucket = [&](double cost, double count) {
    const auto j = static_cast<std::int64_t>(std::floor(cost + 1e-9));
    if (j >= 1 && j <= up_to) out[std::size_t(j - 1)] += count;
  };
  if (spec.is_finite_list()) {
    for (double c : spec.costs()) bucket(c, 1.0);
    return out;
  }
  std::int64_t raw = static_cast<std::int64_t>(std::ceil(double(up_to + 1) / spec.unit()));
  if (spec.support_end()) raw = std::min(raw, *spec.support_end());
  const auto d = spec.multiplicities(raw);
  for (std::size_t j = 0; j < d.size(); ++j)
    if (d[j] > 0.0) bucket(double(j + 1) * spec.unit(), d[j]);
  return out;
}

/// K = sup_j d_j when it is known to be finite.
inline std::optional<double> multiplicity_bound(const CostSpec& spec) {
  bool bounded = spec.finite_alphabet();
  switch (spec.family()) {
    case Family::linear:
    case Family::repeat:
      bounded = true;
      break;
    case Family::suffix_language:
      // One free letter gives eventually periodic d_j.
      bounded = bounded || (spec.dominator() && spec.dominator()->rho == 1.0);
      break;
    default:
      break;
  }
  if (!bounded) return std::nullopt;
  std::int64_t window = 4096;
  if (auto mc = max_cost(spec)) window = static_cast<std::int64_t>(std::floor(*mc + 1e-9));
  const auto d = d_profile(spec, std::max<std::int64_t>(window, 1));
  return *std::max_element(d.begin(), d.end());
}

/// beta = sup_m 2^{c c_m} sum_{i >= m} 2^{-c c_i}. Exact for finite
/// alphabets (backward suffix sums); the multiplicity bound
/// K/(1 - 2^{-c}) (times 2^c for non-integer costs) for bounded profiles;
/// nullopt when no finite bound is available.
inline std::optional<double> beta_of(const CostSpec& spec, double c) {
  if (spec.finite_alphabet()) {
    const auto levels = detail::finite_levels(spec);
    CompensatedSum suffix;
    double best = 0.0;
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
      suffix += it->count * std::exp2(-c * it->cost);
      best = std::max(best, std::exp2(c * it->cost) * suffix.value());
    }
    return best;
  }
  const auto k = multiplicity_bound(spec);
  if (!k) return std::nullopt;
  const double base = *k / (1.0 - std::exp2(-c));
  return has_integer_costs(spec) ? base : std::exp2(c) * base;
}

/// g(first) = sum_{m >= first} c_m 2^{-c c_m} over 0-based letter indices.
/// Truncation error of the infinite tail is certified below 1e-13.
inline double tail_sum_g(const CostSpec& spec, double c, std::uint64_t first) {
  if (!tail_convergent(spec, c))
    throw Error(Reason::divergent_tail,
                "sum of c_m 2^{-c c_m} does not converge (or cannot be certified)");
  auto term = [&](double cost) { return cost * std::exp2(-c * cost); };
  if (spec.finite_alphabet()) {
    CompensatedSum s;
    double seen = 0.0;
    for (const auto& lv : detail::finite_levels(spec)) {
      const double before = seen;
      seen += lv.count;
      if (seen <= double(first)) continue;
      const double take = std::min(lv.count, seen - std::max(before, double(first)));
      s += take * term(lv.cost);
    }
    return s.value();
  }
  const auto dom = *spec.dominator();
  const double y = std::exp2(-c * spec.unit());
  const double q = dom.rho * y;
  constexpr double kTailTarget = 1e-14;
  detail::LevelCursor levels(spec);
  CompensatedSum s;
  double seen = 0.0;
  for (std::int64_t j = 1; j < detail::kMaxLevels; ++j) {
    const double d = levels.at(j);
    const double before = seen;
    seen += d;
    if (seen > double(first)) {
      const double take = std::min(d, seen - std::max(before, double(first)));
      s += take * term(double(j) * spec.unit());
      // sum_{i>j} unit * i * A q^i = unit * A q^{j+1} ((j+1)(1-q) + q) / (1-q)^2
      const double qn = std::pow(q, double(j + 1));
      const double bound = spec.unit() * dom.amplitude * qn *
                           (double(j + 1) * (1.0 - q) + q) / ((1.0 - q) * (1.0 - q));
      if (bound <= kTailTarget) break;
    }
  }
  return s.value();
}

/// Root of the characteristic equation with its certificate.
struct CharRoot {
  double c = 0.0;
  double tolerance = 0.0;
  double residual = 0.0;
  std::optional<double> beta;
  bool tail_convergent = false;
};

/// Solves sum_i 2^{-c c_i} = 1 by bisection. S is strictly decreasing, so
/// the bracket [lo, hi] with S(lo) > 1 > S(hi) always contains the root.
inline CharRoot char_root(const CostSpec& spec, double tol = 1e-15) {
  if (!(tol > 0.0)) throw Error(Reason::invalid_argument, "tolerance must be positive");
  constexpr int kMaxIterations = 200;
  auto finish = [&](double c, double width) {
    const auto s = characteristic_sum(spec, c);
    CharRoot r;
    r.c = c;
    r.tolerance = width;
    r.residual = std::abs(s.value - 1.0) + s.error;
    r.beta = beta_of(spec, c);
    r.tail_convergent = tail_convergent(spec, c);
    return r;
  };

  double lo = 0.0;
  double hi = 1.0;
  // S(0) is the letter count: finite only for finite alphabets.
  bool lo_convergent = spec.finite_alphabet();
  for (;;) {
    const auto s = characteristic_sum(spec, hi);
    if (s.convergent && s.value == 1.0) return finish(hi, 0.0);
    if (s.convergent && s.value < 1.0) break;
    lo = hi;
    lo_convergent = s.convergent;
    hi *= 2.0;
    if (hi > 1e6)
      throw Error(Reason::divergent_spec,
                  "characteristic sum does not drop below 1 for any tested c");
  }
  for (int it = 0; it < kMaxIterations && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const auto s = characteristic_sum(spec, mid);
    if (s.convergent && s.value == 1.0) return finish(mid, 0.0);
    if (s.convergent && s.value < 1.0) {
      hi = mid;
    } else {
      lo = mid;
      lo_convergent = s.convergent;
    }
  }
  if (!lo_convergent) {
    // The sum jumps from divergent straight to below 1; only accept the
    // boundary if it actually attains 1 there.
    const auto s = characteristic_sum(spec, hi);
    if (std::abs(s.value - 1.0) > 1e-6)
      throw Error(Reason::no_root,
                  "characteristic sum is below 1 wherever it converges");
    return finish(hi, hi - lo);
  }
  return finish(0.5 * (lo + hi), hi - lo);
}

}  // namespace ulc

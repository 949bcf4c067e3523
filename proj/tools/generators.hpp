#pragma once

// Seeded probability generators shared by the CLI, the tests and the
// benchmarks. Output is a function of (spec, seed) only.
//
//   uniform:N          i.i.d. uniform weights, normalized
//   flat:N             all 1/N
//   zipf:S,N           weights i^-S, shuffled
//   geometric:Q,N      weights Q^i, shuffled
//   dyadic:N           1/2, 1/4, ..., 2^-(N-1), 2^-(N-1)

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ulc/cost_dsl.hpp"
#include "ulc/error.hpp"
#include "ulc/numeric.hpp"

namespace ulc::gen {

/// Portable uniform double in (0, 1].
inline double unit_draw(std::mt19937_64& rng) {
  return (double(rng() >> 11) + 1.0) * 0x1p-53;
}

inline void shuffle(std::vector<double>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
}

inline std::vector<double> normalized(std::vector<double> w) {
  const double total = compensated_sum(w);
  for (double& x : w) x /= total;
  return w;
}

inline std::vector<double> uniform(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> w(n);
  for (double& x : w) x = unit_draw(rng);
  return normalized(std::move(w));
}

inline std::vector<double> flat(std::size_t n) { return std::vector<double>(n, 1.0 / double(n)); }

inline std::vector<double> zipf(double s, std::size_t n, std::uint64_t seed) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = std::pow(double(i + 1), -s);
  std::mt19937_64 rng(seed);
  shuffle(w, rng);
  return normalized(std::move(w));
}

inline std::vector<double> geometric(double q, std::size_t n, std::uint64_t seed) {
  std::vector<double> w(n);
  double x = 1.0;
  for (std::size_t i = 0; i < n; ++i, x *= q) w[i] = x;
  std::mt19937_64 rng(seed);
  shuffle(w, rng);
  return normalized(std::move(w));
}

inline std::vector<double> dyadic(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i + 1 < n; ++i) w[i] = std::ldexp(1.0, -int(i + 1));
  w[n - 1] = n == 1 ? 1.0 : std::ldexp(1.0, -int(n - 1));
  return w;
}

/// Parses a generator spec (see the table above) and draws from it.
inline std::vector<double> generate(std::string_view spec, std::uint64_t seed) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw Error(Reason::parse_error, "generator spec needs the form name:args");
  const auto name = detail::trim(spec.substr(0, colon));
  const auto args = detail::parse_list(spec.substr(colon + 1), "generator");
  auto count = [&](double x) {
    if (x < 1.0 || x != std::floor(x) || x > 1e8)
      throw Error(Reason::parse_error, "generator size must be an integer in [1, 1e8]");
    return std::size_t(x);
  };
  auto arity = [&](std::size_t k) {
    if (args.size() != k)
      throw Error(Reason::parse_error, "generator '" + std::string(name) + "' takes " +
                                           std::to_string(k) + " argument(s)");
  };
  if (name == "uniform") {
    arity(1);
    return uniform(count(args[0]), seed);
  }
  if (name == "flat") {
    arity(1);
    return flat(count(args[0]));
  }
  if (name == "zipf") {
    arity(2);
    if (!(args[0] >= 0.0)) throw Error(Reason::parse_error, "zipf exponent must be >= 0");
    return zipf(args[0], count(args[1]), seed);
  }
  if (name == "geometric") {
    arity(2);
    if (!(args[0] > 0.0) || args[0] > 1.0)
      throw Error(Reason::parse_error, "geometric ratio must lie in (0, 1]");
    return geometric(args[0], count(args[1]), seed);
  }
  if (name == "dyadic") {
    arity(1);
    const auto n = count(args[0]);
    if (n > 1000) throw Error(Reason::parse_error, "dyadic size must be at most 1000");
    return dyadic(n);
  }
  throw Error(Reason::parse_error, "unknown generator '" + std::string(name) + "'");
}

}  // namespace ulc::gen

#pragma once

// Text form of cost specifications:
//
//   finite:1,3            explicit letter costs
//   telegraph             finite:1,2
//   rll:2,5               letters 0^k 1 for k = 2..5, costs 2..5
//   linear                one letter of every positive integer cost
//   repeat:3              three letters of every positive integer cost
//   fib                   F_j letters of cost j
//   balanced              balanced binary words, cost = length
//   profile:1,1,2,3       d_j letters of cost j, nothing beyond the list
//   profile:1,1,2,3;dominator=2.0,1.7
//                         same, with a declared bound d_j <= 1.7 * 2.0^j
//   ending:1,1,2/0        words over letters of cost 1,1,2 that end in one of
//                         the letters listed after '/'

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ulc/costs.hpp"
#include "ulc/error.hpp"

namespace ulc {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline double parse_number(std::string_view text, std::string_view what) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
    throw Error(Reason::parse_error, "bad number '" + std::string(text) + "' in " + std::string(what));
  return v;
}

inline int as_int(double v, std::string_view what) {
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw Error(Reason::parse_error, "expected an integer in " + std::string(what));
  return static_cast<int>(v);
}

inline int parse_int(std::string_view text, std::string_view what) {
  return as_int(parse_number(text, what), what);
}

inline std::vector<double> parse_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  if (trim(text).empty()) throw Error(Reason::parse_error, std::string(what) + " needs a value list");
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_number(text.substr(0, comma), what));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

// Construction errors in a parsed spec are reported as parse errors.
template <typename F>
CostSpec build_parsed(F&& make) {
  try {
    return make();
  } catch (const Error& e) {
    if (e.reason() == Reason::invalid_argument) throw Error(Reason::parse_error, e.what());
    throw;
  }
}

}  // namespace detail

/// Parses a cost specification; throws Error(ParseError) on malformed input.
inline CostSpec parse_costs(std::string_view text) {
  using detail::trim;
  text = trim(text);
  const auto colon = text.find(':');
  const std::string_view head = trim(text.substr(0, colon));
  const std::string_view args =
      colon == std::string_view::npos ? std::string_view{} : trim(text.substr(colon + 1));
  const bool has_args = colon != std::string_view::npos;
  auto no_args = [&] {
    if (has_args) throw Error(Reason::parse_error, "'" + std::string(head) + "' takes no arguments");
  };

  if (head == "finite") {
    const auto costs = detail::parse_list(args, "finite");
    return detail::build_parsed([&] { return CostSpec::finite(costs); });
  }
  if (head == "telegraph") {
    no_args();
    return CostSpec::telegraph();
  }
  if (head == "rll") {
    const auto v = detail::parse_list(args, "rll");
    if (v.size() != 2) throw Error(Reason::parse_error, "rll needs two run limits a,b");
    const int a = detail::as_int(v[0], "rll");
    const int b = detail::as_int(v[1], "rll");
    return detail::build_parsed([&] { return CostSpec::run_length_limited(a, b); });
  }
  if (head == "linear") {
    no_args();
    return CostSpec::linear();
  }
  if (head == "repeat") {
    const int d = detail::parse_int(args, "repeat");
    return detail::build_parsed([&] { return CostSpec::repeat(d); });
  }
  if (head == "fib") {
    no_args();
    return CostSpec::fibonacci();
  }
  if (head == "balanced") {
    no_args();
    return CostSpec::balanced_words();
  }
  if (head == "profile") {
    const auto semi = args.find(';');
    const auto counts = detail::parse_list(args.substr(0, semi), "profile");
    std::optional<Dominator> dom;
    if (semi != std::string_view::npos) {
      const auto opt = trim(args.substr(semi + 1));
      constexpr std::string_view key = "dominator=";
      if (opt.substr(0, key.size()) != key)
        throw Error(Reason::parse_error, "profile option must be dominator=rho,A");
      const auto v = detail::parse_list(opt.substr(key.size()), "dominator");
      if (v.size() != 2) throw Error(Reason::parse_error, "dominator needs rho,A");
      dom = Dominator{v[0], v[1]};
    }
    return detail::build_parsed([&] { return CostSpec::profile(counts, dom); });
  }
  if (head == "ending") {
    const auto slash = args.find('/');
    if (slash == std::string_view::npos)
      throw Error(Reason::parse_error, "ending needs costs/final-letter-indices");
    std::vector<int> costs;
    for (double c : detail::parse_list(args.substr(0, slash), "ending"))
      costs.push_back(detail::as_int(c, "ending"));
    std::vector<std::size_t> finals;
    for (double i : detail::parse_list(args.substr(slash + 1), "ending")) {
      const int idx = detail::as_int(i, "ending");
      if (idx < 0) throw Error(Reason::parse_error, "final letter index must be >= 0");
      finals.push_back(std::size_t(idx));
    }
    return detail::build_parsed([&] { return CostSpec::suffix_language(costs, finals); });
  }
  throw Error(Reason::parse_error, "unknown cost spec '" + std::string(text) + "'");
}

}  // namespace ulc

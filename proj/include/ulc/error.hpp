#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ulc {

/// Machine-readable failure categories. The CLI maps these onto exit codes.
enum class Reason {
  invalid_argument,
  parse_error,
  no_root,
  divergent_spec,
  divergent_tail,
  numerical_failure,
  infinite_alphabet,
  beta_infinite,
  unbounded_profile,
  too_large,
  cap_too_small,
  unknown_index,
};

constexpr std::string_view reason_name(Reason r) noexcept {
  switch (r) {
    case Reason::invalid_argument: return "InvalidArgument";
    case Reason::parse_error: return "ParseError";
    case Reason::no_root: return "NoRoot";
    case Reason::divergent_spec: return "DivergentSpec";
    case Reason::divergent_tail: return "DivergentTail";
    case Reason::numerical_failure: return "NumericalFailure";
    case Reason::infinite_alphabet: return "InfiniteAlphabet";
    case Reason::beta_infinite: return "BetaInfinite";
    case Reason::unbounded_profile: return "UnboundedProfile";
    case Reason::too_large: return "TooLarge";
    case Reason::cap_too_small: return "CapTooSmall";
    case Reason::unknown_index: return "UnknownIndex";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Reason reason, const std::string& what)
      : std::runtime_error(what), reason_(reason) {}

  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

}  // namespace ulc

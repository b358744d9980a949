#pragma once

#include <functional>
#include <optional>

#include "rome/typecheck.hpp"

namespace rome {

// A non-value closed term with no applicable rule. Signals a progress violation.
struct StuckTerm : InternalError {
  using InternalError::InternalError;
};

struct OutOfFuel : std::runtime_error {
  explicit OutOfFuel(long steps) : std::runtime_error("out of fuel after " + std::to_string(steps) + " steps") {}
};

struct Step {
  TermP term;    // the whole term after one reduction
  TermP redex;   // the subterm that fired
  std::string rule;
};

bool isValue(const TermP& m);

// One reduction of a closed term; nullopt when m is a value. Throws StuckTerm otherwise.
std::optional<Step> step(const Program& prog, const TermP& m);

using TraceFn = std::function<void(const Step&)>;

constexpr long kDefaultFuel = 1000000;

// Steps until a value; throws OutOfFuel after `fuel` steps.
TermP evalToValue(const Program& prog, const TermP& m, long fuel = kDefaultFuel, const TraceFn& trace = nullptr);

// Surface rendering of a value as a construction expression.
std::string showValue(const TermP& v);

}  // namespace rome

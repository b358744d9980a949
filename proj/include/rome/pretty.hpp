#pragma once

#include "rome/syntax.hpp"

namespace rome {

// Surface rendering of core syntax. `names` are the type variables in scope, back() is index 0.
std::string showType(const TypeP& t, std::vector<std::string> names = {});
std::string showPred(const PredP& p, std::vector<std::string> names = {});
std::string showTerm(const TermP& m);

}  // namespace rome

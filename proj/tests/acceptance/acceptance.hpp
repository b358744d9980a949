#pragma once

#include <string>

namespace rome::acceptance {

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome corpus();         // 1
Outcome goldens();        // 2
Outcome normalization();  // 3
Outcome subtraction();    // 4
Outcome evidence();       // 5
Outcome soundness();      // 6
Outcome canonicity();     // 7

}  // namespace rome::acceptance

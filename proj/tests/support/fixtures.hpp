#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rome/driver.hpp"
#include "rome/pretty.hpp"

namespace rome::fixture {

inline std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string sourcePath(const std::string& rel) { return std::string(ROME_SOURCE_DIR) + "/" + rel; }

// The checked prelude, loaded once and copied out.
inline const Program& prelude() {
  static const Program p = [] {
    Program q;
    loadPrelude(q);
    return q;
  }();
  return p;
}

// The prelude plus the eval goldens.
inline const Program& goldens() {
  static const Program p = [] {
    Program q = prelude();
    auto diags = loadSource(q, readFile(sourcePath("tests/golden/eval.rome")));
    if (!diags.empty()) throw std::runtime_error("golden file: " + diags[0].message);
    return q;
  }();
  return p;
}

inline std::string evalShow(const Program& p, const std::string& src, long fuel = kDefaultFuel) {
  Elaborated e = elaborateTerm(p, parseTerm(src));
  return showValue(evalToValue(p, e.term, fuel, nullptr));
}

}  // namespace rome::fixture

#pragma once

#include "rome/eval.hpp"

namespace rome {

// Parses and checks a source text, extending prog with every declaration that checks.
std::vector<Diagnostic> loadSource(Program& prog, const std::string& source);

// Checks the embedded prelude into prog. Throws InternalError if it does not check.
void loadPrelude(Program& prog);

// `file:line:col: error: message`, omitting an unknown position.
std::string formatDiagnostic(const std::string& file, const Diagnostic& d);

// Kind of a closed surface type, resolved against the synonyms in prog.
KindP kindOfSurface(const Program& prog, const STypeP& t);

// Declared type of a definition or constant by name; syn and ana are shown at kind *.
TypeP schemeOf(const Program& prog, const std::string& name);

}  // namespace rome

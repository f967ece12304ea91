#pragma once

#include <string>

#include "elm.hpp"

namespace elmlc {

// Binary model container (magic "ELMLCMDL", version 1, little-endian,
// doubles stored as raw IEEE-754 bits). Round-trips are bit-exact.
// Layout is documented in the README.
void save_model(const ElmModel& model, const std::string& path);
ElmModel load_model(const std::string& path);

// Field-by-field bitwise comparison, used by round-trip tests.
bool models_identical(const ElmModel& a, const ElmModel& b);

}  // namespace elmlc

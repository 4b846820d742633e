#pragma once

#include <string>

namespace optrec {

// Full round-trip decimal formatting ("%.17g"), deterministic across runs.
std::string csv_double(double v);

}  // namespace optrec

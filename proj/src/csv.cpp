#include "optrec/csv.hpp"

#include <cstdio>

namespace optrec {

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace optrec

#include "winsum/params.hpp"

#include <cmath>

namespace winsum {

Params Params::make(std::int64_t window, double eps, Value value_bound) {
  Params p{window, eps, value_bound};
  p.validate();
  return p;
}

void Params::validate() const {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw ConfigError("eps must lie in (0, 1), got " + std::to_string(eps));
  }
  if (window < 1) throw ConfigError("window size must be >= 1");
  if (value_bound < 1) throw ConfigError("value bound must be >= 1");
  if (value_bound > kMaxWindowMass / window) {
    throw ConfigError("window size times value bound exceeds 2^62");
  }
}

}  // namespace winsum

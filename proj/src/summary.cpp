#include "winsum/summary.hpp"

namespace winsum {

IntervalSummary summary_singleton(const Params& params, Value x, Position t) {
  params.check_value(x);
  const Value clamped = std::max<Value>(0, x);
  return {t, clamped, clamped};
}

}  // namespace winsum

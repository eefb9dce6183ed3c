#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "winsum/nonempty.hpp"
#include "winsum/smooth_histogram.hpp"

// Snapshot formats. All integers little-endian two's complement; reals are
// IEEE-754 binary64 bit patterns stored as u64.
//
// Sketch record ("WSH1"):
//   u8[4] magic 'W','S','H','1'
//   u8    rule kind (0 = standard, 1 = refined)
//   f64   rule factor (beta or eps)
//   i64   window n
//   f64   eps
//   i64   value bound M
//   i64   now
//   u64   q
//   q x { i64 start, i64 suf, i64 f }
//
// Nonempty record ("WNE1"):
//   u8[4] magic 'W','N','E','1'
//   sketch record as above
//   i64   last_nonneg (0 = never)
//   u64   bucket count r+1
//   (r+2) x i64 thresholds
//   (r+1) x i64 last_seen (0 = never)

namespace winsum::snapshot {

std::vector<std::uint8_t> to_bytes(const SmoothHistogram& sketch);
std::vector<std::uint8_t> to_bytes(const NonemptySketch& sketch);

/// Throw ConfigError on truncated, trailing or inconsistent data.
SmoothHistogram sketch_from_bytes(const std::vector<std::uint8_t>& bytes);
NonemptySketch nonempty_from_bytes(const std::vector<std::uint8_t>& bytes);

std::string to_json(const SmoothHistogram& sketch);
std::string to_json(const NonemptySketch& sketch);
SmoothHistogram sketch_from_json(const std::string& text);
NonemptySketch nonempty_from_json(const std::string& text);

}  // namespace winsum::snapshot

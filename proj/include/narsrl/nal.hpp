#pragma once

#include <stdexcept>

namespace narsrl::nal {

/// Additive evidence counters; frequency and confidence are derived views.
struct Evidence {
  double w_pos = 0.0;
  double w_total = 0.0;
  bool operator==(const Evidence&) const = default;
};

struct TruthValue {
  double frequency = 0.0;
  double confidence = 0.0;
  bool operator==(const TruthValue&) const = default;
};

inline Evidence revise(const Evidence& a, const Evidence& b) {
  return {a.w_pos + b.w_pos, a.w_total + b.w_total};
}

/// f = w+/w, c = w/(w+k). Undefined without evidence.
inline TruthValue truth_of(const Evidence& e, double k = 1.0) {
  if (!(e.w_total > 0.0)) throw std::invalid_argument("truth_of: no evidence");
  if (e.w_pos < 0.0 || e.w_pos > e.w_total)
    throw std::invalid_argument("truth_of: need 0 <= w_pos <= w_total");
  return {e.w_pos / e.w_total, e.w_total / (e.w_total + k)};
}

/// Decision expectation: c pulls f toward the maximally uncertain 0.5.
inline double expectation(const TruthValue& t) {
  return t.confidence * (t.frequency - 0.5) + 0.5;
}

/// Deduction truth function, used to chain temporal implications.
inline TruthValue deduction(const TruthValue& a, const TruthValue& b) {
  const double f = a.frequency * b.frequency;
  return {f, a.confidence * b.confidence * f};
}

}  // namespace narsrl::nal

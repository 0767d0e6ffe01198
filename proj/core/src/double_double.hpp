#pragma once

#include <cmath>

namespace fracorder::detail {

// Unevaluated sum hi + lo with |lo| <= ulp(hi) / 2. Roughly 32 significant
// digits; enough to absorb the cancellation in alternating power series.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  double value() const noexcept { return hi + lo; }
};

inline DoubleDouble two_sum(double a, double b) noexcept {
  double const s = a + b;
  double const bb = s - a;
  double const e = (a - (s - bb)) + (b - bb);
  return {s, e};
}

inline DoubleDouble quick_two_sum(double a, double b) noexcept {
  double const s = a + b;
  return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) noexcept {
  double const p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) noexcept {
  DoubleDouble s = two_sum(a.hi, b.hi);
  DoubleDouble t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator*(DoubleDouble a, double b) noexcept {
  DoubleDouble p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator*(DoubleDouble a, DoubleDouble b) noexcept {
  DoubleDouble p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator/(DoubleDouble a, DoubleDouble b) noexcept {
  double const q1 = a.hi / b.hi;
  DoubleDouble r = a + DoubleDouble{-1.0, 0.0} * (b * q1);
  double const q2 = r.hi / b.hi;
  r = r + DoubleDouble{-1.0, 0.0} * (b * q2);
  double const q3 = r.hi / b.hi;
  DoubleDouble q = quick_two_sum(q1, q2);
  return q + DoubleDouble{q3, 0.0};
}

}  // namespace fracorder::detail

#pragma once

#include <cstdint>

namespace ballspec {

/// Real scalar that counts multiplications; used to measure the cost of templated kernels.
struct CountingReal {
  double v = 0.0;

  CountingReal() = default;
  CountingReal(double x) : v(x) {}  // NOLINT(google-explicit-constructor)

  static std::uint64_t& multiplies() {
    thread_local std::uint64_t count = 0;
    return count;
  }
  static std::uint64_t& additions() {
    thread_local std::uint64_t count = 0;
    return count;
  }
  static void reset() { multiplies() = 0; additions() = 0; }

  friend CountingReal operator*(CountingReal a, double b) { ++multiplies(); return {a.v * b}; }
  friend CountingReal operator*(double a, CountingReal b) { ++multiplies(); return {a * b.v}; }
  friend CountingReal operator*(CountingReal a, CountingReal b) { ++multiplies(); return {a.v * b.v}; }
  friend CountingReal operator+(CountingReal a, CountingReal b) { ++additions(); return {a.v + b.v}; }
  friend CountingReal operator-(CountingReal a, CountingReal b) { ++additions(); return {a.v - b.v}; }
  CountingReal& operator+=(CountingReal b) { ++additions(); v += b.v; return *this; }
  CountingReal& operator-=(CountingReal b) { ++additions(); v -= b.v; return *this; }
};

}  // namespace ballspec

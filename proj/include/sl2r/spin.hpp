#pragma once

#include <complex>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sl2r {

using Complex = std::complex<double>;

inline constexpr double kHalfIntegerTol = 1e-9;

enum class ErrorKind {
  InvalidLabel,
  EmptyDomain,
  Unsupported,
  NotDecomposable,
  WindowTooSmall,
  Conditioning,
  OutOfRange,
  ShapeMismatch,
  Inconsistency,
  Precondition,
  Parse,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Exact half-integer stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int n) : twice_(2 * n) {}

  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }
  // Throws Parse if x is not within tol of a half-integer.
  static HalfInt from_double(double x, double tol = kHalfIntegerTol);
  // Accepts "3/2", "-1", "0.5", "-7/2".
  static HalfInt parse(std::string_view text);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return twice_ / 2.0; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  Complex complex() const { return {value(), 0.0}; }
  std::string str() const;

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
  constexpr HalfInt operator+(int n) const { return from_twice(twice_ + 2 * n); }
  constexpr HalfInt operator-(int n) const { return from_twice(twice_ - 2 * n); }
  constexpr HalfInt& operator+=(int n) {
    twice_ += 2 * n;
    return *this;
  }
  constexpr auto operator<=>(const HalfInt&) const = default;

 private:
  int twice_ = 0;
};

inline constexpr HalfInt kHalf = HalfInt::from_twice(1);

// Number of unit steps from a to b (b - a must be an integer).
int steps_between(HalfInt a, HalfInt b);

// Principal branch; a negative zero imaginary part is treated as +0 so that
// sqrt of a negative real is always +i times a positive number.
Complex principal_sqrt(Complex z);

std::optional<HalfInt> as_half_integer(Complex z, double tol = kHalfIntegerTol);
bool is_half_integer(Complex z, double tol = kHalfIntegerTol);
bool is_integer(Complex z, double tol = kHalfIntegerTol);

std::string format_complex(Complex z);

}  // namespace sl2r

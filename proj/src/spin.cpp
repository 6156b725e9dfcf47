#include "sl2r/spin.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace sl2r {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidLabel: return "invalid-label";
    case ErrorKind::EmptyDomain: return "empty-domain";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::NotDecomposable: return "not-decomposable";
    case ErrorKind::WindowTooSmall: return "window-too-small";
    case ErrorKind::Conditioning: return "conditioning";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::ShapeMismatch: return "shape-mismatch";
    case ErrorKind::Inconsistency: return "inconsistency";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

HalfInt HalfInt::from_double(double x, double tol) {
  double t = std::round(2.0 * x);
  if (!std::isfinite(x) || std::abs(2.0 * x - t) > 2.0 * tol) {
    throw Error(ErrorKind::Parse, "not a half-integer: " + std::to_string(x));
  }
  return from_twice(static_cast<int>(t));
}

namespace {

int parse_int(std::string_view s) {
  int v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::Parse, "bad integer '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

HalfInt HalfInt::parse(std::string_view text) {
  if (text.empty()) throw Error(ErrorKind::Parse, "empty half-integer");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    int num = parse_int(text.substr(0, slash));
    int den = parse_int(text.substr(slash + 1));
    if (den == 1) return HalfInt(num);
    if (den != 2) throw Error(ErrorKind::Parse, "denominator must be 1 or 2: " + std::string(text));
    return from_twice(num);
  }
  if (text.find_first_of(".eE") != std::string_view::npos) {
    std::string s(text);
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad number '" + s + "'");
    }
    if (used != s.size()) throw Error(ErrorKind::Parse, "bad number '" + s + "'");
    return from_double(x);
  }
  return HalfInt(parse_int(text));
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

int steps_between(HalfInt a, HalfInt b) {
  int d = b.twice() - a.twice();
  if (d % 2 != 0) throw Error(ErrorKind::Precondition, "weights on different lattices");
  return d / 2;
}

Complex principal_sqrt(Complex z) {
  if (z.imag() == 0.0) z = Complex(z.real(), 0.0);
  return std::sqrt(z);
}

std::optional<HalfInt> as_half_integer(Complex z, double tol) {
  if (std::abs(z.imag()) > tol || !std::isfinite(z.real())) return std::nullopt;
  double t = std::round(2.0 * z.real());
  if (std::abs(2.0 * z.real() - t) > 2.0 * tol) return std::nullopt;
  return HalfInt::from_twice(static_cast<int>(t));
}

bool is_half_integer(Complex z, double tol) { return as_half_integer(z, tol).has_value(); }

bool is_integer(Complex z, double tol) {
  auto h = as_half_integer(z, tol);
  return h && h->is_integer();
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(6);
  if (z.imag() == 0.0) {
    os << z.real();
  } else {
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  }
  return os.str();
}

}  // namespace sl2r

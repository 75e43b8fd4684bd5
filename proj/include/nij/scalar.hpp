#pragma once

// Scalar backends. Generic code is templated on the scalar type; the two
// supported instantiations are `Rational` (exact, GMP) and `double`.
// `Scalar` is the runtime-tagged form used at I/O boundaries.

#include <gmpxx.h>

#include <cmath>
#include <cstdio>
#include <concepts>
#include <string>
#include <string_view>
#include <variant>

#include "nij/error.hpp"

namespace nij {

using Rational = mpq_class;

enum class Backend { rational, floating };

inline std::string_view to_string(Backend b) {
  return b == Backend::rational ? "rational" : "float";
}

/// Relative/absolute hybrid used by every float zero test and rank decision.
inline constexpr double kFloatTolerance = 1e-9;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr Backend backend = Backend::rational;
  static constexpr bool exact = true;

  static Rational abs(const Rational& x) { return Rational(::abs(x)); }
  static double to_double(const Rational& x) { return x.get_d(); }
  // exact backend: scale is irrelevant
  static bool is_zero(const Rational& x, double /*scale*/ = 0.0) { return sgn(x) == 0; }
  static std::string to_string(const Rational& x) { return x.get_str(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr Backend backend = Backend::floating;
  static constexpr bool exact = false;

  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static bool is_zero(double x, double scale = 0.0) {
    return std::fabs(x) <= kFloatTolerance * (1.0 + scale);
  }
  static std::string to_string(double x);
};

template <class T>
concept Field = requires { ScalarTraits<T>::backend; };

template <Field T>
bool is_zero(const T& x, double scale = 0.0) {
  return ScalarTraits<T>::is_zero(x, scale);
}

template <Field T>
double magnitude(const T& x) {
  return std::fabs(ScalarTraits<T>::to_double(x));
}

/// Parses "p", "-p", "p/q". Result is canonical (lowest terms, q > 0).
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::parse_error, "empty rational literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false;
  bool digit_before = false;
  bool digit_after = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/' && !seen_slash) {
      seen_slash = true;
    } else if (c >= '0' && c <= '9') {
      (seen_slash ? digit_after : digit_before) = true;
    } else {
      throw Error(ErrorKind::parse_error, "malformed rational literal '" + s + "'");
    }
  }
  if (!digit_before || (seen_slash && !digit_after))
    throw Error(ErrorKind::parse_error, "malformed rational literal '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorKind::parse_error, "malformed rational literal '" + s + "'");
  if (sgn(q.get_den()) == 0) throw Error(ErrorKind::parse_error, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string ScalarTraits<double>::to_string(double x) {
  // shortest round-trippable form
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Converts between backends. Rational -> double rounds; double -> Rational is exact.
template <Field To, Field From>
To convert_scalar(const From& x) {
  if constexpr (std::same_as<To, From>) {
    return x;
  } else if constexpr (std::same_as<To, double>) {
    return x.get_d();
  } else {
    return Rational(x);
  }
}

/// Backend-tagged scalar for I/O and runtime dispatch.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(Rational q) : value_(std::move(q)) {}
  Scalar(double d) : value_(d) {}
  Scalar(long v) : value_(Rational(v)) {}
  Scalar(int v) : value_(Rational(v)) {}

  Backend backend() const {
    return std::holds_alternative<Rational>(value_) ? Backend::rational : Backend::floating;
  }

  template <Field T>
  const T& get() const {
    if (auto p = std::get_if<T>(&value_)) return *p;
    throw Error(ErrorKind::backend_mismatch,
                "scalar holds " + std::string(to_string(backend())) + ", requested " +
                    std::string(to_string(ScalarTraits<T>::backend)));
  }

  std::string str() const {
    return std::visit([](const auto& v) { return ScalarTraits<std::decay_t<decltype(v)>>::to_string(v); },
                      value_);
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.backend() != b.backend()) return false;
    if (a.backend() == Backend::rational) return a.get<Rational>() == b.get<Rational>();
    return a.get<double>() == b.get<double>();
  }

 private:
  std::variant<Rational, double> value_;
};

}  // namespace nij

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "texcurve/core.hpp"
#include "texcurve/reference.hpp"

// Random fixtures and exact-arithmetic oracles shared by the tests.

namespace texcurve::testing {

using Rational = boost::multiprecision::cpp_rational;

class Fixtures {
 public:
  explicit Fixtures(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  /// Multiple of 2^-bits in [lo, hi], exact in float32 for small bits.
  double dyadic(double lo, double hi, int bits = 10) {
    return std::round(uniform(lo, hi) * std::ldexp(1.0, bits)) / std::ldexp(1.0, bits);
  }

  Vec point(int channels, double lo, double hi) {
    Vec p(channels);
    for (int c = 0; c < channels; ++c) p[c] = uniform(lo, hi);
    return p;
  }
  ControlPolygon polygon(int degree, int channels, double lo = -1.0, double hi = 1.0) {
    std::vector<Vec> pts;
    for (int i = 0; i <= degree; ++i) pts.push_back(point(channels, lo, hi));
    return ControlPolygon(std::move(pts));
  }
  /// N C0-joined quadratics sharing endpoints.
  std::vector<ControlPolygon> chain(int segments, int channels, double lo = -1.0, double hi = 1.0) {
    std::vector<ControlPolygon> out;
    Vec start = point(channels, lo, hi);
    for (int k = 0; k < segments; ++k) {
      Vec end = point(channels, lo, hi);
      out.emplace_back(std::vector<Vec>{start, point(channels, lo, hi), end});
      start = end;
    }
    return out;
  }
  ControlNet net(int rows, int cols, int channels, double lo = -1.0, double hi = 1.0) {
    std::vector<Vec> pts;
    for (int i = 0; i < rows * cols; ++i) pts.push_back(point(channels, lo, hi));
    return ControlNet(rows, cols, std::move(pts));
  }
  std::vector<double> weights(int n, double lo = 0.5, double hi = 2.0) {
    std::vector<double> w;
    for (int i = 0; i < n; ++i) w.push_back(uniform(lo, hi));
    return w;
  }
  /// Clamped cubic with `count` control points and random interior knots.
  BSplineCurve clamped_spline(int count, int degree, int channels) {
    std::vector<Vec> pts;
    for (int i = 0; i < count; ++i) pts.push_back(point(channels, -1.0, 1.0));
    std::vector<double> interior;
    for (int i = 0; i < count - degree - 1; ++i) interior.push_back(uniform(0.0, 1.0));
    std::sort(interior.begin(), interior.end());
    std::vector<double> knots(static_cast<std::size_t>(degree + 1), 0.0);
    knots.insert(knots.end(), interior.begin(), interior.end());
    knots.insert(knots.end(), static_cast<std::size_t>(degree + 1), 1.0);
    return BSplineCurve(std::move(pts), std::move(knots), degree);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline Rational exact(double v) {
  int exp = 0;
  const double mant = std::frexp(v, &exp);
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rational r(scaled);
  const int shift = exp - 53;
  const boost::multiprecision::cpp_int two_pow = boost::multiprecision::cpp_int(1) << std::abs(shift);
  return shift >= 0 ? r * Rational(two_pow) : r / Rational(two_pow);
}

inline boost::multiprecision::cpp_int exact_binomial(int n, int k) {
  boost::multiprecision::cpp_int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Bernstein sum in exact rational arithmetic at the exact value of t, rounded once.
inline Vec oracle_bernstein(const ControlPolygon& poly, double t) {
  const int d = poly.degree();
  const Rational rt = exact(t);
  const Rational one_minus = 1 - rt;
  Vec out(poly.channels());
  for (int c = 0; c < poly.channels(); ++c) {
    Rational sum = 0;
    for (int i = 0; i <= d; ++i) {
      Rational basis = Rational(exact_binomial(d, i));
      for (int k = 0; k < i; ++k) basis *= rt;
      for (int k = 0; k < d - i; ++k) basis *= one_minus;
      sum += basis * exact(poly[i][c]);
    }
    out[c] = static_cast<double>(sum);
  }
  return out;
}

/// Kind of the texcurve::Error thrown by `fn`; fails the caller's check if none is thrown.
template <class Fn>
std::optional<ErrorKind> error_kind(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline double max_abs_point(const ControlPolygon& poly) {
  double m = 0.0;
  for (const Vec& p : poly.points()) m = std::max(m, max_abs(p));
  return m;
}

}  // namespace texcurve::testing

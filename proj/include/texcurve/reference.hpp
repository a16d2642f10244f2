#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "texcurve/core.hpp"

// Full-precision evaluators and basis conversions used as ground truth for the
// texture paths.

namespace texcurve {

/// Exact binomial coefficient from an integer Pascal row; n <= 60.
std::uint64_t binomial(int n, int k);

Vec eval_bernstein(const ControlPolygon& poly, double t);
Vec eval_decasteljau(const ControlPolygon& poly, double t);

/// Difference terms of the reduced-lerp (Seiler) form. Only the terms with a
/// closed form are populated: d_1 and d_{deg-1} always, d_2 and d_{deg-2} for
/// degrees 4 and 5.
struct SeilerTerms {
  int degree = 0;
  std::array<std::optional<Vec>, 6> d{};
  std::optional<Vec> s1;  ///< b_0 + d_1 (cubic only)
  std::optional<Vec> s2;  ///< b_3 + d_2 (cubic only)

  const Vec& term(int i) const;
};

inline constexpr int kMaxSeilerDegree = 5;

SeilerTerms seiler_terms(const ControlPolygon& poly);
/// C(t) = L(b_0, b_deg, t) + (1-t) t D_1(t)
Vec eval_seiler(const ControlPolygon& poly, double t);
Vec eval_seiler(const ControlPolygon& poly, const SeilerTerms& terms, double t);

/// Homogeneous curve (w_i b_i, w_i) evaluated in Bernstein form, then divided.
Vec eval_rational(const ControlPolygon& points, std::span<const double> weights, double t);

/// Row-major (rows x cols) grid of control points; rows are indexed by v,
/// columns by u.
class ControlNet {
 public:
  ControlNet(int rows, int cols, std::vector<Vec> points);
  static ControlNet from_rows(const std::vector<std::vector<Vec>>& rows);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int channels() const noexcept { return points_.front().channels(); }
  const Vec& at(int row, int col) const {
    return points_[static_cast<std::size_t>(row * cols_ + col)];
  }
  ControlPolygon row(int r) const;
  ControlPolygon column(int c) const;

 private:
  int rows_, cols_;
  std::vector<Vec> points_;
};

/// Each row is evaluated at u, then the resulting column polygon at v.
Vec eval_tensor_surface(const ControlNet& net, double u, double v);

class BSplineCurve {
 public:
  BSplineCurve(std::vector<Vec> control_points, std::vector<double> knots, int degree);

  int degree() const noexcept { return degree_; }
  std::span<const Vec> control_points() const { return points_; }
  std::span<const double> knots() const { return knots_; }
  double domain_begin() const { return knots_[static_cast<std::size_t>(degree_)]; }
  double domain_end() const { return knots_[points_.size()]; }

 private:
  std::vector<Vec> points_;
  std::vector<double> knots_;
  int degree_;
};

Vec eval_deboor(const BSplineCurve& spline, double t);

struct BezierSegment {
  ControlPolygon poly;
  double t0;
  double t1;
};

/// Repeated single-knot insertion until every breakpoint in the domain has
/// multiplicity >= degree, then one Bezier segment per non-empty span.
std::vector<BezierSegment> boehm_to_bezier(const BSplineCurve& spline);
/// Evaluates a piecewise curve at a parameter in [segments.front().t0, segments.back().t1].
Vec eval_piecewise(std::span<const BezierSegment> segments, double t);

/// coeffs[i] multiplies t^i.
ControlPolygon power_to_bernstein(std::span<const Vec> coeffs);
std::vector<Vec> bernstein_to_power(const ControlPolygon& poly);

/// Raises the degree by one without changing the curve.
ControlPolygon elevate_degree(const ControlPolygon& poly);

}  // namespace texcurve

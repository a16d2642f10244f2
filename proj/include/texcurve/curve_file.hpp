#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "texcurve/core.hpp"
#include "texcurve/reference.hpp"

// Line-oriented curve description:
//
//   # comment
//   degree 3
//   channels 1
//   segments 2          optional: C0 piecewise curve, degree*N+1 points
//   grid 4 4            optional: control net, rows*cols points, row-major
//   knots 0 0 0 0 1 1 1 1   optional: B-spline
//   weights 1 0.7 1     optional: rational curve
//   basis power         optional: points are power-basis coefficients
//   domain 0 1 2        optional: segment breakpoints
//   0
//   1
//   ...                 one control point per line, `channels` reals each

namespace texcurve {

enum class Basis { bernstein, power };

struct CurveDescription {
  int degree = -1;
  int channels = 1;
  std::optional<int> segments;
  std::optional<std::pair<int, int>> grid;
  std::vector<double> knots;
  std::vector<double> weights;
  std::vector<double> domain;
  Basis basis = Basis::bernstein;
  std::vector<Vec> points;

  bool is_bspline() const { return !knots.empty(); }
  bool is_rational() const { return !weights.empty(); }

  ControlPolygon polygon() const;
  /// Splits a `segments N` description into N polygons sharing their joins.
  std::vector<ControlPolygon> piecewise() const;
  ControlNet net() const;
  BSplineCurve bspline() const;

  void validate() const;
};

CurveDescription parse_curve(std::istream& in);
CurveDescription read_curve_file(const std::filesystem::path& path);
std::string format_curve(const CurveDescription& desc);

CurveDescription describe_polygon(const ControlPolygon& poly);
CurveDescription describe_piecewise(std::span<const BezierSegment> segments);

}  // namespace texcurve

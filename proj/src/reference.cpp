#include "texcurve/reference.hpp"

#include <algorithm>
#include <cmath>

namespace texcurve {

std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > 60) throw Error(ErrorKind::invalid_argument, "binomial order outside [0, 60]");
  if (k < 0 || k > n) return 0;
  std::vector<std::uint64_t> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j > 0; --j) row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j - 1)];
  }
  return row[static_cast<std::size_t>(k)];
}

namespace {

void require_unit_parameter(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorKind::domain, "curve parameter " + std::to_string(t) + " outside [0, 1]");
  }
}

}  // namespace

Vec eval_bernstein(const ControlPolygon& poly, double t) {
  require_unit_parameter(t);
  const int d = poly.degree();
  const double s = 1.0 - t;
  Vec sum(poly.channels(), 0.0);
  for (int i = 0; i <= d; ++i) {
    double basis = static_cast<double>(binomial(d, i));
    for (int k = 0; k < d - i; ++k) basis *= s;
    for (int k = 0; k < i; ++k) basis *= t;
    sum += poly[i] * basis;
  }
  return sum;
}

Vec eval_decasteljau(const ControlPolygon& poly, double t) {
  require_unit_parameter(t);
  std::vector<Vec> work(poly.points().begin(), poly.points().end());
  for (std::size_t level = work.size() - 1; level > 0; --level) {
    for (std::size_t i = 0; i < level; ++i) work[i] = lerp(work[i], work[i + 1], t);
  }
  return work.front();
}

const Vec& SeilerTerms::term(int i) const {
  const auto& slot = d.at(static_cast<std::size_t>(i));
  if (!slot) {
    throw Error(ErrorKind::unsupported_degree,
                "difference term d_" + std::to_string(i) + " has no closed form at degree " +
                    std::to_string(degree));
  }
  return *slot;
}

SeilerTerms seiler_terms(const ControlPolygon& poly) {
  const int deg = poly.degree();
  if (deg < 2 || deg > kMaxSeilerDegree) {
    throw Error(ErrorKind::unsupported_degree,
                "Seiler difference terms are defined for degrees 2 to 5, got degree " +
                    std::to_string(deg));
  }
  const auto& b = poly;
  const double dd = deg;
  SeilerTerms out;
  out.degree = deg;

  auto set = [&](int i, Vec v) {
    auto& slot = out.d[static_cast<std::size_t>(i)];
    if (!slot) slot = std::move(v);
  };

  set(1, dd * (b[1] - b[0]) - (b[deg] - b[0]));
  set(deg - 1, dd * (b[deg - 1] - b[deg]) - (b[0] - b[deg]));

  if (deg >= 4) {
    const double c_d2 = static_cast<double>(binomial(deg, 2));
    const double c_dm2 = static_cast<double>(binomial(deg - 2, 2));
    set(2, c_d2 * (b[2] - b[1]) - c_dm2 * (b[1] - b[0]) - (dd - 3.0) * (b[deg - 1] - b[deg]) -
               3.0 * (b[deg - 1] - b[1]));
    set(deg - 2, c_d2 * (b[deg - 2] - b[deg - 1]) - c_dm2 * (b[deg - 1] - b[deg]) -
                     (dd - 3.0) * (b[1] - b[0]) - 3.0 * (b[1] - b[deg - 1]));
  }
  if (deg == 3) {
    out.s1 = b[0] + out.term(1);
    out.s2 = b[3] + out.term(2);
  }
  return out;
}

namespace {

// D_i(t): zero when 2i = deg + 1, d_i when 2i = deg, else L(d_i, d_{deg-i}, t) + st D_{i+1}(t).
Vec seiler_recursion(const SeilerTerms& terms, int i, double t, int channels) {
  const int deg = terms.degree;
  if (2 * i == deg + 1) return Vec(channels, 0.0);
  if (2 * i == deg) return terms.term(i);
  const double st = (1.0 - t) * t;
  return lerp(terms.term(i), terms.term(deg - i), t) +
         st * seiler_recursion(terms, i + 1, t, channels);
}

}  // namespace

Vec eval_seiler(const ControlPolygon& poly, const SeilerTerms& terms, double t) {
  require_unit_parameter(t);
  if (terms.degree != poly.degree()) {
    throw Error(ErrorKind::invalid_argument, "Seiler terms were computed for another degree");
  }
  const double st = (1.0 - t) * t;
  return lerp(poly[0], poly[poly.degree()], t) +
         st * seiler_recursion(terms, 1, t, poly.channels());
}

Vec eval_seiler(const ControlPolygon& poly, double t) {
  return eval_seiler(poly, seiler_terms(poly), t);
}

Vec eval_rational(const ControlPolygon& points, std::span<const double> weights, double t) {
  if (weights.size() != points.points().size()) {
    throw Error(ErrorKind::invalid_argument, "weight count does not match control point count");
  }
  const int c = points.channels();
  std::vector<Vec> homogeneous;
  homogeneous.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0)) throw Error(ErrorKind::invalid_argument, "rational weights must be positive");
    Vec h(c + 1);
    for (int k = 0; k < c; ++k) h[k] = points[static_cast<int>(i)][k] * weights[i];
    h[c] = weights[i];
    homogeneous.push_back(h);
  }
  const Vec h = eval_bernstein(ControlPolygon(std::move(homogeneous)), t);
  if (h[c] == 0.0) throw Error(ErrorKind::division, "homogeneous weight vanished");
  Vec out(c);
  for (int k = 0; k < c; ++k) out[k] = h[k] / h[c];
  return out;
}

ControlNet::ControlNet(int rows, int cols, std::vector<Vec> points)
    : rows_(rows), cols_(cols), points_(std::move(points)) {
  if (rows < 2 || cols < 2) throw Error(ErrorKind::invalid_argument, "control net needs at least 2x2 points");
  if (points_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw Error(ErrorKind::invalid_argument, "control net point count does not match rows x cols");
  }
  for (const Vec& p : points_) require_same_channels(p, points_.front());
}

ControlNet ControlNet::from_rows(const std::vector<std::vector<Vec>>& rows) {
  if (rows.empty()) throw Error(ErrorKind::invalid_argument, "empty control net");
  std::vector<Vec> flat;
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw Error(ErrorKind::invalid_argument, "ragged control net");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return ControlNet(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()),
                    std::move(flat));
}

ControlPolygon ControlNet::row(int r) const {
  std::vector<Vec> pts;
  for (int c = 0; c < cols_; ++c) pts.push_back(at(r, c));
  return ControlPolygon(std::move(pts));
}

ControlPolygon ControlNet::column(int c) const {
  std::vector<Vec> pts;
  for (int r = 0; r < rows_; ++r) pts.push_back(at(r, c));
  return ControlPolygon(std::move(pts));
}

Vec eval_tensor_surface(const ControlNet& net, double u, double v) {
  std::vector<Vec> isoline;
  isoline.reserve(static_cast<std::size_t>(net.rows()));
  for (int r = 0; r < net.rows(); ++r) isoline.push_back(eval_bernstein(net.row(r), u));
  return eval_bernstein(ControlPolygon(std::move(isoline)), v);
}

BSplineCurve::BSplineCurve(std::vector<Vec> control_points, std::vector<double> knots, int degree)
    : points_(std::move(control_points)), knots_(std::move(knots)), degree_(degree) {
  if (degree_ < 1) throw Error(ErrorKind::invalid_argument, "B-spline degree must be >= 1");
  if (points_.size() < static_cast<std::size_t>(degree_) + 1) {
    throw Error(ErrorKind::invalid_argument, "B-spline needs at least degree+1 control points");
  }
  if (knots_.size() != points_.size() + static_cast<std::size_t>(degree_) + 1) {
    throw Error(ErrorKind::invalid_argument,
                "B-spline knot count must equal control points + degree + 1");
  }
  if (!std::is_sorted(knots_.begin(), knots_.end())) {
    throw Error(ErrorKind::invalid_argument, "B-spline knots must be non-decreasing");
  }
  for (const Vec& p : points_) require_same_channels(p, points_.front());
}

namespace {

void require_nonempty_domain(const BSplineCurve& s) {
  if (!(s.domain_begin() < s.domain_end())) throw Error(ErrorKind::domain, "B-spline domain is empty");
}

// Largest k in [degree, n-1] with knots[k] <= t and knots[k] < knots[k+1].
std::size_t find_span(std::span<const double> knots, std::size_t degree, std::size_t n, double t) {
  std::size_t k = static_cast<std::size_t>(
      std::upper_bound(knots.begin(), knots.end(), t) - knots.begin());
  k = std::clamp<std::size_t>(k == 0 ? 0 : k - 1, degree, n - 1);
  while (k > degree && knots[k] == knots[k + 1]) --k;
  return k;
}

}  // namespace

Vec eval_deboor(const BSplineCurve& spline, double t) {
  require_nonempty_domain(spline);
  if (!(t >= spline.domain_begin() && t <= spline.domain_end())) {
    throw Error(ErrorKind::domain, "parameter " + std::to_string(t) + " outside the B-spline domain");
  }
  const auto knots = spline.knots();
  const auto pts = spline.control_points();
  const std::size_t p = static_cast<std::size_t>(spline.degree());
  const std::size_t k = find_span(knots, p, pts.size(), t);

  std::vector<Vec> d(pts.begin() + static_cast<std::ptrdiff_t>(k - p),
                     pts.begin() + static_cast<std::ptrdiff_t>(k + 1));
  for (std::size_t r = 1; r <= p; ++r) {
    for (std::size_t j = p; j >= r; --j) {
      const double left = knots[j + k - p];
      const double right = knots[j + 1 + k - r];
      const double alpha = (t - left) / (right - left);
      d[j] = lerp(d[j - 1], d[j], alpha);
    }
  }
  return d[p];
}

namespace {

void insert_knot(std::vector<Vec>& pts, std::vector<double>& knots, std::size_t p, double u) {
  const std::size_t k = static_cast<std::size_t>(
                            std::upper_bound(knots.begin(), knots.end(), u) - knots.begin()) -
                        1;
  const auto s = static_cast<std::size_t>(std::count(knots.begin(), knots.end(), u));
  std::vector<Vec> out;
  out.reserve(pts.size() + 1);
  for (std::size_t i = 0; i <= pts.size(); ++i) {
    if (i + p <= k) {
      out.push_back(pts[i]);
    } else if (i + s > k) {
      out.push_back(pts[i - 1]);
    } else {
      const double alpha = (u - knots[i]) / (knots[i + p] - knots[i]);
      out.push_back(lerp(pts[i - 1], pts[i], alpha));
    }
  }
  pts = std::move(out);
  knots.insert(knots.begin() + static_cast<std::ptrdiff_t>(k + 1), u);
}

}  // namespace

std::vector<BezierSegment> boehm_to_bezier(const BSplineCurve& spline) {
  require_nonempty_domain(spline);
  const std::size_t p = static_cast<std::size_t>(spline.degree());
  std::vector<Vec> pts(spline.control_points().begin(), spline.control_points().end());
  std::vector<double> knots(spline.knots().begin(), spline.knots().end());
  const double a = spline.domain_begin();
  const double b = spline.domain_end();

  std::vector<double> breakpoints;
  for (double u : knots) {
    if (u >= a && u <= b && (breakpoints.empty() || breakpoints.back() != u)) breakpoints.push_back(u);
  }
  for (double u : breakpoints) {
    while (static_cast<std::size_t>(std::count(knots.begin(), knots.end(), u)) < p) {
      insert_knot(pts, knots, p, u);
    }
  }

  std::vector<BezierSegment> segments;
  for (std::size_t k = p; k + 1 < knots.size() && k < pts.size(); ++k) {
    if (knots[k] < knots[k + 1] && knots[k] >= a && knots[k + 1] <= b) {
      std::vector<Vec> seg(pts.begin() + static_cast<std::ptrdiff_t>(k - p),
                           pts.begin() + static_cast<std::ptrdiff_t>(k + 1));
      segments.push_back({ControlPolygon(std::move(seg)), knots[k], knots[k + 1]});
    }
  }
  return segments;
}

Vec eval_piecewise(std::span<const BezierSegment> segments, double t) {
  if (segments.empty()) throw Error(ErrorKind::invalid_argument, "no segments");
  if (!(t >= segments.front().t0 && t <= segments.back().t1)) {
    throw Error(ErrorKind::domain, "parameter outside the piecewise domain");
  }
  auto it = std::find_if(segments.begin(), segments.end(),
                         [t](const BezierSegment& s) { return t < s.t1; });
  if (it == segments.end()) it = segments.end() - 1;
  const double local = std::clamp((t - it->t0) / (it->t1 - it->t0), 0.0, 1.0);
  return eval_decasteljau(it->poly, local);
}

ControlPolygon power_to_bernstein(std::span<const Vec> coeffs) {
  if (coeffs.size() < 2) throw Error(ErrorKind::invalid_argument, "need at least 2 power coefficients");
  const int d = static_cast<int>(coeffs.size()) - 1;
  std::vector<Vec> b;
  for (int j = 0; j <= d; ++j) {
    Vec sum(coeffs.front().channels(), 0.0);
    for (int i = 0; i <= j; ++i) {
      const double w = static_cast<double>(binomial(j, i)) / static_cast<double>(binomial(d, i));
      sum += coeffs[static_cast<std::size_t>(i)] * w;
    }
    b.push_back(sum);
  }
  return ControlPolygon(std::move(b));
}

std::vector<Vec> bernstein_to_power(const ControlPolygon& poly) {
  const int d = poly.degree();
  std::vector<Vec> a;
  for (int i = 0; i <= d; ++i) {
    Vec sum(poly.channels(), 0.0);
    for (int j = 0; j <= i; ++j) {
      const double sign = (i - j) % 2 == 0 ? 1.0 : -1.0;
      sum += poly[j] * (sign * static_cast<double>(binomial(i, j)));
    }
    a.push_back(sum * static_cast<double>(binomial(d, i)));
  }
  return a;
}

ControlPolygon elevate_degree(const ControlPolygon& poly) {
  const int d = poly.degree();
  std::vector<Vec> q;
  q.push_back(poly[0]);
  for (int i = 1; i <= d; ++i) {
    const double a = static_cast<double>(i) / (d + 1);
    q.push_back(poly[i - 1] * a + poly[i] * (1.0 - a));
  }
  q.push_back(poly[d]);
  return ControlPolygon(std::move(q));
}

}  // namespace texcurve

#include "texcurve/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace texcurve {

ValueTransform fit_range(std::span<const Vec> values) {
  if (values.empty()) throw Error(ErrorKind::invalid_argument, "fit_range needs at least one value");
  const int channels = values.front().channels();
  ValueTransform tf = ValueTransform::identity(channels);
  for (int c = 0; c < channels; ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Vec& v : values) {
      require_same_channels(v, values.front());
      if (!std::isfinite(v[c])) throw Error(ErrorKind::invalid_argument, "fit_range needs finite values");
      lo = std::min(lo, v[c]);
      hi = std::max(hi, v[c]);
    }
    if (lo >= 0.0 && hi <= 1.0) continue;
    if (hi == lo) {
      tf.scale[c] = 1.0;
      tf.offset[c] = -lo;
    } else {
      tf.scale[c] = 1.0 / (hi - lo);
      tf.offset[c] = -lo / (hi - lo);
    }
  }
  return tf;
}

namespace {

struct Texel {
  int x, y, z;
  Vec value;
};

struct GridShape {
  int width, height, depth;
};

struct FinishSpec {
  Layout layout;
  int degree;
  int segment_count = 1;
  GridShape shape;
  /// Channel that must keep an identity transform (rational weight).
  std::optional<int> pinned_channel;
};

EncodedCurve finish(const FinishSpec& spec, const std::vector<Texel>& texels,
                    const EncodeOptions& opts) {
  const int channels = texels.front().value.channels();
  std::vector<Vec> values;
  values.reserve(texels.size());
  for (const Texel& t : texels) values.push_back(t.value);

  ValueTransform tf = ValueTransform::identity(channels);
  if (opts.rescale) {
    tf = fit_range(values);
    if (spec.pinned_channel) {
      tf.scale[*spec.pinned_channel] = 1.0;
      tf.offset[*spec.pinned_channel] = 0.0;
    }
  }

  TexelGrid grid(spec.shape.width, spec.shape.height, spec.shape.depth, channels, opts.format);
  const bool unorm = unorm_bits(opts.format) > 0;
  const double slack = opts.rescale ? 1e-12 : 0.0;
  for (const Texel& t : texels) {
    const Vec stored = tf.apply(t.value);
    if (unorm) {
      for (int c = 0; c < channels; ++c) {
        if (stored[c] < -slack || stored[c] > 1.0 + slack || !std::isfinite(stored[c])) {
          std::ostringstream msg;
          msg << to_string(spec.layout) << ": texel (" << t.x << "," << t.y << "," << t.z
              << ") channel " << c << " = " << stored[c] << " lies outside [0,1] for "
              << to_string(opts.format)
              << (opts.rescale ? " (channel cannot be rescaled)" : "; enable rescaling");
          throw Error(ErrorKind::range, msg.str());
        }
      }
    }
    grid.set(t.x, t.y, t.z, stored);
  }

  EncodedCurve out{std::move(grid), spec.layout, spec.degree, spec.segment_count, tf};
  out.validate();
  return out;
}

void require_degree(const ControlPolygon& poly, int degree, std::string_view what) {
  if (poly.degree() != degree) {
    throw Error(ErrorKind::unsupported_degree, std::string(what) + " expects degree " +
                                                   std::to_string(degree) + ", got degree " +
                                                   std::to_string(poly.degree()));
  }
}

std::vector<Texel> dc_cubic_texels(const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
  return {{0, 0, 0, a}, {1, 0, 0, b}, {0, 1, 0, b}, {1, 1, 0, c},
          {0, 0, 1, b}, {1, 0, 1, c}, {0, 1, 1, c}, {1, 1, 1, d}};
}

}  // namespace

EncodedCurve encode_dc_quadratic(const ControlPolygon& poly, const EncodeOptions& opts) {
  require_degree(poly, 2, "quadratic de Casteljau layout");
  return finish({Layout::dc_quad_2x2, 2, 1, {2, 2, 1}, {}},
                {{0, 0, 0, poly[0]}, {1, 0, 0, poly[1]}, {0, 1, 0, poly[1]}, {1, 1, 0, poly[2]}},
                opts);
}

EncodedCurve encode_dc_cubic(const ControlPolygon& poly, const EncodeOptions& opts) {
  require_degree(poly, 3, "cubic de Casteljau layout");
  return finish({Layout::dc_cubic_2x2x2, 3, 1, {2, 2, 2}, {}},
                dc_cubic_texels(poly[0], poly[1], poly[2], poly[3]), opts);
}

namespace {

// Rows as affine functions of the seed: value = base + slope * seed, slope in {-1, 0, 1}.
ZigzagRows substitute(std::span<const ControlPolygon> segments, const Vec& seed) {
  const std::size_t n = segments.size();
  ZigzagRows rows{std::vector<Vec>(n + 1), std::vector<Vec>(n + 1)};
  auto& top = rows.top;
  auto& bottom = rows.bottom;
  bottom[0] = seed;
  for (std::size_t k = 0; k < n; ++k) {
    const ControlPolygon& seg = segments[k];
    const Vec twice_mid = 2.0 * seg[1];
    if (k % 2 == 0) {
      top[k] = seg[0];
      bottom[k + 1] = seg[2];
      top[k + 1] = twice_mid - bottom[k];
    } else {
      bottom[k] = seg[0];
      top[k + 1] = seg[2];
      bottom[k + 1] = twice_mid - top[k];
    }
  }
  return rows;
}

double excursion(double v) { return std::max({0.0, -v, v - 1.0}); }

// Seed for one channel minimizing the worst excursion outside [0,1]; ties go to
// the candidate closest to `preferred`.
double best_seed(const std::vector<double>& base, const std::vector<double>& slope, double preferred) {
  struct Piece {
    double a, b;  // a + b s
  };
  std::vector<Piece> pieces{{0.0, 0.0}};
  for (std::size_t i = 0; i < base.size(); ++i) {
    pieces.push_back({-base[i], -slope[i]});
    pieces.push_back({base[i] - 1.0, slope[i]});
  }
  auto worst = [&](double s) {
    double w = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) w = std::max(w, excursion(base[i] + slope[i] * s));
    return w;
  };
  std::vector<double> candidates{preferred};
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      const double db = pieces[i].b - pieces[j].b;
      if (db != 0.0) candidates.push_back((pieces[j].a - pieces[i].a) / db);
    }
  }
  double best = preferred;
  double best_cost = worst(preferred);
  for (double s : candidates) {
    const double cost = worst(s);
    if (cost < best_cost ||
        (cost == best_cost && std::abs(s - preferred) < std::abs(best - preferred))) {
      best = s;
      best_cost = cost;
    }
  }
  return best;
}

}  // namespace

ZigzagRows solve_zigzag(std::span<const ControlPolygon> segments, const ZigzagOptions& zopts) {
  if (segments.empty()) throw Error(ErrorKind::invalid_argument, "zig-zag packing needs at least one segment");
  for (std::size_t k = 0; k < segments.size(); ++k) {
    require_degree(segments[k], 2, "zig-zag layout");
    require_same_channels(segments[k][0], segments[0][0]);
    if (k > 0 && !(segments[k - 1][2] == segments[k][0])) {
      throw Error(ErrorKind::join, "segments " + std::to_string(k - 1) + " and " +
                                       std::to_string(k) + " do not share an endpoint (C0 join)");
    }
  }
  const Vec preferred = segments[0][1];
  if (zopts.seed) {
    require_same_channels(*zopts.seed, preferred);
    return substitute(segments, *zopts.seed);
  }
  if (zopts.seed_mode == ZigzagSeed::first_middle) return substitute(segments, preferred);

  const int channels = preferred.channels();
  const ZigzagRows at0 = substitute(segments, Vec(channels, 0.0));
  const ZigzagRows at1 = substitute(segments, Vec(channels, 1.0));
  Vec seed = preferred;
  for (int c = 0; c < channels; ++c) {
    std::vector<double> base;
    std::vector<double> slope;
    for (const auto* rows : {&at0.top, &at0.bottom}) {
      for (const Vec& v : *rows) base.push_back(v[c]);
    }
    for (std::size_t r = 0; r < 2; ++r) {
      const auto& row0 = r == 0 ? at0.top : at0.bottom;
      const auto& row1 = r == 0 ? at1.top : at1.bottom;
      for (std::size_t i = 0; i < row0.size(); ++i) slope.push_back(std::round(row1[i][c] - row0[i][c]));
    }
    seed[c] = best_seed(base, slope, preferred[c]);
  }
  return substitute(segments, seed);
}

EncodedCurve encode_dc_zigzag(std::span<const ControlPolygon> segments, const EncodeOptions& opts,
                              const ZigzagOptions& zopts) {
  const ZigzagRows rows = solve_zigzag(segments, zopts);
  const int n = static_cast<int>(segments.size());
  std::vector<Texel> texels;
  for (int k = 0; k <= n; ++k) {
    texels.push_back({k, 0, 0, rows.top[static_cast<std::size_t>(k)]});
    texels.push_back({k, 1, 0, rows.bottom[static_cast<std::size_t>(k)]});
  }
  return finish({Layout::dc_zigzag, 2, n, {n + 1, 2, 1}, {}}, texels, opts);
}

namespace {

std::vector<Texel> seiler_texels(const ControlPolygon& poly) {
  const SeilerTerms terms = seiler_terms(poly);
  const int deg = poly.degree();
  const Vec& b0 = poly[0];
  const Vec& bd = poly[deg];
  switch (deg) {
    case 2: {
      const Vec& d1 = terms.term(1);
      return {{0, 0, 0, b0}, {1, 0, 0, bd}, {0, 1, 0, b0 + d1}, {1, 1, 0, bd + d1}};
    }
    case 3:
      return {{0, 0, 0, b0}, {1, 0, 0, bd}, {0, 1, 0, *terms.s1}, {1, 1, 0, *terms.s2}};
    default: {
      // z=0 reproduces L(b0, bd, t) on both rows; z=1 carries the difference terms.
      const Vec& d1 = terms.term(1);
      const Vec& d2 = terms.term(2);
      const Vec& dlast = terms.term(deg - 1);
      const Vec& dinner = terms.term(deg - 2);
      return {{0, 0, 0, b0},           {1, 0, 0, bd},
              {0, 1, 0, b0},           {1, 1, 0, bd},
              {0, 0, 1, b0 + d1},      {1, 0, 1, bd + dlast},
              {0, 1, 1, b0 + d1 + d2}, {1, 1, 1, bd + dlast + dinner}};
    }
  }
}

}  // namespace

EncodedCurve encode_seiler(const ControlPolygon& poly, const EncodeOptions& opts) {
  const int deg = poly.degree();
  if (deg < 2 || deg > kMaxSeilerDegree) {
    throw Error(ErrorKind::unsupported_degree,
                "Seiler layout supports degrees 2 to 5 (closed-form difference terms); got degree " +
                    std::to_string(deg));
  }
  const bool volume = deg >= 4;
  return finish({volume ? Layout::seiler_3d : Layout::seiler_2d, deg, 1, {2, 2, volume ? 2 : 1}, {}},
                seiler_texels(poly), opts);
}

EncodedCurve encode_bilinear_patch(const ControlNet& corners, const EncodeOptions& opts) {
  if (corners.rows() != 2 || corners.cols() != 2) {
    throw Error(ErrorKind::invalid_argument, "bilinear patch needs a 2x2 control net");
  }
  return finish({Layout::bilinear_patch, 1, 1, {2, 2, 1}, {}},
                {{0, 0, 0, corners.at(0, 0)},
                 {1, 0, 0, corners.at(0, 1)},
                 {0, 1, 0, corners.at(1, 0)},
                 {1, 1, 0, corners.at(1, 1)}},
                opts);
}

EncodedCurve encode_bicubic_rgba(const ControlNet& net, const EncodeOptions& opts) {
  if (net.rows() != 4 || net.cols() != 4) {
    throw Error(ErrorKind::invalid_argument, "bicubic RGBA layout needs a 4x4 control net");
  }
  if (net.channels() != 1) {
    throw Error(ErrorKind::invalid_argument,
                "bicubic RGBA layout overflows: 4 rows x " + std::to_string(net.channels()) +
                    " channels exceed the 4 available texel channels");
  }
  // Texel (x,y,z) of the cubic layout, one control row per color channel.
  std::vector<Texel> texels = dc_cubic_texels(Vec(4), Vec(4), Vec(4), Vec(4));
  for (int row = 0; row < 4; ++row) {
    const ControlPolygon poly = net.row(row);
    const auto placed = dc_cubic_texels(poly[0], poly[1], poly[2], poly[3]);
    for (std::size_t i = 0; i < texels.size(); ++i) texels[i].value[row] = placed[i].value[0];
  }
  return finish({Layout::bicubic_rgba, 3, 1, {2, 2, 2}, {}}, texels, opts);
}

EncodedCurve encode_rational(const ControlPolygon& points, std::span<const double> weights,
                             const EncodeOptions& opts) {
  const int deg = points.degree();
  if (deg != 2 && deg != 3) {
    throw Error(ErrorKind::unsupported_degree,
                "rational layout supports degrees 2 and 3, got degree " + std::to_string(deg));
  }
  const int c = points.channels();
  if (c + 1 > Vec::kMaxChannels) {
    throw Error(ErrorKind::invalid_argument, "rational layout overflows: " + std::to_string(c) +
                                                 " point channels plus a weight exceed 4");
  }
  if (weights.size() != points.points().size()) {
    throw Error(ErrorKind::invalid_argument, "weight count does not match control point count");
  }
  std::vector<Vec> homogeneous;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0)) throw Error(ErrorKind::invalid_argument, "rational weights must be positive");
    Vec h(c + 1);
    for (int k = 0; k < c; ++k) h[k] = points[static_cast<int>(i)][k] * weights[i];
    h[c] = weights[i];
    homogeneous.push_back(h);
  }
  return finish({Layout::rational_homogeneous, deg, 1, {2, 2, 1}, c},
                seiler_texels(ControlPolygon(std::move(homogeneous))), opts);
}

}  // namespace texcurve

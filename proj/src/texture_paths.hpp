#pragma once

// Mode-specific read sequences shared by the emulated evaluators and the
// quantization error bound. A Reads policy supplies
//   Vec bilinear(const TexelGrid&, int z, double u, double v)
//   Vec trilinear(const TexelGrid&, double u, double v, double w)

#include <cmath>
#include <string>

#include "texcurve/core.hpp"
#include "texcurve/reference.hpp"
#include "texcurve/texture_eval.hpp"

namespace texcurve::detail {

inline double texel_span(double x) { return remap_unit_to_texel_span(x, 2); }

inline void require_unit(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorKind::domain, "parameter " + std::to_string(t) + " outside [0, 1]");
  }
}

inline void require_layout(const EncodedCurve& c, bool ok, std::string_view mode) {
  if (!ok) {
    throw Error(ErrorKind::layout_mismatch, "mode '" + std::string(mode) + "' cannot read layout " +
                                                std::string(to_string(c.layout)));
  }
}

template <class Reads>
Vec dc_path(const EncodedCurve& c, double t, Reads& reads) {
  require_layout(c, c.layout == Layout::dc_quad_2x2 || c.layout == Layout::dc_cubic_2x2x2, "dc");
  require_unit(t);
  const double r = texel_span(t);
  const Vec raw = c.layout == Layout::dc_quad_2x2 ? reads.bilinear(c.grid, 0, r, r)
                                                  : reads.trilinear(c.grid, r, r, r);
  return c.transform.invert(raw);
}

template <class Reads>
Vec dc_hybrid_path(const EncodedCurve& c, double t, Reads& reads) {
  require_layout(c, c.layout == Layout::dc_cubic_2x2x2, "dc-hybrid");
  require_unit(t);
  const double r = texel_span(t);
  const Vec front = reads.bilinear(c.grid, 0, r, r);
  const Vec back = reads.bilinear(c.grid, 1, r, r);
  return c.transform.invert(lerp(front, back, t));
}

template <class Reads>
Vec zigzag_path(const EncodedCurve& c, double global_t, Reads& reads) {
  require_layout(c, c.layout == Layout::dc_zigzag, "zigzag");
  const int n = c.segment_count;
  if (!(global_t >= 0.0 && global_t <= n)) {
    throw Error(ErrorKind::domain, "zig-zag parameter " + std::to_string(global_t) + " outside [0, " +
                                       std::to_string(n) + "]");
  }
  const int k = std::min(static_cast<int>(std::floor(global_t)), n - 1);
  const double local = global_t - k;
  const double u = (k + 0.5 + local) / (n + 1);
  const double v = texel_span(k % 2 == 0 ? local : 1.0 - local);
  return c.transform.invert(reads.bilinear(c.grid, 0, u, v));
}

// Second coordinate of a Seiler read; st never exceeds 1/4.
inline double seiler_weight(double t) {
  const double m = (1.0 - t) * t;
  if (!(m >= 0.0 && m <= 0.25)) throw Error(ErrorKind::domain, "Seiler weight st outside [0, 0.25]");
  return m;
}

template <class Reads>
Vec seiler_raw(const EncodedCurve& c, double t, Reads& reads) {
  require_unit(t);
  const double ru = texel_span(t);
  const double rm = texel_span(seiler_weight(t));
  return c.grid.is_2d() ? reads.bilinear(c.grid, 0, ru, rm) : reads.trilinear(c.grid, ru, rm, rm);
}

template <class Reads>
Vec seiler_path(const EncodedCurve& c, double t, Reads& reads) {
  require_layout(c, c.layout == Layout::seiler_2d || c.layout == Layout::seiler_3d, "seiler");
  return c.transform.invert(seiler_raw(c, t, reads));
}

template <class Reads>
Vec rational_path(const EncodedCurve& c, double t, Reads& reads) {
  require_layout(c, c.layout == Layout::rational_homogeneous, "rational");
  const Vec h = c.transform.invert(seiler_raw(c, t, reads));
  const int wc = h.channels() - 1;
  if (!(h[wc] > kMinDecodedWeight)) {
    throw Error(ErrorKind::division, "decoded homogeneous weight " + std::to_string(h[wc]) +
                                         " is too small to divide by");
  }
  Vec p(wc);
  for (int k = 0; k < wc; ++k) p[k] = h[k] / h[wc];
  return p;
}

template <class Reads>
Vec patch_path(const EncodedCurve& c, double u, double v, Reads& reads) {
  require_layout(c, c.layout == Layout::bilinear_patch, "patch");
  require_unit(u);
  require_unit(v);
  return c.transform.invert(reads.bilinear(c.grid, 0, texel_span(u), texel_span(v)));
}

template <class Reads>
Vec bicubic_path(const EncodedCurve& c, double u, double v, Reads& reads) {
  require_layout(c, c.layout == Layout::bicubic_rgba, "bicubic");
  require_unit(u);
  require_unit(v);
  const double r = texel_span(u);
  const Vec iso = c.transform.invert(reads.trilinear(c.grid, r, r, r));
  std::vector<Vec> pts;
  for (int k = 0; k < iso.channels(); ++k) pts.push_back(Vec{iso[k]});
  return eval_bernstein(ControlPolygon(std::move(pts)), v);
}

template <class Reads>
Vec curve_path(const EncodedCurve& c, Mode mode, double t, Reads& reads) {
  switch (mode) {
    case Mode::dc: return dc_path(c, t, reads);
    case Mode::dc_hybrid: return dc_hybrid_path(c, t, reads);
    case Mode::seiler: return seiler_path(c, t, reads);
    case Mode::zigzag: return zigzag_path(c, t, reads);
    case Mode::rational: return rational_path(c, t, reads);
    case Mode::patch:
    case Mode::bicubic: break;
  }
  throw Error(ErrorKind::layout_mismatch,
              "mode '" + std::string(to_string(mode)) + "' is a surface mode; it needs (u, v)");
}

template <class Reads>
Vec surface_path(const EncodedCurve& c, Mode mode, double u, double v, Reads& reads) {
  switch (mode) {
    case Mode::patch: return patch_path(c, u, v, reads);
    case Mode::bicubic: return bicubic_path(c, u, v, reads);
    default: break;
  }
  throw Error(ErrorKind::layout_mismatch,
              "mode '" + std::string(to_string(mode)) + "' is a curve mode; it takes one parameter");
}

}  // namespace texcurve::detail

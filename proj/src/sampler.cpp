#include "texcurve/sampler.hpp"

#include <algorithm>
#include <cmath>

namespace texcurve {

double quantize_texel(double v, TexelFormat format) {
  switch (format) {
    case TexelFormat::unorm8:
    case TexelFormat::unorm16: {
      const double levels = std::ldexp(1.0, unorm_bits(format)) - 1.0;
      const double clamped = std::clamp(v, 0.0, 1.0);
      // The product can round onto a half; the fma residual decides exactly.
      double k = std::round(clamped * levels);
      if (std::fma(clamped, levels, -(k - 0.5)) < 0.0) k -= 1.0;
      return k / levels;
    }
    case TexelFormat::float32:
      return static_cast<double>(static_cast<float>(v));
  }
  return v;
}

double quantize_fraction(double f, const SamplerConfig& cfg) {
  if (cfg.subtexel_bits == 0) return f;
  const double steps = std::ldexp(1.0, cfg.subtexel_bits);
  const double scaled = f * steps;
  const double q = cfg.subtexel_rounding == SubtexelRounding::nearest ? std::floor(scaled + 0.5)
                                                                       : std::floor(scaled);
  return q / steps;
}

AxisSample locate_axis(double coord, int extent) {
  const double texel = coord * extent - 0.5;
  const double base = std::floor(texel);
  AxisSample a;
  a.exact_fraction = texel - base;
  a.fraction = a.exact_fraction;
  const int i0 = static_cast<int>(base);
  a.lo = std::clamp(i0, 0, extent - 1);
  a.hi = std::clamp(i0 + 1, 0, extent - 1);
  return a;
}

Vec blend_bilinear(const TexelGrid& grid, int z, const AxisSample& x, const AxisSample& y) {
  const Vec row0 = lerp(grid.at(x.lo, y.lo, z), grid.at(x.hi, y.lo, z), x.fraction);
  const Vec row1 = lerp(grid.at(x.lo, y.hi, z), grid.at(x.hi, y.hi, z), x.fraction);
  return lerp(row0, row1, y.fraction);
}

Vec blend_trilinear(const TexelGrid& grid, const AxisSample& x, const AxisSample& y,
                    const AxisSample& z) {
  return lerp(blend_bilinear(grid, z.lo, x, y), blend_bilinear(grid, z.hi, x, y), z.fraction);
}

namespace {

void require_finite(double c) {
  if (!std::isfinite(c)) throw Error(ErrorKind::domain, "non-finite texture coordinate");
}

AxisSample quantized_axis(double coord, int extent, const SamplerConfig& cfg) {
  AxisSample a = locate_axis(coord, extent);
  a.fraction = quantize_fraction(a.exact_fraction, cfg);
  return a;
}

void record_axis(SampleTrace& trace, int axis, const AxisSample& a) {
  trace.weights[static_cast<std::size_t>(axis)] = {1.0 - a.fraction, a.fraction};
}

}  // namespace

std::pair<Vec, SampleTrace> sample_bilinear(const TexelGrid& grid, double u, double v,
                                            const SamplerConfig& cfg) {
  if (!grid.is_2d()) throw Error(ErrorKind::invalid_argument, "bilinear sampling needs a 2D grid");
  return sample_bilinear_slice(grid, 0, u, v, cfg);
}

std::pair<Vec, SampleTrace> sample_bilinear_slice(const TexelGrid& grid, int z, double u, double v,
                                                  const SamplerConfig& cfg) {
  if (z < 0 || z >= grid.depth()) throw Error(ErrorKind::invalid_argument, "slice index out of range");
  require_finite(u);
  require_finite(v);
  cfg.validate();

  const AxisSample x = quantized_axis(u, grid.width(), cfg);
  const AxisSample y = quantized_axis(v, grid.height(), cfg);

  SampleTrace trace;
  trace.axes = 2;
  trace.texel_count = 4;
  trace.texel_indices[0] = {x.lo, y.lo, z};
  trace.texel_indices[1] = {x.hi, y.lo, z};
  trace.texel_indices[2] = {x.lo, y.hi, z};
  trace.texel_indices[3] = {x.hi, y.hi, z};
  record_axis(trace, 0, x);
  record_axis(trace, 1, y);
  trace.raw_value = blend_bilinear(grid, z, x, y);
  return {trace.raw_value, trace};
}

std::pair<Vec, SampleTrace> sample_trilinear(const TexelGrid& grid, double u, double v, double w,
                                             const SamplerConfig& cfg) {
  if (grid.depth() < 2) throw Error(ErrorKind::invalid_argument, "trilinear sampling needs a 3D grid");
  require_finite(u);
  require_finite(v);
  require_finite(w);
  cfg.validate();

  const AxisSample x = quantized_axis(u, grid.width(), cfg);
  const AxisSample y = quantized_axis(v, grid.height(), cfg);
  const AxisSample z = quantized_axis(w, grid.depth(), cfg);

  SampleTrace trace;
  trace.axes = 3;
  trace.texel_count = 8;
  int k = 0;
  for (int zi : {z.lo, z.hi}) {
    for (int yi : {y.lo, y.hi}) {
      for (int xi : {x.lo, x.hi}) trace.texel_indices[static_cast<std::size_t>(k++)] = {xi, yi, zi};
    }
  }
  record_axis(trace, 0, x);
  record_axis(trace, 1, y);
  record_axis(trace, 2, z);
  trace.raw_value = blend_trilinear(grid, x, y, z);
  return {trace.raw_value, trace};
}

}  // namespace texcurve

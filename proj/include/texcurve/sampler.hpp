#pragma once

#include <array>
#include <utility>

#include "texcurve/core.hpp"

// Software model of fixed-function linear texture filtering. Coordinates are
// normalized; texel centers sit at (i + 0.5) / extent.

namespace texcurve {

/// Round-half-away-from-zero for unorm after clamping to [0,1]; float32 rounds to
/// the nearest binary32 value.
double quantize_texel(double v, TexelFormat format);

/// Fixed-point quantization of a fractional texel position.
double quantize_fraction(double f, const SamplerConfig& cfg);

/// Neighbor texels and blend fraction along one axis.
struct AxisSample {
  int lo = 0;
  int hi = 0;
  double exact_fraction = 0.0;
  double fraction = 0.0;  ///< weight of `hi`; `lo` receives 1 - fraction
};

/// Converts a normalized coordinate to texel space (coord * extent - 0.5) and
/// clamps both neighbors to the edge. `fraction` is left unquantized.
AxisSample locate_axis(double coord, int extent);

/// Blends the 4 texels of slice z in full precision using the fractions stored in
/// the axis samples.
Vec blend_bilinear(const TexelGrid& grid, int z, const AxisSample& x, const AxisSample& y);
/// lerp(blend_bilinear(z.lo), blend_bilinear(z.hi), z.fraction)
Vec blend_trilinear(const TexelGrid& grid, const AxisSample& x, const AxisSample& y,
                    const AxisSample& z);

struct SampleTrace {
  std::array<std::array<int, 3>, 8> texel_indices{};
  int texel_count = 0;
  int axes = 0;
  /// Per axis: {1 - f, f} with f the quantized fraction.
  std::array<std::array<double, 2>, 3> weights{};
  Vec raw_value;

  double fraction(int axis) const { return weights.at(static_cast<std::size_t>(axis))[1]; }
};

std::pair<Vec, SampleTrace> sample_bilinear(const TexelGrid& grid, double u, double v,
                                            const SamplerConfig& cfg);
/// Bilinear read of one depth slice of a 2D or 3D grid.
std::pair<Vec, SampleTrace> sample_bilinear_slice(const TexelGrid& grid, int z, double u, double v,
                                                  const SamplerConfig& cfg);
std::pair<Vec, SampleTrace> sample_trilinear(const TexelGrid& grid, double u, double v, double w,
                                             const SamplerConfig& cfg);

}  // namespace texcurve

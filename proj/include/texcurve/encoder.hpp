#pragma once

#include <optional>
#include <span>
#include <vector>

#include "texcurve/core.hpp"
#include "texcurve/reference.hpp"

namespace texcurve {

struct EncodeOptions {
  TexelFormat format = TexelFormat::float32;
  /// Fit an affine ValueTransform so every texel lands in [0,1]. Without it,
  /// out-of-range unorm texels are an error.
  bool rescale = false;
};

/// Per-channel affine map taking [min, max] of `values` into [0,1]; identity when
/// every value is already inside [0,1]. A flat channel gets scale 1, offset -min.
ValueTransform fit_range(std::span<const Vec> values);

/// rows [A,B] / [B,C]
EncodedCurve encode_dc_quadratic(const ControlPolygon& poly, const EncodeOptions& opts = {});
/// z=0: [A,B;B,C], z=1: [B,C;C,D]
EncodedCurve encode_dc_cubic(const ControlPolygon& poly, const EncodeOptions& opts = {});

enum class ZigzagSeed {
  first_middle,        ///< U_0 = P1 of segment 0
  minimize_excursion,  ///< per channel, the seed minimizing the worst texel outside [0,1]
};

struct ZigzagOptions {
  std::optional<Vec> seed;  ///< explicit U_0; overrides `seed_mode`
  ZigzagSeed seed_mode = ZigzagSeed::first_middle;
};

/// Packs N C0-joined quadratics into an (N+1) x 2 grid. Row 0 is T, row 1 is U.
/// Segment k with points (P0, P1, P2) satisfies
///   even k: T_k = P0, U_{k+1} = P2, T_{k+1} + U_k = 2 P1
///   odd k:  U_k = P0, T_{k+1} = P2, U_{k+1} + T_k = 2 P1
EncodedCurve encode_dc_zigzag(std::span<const ControlPolygon> segments,
                              const EncodeOptions& opts = {}, const ZigzagOptions& zopts = {});

/// Full-precision (pre-quantization) zig-zag rows T and U.
struct ZigzagRows {
  std::vector<Vec> top;
  std::vector<Vec> bottom;
};
ZigzagRows solve_zigzag(std::span<const ControlPolygon> segments, const ZigzagOptions& zopts = {});

/// Degree 2..3 into a 2x2 grid, degree 4..5 into 2x2x2, read at (t, st[, st]).
EncodedCurve encode_seiler(const ControlPolygon& poly, const EncodeOptions& opts = {});

EncodedCurve encode_bilinear_patch(const ControlNet& corners, const EncodeOptions& opts = {});

/// A 4x4 net of scalars; channel c holds the de Casteljau cubic encoding of row c.
EncodedCurve encode_bicubic_rgba(const ControlNet& net, const EncodeOptions& opts = {});

/// Homogeneous points (w_i b_i, w_i) in the Seiler layout; the weight is the last
/// channel. Degree 2 or 3.
EncodedCurve encode_rational(const ControlPolygon& points, std::span<const double> weights,
                             const EncodeOptions& opts = {});

}  // namespace texcurve

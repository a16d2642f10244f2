#pragma once

#include <span>
#include <string_view>

#include "texcurve/core.hpp"

namespace texcurve {

enum class Mode { dc, dc_hybrid, seiler, zigzag, patch, bicubic, rational };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view s);
bool is_surface_mode(Mode m);
/// The evaluation mode a layout is read with by default.
Mode default_mode(Layout l);
/// Throws ErrorKind::layout_mismatch if `mode` cannot read `curve`.
void require_mode(const EncodedCurve& curve, Mode mode);
/// Upper end of the curve parameter domain: segment_count for zig-zag, else 1.
double domain_end(const EncodedCurve& curve);

/// Quadratic: one bilinear read at (r, r); cubic: one trilinear read at (r, r, r),
/// with r = remap_unit_to_texel_span(t, 2).
Vec eval_dc(const EncodedCurve& curve, double t, const SamplerConfig& cfg);
/// global_t in [0, segment_count]; integer values read the left segment at t=1
/// except the last join, which clamps into the final segment.
Vec eval_dc_zigzag(const EncodedCurve& curve, double global_t, const SamplerConfig& cfg);
/// Reads at (t, st) or (t, st, st); the texel-span remap is applied after st is formed.
Vec eval_seiler_tex(const EncodedCurve& curve, double t, const SamplerConfig& cfg);
/// Two bilinear reads of the cubic slices, then the last lerp at the exact t.
Vec eval_dc_cubic_hybrid(const EncodedCurve& curve, double t, const SamplerConfig& cfg);
Vec eval_bilinear_patch(const EncodedCurve& curve, double u, double v, const SamplerConfig& cfg);
/// One trilinear read at (u, u, u) gives the isoline control polygon in the four
/// channels; the v direction is evaluated in full precision.
Vec eval_bicubic_rgba(const EncodedCurve& curve, double u, double v, const SamplerConfig& cfg);
/// Homogeneous lookup, then point / weight in full precision.
Vec eval_rational_tex(const EncodedCurve& curve, double t, const SamplerConfig& cfg);

inline constexpr double kMinDecodedWeight = 1e-9;

/// Dispatches a curve mode.
Vec evaluate(const EncodedCurve& curve, Mode mode, double t, const SamplerConfig& cfg);
/// Dispatches a surface mode.
Vec evaluate_surface(const EncodedCurve& curve, Mode mode, double u, double v,
                     const SamplerConfig& cfg);

/// out[i] = evaluate(curve, mode, ts[i], cfg), parallel over samples.
void evaluate_batch(const EncodedCurve& curve, Mode mode, std::span<const double> ts,
                    const SamplerConfig& cfg, std::span<Vec> out);
/// Single-threaded version of evaluate_batch.
void evaluate_batch_serial(const EncodedCurve& curve, Mode mode, std::span<const double> ts,
                           const SamplerConfig& cfg, std::span<Vec> out);

}  // namespace texcurve

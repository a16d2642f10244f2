#include "texcurve/texture_eval.hpp"

#include <array>
#include <exception>

#include "texcurve/sampler.hpp"
#include "texture_paths.hpp"

namespace texcurve {

namespace {

struct EmulatedReads {
  const SamplerConfig& cfg;

  Vec bilinear(const TexelGrid& g, int z, double u, double v) const {
    return sample_bilinear_slice(g, z, u, v, cfg).first;
  }
  Vec trilinear(const TexelGrid& g, double u, double v, double w) const {
    return sample_trilinear(g, u, v, w, cfg).first;
  }
};

constexpr std::array<std::string_view, 7> kModeNames = {"dc",    "dc-hybrid", "seiler",  "zigzag",
                                                        "patch", "bicubic",   "rational"};

}  // namespace

std::string_view to_string(Mode m) { return kModeNames.at(static_cast<std::size_t>(m)); }

Mode parse_mode(std::string_view s) {
  for (std::size_t i = 0; i < kModeNames.size(); ++i) {
    if (kModeNames[i] == s) return static_cast<Mode>(i);
  }
  throw Error(ErrorKind::parse, "unknown mode '" + std::string(s) + "'");
}

bool is_surface_mode(Mode m) { return m == Mode::patch || m == Mode::bicubic; }

Mode default_mode(Layout l) {
  switch (l) {
    case Layout::dc_quad_2x2:
    case Layout::dc_cubic_2x2x2: return Mode::dc;
    case Layout::dc_zigzag: return Mode::zigzag;
    case Layout::seiler_2d:
    case Layout::seiler_3d: return Mode::seiler;
    case Layout::bilinear_patch: return Mode::patch;
    case Layout::bicubic_rgba: return Mode::bicubic;
    case Layout::rational_homogeneous: return Mode::rational;
  }
  return Mode::dc;
}

void require_mode(const EncodedCurve& curve, Mode mode) {
  bool ok = default_mode(curve.layout) == mode;
  if (mode == Mode::dc_hybrid) ok = curve.layout == Layout::dc_cubic_2x2x2;
  detail::require_layout(curve, ok, to_string(mode));
}

double domain_end(const EncodedCurve& curve) {
  return curve.layout == Layout::dc_zigzag ? static_cast<double>(curve.segment_count) : 1.0;
}

Vec eval_dc(const EncodedCurve& curve, double t, const SamplerConfig& cfg) {
  EmulatedReads reads{cfg};
  return detail::dc_path(curve, t, reads);
}

Vec eval_dc_zigzag(const EncodedCurve& curve, double global_t, const SamplerConfig& cfg) {
  EmulatedReads reads{cfg};
  return detail::zigzag_path(curve, global_t, reads);
}

Vec eval_seiler_tex(const EncodedCurve& curve, double t, const SamplerConfig& cfg) {
  EmulatedReads reads{cfg};
  return detail::seiler_path(curve, t, reads);
}

Vec eval_dc_cubic_hybrid(const EncodedCurve& curve, double t, const SamplerConfig& cfg) {
  EmulatedReads reads{cfg};
  return detail::dc_hybrid_path(curve, t, reads);
}

Vec eval_bilinear_patch(const EncodedCurve& curve, double u, double v, const SamplerConfig& cfg) {
  EmulatedReads reads{cfg};
  return detail::patch_path(curve, u, v, reads);
}

Vec eval_bicubic_rgba(const EncodedCurve& curve, double u, double v, const SamplerConfig& cfg) {
  EmulatedReads reads{cfg};
  return detail::bicubic_path(curve, u, v, reads);
}

Vec eval_rational_tex(const EncodedCurve& curve, double t, const SamplerConfig& cfg) {
  EmulatedReads reads{cfg};
  return detail::rational_path(curve, t, reads);
}

Vec evaluate(const EncodedCurve& curve, Mode mode, double t, const SamplerConfig& cfg) {
  EmulatedReads reads{cfg};
  return detail::curve_path(curve, mode, t, reads);
}

Vec evaluate_surface(const EncodedCurve& curve, Mode mode, double u, double v,
                     const SamplerConfig& cfg) {
  EmulatedReads reads{cfg};
  return detail::surface_path(curve, mode, u, v, reads);
}

void evaluate_batch_serial(const EncodedCurve& curve, Mode mode, std::span<const double> ts,
                           const SamplerConfig& cfg, std::span<Vec> out) {
  if (out.size() != ts.size()) throw Error(ErrorKind::invalid_argument, "output span size mismatch");
  for (std::size_t i = 0; i < ts.size(); ++i) out[i] = evaluate(curve, mode, ts[i], cfg);
}

void evaluate_batch(const EncodedCurve& curve, Mode mode, std::span<const double> ts,
                    const SamplerConfig& cfg, std::span<Vec> out) {
  if (out.size() != ts.size()) throw Error(ErrorKind::invalid_argument, "output span size mismatch");
  require_mode(curve, mode);
  cfg.validate();
  for (double t : ts) {
    if (!(t >= 0.0 && t <= domain_end(curve))) {
      throw Error(ErrorKind::domain, "batch parameter " + std::to_string(t) + " outside the domain");
    }
  }
  const auto n = static_cast<std::ptrdiff_t>(ts.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = evaluate(curve, mode, ts[k], cfg);
    } catch (...) {
#pragma omp critical(texcurve_batch_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace texcurve

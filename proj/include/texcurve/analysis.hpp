#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "texcurve/core.hpp"
#include "texcurve/reference.hpp"
#include "texcurve/texture_eval.hpp"

namespace texcurve {

/// Ground-truth evaluator a sweep compares against. Curves use `curve`
/// (parameter over the encoded curve's domain), surfaces use `surface`.
struct Reference {
  std::string name;
  std::function<Vec(double)> curve;
  std::function<Vec(double, double)> surface;
};

Reference bernstein_reference(ControlPolygon poly);
Reference decasteljau_reference(ControlPolygon poly);
Reference seiler_reference(ControlPolygon poly);
/// Global parameter in [0, N]; segment k covers [k, k+1].
Reference piecewise_reference(std::vector<ControlPolygon> segments);
Reference rational_reference(ControlPolygon points, std::vector<double> weights);
Reference surface_reference(ControlNet net);

struct ErrorRecord {
  double t = 0.0;
  double v = 0.0;  ///< second surface parameter; 0 for curves
  Vec reference;
  Vec test;
  Vec absdev;
};

struct ErrorSummary {
  Vec max;
  Vec mean;
  Vec rms;

  double max_abs() const;
};

ErrorSummary summarize(std::span<const ErrorRecord> records);

struct ErrorReport {
  std::string curve_id;
  std::string reference_name;
  Mode mode = Mode::dc;
  SamplerConfig cfg;
  bool surface = false;
  std::vector<ErrorRecord> records;
  ErrorSummary summary;

  std::size_t sample_count() const { return records.size(); }
  double max_error() const { return summary.max_abs(); }
};

inline constexpr int kDefaultSweepSamples = 1024;

/// Uniform lattice over the curve domain (samples x samples for surface modes),
/// evaluated in parallel; the report does not depend on thread count.
ErrorReport sweep(const EncodedCurve& curve, const Reference& reference, Mode mode,
                  const SamplerConfig& cfg, int samples = kDefaultSweepSamples,
                  std::string curve_id = {});
/// Single-threaded version of sweep.
ErrorReport sweep_serial(const EncodedCurve& curve, const Reference& reference, Mode mode,
                         const SamplerConfig& cfg, int samples = kDefaultSweepSamples,
                         std::string curve_id = {});

/// Header `t,ref_0..,test_0..,absdev_0..` (`u,v,...` for surfaces), one row per
/// record, then `#max`, `#mean` and `#rms` rows over the absdev channels.
void write_csv(const ErrorReport& report, std::ostream& out);

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  std::array<std::uint8_t, 3> pixel(int x, int y) const;
  void set(int x, int y, std::array<std::uint8_t, 3> color);
};

inline constexpr std::array<std::uint8_t, 3> kBackground{0, 0, 0};
inline constexpr std::array<std::uint8_t, 3> kReferenceColor{255, 255, 255};
inline constexpr std::array<std::uint8_t, 3> kBelowColor{255, 0, 0};
inline constexpr std::array<std::uint8_t, 3> kAboveColor{0, 255, 0};

/// Plots the reference in white and each test sample red where it is below the
/// reference and green where it is above. 1-channel curves plot value over t;
/// 2-channel curves plot the point and compare channel 1. `gain` scales the
/// plotted deviation only.
Image render_deviation_image(const ErrorReport& report, int width, int height, double gain = 1.0);
Image render_deviation_image(const EncodedCurve& curve, const Reference& reference, Mode mode,
                             const SamplerConfig& cfg, int width, int height, double gain = 1.0);
/// Binary portable pixmap (P6).
void write_ppm(const Image& image, std::ostream& out);

struct ErrorBound {
  /// Largest change any combination of adjacent representable subtexel
  /// fractions can cause relative to reading at the exact fractions.
  double coordinate = 0.0;
  /// Texel-format quantization carried through to decoded values.
  double texel_allowance = 0.0;

  double total() const { return coordinate + texel_allowance; }
};

/// Worst case over the same lattice `sweep` uses with `samples`.
ErrorBound error_bound_estimate(const EncodedCurve& curve, Mode mode, const SamplerConfig& cfg,
                                int samples = kDefaultSweepSamples);

}  // namespace texcurve

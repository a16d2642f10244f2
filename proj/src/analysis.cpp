#include "texcurve/analysis.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <exception>
#include <limits>

#include "texcurve/number_format.hpp"
#include "texcurve/sampler.hpp"
#include "texture_paths.hpp"

namespace texcurve {

Reference bernstein_reference(ControlPolygon poly) {
  return {"bernstein", [p = std::move(poly)](double t) { return eval_bernstein(p, t); }, {}};
}

Reference decasteljau_reference(ControlPolygon poly) {
  return {"decasteljau", [p = std::move(poly)](double t) { return eval_decasteljau(p, t); }, {}};
}

Reference seiler_reference(ControlPolygon poly) {
  SeilerTerms terms = seiler_terms(poly);
  return {"seiler",
          [p = std::move(poly), terms = std::move(terms)](double t) { return eval_seiler(p, terms, t); },
          {}};
}

Reference piecewise_reference(std::vector<ControlPolygon> segments) {
  if (segments.empty()) throw Error(ErrorKind::invalid_argument, "no segments");
  return {"piecewise-bernstein",
          [segs = std::move(segments)](double global_t) {
            const int n = static_cast<int>(segs.size());
            if (!(global_t >= 0.0 && global_t <= n)) {
              throw Error(ErrorKind::domain, "piecewise parameter outside [0, N]");
            }
            const int k = std::min(static_cast<int>(std::floor(global_t)), n - 1);
            return eval_bernstein(segs[static_cast<std::size_t>(k)], global_t - k);
          },
          {}};
}

Reference rational_reference(ControlPolygon points, std::vector<double> weights) {
  return {"rational",
          [p = std::move(points), w = std::move(weights)](double t) { return eval_rational(p, w, t); },
          {}};
}

Reference surface_reference(ControlNet net) {
  return {"tensor-bernstein", {},
          [n = std::move(net)](double u, double v) { return eval_tensor_surface(n, u, v); }};
}

double ErrorSummary::max_abs() const { return texcurve::max_abs(max); }

ErrorSummary summarize(std::span<const ErrorRecord> records) {
  if (records.empty()) throw Error(ErrorKind::invalid_argument, "no records to summarize");
  const int c = records.front().absdev.channels();
  ErrorSummary s{Vec(c, 0.0), Vec(c, 0.0), Vec(c, 0.0)};
  for (const ErrorRecord& r : records) {
    for (int k = 0; k < c; ++k) {
      s.max[k] = std::max(s.max[k], r.absdev[k]);
      s.mean[k] += r.absdev[k];
      s.rms[k] += r.absdev[k] * r.absdev[k];
    }
  }
  const auto n = static_cast<double>(records.size());
  for (int k = 0; k < c; ++k) {
    s.mean[k] /= n;
    s.rms[k] = std::sqrt(s.rms[k] / n);
  }
  return s;
}

namespace {

double lattice(int i, int samples, double end) {
  return static_cast<double>(i) / static_cast<double>(samples - 1) * end;
}

ErrorRecord make_record(double t, double v, Vec reference, Vec test) {
  require_same_channels(reference, test);
  Vec dev = test - reference;
  for (int k = 0; k < dev.channels(); ++k) dev[k] = std::abs(dev[k]);
  return {t, v, std::move(reference), std::move(test), std::move(dev)};
}

struct SweepPlan {
  bool surface;
  int samples;
  double end;
  std::size_t count;
};

SweepPlan plan_sweep(const EncodedCurve& curve, const Reference& reference, Mode mode, int samples) {
  if (samples < 2) throw Error(ErrorKind::invalid_argument, "a sweep needs at least 2 samples");
  require_mode(curve, mode);
  const bool surface = is_surface_mode(mode);
  if (surface ? !reference.surface : !reference.curve) {
    throw Error(ErrorKind::layout_mismatch, "reference '" + reference.name + "' cannot be compared with mode '" +
                                                std::string(to_string(mode)) + "'");
  }
  const auto n = static_cast<std::size_t>(samples);
  return {surface, samples, domain_end(curve), surface ? n * n : n};
}

ErrorRecord sweep_one(const EncodedCurve& curve, const Reference& reference, Mode mode,
                      const SamplerConfig& cfg, const SweepPlan& plan, std::size_t i) {
  if (plan.surface) {
    const int iu = static_cast<int>(i % static_cast<std::size_t>(plan.samples));
    const int iv = static_cast<int>(i / static_cast<std::size_t>(plan.samples));
    const double u = lattice(iu, plan.samples, 1.0);
    const double v = lattice(iv, plan.samples, 1.0);
    return make_record(u, v, reference.surface(u, v), evaluate_surface(curve, mode, u, v, cfg));
  }
  const double t = lattice(static_cast<int>(i), plan.samples, plan.end);
  return make_record(t, 0.0, reference.curve(t), evaluate(curve, mode, t, cfg));
}

ErrorReport assemble(const EncodedCurve&, const Reference& reference, Mode mode, const SamplerConfig& cfg,
                     const SweepPlan& plan, std::vector<ErrorRecord> records, std::string curve_id) {
  ErrorReport report;
  report.curve_id = std::move(curve_id);
  report.reference_name = reference.name;
  report.mode = mode;
  report.cfg = cfg;
  report.surface = plan.surface;
  report.records = std::move(records);
  report.summary = summarize(report.records);
  return report;
}

}  // namespace

ErrorReport sweep_serial(const EncodedCurve& curve, const Reference& reference, Mode mode,
                         const SamplerConfig& cfg, int samples, std::string curve_id) {
  const SweepPlan plan = plan_sweep(curve, reference, mode, samples);
  std::vector<ErrorRecord> records;
  records.reserve(plan.count);
  for (std::size_t i = 0; i < plan.count; ++i) records.push_back(sweep_one(curve, reference, mode, cfg, plan, i));
  return assemble(curve, reference, mode, cfg, plan, std::move(records), std::move(curve_id));
}

ErrorReport sweep(const EncodedCurve& curve, const Reference& reference, Mode mode,
                  const SamplerConfig& cfg, int samples, std::string curve_id) {
  const SweepPlan plan = plan_sweep(curve, reference, mode, samples);
  cfg.validate();
  std::vector<ErrorRecord> records(plan.count);
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(plan.count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      records[static_cast<std::size_t>(i)] =
          sweep_one(curve, reference, mode, cfg, plan, static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(texcurve_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return assemble(curve, reference, mode, cfg, plan, std::move(records), std::move(curve_id));
}

void write_csv(const ErrorReport& report, std::ostream& out) {
  if (report.records.empty()) throw Error(ErrorKind::invalid_argument, "empty report");
  const int c = report.records.front().reference.channels();
  out << (report.surface ? "u,v" : "t");
  for (const char* prefix : {"ref_", "test_", "absdev_"}) {
    for (int k = 0; k < c; ++k) out << ',' << prefix << k;
  }
  out << '\n';
  for (const ErrorRecord& r : report.records) {
    out << format_double(r.t);
    if (report.surface) out << ',' << format_double(r.v);
    for (const Vec* v : {&r.reference, &r.test, &r.absdev}) {
      for (double x : v->values()) out << ',' << format_double(x);
    }
    out << '\n';
  }
  const std::pair<const char*, const Vec*> rows[] = {
      {"#max", &report.summary.max}, {"#mean", &report.summary.mean}, {"#rms", &report.summary.rms}};
  for (const auto& [label, v] : rows) {
    out << label;
    for (double x : v->values()) out << ',' << format_double(x);
    out << '\n';
  }
}

std::array<std::uint8_t, 3> Image::pixel(int x, int y) const {
  const auto o = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) * 3;
  return {rgb[o], rgb[o + 1], rgb[o + 2]};
}

void Image::set(int x, int y, std::array<std::uint8_t, 3> color) {
  if (x < 0 || y < 0 || x >= width || y >= height) return;
  const auto o = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) * 3;
  std::copy(color.begin(), color.end(), rgb.begin() + static_cast<std::ptrdiff_t>(o));
}

Image render_deviation_image(const ErrorReport& report, int width, int height, double gain) {
  if (width < 2 || height < 2) throw Error(ErrorKind::invalid_argument, "image must be at least 2x2");
  if (report.surface || report.records.empty()) {
    throw Error(ErrorKind::invalid_argument, "deviation images need a curve sweep");
  }
  const int channels = report.records.front().reference.channels();
  if (channels != 1 && channels != 2) {
    throw Error(ErrorKind::invalid_argument, "deviation images support 1-channel curves and 2D points, got " +
                                                 std::to_string(channels) + " channels");
  }
  const int value_channel = channels - 1;

  struct Plot {
    double x, y;
  };
  auto test_point = [&](const ErrorRecord& r) {
    Vec shown = r.reference + gain * (r.test - r.reference);
    return channels == 1 ? Plot{r.t, shown[0]} : Plot{shown[0], shown[1]};
  };
  auto ref_point = [&](const ErrorRecord& r) {
    return channels == 1 ? Plot{r.t, r.reference[0]} : Plot{r.reference[0], r.reference[1]};
  };

  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  for (const ErrorRecord& r : report.records) {
    for (const Plot& p : {ref_point(r), test_point(r)}) {
      xlo = std::min(xlo, p.x);
      xhi = std::max(xhi, p.x);
      ylo = std::min(ylo, p.y);
      yhi = std::max(yhi, p.y);
    }
  }
  auto pad = [](double& lo, double& hi) {
    const double span = hi - lo;
    const double margin = span > 0.0 ? 0.05 * span : 0.5;
    lo -= margin;
    hi += margin;
  };
  pad(xlo, xhi);
  pad(ylo, yhi);

  Image img{width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height * 3, 0)};
  auto to_pixel = [&](const Plot& p) {
    const int px = static_cast<int>(std::lround((p.x - xlo) / (xhi - xlo) * (width - 1)));
    const int py = height - 1 - static_cast<int>(std::lround((p.y - ylo) / (yhi - ylo) * (height - 1)));
    return std::pair{px, py};
  };
  for (const ErrorRecord& r : report.records) {
    const auto [x, y] = to_pixel(ref_point(r));
    img.set(x, y, kReferenceColor);
  }
  for (const ErrorRecord& r : report.records) {
    const double diff = r.test[value_channel] - r.reference[value_channel];
    if (diff == 0.0) continue;
    const auto [x, y] = to_pixel(test_point(r));
    img.set(x, y, diff < 0.0 ? kBelowColor : kAboveColor);
  }
  return img;
}

Image render_deviation_image(const EncodedCurve& curve, const Reference& reference, Mode mode,
                             const SamplerConfig& cfg, int width, int height, double gain) {
  return render_deviation_image(sweep(curve, reference, mode, cfg, std::max(2, 4 * width)), width,
                                height, gain);
}

void write_ppm(const Image& image, std::ostream& out) {
  out << "P6\n" << image.width << " " << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.rgb.data()), static_cast<std::streamsize>(image.rgb.size()));
}

namespace {

// Reads at either the exact fractions or a chosen neighbor on the subtexel
// lattice for every axis, in call order.
struct NeighborReads {
  const SamplerConfig& cfg;
  unsigned mask = 0;
  bool exact = false;
  int slots = 0;

  AxisSample axis(double coord, int extent) {
    AxisSample a = locate_axis(coord, extent);
    if (!exact && cfg.subtexel_bits > 0) {
      const double steps = std::ldexp(1.0, cfg.subtexel_bits);
      const double cell = std::floor(a.exact_fraction * steps);
      const bool upper = cfg.subtexel_rounding == SubtexelRounding::nearest && ((mask >> slots) & 1u) &&
                         cell != a.exact_fraction * steps;
      a.fraction = (upper ? cell + 1.0 : cell) / steps;
    }
    ++slots;
    return a;
  }
  Vec bilinear(const TexelGrid& g, int z, double u, double v) {
    const AxisSample x = axis(u, g.width());
    const AxisSample y = axis(v, g.height());
    return blend_bilinear(g, z, x, y);
  }
  Vec trilinear(const TexelGrid& g, double u, double v, double w) {
    const AxisSample x = axis(u, g.width());
    const AxisSample y = axis(v, g.height());
    const AxisSample z = axis(w, g.depth());
    return blend_trilinear(g, x, y, z);
  }
};

Vec read_path(const EncodedCurve& curve, Mode mode, double t, double v, NeighborReads& reads) {
  return is_surface_mode(mode) ? detail::surface_path(curve, mode, t, v, reads)
                               : detail::curve_path(curve, mode, t, reads);
}

// Largest quantization error of one stored texel, per channel, in stored units.
Vec texel_step(const TexelGrid& g) {
  Vec step(g.channels(), 0.0);
  if (unorm_bits(g.format()) > 0) {
    const double levels = std::ldexp(1.0, unorm_bits(g.format())) - 1.0;
    for (int c = 0; c < g.channels(); ++c) step[c] = 0.5 / levels;
    return step;
  }
  const auto data = g.data();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const int c = static_cast<int>(i % static_cast<std::size_t>(g.channels()));
    step[c] = std::max(step[c], std::abs(data[i]) * std::ldexp(1.0, -24));
  }
  return step;
}

}  // namespace

ErrorBound error_bound_estimate(const EncodedCurve& curve, Mode mode, const SamplerConfig& cfg,
                                int samples) {
  if (samples < 2) throw Error(ErrorKind::invalid_argument, "a bound needs at least 2 samples");
  require_mode(curve, mode);
  cfg.validate();
  const bool surface = is_surface_mode(mode);
  const double end = domain_end(curve);
  const auto n = static_cast<std::ptrdiff_t>(surface ? samples * samples : samples);

  double coordinate = 0.0;
  double magnitude = 0.0;
  double min_weight = std::numeric_limits<double>::infinity();
  const bool rational = curve.layout == Layout::rational_homogeneous;
  std::exception_ptr failure;

#pragma omp parallel for schedule(static) reduction(max : coordinate, magnitude) reduction(min : min_weight)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      double t, v = 0.0;
      if (surface) {
        t = lattice(static_cast<int>(i % samples), samples, 1.0);
        v = lattice(static_cast<int>(i / samples), samples, 1.0);
      } else {
        t = lattice(static_cast<int>(i), samples, end);
      }
      NeighborReads exact_reads{cfg, 0, true};
      const Vec exact = read_path(curve, mode, t, v, exact_reads);
      magnitude = std::max(magnitude, max_abs(exact));
      if (rational) {
        // Decoded homogeneous weight at the exact coordinates.
        NeighborReads raw{cfg, 0, true};
        const Vec h = curve.transform.invert(detail::seiler_raw(curve, t, raw));
        min_weight = std::min(min_weight, h[h.channels() - 1]);
      }
      const unsigned combos = 1u << exact_reads.slots;
      for (unsigned mask = 0; mask < combos; ++mask) {
        NeighborReads reads{cfg, mask, false};
        coordinate = std::max(coordinate, max_abs(read_path(curve, mode, t, v, reads) - exact));
      }
    } catch (...) {
#pragma omp critical(texcurve_bound_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  const Vec step = texel_step(curve.grid);
  const int channels = step.channels();
  auto value_step = [&](int c) { return step[c] / std::abs(curve.transform.scale[c]); };

  double allowance = 0.0;
  if (rational) {
    const int wc = channels - 1;
    double point_step = 0.0;
    for (int c = 0; c < wc; ++c) point_step = std::max(point_step, value_step(c));
    const double weight_step = value_step(wc);
    const double floor_weight = std::max(min_weight - weight_step, kMinDecodedWeight);
    allowance = (point_step + magnitude * weight_step) / floor_weight;
  } else {
    for (int c = 0; c < channels; ++c) allowance = std::max(allowance, value_step(c));
  }
  // Rounding in the full-precision reference and blend arithmetic.
  allowance += 1e-12 * (1.0 + magnitude) * (curve.degree + 1);
  return {coordinate, allowance};
}

}  // namespace texcurve

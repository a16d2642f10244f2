#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "texcurve/analysis.hpp"
#include "texcurve/container.hpp"
#include "texcurve/curve_file.hpp"
#include "texcurve/encoder.hpp"
#include "texcurve/number_format.hpp"
#include "texcurve/reference.hpp"
#include "texcurve/texture_eval.hpp"

using namespace texcurve;

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::range: return 2;
    case ErrorKind::unsupported_degree: return 3;
    case ErrorKind::layout_mismatch: return 4;
    case ErrorKind::domain:
    case ErrorKind::division: return 5;
    default: return 1;
  }
}

struct SamplerFlags {
  int bits = 8;
  std::string rounding = "nearest";

  SamplerConfig config() const {
    SamplerConfig cfg;
    cfg.subtexel_bits = bits;
    if (rounding == "nearest") {
      cfg.subtexel_rounding = SubtexelRounding::nearest;
    } else if (rounding == "floor") {
      cfg.subtexel_rounding = SubtexelRounding::floor;
    } else {
      throw Error(ErrorKind::parse, "subtexel rounding is 'nearest' or 'floor', got '" + rounding + "'");
    }
    cfg.validate();
    return cfg;
  }
};

void add_sampler_flags(CLI::App* cmd, SamplerFlags& flags) {
  cmd->add_option("--bits", flags.bits, "Subtexel fraction bits; 0 is an ideal sampler")
      ->check(CLI::Range(0, 24));
  cmd->add_option("--subtexel-rounding", flags.rounding, "nearest or floor");
}

Mode pick_mode(const EncodedCurve& curve, const std::string& name) {
  return name.empty() ? default_mode(curve.layout) : parse_mode(name);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::io, "failed writing " + path);
}

std::vector<ControlPolygon> segments_of(const CurveDescription& desc) {
  if (desc.is_bspline()) {
    std::vector<ControlPolygon> out;
    for (const BezierSegment& s : boehm_to_bezier(desc.bspline())) out.push_back(s.poly);
    return out;
  }
  return desc.piecewise();
}

nlohmann::ordered_json metadata(const EncodedCurve& curve) {
  nlohmann::ordered_json j;
  j["format"] = std::string(to_string(curve.grid.format()));
  j["layout"] = std::string(to_string(curve.layout));
  j["degree"] = curve.degree;
  j["segment_count"] = curve.segment_count;
  j["size"] = {curve.grid.width(), curve.grid.height(), curve.grid.depth()};
  j["channels"] = curve.grid.channels();
  j["transform"] = {{"scale", curve.transform.scale.values()}, {"offset", curve.transform.offset.values()}};
  return j;
}

EncodedCurve encode_description(const CurveDescription& desc, const std::string& layout,
                                const EncodeOptions& opts, const ZigzagOptions& zopts) {
  if (layout == "dc") {
    const ControlPolygon poly = desc.polygon();
    if (poly.degree() == 2) return encode_dc_quadratic(poly, opts);
    if (poly.degree() == 3) return encode_dc_cubic(poly, opts);
    throw Error(ErrorKind::unsupported_degree,
                "de Casteljau layouts hold degree 2 or 3, got degree " + std::to_string(poly.degree()));
  }
  if (layout == "seiler") return encode_seiler(desc.polygon(), opts);
  if (layout == "zigzag") {
    const auto segs = segments_of(desc);
    return encode_dc_zigzag(segs, opts, zopts);
  }
  if (layout == "patch") return encode_bilinear_patch(desc.net(), opts);
  if (layout == "bicubic") return encode_bicubic_rgba(desc.net(), opts);
  if (layout == "rational") {
    if (!desc.is_rational()) throw Error(ErrorKind::parse, "rational layout needs a 'weights' line");
    return encode_rational(desc.polygon(), desc.weights, opts);
  }
  switch (parse_layout(layout)) {
    case Layout::dc_quad_2x2: return encode_dc_quadratic(desc.polygon(), opts);
    case Layout::dc_cubic_2x2x2: return encode_dc_cubic(desc.polygon(), opts);
    case Layout::dc_zigzag: return encode_description(desc, "zigzag", opts, zopts);
    case Layout::seiler_2d:
    case Layout::seiler_3d: return encode_seiler(desc.polygon(), opts);
    case Layout::bilinear_patch: return encode_bilinear_patch(desc.net(), opts);
    case Layout::bicubic_rgba: return encode_bicubic_rgba(desc.net(), opts);
    case Layout::rational_homogeneous: return encode_description(desc, "rational", opts, zopts);
  }
  throw Error(ErrorKind::parse, "unknown layout '" + layout + "'");
}

Reference pick_reference(const CurveDescription& desc, Mode mode, const std::string& name) {
  if (is_surface_mode(mode)) {
    if (!name.empty() && name != "surface") throw Error(ErrorKind::parse, "surface modes use the 'surface' reference");
    return surface_reference(desc.net());
  }
  if (mode == Mode::zigzag) {
    if (!name.empty() && name != "piecewise") throw Error(ErrorKind::parse, "zigzag uses the 'piecewise' reference");
    return piecewise_reference(segments_of(desc));
  }
  if (mode == Mode::rational) {
    if (!name.empty() && name != "rational") throw Error(ErrorKind::parse, "rational uses the 'rational' reference");
    return rational_reference(desc.polygon(), desc.weights);
  }
  if (name.empty() || name == "bernstein") return bernstein_reference(desc.polygon());
  if (name == "decasteljau") return decasteljau_reference(desc.polygon());
  if (name == "seiler") return seiler_reference(desc.polygon());
  throw Error(ErrorKind::parse, "unknown reference '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Encode polynomial curves into texel grids and measure texture-path accuracy"};
  app.require_subcommand(1);

  std::string in_path, out_path, curve_path, layout, format = "float32", mode_name, reference_name;
  std::string sidecar_path, seed_mode = "first-middle";
  std::vector<double> seed_texel, ts, us, vs;
  bool rescale = false, json = false;
  bool to_bernstein = false, to_power = false, boehm = false, elevate = false;
  int samples = kDefaultSweepSamples, width = 512, height = 256;
  double gain = 1.0;
  SamplerFlags sampler;

  auto* encode = app.add_subcommand("encode", "Encode a curve description into a CTEX1 texture");
  encode->add_option("--in", in_path, "Curve description file")->required();
  encode->add_option("--out", out_path, "Output CTEX1 file")->required();
  encode->add_option("--layout", layout,
                     "dc, seiler, zigzag, patch, bicubic, rational, or a full layout name")
      ->required();
  encode->add_option("--format", format, "unorm8 (u8), unorm16 (u16) or float32 (f32)");
  encode->add_flag("--rescale", rescale, "Fit a per-channel value transform into [0,1]");
  encode->add_option("--seed-texel", seed_texel, "Zig-zag free texel U_0, one value per channel");
  encode->add_option("--seed-mode", seed_mode, "Zig-zag seed when --seed-texel is absent: first-middle or min-excursion");
  encode->add_option("--sidecar", sidecar_path, "Also write the header as JSON");

  auto* eval = app.add_subcommand("eval", "Evaluate a texture through the emulated sampler");
  eval->add_option("--in", in_path, "CTEX1 file")->required();
  eval->add_option("--t", ts, "Curve parameters");
  eval->add_option("--u", us, "Surface u parameters");
  eval->add_option("--v", vs, "Surface v parameters (paired with --u)");
  eval->add_option("--mode", mode_name, "dc, dc-hybrid, seiler, zigzag, patch, bicubic or rational");
  add_sampler_flags(eval, sampler);

  auto add_compare_flags = [&](CLI::App* cmd) {
    cmd->add_option("--in", in_path, "CTEX1 file")->required();
    cmd->add_option("--curve", curve_path, "Curve description the texture was encoded from")->required();
    cmd->add_option("--mode", mode_name, "Texture evaluation mode");
    cmd->add_option("--reference", reference_name, "bernstein, decasteljau, seiler, piecewise, rational or surface");
    cmd->add_option("--samples", samples, "Samples per axis")->check(CLI::Range(2, 1 << 20));
    cmd->add_option("--out", out_path, "Output file (default stdout)");
    add_sampler_flags(cmd, sampler);
  };
  auto* sweep_cmd = app.add_subcommand("sweep", "CSV error report of texture path against a reference");
  add_compare_flags(sweep_cmd);

  auto* render = app.add_subcommand("render", "P6 deviation image of texture path against a reference");
  add_compare_flags(render);
  render->add_option("--width", width, "Image width")->check(CLI::Range(2, 16384));
  render->add_option("--height", height, "Image height")->check(CLI::Range(2, 16384));
  render->add_option("--gain", gain, "Deviation magnification");

  auto* convert = app.add_subcommand("convert", "Convert a curve description");
  convert->add_option("--in", in_path, "Curve description file")->required();
  convert->add_option("--out", out_path, "Output file (default stdout)");
  auto* conversions = convert->add_option_group("conversion");
  conversions->add_flag("--power-to-bernstein", to_bernstein, "Power coefficients to Bernstein points");
  conversions->add_flag("--bernstein-to-power", to_power, "Bernstein points to power coefficients");
  conversions->add_flag("--boehm", boehm, "B-spline to piecewise Bezier");
  conversions->add_flag("--elevate", elevate, "Raise the degree by one");
  conversions->require_option(1);

  auto* inspect = app.add_subcommand("inspect", "Dump a CTEX1 header and texels");
  inspect->add_option("--in", in_path, "CTEX1 file")->required();
  inspect->add_flag("--json", json, "Header as JSON, without texels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*encode) {
      EncodeOptions opts;
      opts.format = parse_texel_format(format);
      opts.rescale = rescale;
      ZigzagOptions zopts;
      if (!seed_texel.empty()) zopts.seed = Vec::from_span(seed_texel);
      if (seed_mode == "min-excursion") {
        zopts.seed_mode = ZigzagSeed::minimize_excursion;
      } else if (seed_mode != "first-middle") {
        throw Error(ErrorKind::parse, "seed mode is 'first-middle' or 'min-excursion'");
      }
      const EncodedCurve curve = encode_description(read_curve_file(in_path), layout, opts, zopts);
      write_container(out_path, curve);
      if (!sidecar_path.empty()) write_text(sidecar_path, metadata(curve).dump(2) + "\n");
      std::cout << describe(curve);
    } else if (*eval) {
      const EncodedCurve curve = read_container(in_path);
      const Mode mode = pick_mode(curve, mode_name);
      const SamplerConfig cfg = sampler.config();
      std::ostringstream out;
      if (is_surface_mode(mode)) {
        if (us.size() != vs.size() || us.empty()) {
          throw Error(ErrorKind::parse, "surface modes need matching --u and --v lists");
        }
        for (std::size_t i = 0; i < us.size(); ++i) {
          out << format_values(evaluate_surface(curve, mode, us[i], vs[i], cfg).values()) << "\n";
        }
      } else {
        if (ts.empty()) throw Error(ErrorKind::parse, "curve modes need at least one --t");
        std::vector<Vec> values(ts.size());
        evaluate_batch(curve, mode, ts, cfg, values);
        for (const Vec& v : values) out << format_values(v.values()) << "\n";
      }
      std::cout << out.str();
    } else if (*sweep_cmd || *render) {
      const EncodedCurve curve = read_container(in_path);
      const Mode mode = pick_mode(curve, mode_name);
      const Reference ref = pick_reference(read_curve_file(curve_path), mode, reference_name);
      const ErrorReport report = sweep(curve, ref, mode, sampler.config(), samples, in_path);
      std::ostringstream out;
      if (*sweep_cmd) {
        write_csv(report, out);
      } else {
        write_ppm(render_deviation_image(report, width, height, gain), out);
      }
      write_text(out_path, out.str());
    } else if (*convert) {
      const CurveDescription desc = read_curve_file(in_path);
      CurveDescription result;
      if (to_bernstein) {
        if (desc.basis != Basis::power) throw Error(ErrorKind::parse, "input is not marked 'basis power'");
        result = describe_polygon(desc.polygon());
      } else if (to_power) {
        if (desc.basis == Basis::power) throw Error(ErrorKind::parse, "input is already in power basis");
        result = describe_polygon(desc.polygon());
        result.points = bernstein_to_power(desc.polygon());
        result.basis = Basis::power;
      } else if (boehm) {
        result = describe_piecewise(boehm_to_bezier(desc.bspline()));
      } else {
        result = describe_polygon(elevate_degree(desc.polygon()));
      }
      write_text(out_path, format_curve(result));
    } else if (*inspect) {
      const EncodedCurve curve = read_container(in_path);
      std::cout << (json ? metadata(curve).dump(2) + "\n" : describe(curve));
    }
  } catch (const Error& e) {
    std::cerr << "texcurve: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "texcurve: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "texcurve/encoder.hpp"
#include "texcurve/sampler.hpp"
#include "texcurve/texture_eval.hpp"

using namespace texcurve;
using texcurve::testing::error_kind;
using texcurve::testing::Fixtures;

namespace {

ControlPolygon scalar(std::initializer_list<double> values) {
  std::vector<Vec> pts;
  for (double v : values) pts.push_back(Vec{v});
  return ControlPolygon(std::move(pts));
}

std::vector<double> channel0(const TexelGrid& g) {
  std::vector<double> out;
  for (std::size_t i = 0; i < g.data().size(); i += static_cast<std::size_t>(g.channels())) {
    out.push_back(g.data()[i]);
  }
  return out;
}

using Values = std::vector<double>;

}  // namespace

TEST_SUITE("encoder") {
  TEST_CASE("encode_dc_quadratic") {
    const EncodedCurve c = encode_dc_quadratic(scalar({0.0, 1.0, 0.0}));
    CHECK(c.layout == Layout::dc_quad_2x2);
    CHECK(channel0(c.grid) == Values{0, 1, 1, 0});
    CHECK(channel0(encode_dc_quadratic(scalar({0.3, 0.3, 0.3}), {TexelFormat::unorm8}).grid) ==
          Values(4, quantize_texel(0.3, TexelFormat::unorm8)));
    CHECK(channel0(encode_dc_quadratic(scalar({0.0, 0.5, 1.0}), {TexelFormat::unorm8}).grid) ==
          Values{0, 128.0 / 255.0, 128.0 / 255.0, 1});
    CHECK(error_kind([] { encode_dc_quadratic(scalar({0, 1, 0, 1})); }) == ErrorKind::unsupported_degree);
  }

  TEST_CASE("encode_dc_cubic") {
    const EncodedCurve c = encode_dc_cubic(scalar({0.0, 1.0, 1.0, 0.0}));
    CHECK(c.grid.depth() == 2);
    CHECK(channel0(c.grid) == Values{0, 1, 1, 1, 1, 1, 1, 0});
    CHECK(channel0(encode_dc_cubic(scalar({0.25, 0.25, 0.25, 0.25})).grid) == Values(8, 0.25));
    const EncodedCurve line = encode_dc_cubic(scalar({0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}));
    for (int i = 0; i <= 32; ++i) {
      CHECK(std::abs(eval_dc(line, i / 32.0, SamplerConfig::ideal())[0] - i / 32.0) <= 1e-7);
    }
  }

  TEST_CASE("zig-zag examples") {
    ZigzagOptions seeded;
    seeded.seed = Vec{1.0};
    const std::vector<ControlPolygon> one{scalar({0, 1, 0})};
    const ZigzagRows r1 = solve_zigzag(one, seeded);
    CHECK(r1.top == std::vector<Vec>{Vec{0.0}, Vec{1.0}});
    CHECK(r1.bottom == std::vector<Vec>{Vec{1.0}, Vec{0.0}});

    const std::vector<ControlPolygon> two{scalar({0, 1, 0}), scalar({0, 0.5, 0})};
    const EncodedCurve c = encode_dc_zigzag(two, {}, seeded);
    CHECK(c.grid.width() == 3);
    CHECK(c.grid.height() == 2);
    CHECK(channel0(c.grid) == Values{0, 1, 0, 1, 0, 0});

    const std::vector<ControlPolygon> flat{scalar({0.5, 0.5, 0.5}), scalar({0.5, 0.5, 0.5}), scalar({0.5, 0.5, 0.5})};
    CHECK(channel0(encode_dc_zigzag(flat).grid) == Values(8, 0.5));
  }

  TEST_CASE("zig-zag default seed is the first middle point") {
    const std::vector<ControlPolygon> segs{scalar({0, 0.8, 0.2}), scalar({0.2, 0.1, 0.6})};
    const ZigzagRows r = solve_zigzag(segs);
    CHECK(r.bottom[0] == Vec{0.8});
    CHECK(r.top[1] == Vec{0.8});
  }

  TEST_CASE("zig-zag averaging relation holds for every segment") {
    Fixtures fx(31);
    for (int n = 0; n < 50; ++n) {
      const auto chain = fx.chain(fx.integer(1, 10), 2);
      ZigzagOptions z;
      z.seed = fx.point(2, -1.0, 1.0);
      const ZigzagRows r = solve_zigzag(chain, z);
      for (std::size_t k = 0; k < chain.size(); ++k) {
        const bool even = k % 2 == 0;
        CHECK((even ? r.top[k] : r.bottom[k]) == chain[k][0]);
        CHECK((even ? r.bottom[k + 1] : r.top[k + 1]) == chain[k][2]);
        const Vec sum = even ? r.top[k + 1] + r.bottom[k] : r.bottom[k + 1] + r.top[k];
        CHECK(max_abs(sum - 2.0 * chain[k][1]) <= 1e-14);
      }
    }
  }

  TEST_CASE("zig-zag minimize-excursion seed") {
    const std::vector<ControlPolygon> segs{scalar({0.0, 1.0, 0.0}), scalar({0.0, 0.9, 0.0})};
    ZigzagOptions z;
    z.seed_mode = ZigzagSeed::minimize_excursion;
    const ZigzagRows r = solve_zigzag(segs, z);
    double worst = 0.0;
    for (const auto* row : {&r.top, &r.bottom}) {
      for (const Vec& v : *row) worst = std::max({worst, -v[0], v[0] - 1.0});
    }
    CHECK(worst <= 1e-15);
    CHECK_NOTHROW(encode_dc_zigzag(segs, {TexelFormat::unorm8}, z));
  }

  TEST_CASE("zig-zag rejects broken joins") {
    const std::vector<ControlPolygon> segs{scalar({0, 1, 0}), scalar({0.5, 1, 0})};
    CHECK(error_kind([&] { encode_dc_zigzag(segs); }) == ErrorKind::join);
    const std::vector<ControlPolygon> cubic{scalar({0, 1, 1, 0})};
    CHECK(error_kind([&] { encode_dc_zigzag(cubic); }) == ErrorKind::unsupported_degree);
  }

  TEST_CASE("encode_seiler") {
    const EncodedCurve c = encode_seiler(scalar({0.0, 1.0, 1.0, 0.0}));
    CHECK(c.layout == Layout::seiler_2d);
    CHECK(c.grid.texel_count() == 4);
    CHECK(channel0(c.grid) == Values{0, 0, 3, 3});
    const EncodedCurve line = encode_seiler(scalar({0.0, 0.25, 0.5, 0.75}), {});
    CHECK(channel0(line.grid) == Values{0, 0.75, 0, 0.75});
    CHECK(channel0(encode_seiler(scalar({0.4, 0.4, 0.4})).grid) == Values(4, static_cast<double>(0.4f)));
    CHECK(encode_seiler(scalar({0, 1, 2, 3, 4})).layout == Layout::seiler_3d);
    CHECK(encode_seiler(scalar({0, 1, 2, 3, 4, 5})).grid.texel_count() == 8);
    CHECK(error_kind([] { encode_seiler(scalar({0, 1, 2, 3, 4, 5, 6})); }) == ErrorKind::unsupported_degree);
  }

  TEST_CASE("out-of-range unorm texels need rescaling") {
    const ControlPolygon p = scalar({0.0, 1.0, 1.0, 0.0});
    CHECK(error_kind([&] { encode_seiler(p, {TexelFormat::unorm8}); }) == ErrorKind::range);
    const EncodedCurve c = encode_seiler(p, {TexelFormat::unorm8, true});
    CHECK(c.transform.scale == Vec{1.0 / 3.0});
    CHECK(c.transform.offset == Vec{0.0});
    CHECK(std::abs(eval_seiler_tex(c, 0.5, SamplerConfig::ideal())[0] - 0.75) <= 1e-15);
  }

  TEST_CASE("fit_range") {
    const std::vector<Vec> unit{Vec{0.0}, Vec{1.0}, Vec{0.3}};
    CHECK(fit_range(unit).is_identity());
    const ValueTransform t = fit_range(std::vector<Vec>{Vec{-1.0, 5.0}, Vec{3.0, 5.0}});
    CHECK(t.scale == Vec{0.25, 1.0});
    CHECK(t.offset == Vec{0.25, -5.0});
    CHECK(t.apply(Vec{-1.0, 5.0}) == Vec{0.0, 0.0});
    CHECK(t.apply(Vec{3.0, 5.0}) == Vec{1.0, 0.0});
  }

  TEST_CASE("encode_bilinear_patch") {
    const ControlNet corners(2, 2, {Vec{0.0}, Vec{1.0}, Vec{1.0}, Vec{0.0}});
    CHECK(channel0(encode_bilinear_patch(corners).grid) == Values{0, 1, 1, 0});
    const ControlNet flat(2, 2, std::vector<Vec>(4, Vec{0.5}));
    CHECK(channel0(encode_bilinear_patch(flat).grid) == Values(4, 0.5));
    CHECK(error_kind([] { encode_bilinear_patch(ControlNet(3, 3, std::vector<Vec>(9, Vec{0.0}))); }).has_value());
  }

  TEST_CASE("encode_bicubic_rgba") {
    const EncodedCurve flat = encode_bicubic_rgba(ControlNet(4, 4, std::vector<Vec>(16, Vec{0.5})));
    CHECK(flat.grid.channels() == 4);
    for (double v : flat.grid.data()) CHECK(v == 0.5);

    std::vector<Vec> rows;
    for (int r = 0; r < 4; ++r) {
      for (double v : {0.0, 0.75, 0.25, 1.0}) rows.push_back(Vec{v});
    }
    const EncodedCurve sep = encode_bicubic_rgba(ControlNet(4, 4, rows));
    for (std::size_t i = 0; i < sep.grid.texel_count(); ++i) {
      for (int c = 1; c < 4; ++c) CHECK(sep.grid.data()[i * 4 + static_cast<std::size_t>(c)] == sep.grid.data()[i * 4]);
    }
    CHECK(error_kind([] { encode_bicubic_rgba(ControlNet(4, 4, std::vector<Vec>(16, Vec{0.5, 0.5}))); }).has_value());
  }

  TEST_CASE("encode_rational") {
    const ControlPolygon arc({Vec{1.0, 0.0}, Vec{1.0, 1.0}, Vec{0.0, 1.0}});
    const std::vector<double> ones(3, 1.0);
    const EncodedCurve unit = encode_rational(arc, ones);
    CHECK(unit.grid.channels() == 3);
    for (int i = 0; i <= 16; ++i) {
      const auto [value, trace] = sample_bilinear(unit.grid, remap_unit_to_texel_span(i / 16.0, 2),
                                                  remap_unit_to_texel_span((1 - i / 16.0) * (i / 16.0), 2),
                                                  SamplerConfig::ideal());
      CHECK(value[2] == 1.0);
    }
    const std::vector<double> w{1.0, std::numbers::sqrt2 / 2.0, 1.0};
    const EncodedCurve circle = encode_rational(arc, w);
    CHECK(eval_rational_tex(circle, 0.0, SamplerConfig::ideal()) == arc[0]);
    for (int i = 0; i < 1000; ++i) {
      const Vec q = eval_rational_tex(circle, i / 999.0, SamplerConfig::ideal());
      CHECK(std::abs(q[0] * q[0] + q[1] * q[1] - 1.0) <= 1e-6);
    }
    CHECK(error_kind([&] { encode_rational(arc, std::vector<double>{1.0, -1.0, 1.0}); }).has_value());
    CHECK(error_kind([&] { encode_rational(ControlPolygon({Vec{0, 0, 0, 0}, Vec{1, 1, 1, 1}, Vec{0, 0, 0, 0}}), ones); })
              .has_value());
    CHECK(error_kind([&] { encode_rational(scalar({0, 1, 2, 3, 4}), std::vector<double>(5, 1.0)); }) ==
          ErrorKind::unsupported_degree);
  }

  TEST_CASE("rational rescaling leaves the weight channel alone") {
    const ControlPolygon pts({Vec{-2.0}, Vec{4.0}, Vec{1.0}});
    const std::vector<double> w{0.5, 0.75, 0.5};
    const EncodedCurve c = encode_rational(pts, w, {TexelFormat::unorm16, true});
    CHECK(c.transform.scale[1] == 1.0);
    CHECK(c.transform.offset[1] == 0.0);
    for (int i = 0; i <= 64; ++i) {
      const double t = i / 64.0;
      CHECK(std::abs(eval_rational_tex(c, t, SamplerConfig::ideal())[0] - eval_rational(pts, w, t)[0]) <= 1e-3);
    }
  }
}

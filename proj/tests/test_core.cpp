#include <doctest.h>

#include "support.hpp"
#include "texcurve/core.hpp"

using namespace texcurve;
using texcurve::testing::error_kind;

TEST_SUITE("core") {
  TEST_CASE("lerp") {
    CHECK(texcurve::lerp(0.0, 1.0, 0.5) == 0.5);
    CHECK(texcurve::lerp(2.0, 6.0, 0.25) == 3.0);
    for (double t : {0.0, 0.1, 0.37, 1.0}) CHECK(texcurve::lerp(0.7, 0.7, t) == 0.7);
    CHECK(texcurve::lerp(Vec{0.0, 2.0}, Vec{1.0, 6.0}, 0.25) == Vec{0.25, 3.0});
    CHECK(error_kind([] { texcurve::lerp(Vec{0.0}, Vec{0.0, 1.0}, 0.5); }) == ErrorKind::channel_mismatch);
  }

  TEST_CASE("lerp endpoints are exact") {
    CHECK(texcurve::lerp(0.1, 0.7, 0.0) == 0.1);
    CHECK(texcurve::lerp(0.1, 0.7, 1.0) == 0.7);
  }

  TEST_CASE("remap_unit_to_texel_span") {
    CHECK(remap_unit_to_texel_span(0.0, 2) == 0.25);
    CHECK(remap_unit_to_texel_span(1.0, 2) == 0.75);
    CHECK(remap_unit_to_texel_span(0.5, 2) == 0.5);
    CHECK(remap_unit_to_texel_span(0.0, 4) == 0.125);
    CHECK(remap_unit_to_texel_span(1.0, 4) == 0.875);
    CHECK(error_kind([] { remap_unit_to_texel_span(1.5, 2); }) == ErrorKind::domain);
    CHECK(error_kind([] { remap_unit_to_texel_span(-0.1, 2); }) == ErrorKind::domain);
    CHECK(error_kind([] { remap_unit_to_texel_span(0.5, 1); }) == ErrorKind::invalid_argument);
  }

  TEST_CASE("Vec channel limits") {
    CHECK(Vec(4).channels() == 4);
    CHECK(error_kind([] { Vec v(5); }) == ErrorKind::invalid_argument);
    CHECK(error_kind([] { Vec v(0); }) == ErrorKind::invalid_argument);
    const Vec a{1.0, -3.0};
    CHECK(max_abs(a) == 3.0);
    CHECK(a + a == Vec{2.0, -6.0});
    CHECK(a - a == Vec{0.0, 0.0});
    CHECK(0.5 * a == Vec{0.5, -1.5});
  }

  TEST_CASE("ControlPolygon invariants") {
    CHECK(error_kind([] { ControlPolygon p({Vec{1.0}}); }) == ErrorKind::invalid_argument);
    CHECK(error_kind([] { ControlPolygon p({Vec{1.0}, Vec{1.0, 2.0}}); }) == ErrorKind::channel_mismatch);
    const ControlPolygon p({Vec{0.0, 1.0}, Vec{1.0, 1.0}, Vec{2.0, 0.0}});
    CHECK(p.degree() == 2);
    CHECK(p.channels() == 2);
  }

  TEST_CASE("SamplerConfig range") {
    SamplerConfig cfg;
    CHECK(cfg.subtexel_bits == 8);
    CHECK(SamplerConfig::ideal().subtexel_bits == 0);
    cfg.subtexel_bits = 24;
    CHECK_NOTHROW(cfg.validate());
    cfg.subtexel_bits = 25;
    CHECK(error_kind([&] { cfg.validate(); }) == ErrorKind::invalid_argument);
    cfg.subtexel_bits = -1;
    CHECK(error_kind([&] { cfg.validate(); }) == ErrorKind::invalid_argument);
  }

  TEST_CASE("TexelGrid storage") {
    TexelGrid g(3, 2, 2, 2, TexelFormat::unorm8);
    CHECK(g.data().size() == 3u * 2u * 2u * 2u);
    g.set(2, 1, 1, Vec{0.5, 2.0});
    CHECK(g.at(2, 1, 1) == Vec{128.0 / 255.0, 1.0});
    CHECK(g.data()[((1 * 2 + 1) * 3 + 2) * 2] == 128.0 / 255.0);
    CHECK(error_kind([&] { g.at(3, 0, 0); }) == ErrorKind::invalid_argument);
    CHECK(error_kind([&] { g.set(0, 0, 0, Vec{1.0}); }) == ErrorKind::channel_mismatch);
  }

  TEST_CASE("TexelGrid::from_values rejects unrepresentable unorm values") {
    CHECK_NOTHROW(TexelGrid::from_values(1, 1, 1, 1, TexelFormat::unorm8, {51.0 / 255.0}));
    CHECK(error_kind([] { TexelGrid::from_values(1, 1, 1, 1, TexelFormat::unorm8, {0.3}); }) ==
          ErrorKind::invalid_argument);
    CHECK(error_kind([] { TexelGrid::from_values(2, 1, 1, 1, TexelFormat::float32, {0.5}); }) ==
          ErrorKind::invalid_argument);
  }

  TEST_CASE("ValueTransform") {
    const ValueTransform id = ValueTransform::identity(2);
    CHECK(id.is_identity());
    const ValueTransform t{Vec{0.25, 1.0}, Vec{0.25, -5.0}};
    const Vec v{3.0, 5.0};
    CHECK(t.apply(v) == Vec{1.0, 0.0});
    CHECK(t.invert(t.apply(v)) == v);
    CHECK(error_kind([] { ValueTransform{Vec{0.0}, Vec{0.0}}.validate(); }) == ErrorKind::invalid_argument);
  }

  TEST_CASE("format and layout names round-trip") {
    for (TexelFormat f : {TexelFormat::unorm8, TexelFormat::unorm16, TexelFormat::float32}) {
      CHECK(parse_texel_format(to_string(f)) == f);
    }
    CHECK(parse_texel_format("u8") == TexelFormat::unorm8);
    CHECK(parse_texel_format("f32") == TexelFormat::float32);
    CHECK(error_kind([] { parse_texel_format("rgba"); }) == ErrorKind::parse);
    for (std::uint8_t code = 0; code < 8; ++code) {
      const Layout l = layout_from_code(code);
      CHECK(parse_layout(to_string(l)) == l);
    }
    CHECK(error_kind([] { layout_from_code(8); }) == ErrorKind::parse);
  }

  TEST_CASE("EncodedCurve layout/degree consistency") {
    EncodedCurve c{TexelGrid(2, 2, 1, 1, TexelFormat::float32), Layout::seiler_2d, 3, 1,
                   ValueTransform::identity(1)};
    CHECK_NOTHROW(c.validate());
    c.degree = 4;
    CHECK(error_kind([&] { c.validate(); }) == ErrorKind::invalid_argument);
    c.layout = Layout::seiler_3d;
    CHECK(error_kind([&] { c.validate(); }) == ErrorKind::invalid_argument);
    c.grid = TexelGrid(2, 2, 2, 1, TexelFormat::float32);
    CHECK_NOTHROW(c.validate());

    EncodedCurve z{TexelGrid(4, 2, 1, 1, TexelFormat::float32), Layout::dc_zigzag, 2, 3,
                   ValueTransform::identity(1)};
    CHECK_NOTHROW(z.validate());
    z.segment_count = 2;
    CHECK(error_kind([&] { z.validate(); }) == ErrorKind::invalid_argument);

    EncodedCurve r{TexelGrid(2, 2, 1, 3, TexelFormat::float32), Layout::rational_homogeneous, 2, 1,
                   ValueTransform{Vec{1.0, 1.0, 0.5}, Vec{0.0, 0.0, 0.0}}};
    CHECK(error_kind([&] { r.validate(); }) == ErrorKind::invalid_argument);
  }
}

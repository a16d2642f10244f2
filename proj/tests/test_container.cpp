#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <sstream>

#include "support.hpp"
#include "texcurve/container.hpp"
#include "texcurve/curve_file.hpp"
#include "texcurve/encoder.hpp"

using namespace texcurve;
using texcurve::testing::error_kind;
using texcurve::testing::Fixtures;

namespace {

EncodedCurve sample_curve(TexelFormat format) {
  const ControlPolygon p({Vec{0.0, -2.0}, Vec{1.0, 0.5}, Vec{1.0, 3.0}, Vec{0.0, 1.0}});
  return encode_dc_cubic(p, {format, true});
}

}  // namespace

TEST_SUITE("container") {
  TEST_CASE("header layout") {
    const auto bytes = serialize(sample_curve(TexelFormat::unorm16));
    REQUIRE(bytes.size() == 25u + 16u * 2u + 8u * 2u * 2u);
    CHECK(std::memcmp(bytes.data(), "CTEX1", 5) == 0);
    CHECK(bytes[5] == 2);
    CHECK(bytes[9] == 2);
    CHECK(bytes[13] == 2);
    CHECK(bytes[17] == 2);
    CHECK(bytes[18] == 2);
    CHECK(bytes[19] == static_cast<std::uint8_t>(Layout::dc_cubic_2x2x2));
    CHECK(bytes[20] == 3);
    CHECK(bytes[21] == 1);
  }

  TEST_CASE("round trip is bit-exact for every format") {
    for (TexelFormat f : {TexelFormat::unorm8, TexelFormat::unorm16, TexelFormat::float32}) {
      const EncodedCurve c = sample_curve(f);
      const EncodedCurve back = deserialize(serialize(c));
      CHECK(back.grid == c.grid);
      CHECK(back.layout == c.layout);
      CHECK(back.degree == c.degree);
      CHECK(back.segment_count == c.segment_count);
      CHECK(back.transform.scale == c.transform.scale);
      CHECK(back.transform.offset == c.transform.offset);
    }
  }

  TEST_CASE("files round trip") {
    Fixtures fx(41);
    const auto path = std::filesystem::temp_directory_path() / "texcurve_container_test.ctex";
    const EncodedCurve c = encode_dc_zigzag(fx.chain(5, 3), {TexelFormat::unorm8, true});
    write_container(path, c);
    const EncodedCurve back = read_container(path);
    CHECK(serialize(back) == serialize(c));
    std::filesystem::remove(path);
    CHECK(error_kind([&] { read_container(path); }) == ErrorKind::io);
  }

  TEST_CASE("malformed containers are parse errors") {
    auto bytes = serialize(sample_curve(TexelFormat::float32));
    auto bad_magic = bytes;
    bad_magic[0] = 'X';
    CHECK(error_kind([&] { deserialize(bad_magic); }) == ErrorKind::parse);
    auto truncated = bytes;
    truncated.pop_back();
    CHECK(error_kind([&] { deserialize(truncated); }) == ErrorKind::parse);
    auto trailing = bytes;
    trailing.push_back(0);
    CHECK(error_kind([&] { deserialize(trailing); }) == ErrorKind::parse);
    auto bad_layout = bytes;
    bad_layout[19] = 42;
    CHECK(error_kind([&] { deserialize(bad_layout); }) == ErrorKind::parse);
    auto bad_degree = bytes;
    bad_degree[20] = 2;
    CHECK(error_kind([&] { deserialize(bad_degree); }) == ErrorKind::parse);
  }

  TEST_CASE("describe lists header and texels") {
    const std::string text = describe(encode_seiler(ControlPolygon({Vec{0.0}, Vec{1.0}, Vec{1.0}, Vec{0.0}})));
    CHECK(text.find("layout: seiler_2d\n") != std::string::npos);
    CHECK(text.find("texel 0 1 0: 3\n") != std::string::npos);
  }
}

TEST_SUITE("curve_file") {
  TEST_CASE("parse a polygon") {
    std::istringstream in("# cubic\ndegree 3\nchannels 2\n0 0\n1 0.5 # inline\n\n1 1\n0 1\n");
    const CurveDescription d = parse_curve(in);
    CHECK(d.degree == 3);
    CHECK(d.polygon()[1] == Vec{1.0, 0.5});
    CHECK(parse_curve(*std::make_unique<std::istringstream>(format_curve(d))).points == d.points);
  }

  TEST_CASE("power basis and segments") {
    std::istringstream power("degree 3\nchannels 1\nbasis power\n0\n1\n0\n0\n");
    const ControlPolygon p = parse_curve(power).polygon();
    CHECK(p[3] == Vec{1.0});
    std::istringstream pieces("degree 2\nchannels 1\nsegments 2\n0\n1\n0\n0.5\n0\n");
    const auto segs = parse_curve(pieces).piecewise();
    REQUIRE(segs.size() == 2);
    CHECK(segs[0][2] == segs[1][0]);
  }

  TEST_CASE("grids, knots and weights") {
    std::istringstream grid("channels 1\ngrid 2 2\n0\n1\n1\n0\n");
    CHECK(parse_curve(grid).net().at(1, 0) == Vec{1.0});
    std::istringstream spline("degree 3\nchannels 1\nknots 0 0 0 0 0.5 1 1 1 1\n0\n1\n2\n1\n0\n");
    CHECK(parse_curve(spline).bspline().control_points().size() == 5);
    std::istringstream rational("degree 2\nchannels 2\nweights 1 0.5 1\n1 0\n1 1\n0 1\n");
    CHECK(parse_curve(rational).weights.size() == 3);
  }

  TEST_CASE("errors name the line") {
    std::istringstream wrong_width("degree 1\nchannels 2\n0 0\n1\n");
    try {
      parse_curve(wrong_width);
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::parse);
      CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
    std::istringstream count("degree 3\nchannels 1\n0\n1\n");
    CHECK(error_kind([&] { parse_curve(count); }) == ErrorKind::parse);
    std::istringstream junk("degree x\n");
    CHECK(error_kind([&] { parse_curve(junk); }) == ErrorKind::parse);
    std::istringstream weights("degree 1\nchannels 1\nweights 1\n0\n1\n");
    CHECK(error_kind([&] { parse_curve(weights); }) == ErrorKind::parse);
  }
}

#include "texcurve/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "texcurve/sampler.hpp"

namespace texcurve {

namespace {

void check_channel_count(int n) {
  if (n < 1 || n > Vec::kMaxChannels) {
    throw Error(ErrorKind::invalid_argument,
                "channel count " + std::to_string(n) + " outside [1, 4]");
  }
}

}  // namespace

Vec::Vec(int channels, double fill) : n_(channels) {
  check_channel_count(channels);
  v_.fill(0.0);
  for (int c = 0; c < n_; ++c) v_[static_cast<std::size_t>(c)] = fill;
}

Vec::Vec(std::initializer_list<double> values) : n_(static_cast<int>(values.size())) {
  check_channel_count(n_);
  std::copy(values.begin(), values.end(), v_.begin());
}

Vec Vec::from_span(std::span<const double> values) {
  Vec v(static_cast<int>(values.size()));
  std::copy(values.begin(), values.end(), v.v_.begin());
  return v;
}

Vec& Vec::operator+=(const Vec& o) {
  require_same_channels(*this, o);
  for (int c = 0; c < n_; ++c) (*this)[c] += o[c];
  return *this;
}

Vec& Vec::operator-=(const Vec& o) {
  require_same_channels(*this, o);
  for (int c = 0; c < n_; ++c) (*this)[c] -= o[c];
  return *this;
}

Vec& Vec::operator*=(double s) {
  for (int c = 0; c < n_; ++c) (*this)[c] *= s;
  return *this;
}

bool operator==(const Vec& a, const Vec& b) {
  if (a.n_ != b.n_) return false;
  for (int c = 0; c < a.n_; ++c) {
    if (a[c] != b[c]) return false;
  }
  return true;
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }
Vec operator*(Vec a, double s) { return a *= s; }
Vec operator*(double s, Vec a) { return a *= s; }

void require_same_channels(const Vec& a, const Vec& b) {
  if (a.channels() != b.channels()) {
    throw Error(ErrorKind::channel_mismatch, "channel count mismatch: " +
                                                 std::to_string(a.channels()) + " vs " +
                                                 std::to_string(b.channels()));
  }
}

double max_abs(const Vec& v) {
  double m = 0.0;
  for (double x : v.values()) m = std::max(m, std::abs(x));
  return m;
}

ControlPolygon::ControlPolygon(std::vector<Vec> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw Error(ErrorKind::invalid_argument, "a control polygon needs at least 2 points");
  }
  for (const Vec& p : points_) require_same_channels(p, points_.front());
}

std::string_view to_string(TexelFormat f) {
  switch (f) {
    case TexelFormat::unorm8: return "unorm8";
    case TexelFormat::unorm16: return "unorm16";
    case TexelFormat::float32: return "float32";
  }
  return "?";
}

TexelFormat parse_texel_format(std::string_view s) {
  if (s == "unorm8" || s == "u8") return TexelFormat::unorm8;
  if (s == "unorm16" || s == "u16") return TexelFormat::unorm16;
  if (s == "float32" || s == "f32") return TexelFormat::float32;
  throw Error(ErrorKind::parse, "unknown texel format '" + std::string(s) + "'");
}

int unorm_bits(TexelFormat f) {
  switch (f) {
    case TexelFormat::unorm8: return 8;
    case TexelFormat::unorm16: return 16;
    case TexelFormat::float32: return 0;
  }
  return 0;
}

void SamplerConfig::validate() const {
  if (subtexel_bits < 0 || subtexel_bits > 24) {
    throw Error(ErrorKind::invalid_argument,
                "subtexel_bits " + std::to_string(subtexel_bits) + " outside [0, 24]");
  }
}

TexelGrid::TexelGrid(int width, int height, int depth, int channels, TexelFormat format)
    : width_(width), height_(height), depth_(depth), channels_(channels), format_(format) {
  if (width < 1 || height < 1 || depth < 1) {
    throw Error(ErrorKind::invalid_argument, "texel grid dimensions must be positive");
  }
  check_channel_count(channels);
  data_.assign(texel_count() * static_cast<std::size_t>(channels), 0.0);
}

TexelGrid TexelGrid::from_values(int width, int height, int depth, int channels,
                                 TexelFormat format, std::vector<double> values) {
  TexelGrid g(width, height, depth, channels, format);
  if (values.size() != g.data_.size()) {
    throw Error(ErrorKind::invalid_argument, "texel payload size does not match grid dimensions");
  }
  for (double v : values) {
    if (quantize_texel(v, format) != v) {
      throw Error(ErrorKind::invalid_argument, "texel value is not representable in " +
                                                   std::string(to_string(format)));
    }
  }
  g.data_ = std::move(values);
  return g;
}

std::size_t TexelGrid::offset(int x, int y, int z) const {
  if (x < 0 || x >= width_ || y < 0 || y >= height_ || z < 0 || z >= depth_) {
    throw Error(ErrorKind::invalid_argument, "texel index out of bounds");
  }
  const auto idx = (static_cast<std::size_t>(z) * static_cast<std::size_t>(height_) +
                    static_cast<std::size_t>(y)) *
                       static_cast<std::size_t>(width_) +
                   static_cast<std::size_t>(x);
  return idx * static_cast<std::size_t>(channels_);
}

Vec TexelGrid::at(int x, int y, int z) const {
  const std::size_t o = offset(x, y, z);
  return Vec::from_span(std::span<const double>(data_).subspan(o, static_cast<std::size_t>(channels_)));
}

void TexelGrid::set(int x, int y, int z, const Vec& v) {
  if (v.channels() != channels_) {
    throw Error(ErrorKind::channel_mismatch, "texel channel count does not match grid");
  }
  const std::size_t o = offset(x, y, z);
  for (int c = 0; c < channels_; ++c) data_[o + static_cast<std::size_t>(c)] = quantize_texel(v[c], format_);
}

ValueTransform ValueTransform::identity(int channels) {
  return ValueTransform{Vec(channels, 1.0), Vec(channels, 0.0)};
}

bool ValueTransform::is_identity() const {
  for (int c = 0; c < scale.channels(); ++c) {
    if (scale[c] != 1.0 || offset[c] != 0.0) return false;
  }
  return true;
}

Vec ValueTransform::apply(const Vec& value) const {
  require_same_channels(value, scale);
  Vec out = value;
  for (int c = 0; c < out.channels(); ++c) out[c] = value[c] * scale[c] + offset[c];
  return out;
}

Vec ValueTransform::invert(const Vec& stored) const {
  require_same_channels(stored, scale);
  if (is_identity()) return stored;
  Vec out = stored;
  for (int c = 0; c < out.channels(); ++c) out[c] = (stored[c] - offset[c]) / scale[c];
  return out;
}

void ValueTransform::validate() const {
  require_same_channels(scale, offset);
  for (double s : scale.values()) {
    if (s == 0.0 || !std::isfinite(s)) {
      throw Error(ErrorKind::invalid_argument, "value transform scale must be finite and nonzero");
    }
  }
}

namespace {

constexpr std::array<std::string_view, 8> kLayoutNames = {
    "dc_quad_2x2", "dc_cubic_2x2x2", "dc_zigzag",   "seiler_2d",
    "seiler_3d",   "bilinear_patch", "bicubic_rgba", "rational_homogeneous",
};

}  // namespace

std::string_view to_string(Layout l) { return kLayoutNames.at(static_cast<std::size_t>(l)); }

Layout parse_layout(std::string_view s) {
  for (std::size_t i = 0; i < kLayoutNames.size(); ++i) {
    if (kLayoutNames[i] == s) return static_cast<Layout>(i);
  }
  throw Error(ErrorKind::parse, "unknown layout '" + std::string(s) + "'");
}

Layout layout_from_code(std::uint8_t code) {
  if (code >= kLayoutNames.size()) {
    throw Error(ErrorKind::parse, "unknown layout code " + std::to_string(code));
  }
  return static_cast<Layout>(code);
}

void EncodedCurve::validate() const {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::invalid_argument,
                std::string(to_string(layout)) + ": " + why);
  };
  auto dims_are = [&](int w, int h, int d) {
    return grid.width() == w && grid.height() == h && grid.depth() == d;
  };
  if (segment_count < 1) fail("segment_count must be >= 1");
  if (transform.scale.channels() != grid.channels()) fail("transform channel count differs from grid");
  transform.validate();
  switch (layout) {
    case Layout::dc_quad_2x2:
      if (degree != 2 || !dims_are(2, 2, 1)) fail("expects degree 2 in a 2x2 grid");
      break;
    case Layout::dc_cubic_2x2x2:
      if (degree != 3 || !dims_are(2, 2, 2)) fail("expects degree 3 in a 2x2x2 grid");
      break;
    case Layout::dc_zigzag:
      if (degree != 2 || !dims_are(segment_count + 1, 2, 1)) {
        fail("expects degree 2 in a (segments+1)x2 grid");
      }
      break;
    case Layout::seiler_2d:
      if ((degree != 2 && degree != 3) || !dims_are(2, 2, 1)) fail("expects degree 2..3 in a 2x2 grid");
      break;
    case Layout::seiler_3d:
      if ((degree != 4 && degree != 5) || !dims_are(2, 2, 2)) fail("expects degree 4..5 in a 2x2x2 grid");
      break;
    case Layout::bilinear_patch:
      if (degree != 1 || !dims_are(2, 2, 1)) fail("expects degree 1 in a 2x2 grid");
      break;
    case Layout::bicubic_rgba:
      if (degree != 3 || !dims_are(2, 2, 2) || grid.channels() != 4) {
        fail("expects degree 3 in a 2x2x2 grid with 4 channels");
      }
      break;
    case Layout::rational_homogeneous:
      if ((degree != 2 && degree != 3) || !dims_are(2, 2, 1) || grid.channels() < 2) {
        fail("expects degree 2..3 homogeneous points in a 2x2 grid");
      }
      if (transform.scale[grid.channels() - 1] != 1.0 || transform.offset[grid.channels() - 1] != 0.0) {
        fail("the weight channel cannot carry a value transform");
      }
      break;
  }
  if (layout != Layout::dc_zigzag && segment_count != 1) fail("segment_count must be 1");
}

double lerp(double a, double b, double t) { return std::lerp(a, b, t); }

Vec lerp(const Vec& a, const Vec& b, double t) {
  require_same_channels(a, b);
  Vec out = a;
  for (int c = 0; c < a.channels(); ++c) out[c] = lerp(a[c], b[c], t);
  return out;
}

double remap_unit_to_texel_span(double x, int extent) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg << "coordinate " << x << " outside [0, 1]";
    throw Error(ErrorKind::domain, msg.str());
  }
  if (extent < 2) throw Error(ErrorKind::invalid_argument, "texel span needs extent >= 2");
  return (0.5 + x * (extent - 1)) / extent;
}

}  // namespace texcurve

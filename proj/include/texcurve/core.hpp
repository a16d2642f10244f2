#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace texcurve {

enum class ErrorKind {
  invalid_argument,
  channel_mismatch,
  domain,
  range,
  unsupported_degree,
  layout_mismatch,
  join,
  division,
  parse,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A point with 1 to 4 channels, one per texture color slot.
class Vec {
 public:
  static constexpr int kMaxChannels = 4;

  Vec() = default;
  explicit Vec(int channels, double fill = 0.0);
  Vec(std::initializer_list<double> values);
  static Vec from_span(std::span<const double> values);

  int channels() const noexcept { return n_; }
  double operator[](int c) const { return v_[static_cast<std::size_t>(c)]; }
  double& operator[](int c) { return v_[static_cast<std::size_t>(c)]; }
  std::span<const double> values() const { return {v_.data(), static_cast<std::size_t>(n_)}; }

  Vec& operator+=(const Vec& o);
  Vec& operator-=(const Vec& o);
  Vec& operator*=(double s);

  friend bool operator==(const Vec& a, const Vec& b);

 private:
  std::array<double, kMaxChannels> v_{};
  int n_ = 0;
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator*(Vec a, double s);
Vec operator*(double s, Vec a);

void require_same_channels(const Vec& a, const Vec& b);
double max_abs(const Vec& v);

class ControlPolygon {
 public:
  explicit ControlPolygon(std::vector<Vec> points);

  int degree() const noexcept { return static_cast<int>(points_.size()) - 1; }
  int channels() const noexcept { return points_.front().channels(); }
  std::span<const Vec> points() const { return points_; }
  const Vec& operator[](int i) const { return points_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<Vec> points_;
};

enum class TexelFormat : std::uint8_t { unorm8 = 1, unorm16 = 2, float32 = 3 };

std::string_view to_string(TexelFormat f);
TexelFormat parse_texel_format(std::string_view s);
/// 8 or 16 for unorm formats, 0 for float32.
int unorm_bits(TexelFormat f);

enum class SubtexelRounding : std::uint8_t { nearest, floor };
enum class TexelRounding : std::uint8_t { nearest };
enum class AddressMode : std::uint8_t { clamp_to_edge };

struct SamplerConfig {
  int subtexel_bits = 8;
  SubtexelRounding subtexel_rounding = SubtexelRounding::nearest;
  TexelRounding texel_rounding = TexelRounding::nearest;
  AddressMode address_mode = AddressMode::clamp_to_edge;

  /// Exact coordinates: no subtexel quantization.
  static SamplerConfig ideal() { return SamplerConfig{0}; }
  void validate() const;
};

class TexelGrid {
 public:
  TexelGrid(int width, int height, int depth, int channels, TexelFormat format);
  /// Adopts already-decoded values; every unorm value must be k/(2^bits-1).
  static TexelGrid from_values(int width, int height, int depth, int channels, TexelFormat format,
                               std::vector<double> values);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int depth() const noexcept { return depth_; }
  int channels() const noexcept { return channels_; }
  TexelFormat format() const noexcept { return format_; }
  bool is_2d() const noexcept { return depth_ == 1; }
  std::size_t texel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_) *
           static_cast<std::size_t>(depth_);
  }
  std::span<const double> data() const { return data_; }

  Vec at(int x, int y, int z = 0) const;
  /// Stores v after per-format quantization.
  void set(int x, int y, int z, const Vec& v);

  friend bool operator==(const TexelGrid&, const TexelGrid&) = default;

 private:
  std::size_t offset(int x, int y, int z) const;

  int width_, height_, depth_, channels_;
  TexelFormat format_;
  std::vector<double> data_;
};

/// Per-channel affine map from curve values to stored texel values:
/// stored = value * scale + offset.
struct ValueTransform {
  Vec scale;
  Vec offset;

  static ValueTransform identity(int channels);
  bool is_identity() const;
  Vec apply(const Vec& value) const;
  Vec invert(const Vec& stored) const;
  void validate() const;

  friend bool operator==(const ValueTransform&, const ValueTransform&) = default;
};

enum class Layout : std::uint8_t {
  dc_quad_2x2 = 0,
  dc_cubic_2x2x2 = 1,
  dc_zigzag = 2,
  seiler_2d = 3,
  seiler_3d = 4,
  bilinear_patch = 5,
  bicubic_rgba = 6,
  rational_homogeneous = 7,
};

std::string_view to_string(Layout l);
Layout parse_layout(std::string_view s);
Layout layout_from_code(std::uint8_t code);

struct EncodedCurve {
  TexelGrid grid;
  Layout layout;
  int degree;
  int segment_count = 1;
  ValueTransform transform;

  /// Throws if layout, degree and grid dimensions disagree.
  void validate() const;

  friend bool operator==(const EncodedCurve&, const EncodedCurve&) = default;
};

double lerp(double a, double b, double t);
Vec lerp(const Vec& a, const Vec& b, double t);

/// Maps x in [0,1] onto the span between the first and last texel centers of an
/// axis with `extent` texels, in normalized texture coordinates.
double remap_unit_to_texel_span(double x, int extent);

}  // namespace texcurve
